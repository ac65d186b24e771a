#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <memory>
#include <span>

namespace slwin {

// Fixed-inline-capacity vector of uint32_t with heap spill. State
// transformations over small automata stay allocation-free; the subset
// construction can still hand back large ones.
template <std::size_t N>
class SmallU32Vec {
public:
    SmallU32Vec() = default;
    explicit SmallU32Vec(std::size_t n) { resize(n); }

    SmallU32Vec(const SmallU32Vec& o) { assign(o.data(), o.size_); }
    SmallU32Vec(SmallU32Vec&& o) noexcept { move_from(std::move(o)); }
    SmallU32Vec& operator=(const SmallU32Vec& o) {
        if (this != &o) assign(o.data(), o.size_);
        return *this;
    }
    SmallU32Vec& operator=(SmallU32Vec&& o) noexcept {
        if (this != &o) { heap_.reset(); move_from(std::move(o)); }
        return *this;
    }

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    void resize(std::size_t n) {
        if (n > N && n > cap_) {
            auto fresh = std::make_unique<std::uint32_t[]>(n);
            std::memcpy(fresh.get(), data(), size_ * sizeof(std::uint32_t));
            heap_ = std::move(fresh);
            cap_ = n;
        }
        if (n > size_) std::memset(data() + size_, 0, (n - size_) * sizeof(std::uint32_t));
        size_ = n;
    }

    std::uint32_t* data() { return heap_ ? heap_.get() : inline_; }
    const std::uint32_t* data() const { return heap_ ? heap_.get() : inline_; }

    std::uint32_t operator[](std::size_t i) const { return data()[i]; }
    std::uint32_t& operator[](std::size_t i) { return data()[i]; }

    std::span<std::uint32_t> span() { return {data(), size_}; }
    std::span<const std::uint32_t> span() const { return {data(), size_}; }

    friend bool operator==(const SmallU32Vec& a, const SmallU32Vec& b) {
        return a.size_ == b.size_ &&
               std::equal(a.data(), a.data() + a.size_, b.data());
    }

private:
    void assign(const std::uint32_t* src, std::size_t n) {
        resize(0);
        resize(n);
        std::memcpy(data(), src, n * sizeof(std::uint32_t));
    }
    void move_from(SmallU32Vec&& o) {
        if (o.heap_) {
            heap_ = std::move(o.heap_);
            cap_ = o.cap_;
        } else {
            std::memcpy(inline_, o.inline_, o.size_ * sizeof(std::uint32_t));
        }
        size_ = o.size_;
        o.size_ = 0;
        o.cap_ = 0;
    }

    std::uint32_t inline_[N] = {};
    std::unique_ptr<std::uint32_t[]> heap_;
    std::size_t size_ = 0;
    std::size_t cap_ = 0; // heap capacity when spilled
};

} // namespace slwin
