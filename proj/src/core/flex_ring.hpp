#pragma once

#include <cstdint>
#include <vector>

#include "core/cost.hpp"
#include "core/errors.hpp"

namespace slwin {

// Double-ended ring buffer that grows by doubling, with the copy into the
// bigger buffer spread out at two cells per operation so that no single
// operation moves O(n) cells. Storage never shrinks.
template <typename T>
class FlexRing {
public:
    explicit FlexRing(std::size_t initial_cap = 16, CostCounters* cc = nullptr)
        : buf_(initial_cap), cap_(initial_cap), cc_(cc) {
        if (initial_cap == 0) throw InputError("FlexRing: zero capacity");
    }

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    const T& operator[](std::size_t i) const { return slot(base_ + static_cast<std::int64_t>(i)); }
    const T& front() const { return (*this)[0]; }
    const T& back() const { return (*this)[len_ - 1]; }

    void push_back(T v) {
        store(base_ + static_cast<std::int64_t>(len_), std::move(v));
        ++len_;
        settle();
    }
    void push_front(T v) {
        --base_;
        store(base_, std::move(v));
        ++len_;
        settle();
    }
    void pop_back() {
        if (len_ == 0) throw StateError("FlexRing: pop on empty");
        --len_;
        if (migrating_ && mig_hi_ > base_ + static_cast<std::int64_t>(len_) - 1)
            mig_hi_ = base_ + static_cast<std::int64_t>(len_) - 1;
        settle();
    }
    void pop_front() {
        if (len_ == 0) throw StateError("FlexRing: pop on empty");
        ++base_;
        --len_;
        if (migrating_ && mig_lo_ < base_) mig_lo_ = base_;
        settle();
    }

private:
    static std::size_t mod(std::int64_t a, std::size_t m) {
        std::int64_t r = a % static_cast<std::int64_t>(m);
        if (r < 0) r += static_cast<std::int64_t>(m);
        return static_cast<std::size_t>(r);
    }

    const T& slot(std::int64_t abs) const {
        if (migrating_ && abs >= mig_lo_ && abs <= mig_hi_) return buf_[mod(abs, cap_)];
        return migrating_ ? next_[mod(abs, ncap_)] : buf_[mod(abs, cap_)];
    }

    void store(std::int64_t abs, T v) {
        if (migrating_)
            next_[mod(abs, ncap_)] = std::move(v);
        else
            buf_[mod(abs, cap_)] = std::move(v);
        if (cc_) ++cc_->entry_copies;
    }

    void settle() {
        if (!migrating_) {
            if (len_ > cap_ / 2) {
                ncap_ = cap_ * 2;
                next_.assign(ncap_, T{});
                mig_lo_ = base_;
                mig_hi_ = base_ + static_cast<std::int64_t>(len_) - 1;
                migrating_ = true;
            } else {
                return;
            }
        }
        for (int k = 0; k < 2 && mig_lo_ <= mig_hi_; ++k) {
            next_[mod(mig_lo_, ncap_)] = std::move(buf_[mod(mig_lo_, cap_)]);
            if (cc_) ++cc_->entry_copies;
            ++mig_lo_;
        }
        if (mig_lo_ > mig_hi_) {
            buf_ = std::move(next_);
            next_.clear();
            cap_ = ncap_;
            migrating_ = false;
        }
    }

    std::vector<T> buf_;
    std::size_t cap_;
    std::vector<T> next_;
    std::size_t ncap_ = 0;
    std::int64_t base_ = 0; // absolute index of logical element 0
    std::size_t len_ = 0;
    bool migrating_ = false;
    std::int64_t mig_lo_ = 0, mig_hi_ = -1; // absolute range still in buf_
    CostCounters* cc_;
};

} // namespace slwin
