#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "core/automata.hpp"
#include "core/cost.hpp"
#include "core/errors.hpp"

namespace slwin {

// Fixed-capacity two-way aggregation deque over a finite monoid of state
// transformations. Entries are opaque payloads; Ops maps a payload to its
// monoid value:
//
//   struct Ops {
//     using Payload = ...;
//     std::size_t dim() const;                                  // |Q|
//     void value_into(std::span<std::uint32_t>, const Payload&) const;
//     CostCounters* counters() const;
//   };
//
// A distinguished position p (the guardian) splits the window m_1..m_l.
// prod_ holds, per ring slot, the suffix product m_i..m_{p-1} for positions
// i < p and the prefix product m_p..m_j for positions j >= p, so the whole
// product costs one composition. Pushes extend one cached product; pops drop
// one. Once p drifts out of [ceil(l/4), floor(3l/4)] a replacement guardian
// at ceil(l/2) is built in the background at eight products per operation,
// which keeps p inside [ceil(l/8), floor(7l/8)] until the swap. Below
// SMALL_THRESHOLD entries the same incremental cache is kept but a breaking
// pop triggers a full rebuild instead of the background machinery.
template <typename Ops>
class GuardianDeque {
public:
    using Payload = typename Ops::Payload;

    static constexpr std::size_t SMALL_THRESHOLD = 16;

    GuardianDeque(std::size_t capacity, Ops ops)
        : ops_(std::move(ops)), q_(ops_.dim()), cap_(capacity) {
        if (capacity == 0) throw InputError("guardian deque: zero capacity");
        ring_.resize(cap_);
        prod_ = std::make_unique<std::uint32_t[]>(cap_ * q_);
        pend_ = std::make_unique<std::uint32_t[]>(cap_ * q_);
        tmp_.resize(q_);
    }

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }
    std::size_t capacity() const { return cap_; }

    const Payload& front() const { return at(0); }
    const Payload& back() const { return at(len_ - 1); }
    const Payload& at(std::size_t i) const { return ring_[slot(i + 1)]; } // 0-based

    void push_right(Payload e) {
        if (len_ == cap_) throw StateError("guardian deque: push past capacity");
        ++len_;
        put(len_, std::move(e));
        // new last position is on the prefix side (p_ <= len_ always holds here)
        if (len_ == p_) {
            ops_.value_into(prod(len_), ring_[slot(len_)]);
        } else {
            ops_.value_into(tmp(), ring_[slot(len_)]);
            compose_spans(prod(len_), cprod(len_ - 1), ctmp(), cc());
        }
        after_update(false);
    }

    void push_left(Payload e) {
        if (len_ == cap_) throw StateError("guardian deque: push past capacity");
        head_ = dec(head_);
        ++len_;
        put(1, std::move(e));
        ++p_;
        if (pend_active_) ++pend_q_;
        if (p_ == 2) {
            ops_.value_into(prod(1), ring_[slot(1)]);
        } else {
            ops_.value_into(tmp(), ring_[slot(1)]);
            compose_spans(prod(1), ctmp(), cprod(2), cc());
        }
        after_update(false);
    }

    Payload pop_left() {
        if (len_ == 0) throw StateError("guardian deque: pop on empty");
        Payload e = std::move(ring_[slot(1)]);
        bool broke = (p_ == 1); // every cached prefix product contained m_1
        head_ = inc(head_);
        --len_;
        if (!broke) --p_;
        if (pend_active_) {
            if (pend_q_ == 1) {
                pend_active_ = false; // replacement anchor popped; restart later
            } else {
                --pend_q_;
                if (pend_left_ > pend_q_ - 1) pend_left_ = pend_q_ - 1;
            }
        }
        after_update(broke);
        return e;
    }

    Payload pop_right() {
        if (len_ == 0) throw StateError("guardian deque: pop on empty");
        Payload e = std::move(ring_[slot(len_)]);
        bool broke = (p_ == len_ + 1); // every cached suffix product contained m_l
        --len_;
        if (pend_active_) {
            if (pend_q_ == len_ + 1) {
                pend_active_ = false;
            } else if (pend_right_ > len_ - pend_q_ + 1) {
                pend_right_ = len_ - pend_q_ + 1;
            }
        }
        after_update(broke);
        return e;
    }

    // Whole-window product; at most one composition.
    void product_into(std::span<std::uint32_t> dst) const {
        if (len_ == 0) {
            for (std::size_t i = 0; i < q_; ++i) dst[i] = static_cast<std::uint32_t>(i);
        } else if (p_ == 1) {
            copy_span(dst, cprod(len_)); // prefix side only
        } else if (len_ < p_) {
            copy_span(dst, cprod(1)); // suffix side only
        } else {
            compose_spans(dst, cprod(1), cprod(len_), cc());
        }
    }

    StateTransform product() const {
        StateTransform t(q_);
        product_into(t.map());
        return t;
    }

    // --- introspection for tests and instrumentation ---
    std::size_t guardian_position() const { return p_; }
    bool pending_active() const { return pend_active_; }
    std::size_t pending_age() const { return pend_age_; }
    std::size_t pending_deadline() const { return pend_deadline_; }
    bool deadline_missed() const { return deadline_missed_; }
    bool invariant_ok() const {
        if (len_ < SMALL_THRESHOLD) return true;
        return p_ >= (len_ + 7) / 8 && p_ <= 7 * len_ / 8;
    }

private:
    CostCounters* cc() const { return ops_.counters(); }

    std::size_t inc(std::size_t h) const { return h + 1 == cap_ ? 0 : h + 1; }
    std::size_t dec(std::size_t h) const { return h == 0 ? cap_ - 1 : h - 1; }
    std::size_t slot(std::size_t logical) const { // logical is 1-based
        std::size_t s = head_ + logical - 1;
        if (s >= cap_) s -= cap_;
        return s;
    }
    void put(std::size_t logical, Payload e) {
        ring_[slot(logical)] = std::move(e);
        if (cc()) ++cc()->entry_copies;
    }

    std::span<std::uint32_t> prod(std::size_t logical) { return {&prod_[slot(logical) * q_], q_}; }
    std::span<const std::uint32_t> cprod(std::size_t logical) const {
        return {&prod_[slot(logical) * q_], q_};
    }
    std::span<std::uint32_t> pendp(std::size_t logical) { return {&pend_[slot(logical) * q_], q_}; }
    std::span<const std::uint32_t> cpendp(std::size_t logical) const {
        return {&pend_[slot(logical) * q_], q_};
    }
    std::span<std::uint32_t> tmp() { return {tmp_.data(), q_}; }
    std::span<const std::uint32_t> ctmp() const { return {tmp_.data(), q_}; }

    static void copy_span(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src) {
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = src[i];
    }

    void after_update(bool broke) {
        if (len_ < SMALL_THRESHOLD) {
            pend_active_ = false;
            if (broke) rebuild();
        } else if (was_small_ || broke) {
            // entering the guarded regime (or a defensive repair): recenter
            rebuild();
        } else {
            if (!pend_active_ &&
                (p_ < (len_ + 3) / 4 || p_ > 3 * len_ / 4))
                start_pending();
            if (pend_active_) advance_pending();
        }
        was_small_ = len_ < SMALL_THRESHOLD;
    }

    void rebuild() {
        pend_active_ = false;
        p_ = len_ == 0 ? 1 : (len_ + 1) / 2;
        if (p_ == 0) p_ = 1;
        for (std::size_t i = p_; i-- > 1;) {
            if (i == p_ - 1) {
                ops_.value_into(prod(i), ring_[slot(i)]);
            } else {
                ops_.value_into(tmp(), ring_[slot(i)]);
                compose_spans(prod(i), ctmp(), cprod(i + 1), cc());
            }
        }
        for (std::size_t j = p_; j <= len_; ++j) {
            if (j == p_) {
                ops_.value_into(prod(j), ring_[slot(j)]);
            } else {
                ops_.value_into(tmp(), ring_[slot(j)]);
                compose_spans(prod(j), cprod(j - 1), ctmp(), cc());
            }
        }
    }

    void start_pending() {
        pend_q_ = (len_ + 1) / 2;
        pend_left_ = 0;
        pend_right_ = 0;
        pend_age_ = 0;
        pend_deadline_ = (len_ + 6) / 7;
        pend_active_ = true;
    }

    void step_left() {
        std::size_t i = pend_q_ - pend_left_ - 1;
        if (pend_left_ == 0) {
            ops_.value_into(pendp(i), ring_[slot(i)]);
        } else {
            ops_.value_into(tmp(), ring_[slot(i)]);
            compose_spans(pendp(i), ctmp(), cpendp(i + 1), cc());
        }
        ++pend_left_;
    }

    void step_right() {
        std::size_t j = pend_q_ + pend_right_;
        if (pend_right_ == 0) {
            ops_.value_into(pendp(j), ring_[slot(j)]);
        } else {
            ops_.value_into(tmp(), ring_[slot(j)]);
            compose_spans(pendp(j), cpendp(j - 1), ctmp(), cc());
        }
        ++pend_right_;
    }

    void advance_pending() {
        ++pend_age_;
        int left_budget = 4, right_budget = 4;
        while (left_budget > 0 && pend_left_ < pend_q_ - 1) {
            step_left();
            --left_budget;
        }
        while (right_budget > 0 && pend_q_ + pend_right_ <= len_) {
            step_right();
            --right_budget;
        }
        // a side that finished early donates its budget to the other one
        int spare = left_budget + right_budget;
        while (spare > 0 && pend_left_ < pend_q_ - 1) {
            step_left();
            --spare;
        }
        while (spare > 0 && pend_q_ + pend_right_ <= len_) {
            step_right();
            --spare;
        }
        if (pend_left_ == pend_q_ - 1 && pend_right_ == len_ - pend_q_ + 1) {
            if (pend_age_ > pend_deadline_) deadline_missed_ = true;
            std::swap(prod_, pend_);
            p_ = pend_q_;
            pend_active_ = false;
        }
    }

    Ops ops_;
    std::size_t q_;
    std::size_t cap_;
    std::vector<Payload> ring_;
    std::size_t head_ = 0;
    std::size_t len_ = 0;
    std::size_t p_ = 1; // logical 1-based guardian position, in [1, len_+1]
    std::unique_ptr<std::uint32_t[]> prod_;
    std::unique_ptr<std::uint32_t[]> pend_;
    std::vector<std::uint32_t> tmp_;

    bool was_small_ = true;
    bool pend_active_ = false;
    std::size_t pend_q_ = 0;     // logical position of the replacement guardian
    std::size_t pend_left_ = 0;  // suffix products built: [pend_q_-pend_left_, pend_q_-1]
    std::size_t pend_right_ = 0; // prefix products built: [pend_q_, pend_q_+pend_right_-1]
    std::size_t pend_age_ = 0;
    std::size_t pend_deadline_ = 0;
    bool deadline_missed_ = false;
};

} // namespace slwin
