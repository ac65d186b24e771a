#pragma once

#include <optional>

#include "core/flex_ring.hpp"
#include "core/guardian_deque.hpp"

namespace slwin {

// Removes the capacity limit of GuardianDeque. Keeps the live structure
// A_cur plus a replacement A_nxt of double (half) capacity that is loaded in
// the background: left-end operations are mirrored into A_nxt, right-end
// catch-up pushes copy up to five entries per update from the exact window
// mirror, and A_cur is swapped out the moment the size reaches its capacity
// (grow) or a quarter of it (shrink). A fixed-capacity mode skips all of
// that for the fixed-size window models.
template <typename Ops>
class ResizingDeque {
public:
    using Payload = typename Ops::Payload;

    static constexpr std::size_t MIN_CAP = 16;

    explicit ResizingDeque(Ops ops)
        : ops_(ops), word_(MIN_CAP, ops.counters()), cur_(MIN_CAP, ops), ncur_(MIN_CAP) {}

    // Fixed-capacity: room for max_size entries plus the transient extra one
    // of a paired push/pop update.
    ResizingDeque(Ops ops, std::size_t max_size)
        : ops_(ops),
          word_(max_size + 2, ops.counters()),
          cur_(max_size + 2, ops),
          ncur_(max_size + 2),
          fixed_(true) {}

    std::size_t size() const { return word_.size(); }
    bool empty() const { return word_.empty(); }

    const Payload& front() const { return word_.front(); }
    const Payload& back() const { return word_.back(); }
    const Payload& at(std::size_t i) const { return word_[i]; }

    void push_right(Payload e) {
        count_op();
        word_.push_back(e);
        cur_.push_right(std::move(e));
        maintain();
    }

    void push_left(Payload e) {
        count_op();
        word_.push_front(e);
        cur_.push_left(e);
        // a full shrink-target replacement is about to be reset by this very
        // push crossing the half-capacity threshold; skip the mirror then
        if (nxt_ && nxt_->size() < nxt_->capacity()) {
            nxt_->push_left(std::move(e));
            ++loaded_;
        }
        maintain();
    }

    Payload pop_right() {
        count_op();
        if (word_.empty()) throw StateError("deque: pop on empty");
        word_.pop_back();
        Payload e = cur_.pop_right();
        // A_nxt only mirrors the pop when it already holds the full window;
        // otherwise its prefix is untouched by a right-end removal.
        if (nxt_ && loaded_ > word_.size()) {
            nxt_->pop_right();
            --loaded_;
        }
        maintain();
        return e;
    }

    Payload pop_left() {
        count_op();
        if (word_.empty()) throw StateError("deque: pop on empty");
        word_.pop_front();
        Payload e = cur_.pop_left();
        if (nxt_ && loaded_ > 0) {
            nxt_->pop_left();
            --loaded_;
        }
        maintain();
        return e;
    }

    void product_into(std::span<std::uint32_t> dst) const { cur_.product_into(dst); }
    StateTransform product() const { return cur_.product(); }

    // --- introspection ---
    std::size_t current_capacity() const { return ncur_; }
    std::size_t loaded_prefix() const { return loaded_; }
    bool next_active() const { return nxt_.has_value(); }
    std::size_t swap_count() const { return swaps_; }
    bool swaps_always_ready() const { return swaps_ready_; }
    const GuardianDeque<Ops>& inner() const { return cur_; }
    const GuardianDeque<Ops>* next_inner() const { return nxt_ ? &*nxt_ : nullptr; }
    bool invariant_ok() const {
        return cur_.invariant_ok() && (!nxt_ || nxt_->invariant_ok());
    }

private:
    void count_op() {
        if (ops_.counters()) ++ops_.counters()->deque_ops;
    }

    void maintain() {
        if (fixed_) return;
        const std::size_t sz = word_.size();

        std::size_t want = 0;
        if (sz > ncur_ / 2)
            want = 2 * ncur_;
        else if (ncur_ > MIN_CAP)
            want = ncur_ / 2;
        if (want == 0) {
            nxt_.reset();
            loaded_ = 0;
        } else if (!nxt_ || nxt_->capacity() != want) {
            nxt_.emplace(want, ops_);
            loaded_ = 0;
        }

        if (nxt_) {
            for (int k = 0; k < 5 && loaded_ < sz; ++k) {
                nxt_->push_right(word_[loaded_]);
                ++loaded_;
            }
        }

        bool grow = sz == ncur_;
        bool shrink = ncur_ > MIN_CAP && sz == ncur_ / 4;
        if (grow || shrink) {
            ++swaps_;
            if (!nxt_ || loaded_ != sz) {
                // never expected; repair so the structure stays usable
                swaps_ready_ = false;
                nxt_.emplace(grow ? 2 * ncur_ : ncur_ / 2, ops_);
                for (loaded_ = 0; loaded_ < sz; ++loaded_) nxt_->push_right(word_[loaded_]);
            }
            ncur_ = nxt_->capacity();
            cur_ = std::move(*nxt_);
            nxt_.reset();
            loaded_ = 0;
        }
    }

    Ops ops_;
    FlexRing<Payload> word_; // exact window mirror
    GuardianDeque<Ops> cur_;
    std::size_t ncur_;
    std::optional<GuardianDeque<Ops>> nxt_;
    std::size_t loaded_ = 0; // entries of word_ already pushed into nxt_
    bool fixed_ = false;
    std::size_t swaps_ = 0;
    bool swaps_ready_ = true;
};

} // namespace slwin
