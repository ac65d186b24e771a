#include "core/marked_counter.hpp"

namespace slwin {

namespace {
constexpr std::size_t INITIAL_WORDS = 4;
} // namespace

MarkedCounter::MarkedCounter(CostCounters* cc) : cc_(cc) {
    words_ = std::make_unique<std::uint64_t[]>(INITIAL_WORDS);
    word_cap_ = INITIAL_WORDS;
    words_[0] = 0;
    zeroed_ = 1; // remaining words are zeroed in the background
}

bool MarkedCounter::bit(std::size_t pos) const {
    std::size_t w = pos >> 6;
    if (w >= zeroed_) return false;
    return (words_[w] >> (pos & 63)) & 1u;
}

void MarkedCounter::set_bit(std::size_t pos, bool v) {
    std::size_t w = pos >> 6;
    if (v)
        words_[w] |= 1ull << (pos & 63);
    else
        words_[w] &= ~(1ull << (pos & 63));
    last_writes_.push_back(pos);
    if (cc_) ++cc_->bit_writes;
    // keep top_ = one past the highest set bit; whenever a clear removes the
    // highest bit, the rules guarantee every other bit is already zero
    if (v) {
        if (pos + 1 > top_) top_ = pos + 1;
    } else if (top_ == pos + 1) {
        top_ = 0;
    }
}

void MarkedCounter::grow_tick() {
    // Zero two fresh words per operation so a rule-E growth always finds the
    // position it needs already cleared; migrate to a double-size buffer two
    // words per operation once half of this one is live.
    for (int k = 0; k < 2 && zeroed_ < word_cap_; ++k) words_[zeroed_++] = 0;

    std::size_t words_needed = (len_ + 2 + 63) / 64;
    if (!next_ && words_needed * 2 > word_cap_) {
        next_cap_ = word_cap_ * 2;
        next_ = std::make_unique<std::uint64_t[]>(next_cap_);
        next_done_ = 0;
    }
    if (next_) {
        for (int k = 0; k < 2 && next_done_ < next_cap_; ++k) {
            next_[next_done_] = next_done_ < zeroed_ ? words_[next_done_] : 0;
            ++next_done_;
        }
        if (next_done_ == next_cap_) {
            words_ = std::move(next_);
            word_cap_ = next_cap_;
            zeroed_ = next_cap_;
            next_.reset();
        }
    }
}

void MarkedCounter::inc() {
    last_writes_.clear();
    grow_tick();
    if (!bit(mark_)) {
        if (mark_ == 0) {
            set_bit(0, true); // u[0] -> u[1]
        } else {
            --mark_; // u[0]0v -> u0[0]v
        }
    } else if (mark_ + 1 == len_) {
        // [1]0^(len-1) -> 1[0]0^(len-1); the prefix left of the mark is empty
        set_bit(mark_ + 1, true);
        set_bit(mark_, false);
        ++len_;
    } else if (!bit(mark_ + 1)) {
        set_bit(mark_ + 1, true); // u0[1]v -> u1[0]v
        set_bit(mark_, false);
    } else {
        set_bit(mark_, false); // u1[1]v -> u[1]0v
        ++mark_;
    }
}

void MarkedCounter::dec() {
    if (is_zero()) throw StateError("marked counter: decrement at zero");
    last_writes_.clear();
    grow_tick();
    if (bit(mark_)) {
        if (mark_ == 0) {
            set_bit(0, false); // u[1] -> u[0]
        } else {
            set_bit(mark_ - 1, true); // u[1]0v -> u1[1]v
            --mark_;
        }
    } else if (bit(mark_ + 1)) {
        set_bit(mark_ + 1, false); // u1[0]v -> u0[1]v
        set_bit(mark_, true);
    } else {
        ++mark_; // u0[0]v -> u[0]0v
    }
}

std::string MarkedCounter::bits_string() const {
    std::string s;
    for (std::size_t pos = len_; pos-- > 0;) s.push_back(bit(pos) ? '1' : '0');
    return s;
}

bool MarkedCounter::storage_invariants_ok() const {
    for (std::size_t pos = 0; pos < mark_; ++pos)
        if (bit(pos)) return false; // right of the mark must be zero
    for (std::size_t pos = top_; pos < len_; ++pos)
        if (bit(pos)) return false; // nothing set at or above top_
    if (top_ > 0 && !bit(top_ - 1)) return false;
    return mark_ < len_;
}

} // namespace slwin
