#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "core/cost.hpp"
#include "core/errors.hpp"

namespace slwin {

// Nonnegative counter stored as a bit string s of length len_ with one
// marked position. Increments and decrements rewrite at most two bits, each
// within distance one of the mark, so a single update touches O(1) storage
// regardless of the value. Positions are numbered from the right (rightmost
// bit is position 0); every bit strictly right of the mark is zero.
//
// Rewrite rules for +1 (mark underlined):
//   u [0]            -> u [1]                  (mark at position 0)
//   u 0 [1] v        -> u 1 [0] v
//   u [0] 0 v        -> u 0 [0] v              (mark slides right)
//   u 1 [1] v        -> u [1] 0 v              (mark slides left)
//   [1] 0^(len-1)    -> 1 [0] 0^(len-1)        (len grows by one)
// -1 reverses them. The length never shrinks; extra leading zeros are
// harmless. The zero test is O(1) via top_, one past the highest set bit.
class MarkedCounter {
public:
    explicit MarkedCounter(CostCounters* cc = nullptr);

    void inc();
    // Contract: the represented value must be positive.
    void dec();
    bool is_zero() const { return top_ == 0; }

    // --- introspection ---
    std::size_t length() const { return len_; }
    std::size_t mark() const { return mark_; }
    std::size_t zero_boundary() const { return top_; }
    bool bit(std::size_t pos) const;
    // Bits as written left to right (position len-1 first), e.g. "010".
    std::string bits_string() const;
    // Positions written by the last inc/dec, for locality checks.
    const std::vector<std::size_t>& last_writes() const { return last_writes_; }

    bool storage_invariants_ok() const;

private:
    void set_bit(std::size_t pos, bool v);
    void grow_tick(); // background zeroing / buffer migration, O(1) per op

    std::unique_ptr<std::uint64_t[]> words_;
    std::size_t word_cap_ = 0;   // words allocated
    std::size_t zeroed_ = 0;     // words of words_ known to be zero-initialized
    std::unique_ptr<std::uint64_t[]> next_;
    std::size_t next_cap_ = 0;
    std::size_t next_done_ = 0;  // words copied or zeroed in next_

    std::size_t len_ = 1;  // logical bit-string length
    std::size_t mark_ = 0;
    std::size_t top_ = 0;  // one past the highest set bit; 0 iff all zero
    std::vector<std::size_t> last_writes_;
    CostCounters* cc_;
};

} // namespace slwin
