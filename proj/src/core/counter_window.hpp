#pragma once

#include <memory>
#include <vector>

#include "core/automata.hpp"
#include "core/marked_counter.hpp"
#include "core/window.hpp"

namespace slwin {

// Length-language description: a word of length n is in the language iff
// n >= N and n mod N is in A, or n < N and n is in B.
struct LenSets {
    std::uint32_t period = 1;               // N
    std::vector<std::uint8_t> large;        // A, indexed by residue < N
    std::vector<std::uint8_t> small;        // B, indexed by length < N
};

bool len_accepts(const LenSets& ls, std::uint64_t length);

// Checks that DFA membership depends only on word length for all lengths up
// to 4N and agrees with (N, A, B) there. Throws InputError on a mismatch.
void len_validate_against_dfa(const Dfa& dfa, const LenSets& ls);

// Two-way window for a length language. Stores the length as a residue
// register plus a marked counter for n - N, so updates touch O(1) small
// registers and O(1) bits.
class LenWindow final : public Window {
public:
    explicit LenWindow(LenSets ls);

    std::size_t length() const override { return len_; }

protected:
    void do_apply(WinOp op, std::uint32_t symbol) override;
    bool do_query() override;

private:
    LenSets ls_;
    MarkedCounter over_;      // n - N while in large mode
    std::uint32_t residue_ = 0; // n mod N (large mode)
    std::uint32_t small_n_ = 0; // exact n (small mode)
    bool large_ = false;
    std::size_t len_ = 0; // shadow of the true length, for length() only
};

// One-way window for a regular left ideal, driven by a DFA for the reversal
// language whose unique final state q_F is a sink. Maintains the unordered
// list of (state set, n - n_i) pairs: q is in chunk i iff the shortest
// window suffix s with delta(q, s^R) = q_F has length n - m_i.
class PathSummaryWindow final : public Window {
public:
    explicit PathSummaryWindow(Dfa reversal_dfa);

    std::size_t length() const override { return len_; }

    std::size_t active_chunks() const;
    const Dfa& reversal_dfa() const { return rev_; }

    struct Chunk {
        bool active = false;
        std::vector<std::uint64_t> states; // bitset over rev_ states
        std::uint64_t m = 0;               // n - n_i
    };
    const std::vector<Chunk>& chunks() const { return chunks_; }

protected:
    void do_apply(WinOp op, std::uint32_t symbol) override;
    bool do_query() override;

private:
    void add_final_chunk();

    Dfa rev_;
    std::uint32_t final_state_ = 0;
    std::vector<Chunk> chunks_;
    std::vector<std::uint64_t> scratch_;
    std::size_t len_ = 0;
};

// Validates the unique-final-sink shape required above.
std::uint32_t validate_left_ideal_reversal(const Dfa& rev);

// Derives the reversal automaton of a left ideal given a DFA for the
// language itself: subset construction plus collapsing the (equivalent)
// accepting subsets into one sink. Rejects inputs that are not left ideals.
Dfa left_ideal_reversal_from_language(const Dfa& dfa, std::size_t max_states = 1u << 20);

// Boolean combination over component windows; operations broadcast to every
// leaf, queries evaluate the formula. symbol_maps translates combo-level
// symbol codes into each component's codes (empty = pass through unchanged).
class ComboWindow final : public Window {
public:
    static constexpr std::uint32_t UNMAPPED = 0xffffffffu;

    struct Node {
        enum Kind : std::uint8_t { Leaf, And, Or, Not } kind = Leaf;
        std::size_t leaf = 0; // index into leaves()
        std::unique_ptr<Node> lhs, rhs;
    };

    ComboWindow(std::unique_ptr<Node> formula, std::vector<std::unique_ptr<Window>> leaves,
                std::vector<std::vector<std::uint32_t>> symbol_maps = {});

    std::size_t length() const override { return len_; }
    bool one_way_only() const { return one_way_only_; }
    const std::vector<std::unique_ptr<Window>>& leaves() const { return leaves_; }

protected:
    void do_apply(WinOp op, std::uint32_t symbol) override;
    bool do_query() override;

private:
    bool eval(const Node& n);

    std::unique_ptr<Node> formula_;
    std::vector<std::unique_ptr<Window>> leaves_;
    std::vector<std::vector<std::uint32_t>> symbol_maps_;
    bool one_way_only_ = false;
    std::size_t len_ = 0;
};

} // namespace slwin
