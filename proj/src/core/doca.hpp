#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "core/cost.hpp"
#include "core/errors.hpp"

namespace slwin {

// Deterministic one-counter automaton. States 0..stable_count-1 are stable;
// stable_count..state_count-1 are reset states. A stable state reads a
// letter knowing only whether the counter is zero and moves it by at most
// one; a reset state maps the counter's residue (mod its period) to a stable
// state and zeroes the counter. delta never drives the counter negative.
struct Doca {
    std::uint32_t stable_count = 0;
    std::uint32_t reset_count = 0;
    std::vector<std::string> state_names;
    std::vector<std::string> alphabet;
    std::uint32_t initial = 0;
    std::vector<std::uint8_t> finals;

    // (stable state, symbol, zero flag) -> target state, counter delta
    std::vector<std::uint32_t> d_target;
    std::vector<std::int8_t> d_delta;
    // per reset state r (index r - stable_count): period and the residue map
    std::vector<std::uint32_t> periods;
    std::vector<std::uint32_t> reset_map; // offsets[i] .. offsets[i]+periods[i]
    std::vector<std::uint32_t> reset_off;

    std::uint32_t period_lcm = 1; // p

    std::uint32_t state_count() const { return stable_count + reset_count; }
    bool is_reset(std::uint32_t q) const { return q >= stable_count; }

    std::size_t didx(std::uint32_t q, std::uint32_t a, bool positive) const {
        return (static_cast<std::size_t>(q) * alphabet.size() + a) * 2 + (positive ? 1 : 0);
    }
    std::uint32_t resolve_reset(std::uint32_t q, std::uint64_t m) const {
        std::uint32_t i = q - stable_count;
        return reset_map[reset_off[i] + m % periods[i]];
    }

    void validate() const;
    void compute_lcm();
    int symbol_code(const std::string& name) const;
    int state_code(const std::string& name) const;
};

struct DocaConfig {
    std::uint32_t state = 0;
    std::uint64_t counter = 0;
};

// One-letter step; touched_reset reports whether a reset state was entered
// (and resolved) anywhere in the step, including a reset start state.
DocaConfig doca_step(const Doca& d, DocaConfig c, std::uint32_t sym, bool* touched_reset = nullptr);

DocaConfig doca_run(const Doca& d, std::span<const std::uint32_t> word);
bool doca_accepts(const Doca& d, std::span<const std::uint32_t> word);

// Configuration transformer of a word w, tabulated on counter values
// 0..len+p and extrapolated beyond: runs that never reset shift along with
// the start counter, runs that reset depend on it only modulo p. The flag
// selecting the rule is stored per state for the top row. Tables are filled
// incrementally under a work budget so a long block's effect can be paid for
// across many window updates; the backing arrays are allocated uninitialized
// and only the filled prefix is ever read.
class Effect {
public:
    Effect() = default;
    Effect(const Doca& d, std::uint32_t len); // allocates, rows unfilled

    static Effect of_letter(const Doca& d, std::uint32_t sym, CostCounters* cc);
    static Effect epsilon(const Doca& d, CostCounters* cc);

    std::uint32_t len() const { return len_; }
    bool complete() const { return entries_ > 0 && filled_ == entries_; }
    std::size_t table_entries() const { return entries_; }

    // Fills up to budget entries of the table for the concatenation lhs rhs.
    // Returns entries written. Both operands must be complete.
    std::size_t fill_step(const Doca& d, const Effect& lhs, const Effect& rhs,
                          std::size_t budget, CostCounters* cc);

    DocaConfig apply(const Doca& d, DocaConfig c, CostCounters* cc = nullptr) const;
    bool touched_from(std::uint32_t state, std::uint64_t counter) const;

private:
    std::uint32_t len_ = 0;
    std::uint32_t p_ = 1;
    std::uint32_t states_per_row_ = 0;
    std::size_t entries_ = 0;
    std::size_t filled_ = 0; // entries written so far, row-major (q, m)
    std::unique_ptr<std::uint8_t[]> out_state_;
    std::unique_ptr<std::uint32_t[]> out_count_;
    std::vector<std::uint8_t> touched_top_; // per state, at counter len+p
};

} // namespace slwin
