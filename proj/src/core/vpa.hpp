#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/automata.hpp"

namespace slwin {

enum class SymClass : std::uint8_t { Call, Return, Internal };

// Visibly pushdown automaton. The alphabet is partitioned into calls
// (always push), returns (always pop; bottom is never popped) and internals.
// Stack symbol 0 is the bottom marker; real stack symbols are 1..stack_count.
struct Vpa {
    std::uint32_t state_count = 0;
    std::vector<std::string> alphabet;
    std::vector<SymClass> sym_class; // by symbol code
    std::vector<std::string> stack_names; // excluding bottom
    std::uint32_t initial = 0;
    std::vector<std::uint8_t> finals;

    // call: (state, call symbol) -> (stack symbol >= 1, state)
    std::vector<std::uint32_t> call_push;  // stack symbol
    std::vector<std::uint32_t> call_state; // next state
    // return: (state, return symbol, stack symbol incl. bottom 0) -> state
    std::vector<std::uint32_t> ret_state;
    // internal: (state, internal symbol) -> state
    std::vector<std::uint32_t> int_state;

    std::uint32_t stack_count() const { return static_cast<std::uint32_t>(stack_names.size()); }

    std::size_t call_idx(std::uint32_t q, std::uint32_t a) const {
        return static_cast<std::size_t>(q) * alphabet.size() + a;
    }
    std::size_t ret_idx(std::uint32_t q, std::uint32_t a, std::uint32_t g) const {
        return (static_cast<std::size_t>(q) * alphabet.size() + a) * (stack_count() + 1) + g;
    }

    void validate() const;
    int symbol_code(const std::string& name) const;
};

// State transformation of one letter when the stack holds only the bottom
// marker: internal row, return row at bottom, or the state component of the
// call transition.
StateTransform phi_letter(const Vpa& vpa, std::uint32_t sym);

struct VpaConfig {
    std::uint32_t state = 0;
    std::vector<std::uint32_t> stack; // excluding the bottom marker
};

// Reference evaluator: run the word from the bottom configuration.
VpaConfig vpa_run(const Vpa& vpa, std::span<const std::uint32_t> word);
bool vpa_accepts(const Vpa& vpa, std::span<const std::uint32_t> word);

} // namespace slwin
