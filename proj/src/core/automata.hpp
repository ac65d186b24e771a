#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "core/cost.hpp"
#include "core/errors.hpp"
#include "core/small_vec.hpp"

namespace slwin {

// An element of the transformation monoid Q^Q, stored as the image sequence:
// map[q] is where q goes. Products are composed left to right, i.e. the
// product f*g applies f first: (f*g)(q) = g(f(q)).
class StateTransform {
public:
    StateTransform() = default;
    explicit StateTransform(std::size_t n) : map_(n) {}

    static StateTransform identity(std::size_t n) {
        StateTransform t(n);
        for (std::size_t q = 0; q < n; ++q) t.map_[q] = static_cast<std::uint32_t>(q);
        return t;
    }

    std::size_t size() const { return map_.size(); }
    std::uint32_t operator[](std::size_t q) const { return map_[q]; }
    std::uint32_t& operator[](std::size_t q) { return map_[q]; }
    std::span<const std::uint32_t> map() const { return map_.span(); }
    std::span<std::uint32_t> map() { return map_.span(); }

    std::uint32_t apply(std::uint32_t q) const { return map_[q]; }

    friend bool operator==(const StateTransform&, const StateTransform&) = default;

private:
    SmallU32Vec<8> map_;
};

// dst = g o f on images, i.e. the left-to-right product f*g. dst must not
// alias f or g. Counts one composition.
inline void compose_spans(std::span<std::uint32_t> dst,
                          std::span<const std::uint32_t> f,
                          std::span<const std::uint32_t> g,
                          CostCounters* cc) {
    for (std::size_t q = 0; q < dst.size(); ++q) dst[q] = g[f[q]];
    if (cc) ++cc->monoid_compositions;
}

StateTransform compose(const StateTransform& f, const StateTransform& g,
                       CostCounters* cc = nullptr);

StateTransform identity_transform(std::size_t state_count);

// Deterministic finite automaton over an interned alphabet. delta is total:
// entry state*|alphabet|+symbol.
struct Dfa {
    std::uint32_t state_count = 0;
    std::vector<std::string> alphabet;
    std::uint32_t initial = 0;
    std::vector<std::uint8_t> finals; // indexed by state
    std::vector<std::uint32_t> delta;

    std::uint32_t step(std::uint32_t q, std::uint32_t sym) const {
        return delta[static_cast<std::size_t>(q) * alphabet.size() + sym];
    }
    bool is_final(std::uint32_t q) const { return finals[q] != 0; }

    // Throws InputError if the tuple is not a well-formed total DFA.
    void validate() const;

    int symbol_code(const std::string& name) const;
};

StateTransform transform_of_letter(const Dfa& dfa, std::uint32_t sym);

bool dfa_accepts(const Dfa& dfa, std::span<const std::uint32_t> word);

// Subset construction for the reversal language { w^R : w in L(dfa) }.
// Throws ResourceError if more than max_states subsets become reachable.
Dfa reverse_determinize(const Dfa& dfa, std::size_t max_states = 1u << 20);

} // namespace slwin
