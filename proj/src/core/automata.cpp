#include "core/automata.hpp"

#include <map>
#include <queue>

namespace slwin {

StateTransform compose(const StateTransform& f, const StateTransform& g,
                       CostCounters* cc) {
    if (f.size() != g.size())
        throw InputError("compose: transform sizes differ (" +
                         std::to_string(f.size()) + " vs " + std::to_string(g.size()) + ")");
    StateTransform r(f.size());
    compose_spans(r.map(), f.map(), g.map(), cc);
    return r;
}

StateTransform identity_transform(std::size_t state_count) {
    if (state_count == 0) throw InputError("identity_transform: need at least one state");
    return StateTransform::identity(state_count);
}

void Dfa::validate() const {
    if (state_count == 0) throw InputError("dfa: no states");
    if (alphabet.empty()) throw InputError("dfa: empty alphabet");
    if (initial >= state_count) throw InputError("dfa: initial state out of range");
    if (finals.size() != state_count) throw InputError("dfa: finals size mismatch");
    if (delta.size() != static_cast<std::size_t>(state_count) * alphabet.size())
        throw InputError("dfa: transition table is not total");
    for (std::uint32_t t : delta)
        if (t >= state_count) throw InputError("dfa: transition target out of range");
}

int Dfa::symbol_code(const std::string& name) const {
    for (std::size_t i = 0; i < alphabet.size(); ++i)
        if (alphabet[i] == name) return static_cast<int>(i);
    return -1;
}

StateTransform transform_of_letter(const Dfa& dfa, std::uint32_t sym) {
    if (sym >= dfa.alphabet.size())
        throw InputError("transform_of_letter: unknown symbol code " + std::to_string(sym));
    StateTransform t(dfa.state_count);
    for (std::uint32_t q = 0; q < dfa.state_count; ++q) t[q] = dfa.step(q, sym);
    return t;
}

bool dfa_accepts(const Dfa& dfa, std::span<const std::uint32_t> word) {
    std::uint32_t q = dfa.initial;
    for (std::uint32_t a : word) {
        if (a >= dfa.alphabet.size())
            throw InputError("dfa_accepts: unknown symbol code " + std::to_string(a));
        q = dfa.step(q, a);
    }
    return dfa.is_final(q);
}

namespace {

using StateSet = std::vector<std::uint64_t>; // bitset over original states

bool set_get(const StateSet& s, std::uint32_t q) {
    return (s[q >> 6] >> (q & 63)) & 1u;
}
void set_put(StateSet& s, std::uint32_t q) { s[q >> 6] |= 1ull << (q & 63); }

} // namespace

Dfa reverse_determinize(const Dfa& dfa, std::size_t max_states) {
    dfa.validate();
    const std::size_t words = (dfa.state_count + 63) / 64;
    const std::size_t nsym = dfa.alphabet.size();

    // Reverse-NFA transitions: for each (symbol, target) the set of sources.
    std::vector<StateSet> pre(nsym * dfa.state_count, StateSet(words, 0));
    for (std::uint32_t q = 0; q < dfa.state_count; ++q)
        for (std::uint32_t a = 0; a < nsym; ++a)
            set_put(pre[a * dfa.state_count + dfa.step(q, a)], q);

    StateSet start(words, 0);
    for (std::uint32_t q = 0; q < dfa.state_count; ++q)
        if (dfa.is_final(q)) set_put(start, q);

    std::map<StateSet, std::uint32_t> index;
    std::vector<StateSet> subsets;
    std::queue<std::uint32_t> todo;
    auto intern = [&](const StateSet& s) {
        auto it = index.find(s);
        if (it != index.end()) return it->second;
        if (subsets.size() >= max_states)
            throw ResourceError("reverse_determinize: subset construction exceeded " +
                                std::to_string(max_states) + " states");
        auto id = static_cast<std::uint32_t>(subsets.size());
        index.emplace(s, id);
        subsets.push_back(s);
        todo.push(id);
        return id;
    };
    intern(start);

    Dfa out;
    out.alphabet = dfa.alphabet;
    out.initial = 0;
    while (!todo.empty()) {
        std::uint32_t id = todo.front();
        todo.pop();
        StateSet cur = subsets[id]; // copy: subsets may reallocate below
        for (std::uint32_t a = 0; a < nsym; ++a) {
            StateSet next(words, 0);
            for (std::uint32_t q = 0; q < dfa.state_count; ++q)
                if (set_get(cur, q))
                    for (std::size_t w = 0; w < words; ++w)
                        next[w] |= pre[a * dfa.state_count + q][w];
            std::uint32_t tid = intern(next);
            std::size_t slot = static_cast<std::size_t>(id) * nsym + a;
            if (out.delta.size() <= slot) out.delta.resize((id + 1) * nsym, 0);
            out.delta[slot] = tid;
        }
    }
    out.state_count = static_cast<std::uint32_t>(subsets.size());
    out.delta.resize(static_cast<std::size_t>(out.state_count) * nsym, 0);
    out.finals.assign(out.state_count, 0);
    for (std::uint32_t id = 0; id < out.state_count; ++id)
        if (set_get(subsets[id], dfa.initial)) out.finals[id] = 1;
    out.validate();
    return out;
}

} // namespace slwin
