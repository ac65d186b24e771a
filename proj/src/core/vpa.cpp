#include "core/vpa.hpp"

namespace slwin {

void Vpa::validate() const {
    if (state_count == 0) throw InputError("vpa: no states");
    if (alphabet.empty()) throw InputError("vpa: empty alphabet");
    if (sym_class.size() != alphabet.size()) throw InputError("vpa: symbol class table size");
    if (initial >= state_count) throw InputError("vpa: initial state out of range");
    if (finals.size() != state_count) throw InputError("vpa: finals size mismatch");
    const std::size_t ns = alphabet.size();
    if (call_push.size() != static_cast<std::size_t>(state_count) * ns ||
        call_state.size() != call_push.size() || int_state.size() != call_push.size())
        throw InputError("vpa: transition table size mismatch");
    if (ret_state.size() != static_cast<std::size_t>(state_count) * ns * (stack_count() + 1))
        throw InputError("vpa: return table size mismatch");
    for (std::uint32_t q = 0; q < state_count; ++q) {
        for (std::uint32_t a = 0; a < ns; ++a) {
            switch (sym_class[a]) {
            case SymClass::Call:
                if (call_push[call_idx(q, a)] == 0 || call_push[call_idx(q, a)] > stack_count())
                    throw InputError("vpa: call must push a non-bottom stack symbol");
                if (call_state[call_idx(q, a)] >= state_count)
                    throw InputError("vpa: call target out of range");
                break;
            case SymClass::Return:
                for (std::uint32_t g = 0; g <= stack_count(); ++g)
                    if (ret_state[ret_idx(q, a, g)] >= state_count)
                        throw InputError("vpa: return target out of range");
                break;
            case SymClass::Internal:
                if (int_state[call_idx(q, a)] >= state_count)
                    throw InputError("vpa: internal target out of range");
                break;
            }
        }
    }
}

int Vpa::symbol_code(const std::string& name) const {
    for (std::size_t i = 0; i < alphabet.size(); ++i)
        if (alphabet[i] == name) return static_cast<int>(i);
    return -1;
}

StateTransform phi_letter(const Vpa& vpa, std::uint32_t sym) {
    if (sym >= vpa.alphabet.size())
        throw InputError("phi_letter: unknown symbol code " + std::to_string(sym));
    StateTransform t(vpa.state_count);
    for (std::uint32_t q = 0; q < vpa.state_count; ++q) {
        switch (vpa.sym_class[sym]) {
        case SymClass::Call: t[q] = vpa.call_state[vpa.call_idx(q, sym)]; break;
        case SymClass::Return: t[q] = vpa.ret_state[vpa.ret_idx(q, sym, 0)]; break;
        case SymClass::Internal: t[q] = vpa.int_state[vpa.call_idx(q, sym)]; break;
        }
    }
    return t;
}

VpaConfig vpa_run(const Vpa& vpa, std::span<const std::uint32_t> word) {
    VpaConfig c;
    c.state = vpa.initial;
    for (std::uint32_t a : word) {
        if (a >= vpa.alphabet.size())
            throw InputError("vpa_run: unknown symbol code " + std::to_string(a));
        switch (vpa.sym_class[a]) {
        case SymClass::Call:
            c.stack.push_back(vpa.call_push[vpa.call_idx(c.state, a)]);
            c.state = vpa.call_state[vpa.call_idx(c.state, a)];
            break;
        case SymClass::Return:
            if (c.stack.empty()) {
                c.state = vpa.ret_state[vpa.ret_idx(c.state, a, 0)]; // bottom stays
            } else {
                std::uint32_t g = c.stack.back();
                c.stack.pop_back();
                c.state = vpa.ret_state[vpa.ret_idx(c.state, a, g)];
            }
            break;
        case SymClass::Internal:
            c.state = vpa.int_state[vpa.call_idx(c.state, a)];
            break;
        }
    }
    return c;
}

bool vpa_accepts(const Vpa& vpa, std::span<const std::uint32_t> word) {
    return vpa.finals[vpa_run(vpa, word).state] != 0;
}

} // namespace slwin
