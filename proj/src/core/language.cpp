#include "core/language.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "core/doca_window.hpp"
#include "core/regular_window.hpp"
#include "core/vpl_window.hpp"

namespace slwin {

const char* lang_class_name(LangClass c) {
    switch (c) {
    case LangClass::Dfa: return "dfa";
    case LangClass::Vpa: return "vpa";
    case LangClass::Doca: return "doca";
    case LangClass::Len: return "len";
    case LangClass::LeftIdeal: return "li";
    case LangClass::Combo: return "combo";
    }
    return "?";
}

int LanguageSpec::symbol_code(const std::string& name) const {
    if (alphabet.size() == 1 && alphabet[0] == "*") return 0; // wildcard
    for (std::size_t i = 0; i < alphabet.size(); ++i)
        if (alphabet[i] == name) return static_cast<int>(i);
    return -1;
}

bool LanguageSpec::two_way_capable() const {
    if (cls == LangClass::LeftIdeal) return false;
    if (cls == LangClass::Combo)
        for (const auto& c : children)
            if (!c->two_way_capable()) return false;
    return true;
}

namespace {

struct Line {
    std::size_t no = 0;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    std::size_t no = 0;
    while (std::getline(in, raw)) {
        ++no;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        Line l;
        l.no = no;
        std::string tok;
        while (ls >> tok) l.tokens.push_back(tok);
        if (!l.tokens.empty()) lines.push_back(std::move(l));
    }
    return lines;
}

std::uint32_t parse_u32(const std::string& s, std::size_t line) {
    try {
        std::size_t pos = 0;
        unsigned long v = std::stoul(s, &pos);
        if (pos != s.size() || v > 0xffffffffull) throw std::invalid_argument("");
        return static_cast<std::uint32_t>(v);
    } catch (...) {
        throw ParseError("expected a number, got '" + s + "'", line);
    }
}

int find_symbol(const std::vector<std::string>& alphabet, const std::string& s) {
    for (std::size_t i = 0; i < alphabet.size(); ++i)
        if (alphabet[i] == s) return static_cast<int>(i);
    return -1;
}

std::uint32_t need_symbol(const std::vector<std::string>& alphabet, const std::string& s,
                          std::size_t line) {
    int c = find_symbol(alphabet, s);
    if (c < 0) throw ParseError("unknown symbol '" + s + "'", line);
    return static_cast<std::uint32_t>(c);
}

void add_symbols(std::vector<std::string>& alphabet, const Line& l, std::size_t from) {
    for (std::size_t i = from; i < l.tokens.size(); ++i) {
        if (find_symbol(alphabet, l.tokens[i]) >= 0)
            throw ParseError("symbol '" + l.tokens[i] + "' declared twice", l.no);
        alphabet.push_back(l.tokens[i]);
    }
}

Dfa parse_dfa_body(const std::vector<Line>& lines, std::size_t from) {
    Dfa d;
    std::uint32_t nfinal_seen = 0;
    std::vector<std::pair<Line, int>> trans; // deferred until sizes known
    bool have_states = false;
    for (std::size_t i = from; i < lines.size(); ++i) {
        const Line& l = lines[i];
        const std::string& k = l.tokens[0];
        if (k == "alphabet") {
            add_symbols(d.alphabet, l, 1);
        } else if (k == "states") {
            if (l.tokens.size() != 2) throw ParseError("states: one count expected", l.no);
            d.state_count = parse_u32(l.tokens[1], l.no);
            d.finals.assign(d.state_count, 0);
            have_states = true;
        } else if (k == "initial") {
            if (l.tokens.size() != 2) throw ParseError("initial: one state expected", l.no);
            d.initial = parse_u32(l.tokens[1], l.no);
        } else if (k == "final") {
            if (!have_states) throw ParseError("final before states", l.no);
            for (std::size_t t = 1; t < l.tokens.size(); ++t) {
                std::uint32_t q = parse_u32(l.tokens[t], l.no);
                if (q >= d.state_count) throw ParseError("final state out of range", l.no);
                d.finals[q] = 1;
                ++nfinal_seen;
            }
        } else if (k == "trans") {
            if (l.tokens.size() != 4) throw ParseError("trans: state symbol state expected", l.no);
            trans.push_back({l, 0});
        } else {
            throw ParseError("unknown directive '" + k + "' in dfa", l.no);
        }
    }
    (void)nfinal_seen;
    if (!have_states) throw ParseError("dfa: missing states line", from < lines.size() ? lines[from].no : 0);
    if (d.alphabet.empty()) throw ParseError("dfa: missing alphabet line", 0);
    d.delta.assign(static_cast<std::size_t>(d.state_count) * d.alphabet.size(), 0);
    std::vector<std::uint8_t> seen(d.delta.size(), 0);
    for (auto& [l, unused] : trans) {
        (void)unused;
        std::uint32_t q = parse_u32(l.tokens[1], l.no);
        std::uint32_t a = need_symbol(d.alphabet, l.tokens[2], l.no);
        std::uint32_t t = parse_u32(l.tokens[3], l.no);
        if (q >= d.state_count || t >= d.state_count)
            throw ParseError("trans: state out of range", l.no);
        std::size_t idx = static_cast<std::size_t>(q) * d.alphabet.size() + a;
        if (seen[idx]) throw ParseError("trans: duplicate for this state and symbol", l.no);
        seen[idx] = 1;
        d.delta[idx] = t;
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i])
            throw ParseError("dfa: transition table incomplete (state " +
                                 std::to_string(i / d.alphabet.size()) + ", symbol '" +
                                 d.alphabet[i % d.alphabet.size()] + "')",
                             0);
    d.validate();
    return d;
}

Vpa parse_vpa_body(const std::vector<Line>& lines, std::size_t from) {
    Vpa v;
    std::vector<SymClass> clazz;
    bool have_states = false;
    std::vector<Line> tcall, tret, tretbot, tint;
    for (std::size_t i = from; i < lines.size(); ++i) {
        const Line& l = lines[i];
        const std::string& k = l.tokens[0];
        if (k == "calls" || k == "returns" || k == "internals") {
            SymClass sc = k == "calls" ? SymClass::Call
                        : k == "returns" ? SymClass::Return : SymClass::Internal;
            for (std::size_t t = 1; t < l.tokens.size(); ++t) {
                if (find_symbol(v.alphabet, l.tokens[t]) >= 0)
                    throw ParseError("symbol '" + l.tokens[t] + "' appears in two classes", l.no);
                v.alphabet.push_back(l.tokens[t]);
                v.sym_class.push_back(sc);
            }
        } else if (k == "states") {
            v.state_count = parse_u32(l.tokens.at(1), l.no);
            v.finals.assign(v.state_count, 0);
            have_states = true;
        } else if (k == "stack") {
            add_symbols(v.stack_names, l, 1);
        } else if (k == "initial") {
            v.initial = parse_u32(l.tokens.at(1), l.no);
        } else if (k == "final") {
            if (!have_states) throw ParseError("final before states", l.no);
            for (std::size_t t = 1; t < l.tokens.size(); ++t) {
                std::uint32_t q = parse_u32(l.tokens[t], l.no);
                if (q >= v.state_count) throw ParseError("final state out of range", l.no);
                v.finals[q] = 1;
            }
        } else if (k == "tcall") {
            tcall.push_back(l);
        } else if (k == "tret") {
            tret.push_back(l);
        } else if (k == "tretbot") {
            tretbot.push_back(l);
        } else if (k == "tint") {
            tint.push_back(l);
        } else {
            throw ParseError("unknown directive '" + k + "' in vpa", l.no);
        }
    }
    if (!have_states) throw ParseError("vpa: missing states line", 0);
    if (v.alphabet.empty()) throw ParseError("vpa: empty alphabet", 0);
    const std::size_t ns = v.alphabet.size();
    v.call_push.assign(static_cast<std::size_t>(v.state_count) * ns, 0);
    v.call_state.assign(v.call_push.size(), 0);
    v.int_state.assign(v.call_push.size(), 0);
    v.ret_state.assign(v.call_push.size() * (v.stack_count() + 1), 0);
    std::vector<std::uint8_t> seen_c(v.call_push.size(), 0), seen_i(v.call_push.size(), 0),
        seen_r(v.ret_state.size(), 0);

    auto stack_code = [&](const std::string& s, std::size_t line) -> std::uint32_t {
        int c = find_symbol(v.stack_names, s);
        if (c < 0) throw ParseError("unknown stack symbol '" + s + "'", line);
        return static_cast<std::uint32_t>(c) + 1; // 0 is the bottom marker
    };
    auto state_num = [&](const std::string& s, std::size_t line) {
        std::uint32_t q = parse_u32(s, line);
        if (q >= v.state_count) throw ParseError("state out of range", line);
        return q;
    };
    for (const Line& l : tcall) {
        if (l.tokens.size() != 5) throw ParseError("tcall: q a g q' expected", l.no);
        std::uint32_t q = state_num(l.tokens[1], l.no);
        std::uint32_t a = need_symbol(v.alphabet, l.tokens[2], l.no);
        if (v.sym_class[a] != SymClass::Call) throw ParseError("tcall on a non-call symbol", l.no);
        std::uint32_t g = stack_code(l.tokens[3], l.no);
        std::uint32_t t = state_num(l.tokens[4], l.no);
        std::size_t idx = v.call_idx(q, a);
        if (seen_c[idx]) throw ParseError("tcall: duplicate", l.no);
        seen_c[idx] = 1;
        v.call_push[idx] = g;
        v.call_state[idx] = t;
    }
    for (const Line& l : tint) {
        if (l.tokens.size() != 4) throw ParseError("tint: q a q' expected", l.no);
        std::uint32_t q = state_num(l.tokens[1], l.no);
        std::uint32_t a = need_symbol(v.alphabet, l.tokens[2], l.no);
        if (v.sym_class[a] != SymClass::Internal)
            throw ParseError("tint on a non-internal symbol", l.no);
        std::uint32_t t = state_num(l.tokens[3], l.no);
        std::size_t idx = v.call_idx(q, a);
        if (seen_i[idx]) throw ParseError("tint: duplicate", l.no);
        seen_i[idx] = 1;
        v.int_state[idx] = t;
    }
    for (const Line& l : tret) {
        if (l.tokens.size() != 5) throw ParseError("tret: q b g q' expected", l.no);
        std::uint32_t q = state_num(l.tokens[1], l.no);
        std::uint32_t a = need_symbol(v.alphabet, l.tokens[2], l.no);
        if (v.sym_class[a] != SymClass::Return) throw ParseError("tret on a non-return symbol", l.no);
        std::uint32_t g = stack_code(l.tokens[3], l.no);
        std::uint32_t t = state_num(l.tokens[4], l.no);
        std::size_t idx = v.ret_idx(q, a, g);
        if (seen_r[idx]) throw ParseError("tret: duplicate", l.no);
        seen_r[idx] = 1;
        v.ret_state[idx] = t;
    }
    for (const Line& l : tretbot) {
        if (l.tokens.size() != 4) throw ParseError("tretbot: q b q' expected", l.no);
        std::uint32_t q = state_num(l.tokens[1], l.no);
        std::uint32_t a = need_symbol(v.alphabet, l.tokens[2], l.no);
        if (v.sym_class[a] != SymClass::Return)
            throw ParseError("tretbot on a non-return symbol", l.no);
        std::uint32_t t = state_num(l.tokens[3], l.no);
        std::size_t idx = v.ret_idx(q, a, 0);
        if (seen_r[idx]) throw ParseError("tretbot: duplicate", l.no);
        seen_r[idx] = 1;
        v.ret_state[idx] = t;
    }
    for (std::uint32_t q = 0; q < v.state_count; ++q)
        for (std::uint32_t a = 0; a < ns; ++a) {
            switch (v.sym_class[a]) {
            case SymClass::Call:
                if (!seen_c[v.call_idx(q, a)])
                    throw ParseError("vpa: missing tcall for state " + std::to_string(q) +
                                         ", symbol '" + v.alphabet[a] + "'", 0);
                break;
            case SymClass::Internal:
                if (!seen_i[v.call_idx(q, a)])
                    throw ParseError("vpa: missing tint for state " + std::to_string(q) +
                                         ", symbol '" + v.alphabet[a] + "'", 0);
                break;
            case SymClass::Return:
                for (std::uint32_t g = 0; g <= v.stack_count(); ++g)
                    if (!seen_r[v.ret_idx(q, a, g)])
                        throw ParseError("vpa: missing tret/tretbot for state " +
                                             std::to_string(q) + ", symbol '" + v.alphabet[a] +
                                             "', stack " + std::to_string(g), 0);
                break;
            }
        }
    v.validate();
    return v;
}

Doca parse_doca_body(const std::vector<Line>& lines, std::size_t from) {
    Doca d;
    std::vector<std::string> stable_names, reset_names;
    std::vector<Line> trans, periods, rmaps, final_lines;
    std::string initial_name;
    for (std::size_t i = from; i < lines.size(); ++i) {
        const Line& l = lines[i];
        const std::string& k = l.tokens[0];
        if (k == "stable") {
            for (std::size_t t = 1; t < l.tokens.size(); ++t) stable_names.push_back(l.tokens[t]);
        } else if (k == "reset") {
            for (std::size_t t = 1; t < l.tokens.size(); ++t) reset_names.push_back(l.tokens[t]);
        } else if (k == "alphabet") {
            add_symbols(d.alphabet, l, 1);
        } else if (k == "initial") {
            if (l.tokens.size() != 2) throw ParseError("initial: one state expected", l.no);
            initial_name = l.tokens[1];
        } else if (k == "final") {
            final_lines.push_back(l);
        } else if (k == "trans") {
            trans.push_back(l);
        } else if (k == "period") {
            periods.push_back(l);
        } else if (k == "rmap") {
            rmaps.push_back(l);
        } else {
            throw ParseError("unknown directive '" + k + "' in doca", l.no);
        }
    }
    d.stable_count = static_cast<std::uint32_t>(stable_names.size());
    d.reset_count = static_cast<std::uint32_t>(reset_names.size());
    d.state_names = stable_names;
    d.state_names.insert(d.state_names.end(), reset_names.begin(), reset_names.end());
    for (std::size_t i = 0; i < d.state_names.size(); ++i)
        for (std::size_t j = i + 1; j < d.state_names.size(); ++j)
            if (d.state_names[i] == d.state_names[j])
                throw ParseError("doca: state '" + d.state_names[i] + "' declared twice", 0);
    auto state_of = [&](const std::string& s, std::size_t line) {
        int c = d.state_code(s);
        if (c < 0) throw ParseError("unknown state '" + s + "'", line);
        return static_cast<std::uint32_t>(c);
    };
    if (initial_name.empty()) throw ParseError("doca: missing initial line", 0);
    d.initial = state_of(initial_name, 0);
    d.finals.assign(d.state_count(), 0);
    for (const Line& l : final_lines)
        for (std::size_t t = 1; t < l.tokens.size(); ++t) d.finals[state_of(l.tokens[t], l.no)] = 1;

    d.d_target.assign(static_cast<std::size_t>(d.stable_count) * d.alphabet.size() * 2, 0);
    d.d_delta.assign(d.d_target.size(), 0);
    std::vector<std::uint8_t> seen(d.d_target.size(), 0);
    for (const Line& l : trans) {
        if (l.tokens.size() != 6) throw ParseError("trans: q a z q' d expected", l.no);
        std::uint32_t q = state_of(l.tokens[1], l.no);
        if (d.is_reset(q)) throw ParseError("trans from a reset state", l.no);
        std::uint32_t a = need_symbol(d.alphabet, l.tokens[2], l.no);
        std::uint32_t z = parse_u32(l.tokens[3], l.no);
        if (z > 1) throw ParseError("trans: zero flag must be 0 or 1", l.no);
        std::uint32_t t = state_of(l.tokens[4], l.no);
        int dd;
        if (l.tokens[5] == "-1")
            dd = -1;
        else if (l.tokens[5] == "0")
            dd = 0;
        else if (l.tokens[5] == "1" || l.tokens[5] == "+1")
            dd = 1;
        else
            throw ParseError("trans: counter delta must be -1, 0 or 1", l.no);
        if (z == 0 && dd < 0)
            throw ParseError("trans: cannot decrement a zero counter", l.no);
        std::size_t idx = d.didx(q, a, z == 1);
        if (seen[idx]) throw ParseError("trans: duplicate", l.no);
        seen[idx] = 1;
        d.d_target[idx] = t;
        d.d_delta[idx] = static_cast<std::int8_t>(dd);
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i]) throw ParseError("doca: transition table incomplete", 0);

    d.periods.assign(d.reset_count, 0);
    for (const Line& l : periods) {
        if (l.tokens.size() != 3) throw ParseError("period: state count expected", l.no);
        std::uint32_t q = state_of(l.tokens[1], l.no);
        if (!d.is_reset(q)) throw ParseError("period of a non-reset state", l.no);
        d.periods[q - d.stable_count] = parse_u32(l.tokens[2], l.no);
    }
    d.reset_off.assign(d.reset_count, 0);
    std::uint32_t off = 0;
    for (std::uint32_t i = 0; i < d.reset_count; ++i) {
        if (d.periods[i] == 0)
            throw ParseError("doca: missing period for reset state '" +
                                 d.state_names[d.stable_count + i] + "'", 0);
        d.reset_off[i] = off;
        off += d.periods[i];
    }
    d.reset_map.assign(off, d.state_count()); // sentinel: unset
    for (const Line& l : rmaps) {
        if (l.tokens.size() != 4) throw ParseError("rmap: state residue target expected", l.no);
        std::uint32_t q = state_of(l.tokens[1], l.no);
        if (!d.is_reset(q)) throw ParseError("rmap of a non-reset state", l.no);
        std::uint32_t i = q - d.stable_count;
        std::uint32_t k = parse_u32(l.tokens[2], l.no);
        if (k >= d.periods[i]) throw ParseError("rmap: residue exceeds the period", l.no);
        std::uint32_t t = state_of(l.tokens[3], l.no);
        if (d.is_reset(t)) throw ParseError("rmap must target a stable state", l.no);
        if (d.reset_map[d.reset_off[i] + k] != d.state_count())
            throw ParseError("rmap: duplicate", l.no);
        d.reset_map[d.reset_off[i] + k] = t;
    }
    for (std::uint32_t x : d.reset_map)
        if (x == d.state_count()) throw ParseError("doca: reset map incomplete", 0);
    d.compute_lcm();
    d.validate();
    return d;
}

LenSets parse_len_line(const Line& l) {
    LenSets ls;
    std::vector<std::uint32_t> a_vals, b_vals;
    bool have_n = false;
    for (std::size_t t = 1; t < l.tokens.size(); ++t) {
        const std::string& tok = l.tokens[t];
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw ParseError("len: expected key=value, got '" + tok + "'", l.no);
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        std::vector<std::uint32_t> vals;
        if (!val.empty()) {
            std::istringstream vs(val);
            std::string piece;
            while (std::getline(vs, piece, ','))
                vals.push_back(parse_u32(piece, l.no));
        }
        if (key == "N") {
            if (vals.size() != 1) throw ParseError("len: N needs one value", l.no);
            ls.period = vals[0];
            have_n = true;
        } else if (key == "A") {
            a_vals = vals;
        } else if (key == "B") {
            b_vals = vals;
        } else {
            throw ParseError("len: unknown key '" + key + "'", l.no);
        }
    }
    if (!have_n || ls.period == 0) throw ParseError("len: N must be at least 1", l.no);
    ls.large.assign(ls.period, 0);
    ls.small.assign(ls.period, 0);
    for (std::uint32_t v : a_vals) {
        if (v >= ls.period) throw ParseError("len: residue in A exceeds N-1", l.no);
        ls.large[v] = 1;
    }
    for (std::uint32_t v : b_vals) {
        if (v >= ls.period) throw ParseError("len: length in B exceeds N-1", l.no);
        ls.small[v] = 1;
    }
    return ls;
}

} // namespace

LanguageSpec parse_language(const std::string& text, const std::string& base_dir);

namespace {

std::unique_ptr<LanguageSpec::Formula> parse_formula(const std::vector<std::string>& toks,
                                                     std::size_t& pos,
                                                     std::vector<std::string>& files) {
    if (pos >= toks.size()) throw ParseError("combo: formula ended unexpectedly", 0);
    auto node = std::make_unique<LanguageSpec::Formula>();
    const std::string& t = toks[pos++];
    if (t == "and" || t == "or") {
        node->kind = t == "and" ? LanguageSpec::Formula::And : LanguageSpec::Formula::Or;
        node->lhs = parse_formula(toks, pos, files);
        node->rhs = parse_formula(toks, pos, files);
    } else if (t == "not") {
        node->kind = LanguageSpec::Formula::Not;
        node->lhs = parse_formula(toks, pos, files);
    } else {
        node->kind = LanguageSpec::Formula::Leaf;
        // the same file used twice shares one component window
        for (std::size_t i = 0; i < files.size(); ++i)
            if (files[i] == t) {
                node->leaf = i;
                return node;
            }
        node->leaf = files.size();
        files.push_back(t);
    }
    return node;
}

LanguageSpec parse_combo(const std::vector<Line>& lines, const std::string& base_dir) {
    std::vector<std::string> toks;
    for (std::size_t i = 1; i < lines.size(); ++i)
        toks.insert(toks.end(), lines[i].tokens.begin(), lines[i].tokens.end());
    if (!lines.empty() && lines[0].tokens.size() > 1)
        toks.insert(toks.begin(), lines[0].tokens.begin() + 1, lines[0].tokens.end());
    LanguageSpec spec;
    spec.cls = LangClass::Combo;
    std::size_t pos = 0;
    std::vector<std::string> files;
    spec.formula = parse_formula(toks, pos, files);
    if (pos != toks.size()) throw ParseError("combo: trailing tokens after the formula", 0);
    if (files.empty()) throw ParseError("combo: no components", 0);
    spec.child_paths = files;
    for (const std::string& f : files) {
        std::string path = f;
        if (!base_dir.empty() && f.find('/') != 0) path = base_dir + "/" + f;
        auto child = std::make_unique<LanguageSpec>(load_language(path));
        if (child->cls != LangClass::Len && child->cls != LangClass::LeftIdeal)
            throw ParseError("combo: components must be len or li languages ('" + f + "')", 0);
        spec.children.push_back(std::move(child));
    }
    // alphabet: symbols every automaton component understands, in the order
    // of the first automaton component; wildcard if there is none
    const LanguageSpec* first_auto = nullptr;
    for (const auto& c : spec.children)
        if (c->cls == LangClass::LeftIdeal) {
            first_auto = c.get();
            break;
        }
    if (!first_auto) {
        spec.alphabet = {"*"};
    } else {
        for (const std::string& s : first_auto->alphabet) {
            bool all = true;
            for (const auto& c : spec.children)
                if (c->cls == LangClass::LeftIdeal && c->symbol_code(s) < 0) all = false;
            if (all) spec.alphabet.push_back(s);
        }
        if (spec.alphabet.empty())
            throw ParseError("combo: components share no alphabet symbols", 0);
    }
    for (const auto& c : spec.children) {
        std::vector<std::uint32_t> map(spec.alphabet.size(), 0);
        if (c->cls == LangClass::LeftIdeal)
            for (std::size_t i = 0; i < spec.alphabet.size(); ++i)
                map[i] = static_cast<std::uint32_t>(c->symbol_code(spec.alphabet[i]));
        spec.child_symbol_maps.push_back(std::move(map));
    }
    return spec;
}

} // namespace

LanguageSpec parse_language(const std::string& text, const std::string& base_dir) {
    std::vector<Line> lines = tokenize(text);
    if (lines.empty()) throw ParseError("empty language file", 0);
    const std::string& head = lines[0].tokens[0];
    LanguageSpec spec;
    if (head == "dfa") {
        spec.cls = LangClass::Dfa;
        spec.dfa = parse_dfa_body(lines, 1);
        spec.alphabet = spec.dfa.alphabet;
    } else if (head == "vpa") {
        spec.cls = LangClass::Vpa;
        spec.vpa = parse_vpa_body(lines, 1);
        spec.alphabet = spec.vpa.alphabet;
    } else if (head == "doca") {
        spec.cls = LangClass::Doca;
        spec.doca = parse_doca_body(lines, 1);
        spec.alphabet = spec.doca.alphabet;
    } else if (head == "len") {
        spec.cls = LangClass::Len;
        if (lines.size() != 1) throw ParseError("len: a single line expected", lines[1].no);
        spec.len = parse_len_line(lines[0]);
        spec.alphabet = {"*"};
    } else if (head == "li") {
        spec.cls = LangClass::LeftIdeal;
        spec.li_reversal = parse_dfa_body(lines, 1);
        validate_left_ideal_reversal(spec.li_reversal);
        spec.alphabet = spec.li_reversal.alphabet;
    } else if (head == "li-from-l") {
        spec.cls = LangClass::LeftIdeal;
        Dfa lang = parse_dfa_body(lines, 1);
        spec.li_reversal = left_ideal_reversal_from_language(lang);
        spec.alphabet = spec.li_reversal.alphabet;
    } else if (head == "combo") {
        spec = parse_combo(lines, base_dir);
    } else {
        throw ParseError("unknown language class '" + head + "'", lines[0].no);
    }
    return spec;
}

LanguageSpec load_language(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'", 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string dir = ".";
    auto slash = path.find_last_of('/');
    if (slash != std::string::npos) dir = path.substr(0, slash);
    return parse_language(buf.str(), dir);
}

namespace {

void dump_dfa_body(std::ostringstream& out, const Dfa& d) {
    out << "alphabet";
    for (const auto& s : d.alphabet) out << ' ' << s;
    out << "\nstates " << d.state_count << "\ninitial " << d.initial << "\nfinal";
    for (std::uint32_t q = 0; q < d.state_count; ++q)
        if (d.is_final(q)) out << ' ' << q;
    out << '\n';
    for (std::uint32_t q = 0; q < d.state_count; ++q)
        for (std::uint32_t a = 0; a < d.alphabet.size(); ++a)
            out << "trans " << q << ' ' << d.alphabet[a] << ' ' << d.step(q, a) << '\n';
}

} // namespace

std::string dump_language(const LanguageSpec& spec) {
    std::ostringstream out;
    switch (spec.cls) {
    case LangClass::Dfa:
        out << "dfa\n";
        dump_dfa_body(out, spec.dfa);
        break;
    case LangClass::LeftIdeal:
        out << "li\n";
        dump_dfa_body(out, spec.li_reversal);
        break;
    case LangClass::Len: {
        out << "len N=" << spec.len.period << " A=";
        bool first = true;
        for (std::uint32_t r = 0; r < spec.len.period; ++r)
            if (spec.len.large[r]) {
                if (!first) out << ',';
                out << r;
                first = false;
            }
        out << " B=";
        first = true;
        for (std::uint32_t r = 0; r < spec.len.period; ++r)
            if (spec.len.small[r]) {
                if (!first) out << ',';
                out << r;
                first = false;
            }
        out << '\n';
        break;
    }
    case LangClass::Vpa: {
        const Vpa& v = spec.vpa;
        out << "vpa\ncalls";
        for (std::size_t a = 0; a < v.alphabet.size(); ++a)
            if (v.sym_class[a] == SymClass::Call) out << ' ' << v.alphabet[a];
        out << "\nreturns";
        for (std::size_t a = 0; a < v.alphabet.size(); ++a)
            if (v.sym_class[a] == SymClass::Return) out << ' ' << v.alphabet[a];
        out << "\ninternals";
        for (std::size_t a = 0; a < v.alphabet.size(); ++a)
            if (v.sym_class[a] == SymClass::Internal) out << ' ' << v.alphabet[a];
        out << "\nstates " << v.state_count << "\nstack";
        for (const auto& s : v.stack_names) out << ' ' << s;
        out << "\ninitial " << v.initial << "\nfinal";
        for (std::uint32_t q = 0; q < v.state_count; ++q)
            if (v.finals[q]) out << ' ' << q;
        out << '\n';
        for (std::uint32_t q = 0; q < v.state_count; ++q)
            for (std::uint32_t a = 0; a < v.alphabet.size(); ++a) {
                switch (v.sym_class[a]) {
                case SymClass::Call:
                    out << "tcall " << q << ' ' << v.alphabet[a] << ' '
                        << v.stack_names[v.call_push[v.call_idx(q, a)] - 1] << ' '
                        << v.call_state[v.call_idx(q, a)] << '\n';
                    break;
                case SymClass::Internal:
                    out << "tint " << q << ' ' << v.alphabet[a] << ' '
                        << v.int_state[v.call_idx(q, a)] << '\n';
                    break;
                case SymClass::Return:
                    out << "tretbot " << q << ' ' << v.alphabet[a] << ' '
                        << v.ret_state[v.ret_idx(q, a, 0)] << '\n';
                    for (std::uint32_t g = 1; g <= v.stack_count(); ++g)
                        out << "tret " << q << ' ' << v.alphabet[a] << ' '
                            << v.stack_names[g - 1] << ' ' << v.ret_state[v.ret_idx(q, a, g)]
                            << '\n';
                    break;
                }
            }
        break;
    }
    case LangClass::Doca: {
        const Doca& d = spec.doca;
        out << "doca\nstable";
        for (std::uint32_t q = 0; q < d.stable_count; ++q) out << ' ' << d.state_names[q];
        out << "\nreset";
        for (std::uint32_t q = d.stable_count; q < d.state_count(); ++q)
            out << ' ' << d.state_names[q];
        out << "\nalphabet";
        for (const auto& s : d.alphabet) out << ' ' << s;
        out << "\ninitial " << d.state_names[d.initial] << "\nfinal";
        for (std::uint32_t q = 0; q < d.state_count(); ++q)
            if (d.finals[q]) out << ' ' << d.state_names[q];
        out << '\n';
        for (std::uint32_t q = 0; q < d.stable_count; ++q)
            for (std::uint32_t a = 0; a < d.alphabet.size(); ++a)
                for (int z = 0; z <= 1; ++z) {
                    std::size_t i = d.didx(q, a, z == 1);
                    out << "trans " << d.state_names[q] << ' ' << d.alphabet[a] << ' ' << z
                        << ' ' << d.state_names[d.d_target[i]] << ' '
                        << static_cast<int>(d.d_delta[i]) << '\n';
                }
        for (std::uint32_t i = 0; i < d.reset_count; ++i) {
            out << "period " << d.state_names[d.stable_count + i] << ' ' << d.periods[i] << '\n';
            for (std::uint32_t k = 0; k < d.periods[i]; ++k)
                out << "rmap " << d.state_names[d.stable_count + i] << ' ' << k << ' '
                    << d.state_names[d.reset_map[d.reset_off[i] + k]] << '\n';
        }
        break;
    }
    case LangClass::Combo: {
        out << "combo\n";
        auto emit = [&](const LanguageSpec::Formula& f, auto&& self) -> void {
            switch (f.kind) {
            case LanguageSpec::Formula::Leaf: out << ' ' << spec.child_paths[f.leaf]; break;
            case LanguageSpec::Formula::And:
                out << " and";
                self(*f.lhs, self);
                self(*f.rhs, self);
                break;
            case LanguageSpec::Formula::Or:
                out << " or";
                self(*f.lhs, self);
                self(*f.rhs, self);
                break;
            case LanguageSpec::Formula::Not:
                out << " not";
                self(*f.lhs, self);
                break;
            }
        };
        emit(*spec.formula, emit);
        out << '\n';
        break;
    }
    }
    return out.str();
}

namespace {

bool formula_equal(const LanguageSpec::Formula& a, const LanguageSpec::Formula& b) {
    if (a.kind != b.kind || a.leaf != b.leaf) return false;
    if (a.lhs && (!b.lhs || !formula_equal(*a.lhs, *b.lhs))) return false;
    if (a.rhs && (!b.rhs || !formula_equal(*a.rhs, *b.rhs))) return false;
    return (a.lhs == nullptr) == (b.lhs == nullptr) && (a.rhs == nullptr) == (b.rhs == nullptr);
}

} // namespace

bool language_equal(const LanguageSpec& a, const LanguageSpec& b) {
    if (a.cls != b.cls || a.alphabet != b.alphabet) return false;
    switch (a.cls) {
    case LangClass::Dfa:
        return a.dfa.state_count == b.dfa.state_count && a.dfa.initial == b.dfa.initial &&
               a.dfa.finals == b.dfa.finals && a.dfa.delta == b.dfa.delta;
    case LangClass::LeftIdeal:
        return a.li_reversal.state_count == b.li_reversal.state_count &&
               a.li_reversal.initial == b.li_reversal.initial &&
               a.li_reversal.finals == b.li_reversal.finals &&
               a.li_reversal.delta == b.li_reversal.delta;
    case LangClass::Len:
        return a.len.period == b.len.period && a.len.large == b.len.large &&
               a.len.small == b.len.small;
    case LangClass::Vpa:
        return a.vpa.state_count == b.vpa.state_count && a.vpa.initial == b.vpa.initial &&
               a.vpa.finals == b.vpa.finals && a.vpa.sym_class == b.vpa.sym_class &&
               a.vpa.stack_names == b.vpa.stack_names && a.vpa.call_push == b.vpa.call_push &&
               a.vpa.call_state == b.vpa.call_state && a.vpa.ret_state == b.vpa.ret_state &&
               a.vpa.int_state == b.vpa.int_state;
    case LangClass::Doca:
        return a.doca.stable_count == b.doca.stable_count &&
               a.doca.reset_count == b.doca.reset_count &&
               a.doca.state_names == b.doca.state_names && a.doca.initial == b.doca.initial &&
               a.doca.finals == b.doca.finals && a.doca.d_target == b.doca.d_target &&
               a.doca.d_delta == b.doca.d_delta && a.doca.periods == b.doca.periods &&
               a.doca.reset_map == b.doca.reset_map;
    case LangClass::Combo: {
        if (a.children.size() != b.children.size()) return false;
        if (!formula_equal(*a.formula, *b.formula)) return false;
        for (std::size_t i = 0; i < a.children.size(); ++i)
            if (!language_equal(*a.children[i], *b.children[i])) return false;
        return true;
    }
    }
    return false;
}

namespace {

bool combo_eval(const LanguageSpec& spec, const LanguageSpec::Formula& f,
                const std::vector<std::uint8_t>& leaf_results) {
    switch (f.kind) {
    case LanguageSpec::Formula::Leaf: return leaf_results[f.leaf] != 0;
    case LanguageSpec::Formula::And:
        return combo_eval(spec, *f.lhs, leaf_results) && combo_eval(spec, *f.rhs, leaf_results);
    case LanguageSpec::Formula::Or:
        return combo_eval(spec, *f.lhs, leaf_results) || combo_eval(spec, *f.rhs, leaf_results);
    case LanguageSpec::Formula::Not: return !combo_eval(spec, *f.lhs, leaf_results);
    }
    return false;
}

} // namespace

bool reference_accepts(const LanguageSpec& spec, std::span<const std::uint32_t> word) {
    switch (spec.cls) {
    case LangClass::Dfa: return dfa_accepts(spec.dfa, word);
    case LangClass::Vpa: return vpa_accepts(spec.vpa, word);
    case LangClass::Doca: return doca_accepts(spec.doca, word);
    case LangClass::Len: return len_accepts(spec.len, word.size());
    case LangClass::LeftIdeal: {
        std::vector<std::uint32_t> rev(word.rbegin(), word.rend());
        return dfa_accepts(spec.li_reversal, rev);
    }
    case LangClass::Combo: {
        std::vector<std::uint8_t> leaf_results(spec.children.size(), 0);
        for (std::size_t i = 0; i < spec.children.size(); ++i) {
            std::vector<std::uint32_t> mapped(word.size());
            for (std::size_t k = 0; k < word.size(); ++k)
                mapped[k] = spec.child_symbol_maps[i][word[k]];
            leaf_results[i] = reference_accepts(*spec.children[i], mapped) ? 1 : 0;
        }
        return combo_eval(spec, *spec.formula, leaf_results);
    }
    }
    return false;
}

std::unique_ptr<Window> open_window(const LanguageSpec& spec, Model model,
                                    std::size_t window_size) {
    if (model_is_fixed(model) && window_size == 0)
        throw InputError("fixed-size models need a window size of at least 1");
    if (!model_is_one_way(model) && !spec.two_way_capable())
        throw InputError("this language class supports one-way models only");

    std::unique_ptr<Window> w;
    switch (spec.cls) {
    case LangClass::Dfa:
        w = model_is_fixed(model) ? std::make_unique<RegularWindow>(spec.dfa, window_size)
                                  : std::make_unique<RegularWindow>(spec.dfa);
        break;
    case LangClass::Vpa:
        w = model_is_fixed(model) ? std::make_unique<VplWindow>(spec.vpa, window_size)
                                  : std::make_unique<VplWindow>(spec.vpa);
        break;
    case LangClass::Doca: w = std::make_unique<DocaWindow>(spec.doca); break;
    case LangClass::Len: w = std::make_unique<LenWindow>(spec.len); break;
    case LangClass::LeftIdeal: w = std::make_unique<PathSummaryWindow>(spec.li_reversal); break;
    case LangClass::Combo: {
        // components are capacity-free; open them variable-size and let the
        // combo-level prefill broadcast the fill
        Model leaf_model = model_is_one_way(model) ? Model::OneVar : Model::TwoVar;
        std::vector<std::unique_ptr<Window>> leaves;
        for (const auto& c : spec.children) leaves.push_back(open_window(*c, leaf_model, 0));
        auto clone = [](const LanguageSpec::Formula& f, auto&& self)
            -> std::unique_ptr<ComboWindow::Node> {
            auto n = std::make_unique<ComboWindow::Node>();
            n->kind = static_cast<ComboWindow::Node::Kind>(f.kind);
            n->leaf = f.leaf;
            if (f.lhs) n->lhs = self(*f.lhs, self);
            if (f.rhs) n->rhs = self(*f.rhs, self);
            return n;
        };
        w = std::make_unique<ComboWindow>(clone(*spec.formula, clone), std::move(leaves),
                                          spec.child_symbol_maps);
        break;
    }
    }
    if (model_is_fixed(model)) {
        for (std::size_t i = 0; i < window_size; ++i) w->apply(WinOp::RightPush, 0);
        w->reset_maxima();
    }
    return w;
}

} // namespace slwin
