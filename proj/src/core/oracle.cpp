#include "core/oracle.hpp"

#include <atomic>
#include <thread>

#include "core/language.hpp"

namespace slwin {

std::vector<StreamOp> gen_stream(const StreamGen& g) {
    Rng rng(g.seed);
    std::vector<StreamOp> out;
    out.reserve(g.length + 1);
    std::size_t naive_len = model_is_fixed(g.model) ? g.window_size : 0;
    auto sym = [&] { return static_cast<std::uint32_t>(rng.below(g.alphabet_size)); };

    while (out.size() < g.length) {
        if (model_is_fixed(g.model)) {
            // units: paired update or query
            std::uint64_t r = rng.below(10);
            if (r < 2) {
                out.push_back({true, WinOp::RightPush, 0});
            } else if (g.model == Model::TwoFixed && r < 6) {
                out.push_back({false, WinOp::LeftPush, sym()});
                out.push_back({false, WinOp::RightPop, 0});
            } else {
                out.push_back({false, WinOp::RightPush, sym()});
                out.push_back({false, WinOp::LeftPop, 0});
            }
        } else {
            std::uint64_t r = rng.below(100);
            bool one_way = g.model == Model::OneVar;
            if (r < 15) {
                out.push_back({true, WinOp::RightPush, 0});
            } else if (r < 60 || (naive_len == 0 && rng.below(8) != 0)) {
                WinOp op = one_way || rng.below(2) ? WinOp::RightPush : WinOp::LeftPush;
                out.push_back({false, op, sym()});
                ++naive_len;
            } else {
                // pops on an empty window are generated now and then; they
                // are no-ops under the window semantics
                WinOp op = one_way || rng.below(2) ? WinOp::LeftPop : WinOp::RightPop;
                out.push_back({false, op, 0});
                if (naive_len > 0) --naive_len;
            }
        }
    }
    return out;
}

namespace {

struct StreamResult {
    bool ok = true;
    std::int64_t fail_op = -1;
    std::string detail;
};

StreamResult run_one_stream(const LanguageSpec& lang, Model model, std::uint64_t seed,
                            std::uint32_t length, std::size_t window_size) {
    StreamGen g;
    g.model = model;
    g.seed = seed;
    g.length = length;
    g.alphabet_size = static_cast<std::uint32_t>(lang.alphabet.size());
    g.window_size = window_size;
    std::vector<StreamOp> stream = gen_stream(g);

    std::unique_ptr<Window> fast = open_window(lang, model, window_size);
    NaiveWindow naive;
    if (model_is_fixed(model))
        for (std::size_t i = 0; i < window_size; ++i) naive.apply(WinOp::RightPush, 0);

    StreamResult res;
    for (std::size_t i = 0; i < stream.size(); ++i) {
        const StreamOp& so = stream[i];
        if (so.query) {
            bool want = reference_accepts(lang, naive.content());
            bool got = fast->query();
            if (want != got) {
                res.ok = false;
                res.fail_op = static_cast<std::int64_t>(i);
                std::string w;
                for (std::uint32_t c : naive.content()) w += lang.alphabet[c];
                res.detail = "query mismatch at op " + std::to_string(i) + ": expected " +
                             (want ? "1" : "0") + ", window '" + w + "'";
                return res;
            }
            continue;
        }
        bool is_pop = so.op == WinOp::LeftPop || so.op == WinOp::RightPop;
        if (is_pop && naive.symbols.empty()) {
            // empty pop: no-op by the window semantics; the fast structure
            // treats it as an error, so it is filtered out here
            continue;
        }
        naive.apply(so.op, so.symbol);
        fast->apply(so.op, so.symbol);
        if (fast->length() != naive.symbols.size()) {
            res.ok = false;
            res.fail_op = static_cast<std::int64_t>(i);
            res.detail = "length mismatch at op " + std::to_string(i);
            return res;
        }
    }
    return res;
}

} // namespace

CheckReport check_equivalence(const LanguageSpec& lang, Model model, std::uint64_t seed,
                              std::uint32_t streams, std::uint32_t length,
                              std::size_t window_size, int threads) {
    CheckReport rep;
    rep.streams_run = streams;
    std::vector<StreamResult> results(streams);
    if (threads <= 0) {
        unsigned hc = std::thread::hardware_concurrency();
        threads = hc == 0 ? 1 : static_cast<int>(hc);
    }
    threads = std::min<int>(threads, streams == 0 ? 1 : static_cast<int>(streams));

    std::atomic<std::uint32_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::uint32_t i = next.fetch_add(1);
            if (i >= streams) return;
            results[i] = run_one_stream(lang, model, seed + i, length, window_size);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (std::uint32_t i = 0; i < streams; ++i) {
        if (results[i].ok) {
            ++rep.streams_passed;
        } else if (rep.first_divergence_stream < 0) {
            rep.first_divergence_stream = i;
            rep.first_divergence_op = results[i].fail_op;
            rep.detail = results[i].detail;
        }
    }
    return rep;
}

Dfa random_dfa(Rng& rng, std::uint32_t max_states, std::uint32_t max_symbols) {
    Dfa d;
    d.state_count = 1 + static_cast<std::uint32_t>(rng.below(max_states));
    std::uint32_t syms = 1 + static_cast<std::uint32_t>(rng.below(max_symbols));
    for (std::uint32_t a = 0; a < syms; ++a) d.alphabet.push_back(std::string(1, char('a' + a)));
    d.initial = static_cast<std::uint32_t>(rng.below(d.state_count));
    d.finals.resize(d.state_count);
    for (auto& f : d.finals) f = rng.below(2) ? 1 : 0;
    d.delta.resize(static_cast<std::size_t>(d.state_count) * syms);
    for (auto& t : d.delta) t = static_cast<std::uint32_t>(rng.below(d.state_count));
    return d;
}

Vpa random_vpa(Rng& rng, std::uint32_t max_states) {
    Vpa v;
    v.state_count = 1 + static_cast<std::uint32_t>(rng.below(max_states));
    std::uint32_t ncall = 1 + static_cast<std::uint32_t>(rng.below(2));
    std::uint32_t nret = 1 + static_cast<std::uint32_t>(rng.below(2));
    std::uint32_t nint = static_cast<std::uint32_t>(rng.below(3));
    const char* call_names[] = {"(", "["};
    const char* ret_names[] = {")", "]"};
    const char* int_names[] = {"c", "d"};
    for (std::uint32_t i = 0; i < ncall; ++i) {
        v.alphabet.push_back(call_names[i]);
        v.sym_class.push_back(SymClass::Call);
    }
    for (std::uint32_t i = 0; i < nret; ++i) {
        v.alphabet.push_back(ret_names[i]);
        v.sym_class.push_back(SymClass::Return);
    }
    for (std::uint32_t i = 0; i < nint; ++i) {
        v.alphabet.push_back(int_names[i]);
        v.sym_class.push_back(SymClass::Internal);
    }
    std::uint32_t nstack = 1 + static_cast<std::uint32_t>(rng.below(3));
    for (std::uint32_t i = 0; i < nstack; ++i) v.stack_names.push_back(std::string(1, char('X' + i)));
    v.initial = static_cast<std::uint32_t>(rng.below(v.state_count));
    v.finals.resize(v.state_count);
    for (auto& f : v.finals) f = rng.below(2) ? 1 : 0;
    const std::size_t ns = v.alphabet.size();
    v.call_push.assign(static_cast<std::size_t>(v.state_count) * ns, 0);
    v.call_state.assign(v.call_push.size(), 0);
    v.int_state.assign(v.call_push.size(), 0);
    v.ret_state.assign(v.call_push.size() * (v.stack_count() + 1), 0);
    // fill only the rows of each symbol's class, as a parsed file would
    for (std::uint32_t q = 0; q < v.state_count; ++q)
        for (std::uint32_t a = 0; a < ns; ++a) {
            switch (v.sym_class[a]) {
            case SymClass::Call:
                v.call_push[v.call_idx(q, a)] = 1 + static_cast<std::uint32_t>(rng.below(nstack));
                v.call_state[v.call_idx(q, a)] =
                    static_cast<std::uint32_t>(rng.below(v.state_count));
                break;
            case SymClass::Internal:
                v.int_state[v.call_idx(q, a)] =
                    static_cast<std::uint32_t>(rng.below(v.state_count));
                break;
            case SymClass::Return:
                for (std::uint32_t g = 0; g <= v.stack_count(); ++g)
                    v.ret_state[v.ret_idx(q, a, g)] =
                        static_cast<std::uint32_t>(rng.below(v.state_count));
                break;
            }
        }
    v.validate();
    return v;
}

Doca random_doca(Rng& rng, std::uint32_t max_states, std::uint32_t max_period) {
    Doca d;
    d.stable_count = 1 + static_cast<std::uint32_t>(rng.below(max_states));
    d.reset_count = static_cast<std::uint32_t>(rng.below(2));
    for (std::uint32_t q = 0; q < d.stable_count; ++q)
        d.state_names.push_back("s" + std::to_string(q));
    for (std::uint32_t q = 0; q < d.reset_count; ++q)
        d.state_names.push_back("r" + std::to_string(q));
    std::uint32_t syms = 1 + static_cast<std::uint32_t>(rng.below(2));
    for (std::uint32_t a = 0; a < syms; ++a) d.alphabet.push_back(std::string(1, char('a' + a)));
    d.initial = static_cast<std::uint32_t>(rng.below(d.state_count()));
    d.finals.resize(d.state_count());
    for (auto& f : d.finals) f = rng.below(2) ? 1 : 0;
    d.d_target.resize(static_cast<std::size_t>(d.stable_count) * syms * 2);
    d.d_delta.resize(d.d_target.size());
    for (std::size_t i = 0; i < d.d_target.size(); ++i) {
        d.d_target[i] = static_cast<std::uint32_t>(rng.below(d.state_count()));
        bool zero_row = (i % 2) == 0;
        int lo = zero_row ? 0 : -1;
        d.d_delta[i] = static_cast<std::int8_t>(lo + static_cast<int>(rng.below(zero_row ? 2 : 3)));
    }
    for (std::uint32_t i = 0; i < d.reset_count; ++i) {
        d.periods.push_back(1 + static_cast<std::uint32_t>(rng.below(max_period)));
        d.reset_off.push_back(i == 0 ? 0 : d.reset_off[i - 1] + d.periods[i - 1]);
        for (std::uint32_t k = 0; k < d.periods[i]; ++k)
            d.reset_map.push_back(static_cast<std::uint32_t>(rng.below(d.stable_count)));
    }
    d.compute_lcm();
    d.validate();
    return d;
}

} // namespace slwin
