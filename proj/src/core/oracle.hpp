#pragma once

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "core/doca.hpp"
#include "core/rng.hpp"
#include "core/vpa.hpp"
#include "core/window.hpp"

namespace slwin {

struct LanguageSpec;

// Literal window semantics: pops on an empty window leave it empty.
struct NaiveWindow {
    std::deque<std::uint32_t> symbols;

    void apply(WinOp op, std::uint32_t sym) {
        switch (op) {
        case WinOp::RightPush: symbols.push_back(sym); break;
        case WinOp::LeftPush: symbols.push_front(sym); break;
        case WinOp::LeftPop:
            if (!symbols.empty()) symbols.pop_front();
            break;
        case WinOp::RightPop:
            if (!symbols.empty()) symbols.pop_back();
            break;
        }
    }
    std::vector<std::uint32_t> content() const { return {symbols.begin(), symbols.end()}; }
};

struct StreamOp {
    bool query = false;
    WinOp op = WinOp::RightPush;
    std::uint32_t symbol = 0;
};

struct StreamGen {
    Model model = Model::TwoVar;
    std::uint64_t seed = 0;
    std::size_t length = 0; // number of generated ops
    std::uint32_t alphabet_size = 1;
    std::size_t window_size = 0; // fixed models only
};

// Deterministic under seed; respects the model: one-way streams never push
// left or pop right, fixed-size streams pair every push with an immediate
// pop on the opposite side and never query in between.
std::vector<StreamOp> gen_stream(const StreamGen& g);

struct CheckReport {
    std::uint32_t streams_run = 0;
    std::uint32_t streams_passed = 0;
    std::int64_t first_divergence_stream = -1;
    std::int64_t first_divergence_op = -1;
    std::string detail;
    bool ok() const { return streams_run == streams_passed; }
};

// Replays seeded streams on the fast window and on NaiveWindow + the
// reference acceptor, comparing every query. Pops on an empty window are
// no-ops on the naive side and filtered out before reaching the fast
// structure. Streams run on worker threads; results merge by stream index.
CheckReport check_equivalence(const LanguageSpec& lang, Model model, std::uint64_t seed,
                              std::uint32_t streams, std::uint32_t length,
                              std::size_t window_size, int threads);

// Random automata for randomized oracle testing.
Dfa random_dfa(Rng& rng, std::uint32_t max_states, std::uint32_t max_symbols);
Vpa random_vpa(Rng& rng, std::uint32_t max_states);
Doca random_doca(Rng& rng, std::uint32_t max_states, std::uint32_t max_period);

} // namespace slwin
