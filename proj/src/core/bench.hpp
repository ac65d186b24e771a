#pragma once

#include <cstdint>

#include "core/language.hpp"

namespace slwin {

struct BenchResult {
    CostCounters op_maxima;
    std::uint64_t max_work_units = 0;
    std::uint64_t peak_live_nodes = 0;    // tree windows
    std::uint64_t peak_table_entries = 0; // effect tables
    std::uint64_t ops = 0;
    std::size_t max_size = 0;
};

// Replays a deterministic adversarial schedule against the two-way window:
// mixed-end growth to the target, threshold thrash at the full size and at
// half of it, one-sided pop runs, a small-size boundary dance, and a full
// drain. The sub-schedule below 4096 entries is byte-identical for every
// target, so per-op cost maxima of runs at different sizes are directly
// comparable: a size-independent structure must produce equal maxima.
BenchResult bench_run(const LanguageSpec& lang, std::size_t target, std::uint64_t seed);

} // namespace slwin
