#pragma once

#include <cstdint>

namespace slwin {

// splitmix64. Self-contained so that generated streams are identical across
// standard libraries and platforms for a given seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, n), n >= 1
    std::uint64_t below(std::uint64_t n) {
        // multiply-shift reduction; bias is negligible for our n
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool chance(std::uint32_t num, std::uint32_t den) { return below(den) < num; }

private:
    std::uint64_t s_;
};

} // namespace slwin
