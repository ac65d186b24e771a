#include "doctest.h"

#include <cstdlib>

#include "core/marked_counter.hpp"
#include "core/rng.hpp"

using namespace slwin;

TEST_CASE("first five values and mark positions") {
    MarkedCounter c;
    // value : bits (left to right), mark position from the right
    struct Expect {
        const char* prefix; // low bits of bits_string()
        std::size_t mark;
    };
    // strings for values 0..4 at length 3: 000, 001, 010, 011, 010
    // with marks              0,   0,   0,   0,   1
    const Expect seq[] = {{"000", 0}, {"001", 0}, {"010", 0}, {"011", 0}, {"010", 1}};
    for (int v = 0; v <= 4; ++v) {
        std::string s = c.bits_string();
        // the counter may use a shorter/longer backing string; compare the
        // low three positions, the rest must be zero
        while (s.size() < 3) s.insert(s.begin(), '0');
        CHECK(s.substr(s.size() - 3) == seq[v].prefix);
        bool high_bits_clear = s.substr(0, s.size() - 3).find('1') == std::string::npos;
        CHECK(high_bits_clear);
        CHECK(c.mark() == seq[v].mark);
        CHECK(c.is_zero() == (v == 0));
        c.inc();
    }
}

TEST_CASE("inc then dec restores the exact representation") {
    Rng rng(31);
    MarkedCounter c;
    std::uint64_t shadow = 0;
    for (int step = 0; step < 5000; ++step) {
        // random walk to a reachable state first
        if (shadow == 0 || rng.below(5) < 3) {
            c.inc();
            ++shadow;
        } else {
            c.dec();
            --shadow;
        }
        auto strip = [](std::string s) {
            std::size_t i = s.find('1');
            return i == std::string::npos ? std::string() : s.substr(i);
        };
        std::string s = strip(c.bits_string());
        std::size_t m = c.mark();
        c.inc();
        c.dec();
        // the backing string may have grown; the value bits and mark may not
        CHECK(strip(c.bits_string()) == s);
        CHECK(c.mark() == m);
    }
}

TEST_CASE("is_zero tracks a shadow integer over random walks") {
    Rng rng(77);
    MarkedCounter c;
    std::uint64_t shadow = 0;
    for (int step = 0; step < 100000; ++step) {
        if (shadow == 0 || rng.chance(3, 5)) {
            c.inc();
            ++shadow;
        } else {
            c.dec();
            --shadow;
        }
        REQUIRE(c.is_zero() == (shadow == 0));
        REQUIRE(c.storage_invariants_ok());
    }
    CHECK_THROWS_AS([&] {
        MarkedCounter z;
        z.dec();
    }(), StateError);
}

TEST_CASE("each update writes at most two bits, all next to the old mark") {
    Rng rng(123);
    MarkedCounter c;
    std::uint64_t shadow = 0;
    for (int step = 0; step < 20000; ++step) {
        std::size_t pre_mark = c.mark();
        if (shadow == 0 || rng.below(2)) {
            c.inc();
            ++shadow;
        } else {
            c.dec();
            --shadow;
        }
        REQUIRE(c.last_writes().size() <= 3);
        for (std::size_t pos : c.last_writes()) {
            std::size_t lo = pre_mark == 0 ? 0 : pre_mark - 1;
            REQUIRE(pos >= lo);
            REQUIRE(pos <= pre_mark + 1);
        }
    }
}

TEST_CASE("k increments then k decrements return to all-zero") {
    for (std::size_t k : {1u, 2u, 3u, 7u, 64u, 1000u, 10000u}) {
        MarkedCounter c;
        for (std::size_t i = 0; i < k; ++i) c.inc();
        CHECK_FALSE(c.is_zero());
        for (std::size_t i = 0; i < k; ++i) c.dec();
        CHECK(c.is_zero());
        CHECK(c.bits_string().find('1') == std::string::npos);
    }
}

TEST_CASE("length grows and never shrinks") {
    MarkedCounter c;
    std::size_t max_len = c.length();
    for (int i = 0; i < 3000; ++i) {
        c.inc();
        CHECK(c.length() >= max_len);
        max_len = c.length();
    }
    std::size_t grown = c.length();
    CHECK(grown > 3); // several growth events by value 3000
    for (int i = 0; i < 3000; ++i) c.dec();
    CHECK(c.is_zero());
    CHECK(c.length() == grown);
}
