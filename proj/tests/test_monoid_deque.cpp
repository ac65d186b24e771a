#include "doctest.h"

#include <deque>

#include "core/resizing_deque.hpp"
#include "core/rng.hpp"

using namespace slwin;

namespace {

// Test payloads are full transforms; value_into just copies them.
struct TransformOps {
    using Payload = StateTransform;
    std::size_t q = 0;
    CostCounters* cc = nullptr;
    std::size_t dim() const { return q; }
    CostCounters* counters() const { return cc; }
    void value_into(std::span<std::uint32_t> dst, const Payload& p) const {
        auto src = p.map();
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = src[i];
    }
};

StateTransform rotation(std::size_t m, std::uint32_t amt) {
    StateTransform t(m);
    for (std::size_t i = 0; i < m; ++i) t[i] = static_cast<std::uint32_t>((i + amt) % m);
    return t;
}

StateTransform fold(const std::deque<StateTransform>& w, std::size_t q) {
    StateTransform acc = identity_transform(q);
    for (const auto& t : w) acc = compose(acc, t);
    return acc;
}

StateTransform random_transform(Rng& rng, std::size_t q) {
    StateTransform t(q);
    for (std::size_t i = 0; i < q; ++i) t[i] = static_cast<std::uint32_t>(rng.below(q));
    return t;
}

} // namespace

TEST_CASE("fresh guardian deque basics") {
    CostCounters cc;
    GuardianDeque<TransformOps> d(8, {3, &cc});
    CHECK(d.product() == identity_transform(3));

    StateTransform g = rotation(3, 1);
    d.push_right(g);
    CHECK(d.product() == g);

    GuardianDeque<TransformOps> d3(8, {3, &cc});
    for (int i = 0; i < 3; ++i) d3.push_right(g);
    CHECK(d3.product() == identity_transform(3));

    CHECK_THROWS_AS((GuardianDeque<TransformOps>(0, {3, &cc})), InputError);
    GuardianDeque<TransformOps> e(2, {3, &cc});
    CHECK_THROWS_AS(e.pop_left(), StateError);
    e.push_right(g);
    e.push_right(g);
    CHECK_THROWS_AS(e.push_right(g), StateError);
}

TEST_CASE("push then pop on an empty deque leaves identity") {
    CostCounters cc;
    GuardianDeque<TransformOps> d(4, {3, &cc});
    d.push_right(rotation(3, 2));
    d.pop_right();
    CHECK(d.empty());
    CHECK(d.product() == identity_transform(3));
}

TEST_CASE("guardian deque matches the naive fold on random op mixes") {
    Rng rng(2024);
    CostCounters cc;
    GuardianDeque<TransformOps> d(256, {3, &cc});
    std::deque<StateTransform> shadow;
    for (int step = 0; step < 2000; ++step) {
        std::uint64_t r = rng.below(100);
        if (shadow.size() >= 250) r = 99; // force a pop near capacity
        if (shadow.empty() || r < 35) {
            StateTransform g = rotation(3, static_cast<std::uint32_t>(rng.below(3)));
            if (rng.below(2)) {
                d.push_right(g);
                shadow.push_back(g);
            } else {
                d.push_left(g);
                shadow.push_front(g);
            }
        } else if (r < 60 && shadow.size() < 250) {
            StateTransform g = rotation(3, static_cast<std::uint32_t>(rng.below(3)));
            d.push_left(g);
            shadow.push_front(g);
        } else {
            if (rng.below(2)) {
                d.pop_left();
                shadow.pop_front();
            } else {
                d.pop_right();
                shadow.pop_back();
            }
        }
        CHECK(d.invariant_ok());
        REQUIRE(d.product() == fold(shadow, 3));
    }
    CHECK_FALSE(d.deadline_missed());
}

TEST_CASE("pop_left run keeps the guardian inside its band") {
    CostCounters cc;
    GuardianDeque<TransformOps> d(80, {4, &cc});
    Rng rng(5);
    for (int i = 0; i < 64; ++i) d.push_right(random_transform(rng, 4));
    std::deque<StateTransform> shadow;
    for (std::size_t i = 0; i < d.size(); ++i) shadow.push_back(d.at(i));
    for (int i = 0; i < 64; ++i) {
        d.pop_left();
        shadow.pop_front();
        REQUIRE(d.invariant_ok());
        REQUIRE(d.product() == fold(shadow, 4));
    }
    CHECK(d.empty());
    CHECK_FALSE(d.deadline_missed());
}

TEST_CASE("whole product costs at most one composition") {
    CostCounters cc;
    GuardianDeque<TransformOps> d(64, {4, &cc});
    Rng rng(11);
    std::deque<StateTransform> shadow;
    for (int i = 0; i < 50; ++i) {
        StateTransform t = random_transform(rng, 4);
        d.push_right(t);
        shadow.push_back(t);
    }
    auto before = cc.monoid_compositions;
    StateTransform p = d.product();
    CHECK(cc.monoid_compositions - before <= 1);
    CHECK(p == fold(shadow, 4));
}

TEST_CASE("resizing deque tracks the naive fold across growth and shrink") {
    Rng rng(77);
    CostCounters cc;
    ResizingDeque<TransformOps> d({3, &cc});
    std::deque<StateTransform> shadow;
    const int N = 10000;
    for (int i = 0; i < N; ++i) {
        StateTransform g = rotation(3, static_cast<std::uint32_t>(rng.below(3)));
        if (rng.below(2)) {
            d.push_right(g);
            shadow.push_back(g);
        } else {
            d.push_left(g);
            shadow.push_front(g);
        }
        if (i % 97 == 0) REQUIRE(d.product() == fold(shadow, 3));
        REQUIRE(d.invariant_ok());
    }
    for (int i = 0; i < N; ++i) {
        if (rng.below(2)) {
            d.pop_left();
            shadow.pop_front();
        } else {
            d.pop_right();
            shadow.pop_back();
        }
        if (i % 97 == 0) REQUIRE(d.product() == fold(shadow, 3));
        REQUIRE(d.invariant_ok());
    }
    CHECK(d.empty());
    CHECK(d.swap_count() > 0);
    CHECK(d.swaps_always_ready());
}

TEST_CASE("per-op composition count stays under the constant bound") {
    // grow from empty to 3x the initial capacity, then drain
    CostCounters cc;
    ResizingDeque<TransformOps> d({3, &cc});
    Rng rng(13);
    std::uint64_t worst = 0;
    auto track = [&](auto&& fn) {
        auto before = cc.monoid_compositions;
        fn();
        worst = std::max(worst, cc.monoid_compositions - before);
    };
    for (int i = 0; i < 48; ++i)
        track([&] { d.push_right(rotation(3, 1)); });
    for (int i = 0; i < 48; ++i)
        track([&] { d.pop_left(); });
    CHECK(worst <= 64);
}

TEST_CASE("threshold thrash at half capacity stays correct") {
    CostCounters cc;
    ResizingDeque<TransformOps> d({3, &cc});
    std::deque<StateTransform> shadow;
    Rng rng(3);
    // park the size exactly at current capacity / 2
    while (d.size() < d.current_capacity() / 2) {
        StateTransform g = rotation(3, static_cast<std::uint32_t>(rng.below(3)));
        d.push_right(g);
        shadow.push_back(g);
    }
    for (int i = 0; i < 500; ++i) {
        StateTransform g = rotation(3, static_cast<std::uint32_t>(rng.below(3)));
        d.push_left(g);
        shadow.push_front(g);
        REQUIRE(d.product() == fold(shadow, 3));
        d.pop_right();
        shadow.pop_back();
        REQUIRE(d.product() == fold(shadow, 3));
    }
}

TEST_CASE("fixed-capacity mode never swaps") {
    CostCounters cc;
    ResizingDeque<TransformOps> d({3, &cc}, 32);
    for (int i = 0; i < 32; ++i) d.push_right(rotation(3, 1));
    for (int round = 0; round < 100; ++round) {
        d.push_right(rotation(3, 2));
        d.pop_left();
    }
    CHECK(d.swap_count() == 0);
    CHECK(d.size() == 32);
}
