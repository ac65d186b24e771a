#include "doctest.h"

#include "core/language.hpp"
#include "core/oracle.hpp"

using namespace slwin;

TEST_CASE("naive window semantics") {
    NaiveWindow w;
    w.apply(WinOp::LeftPop, 0); // empty pop is a no-op
    CHECK(w.symbols.empty());
    w.apply(WinOp::RightPop, 0);
    CHECK(w.symbols.empty());
    w.apply(WinOp::RightPush, 0);
    CHECK(w.content() == std::vector<std::uint32_t>{0});
    w.apply(WinOp::LeftPush, 1);
    CHECK(w.content() == std::vector<std::uint32_t>{1, 0});
    w.apply(WinOp::RightPop, 0);
    CHECK(w.content() == std::vector<std::uint32_t>{1});
}

TEST_CASE("stream generation is deterministic and model-valid") {
    StreamGen g{Model::OneVar, 123, 3000, 2, 0};
    auto s1 = gen_stream(g);
    auto s2 = gen_stream(g);
    REQUIRE(s1.size() == s2.size());
    for (std::size_t i = 0; i < s1.size(); ++i) {
        CHECK(s1[i].query == s2[i].query);
        CHECK(s1[i].op == s2[i].op);
        CHECK(s1[i].symbol == s2[i].symbol);
    }
    for (const StreamOp& so : s1) {
        if (so.query) continue;
        CHECK(so.op != WinOp::LeftPush);
        CHECK(so.op != WinOp::RightPop);
    }
}

TEST_CASE("fixed-size streams keep the window length constant") {
    for (Model m : {Model::OneFixed, Model::TwoFixed}) {
        StreamGen g{m, 55, 2000, 2, 7};
        auto stream = gen_stream(g);
        NaiveWindow w;
        for (std::size_t i = 0; i < 7; ++i) w.apply(WinOp::RightPush, 0);
        std::size_t i = 0;
        while (i < stream.size()) {
            if (stream[i].query) {
                ++i;
                continue;
            }
            // a push must be followed immediately by the opposite pop
            REQUIRE(i + 1 < stream.size());
            bool right_push = stream[i].op == WinOp::RightPush;
            REQUIRE((right_push || stream[i].op == WinOp::LeftPush));
            REQUIRE(stream[i + 1].op == (right_push ? WinOp::LeftPop : WinOp::RightPop));
            w.apply(stream[i].op, stream[i].symbol);
            w.apply(stream[i + 1].op, 0);
            REQUIRE(w.symbols.size() == 7);
            i += 2;
        }
    }
}

TEST_CASE("two-way fixed streams only exist for the two-way model") {
    StreamGen g{Model::OneFixed, 9, 2000, 2, 4};
    for (const StreamOp& so : gen_stream(g)) {
        if (so.query) continue;
        CHECK(so.op != WinOp::LeftPush);
    }
}

TEST_CASE("check_equivalence passes on a healthy language") {
    LanguageSpec spec;
    spec.cls = LangClass::Dfa;
    spec.dfa.state_count = 2;
    spec.dfa.alphabet = {"a", "b"};
    spec.dfa.initial = 0;
    spec.dfa.finals = {0, 1};
    spec.dfa.delta = {0, 1, 0, 1};
    spec.alphabet = spec.dfa.alphabet;
    CheckReport rep = check_equivalence(spec, Model::TwoVar, 7, 20, 500, 0, 2);
    CHECK(rep.ok());
    CHECK(rep.streams_run == 20);
    CHECK(rep.streams_passed == 20);
}

TEST_CASE("check_equivalence reports an injected fault") {
    // the window structure answers for ends-in-b, the reference for ends-in-a:
    // flipping the finals of the reference is an injected automaton fault
    LanguageSpec broken;
    broken.cls = LangClass::Dfa;
    broken.dfa.state_count = 2;
    broken.dfa.alphabet = {"a", "b"};
    broken.dfa.initial = 0;
    broken.dfa.finals = {0, 1};
    broken.dfa.delta = {0, 1, 0, 1};
    broken.alphabet = broken.dfa.alphabet;

    // wrap: run the replay manually with a mismatched reference
    LanguageSpec flipped;
    flipped.cls = broken.cls;
    flipped.dfa = broken.dfa;
    flipped.alphabet = broken.alphabet;
    flipped.dfa.finals = {1, 0};

    auto fast = open_window(broken, Model::TwoVar, 0);
    NaiveWindow naive;
    StreamGen g{Model::TwoVar, 3, 600, 2, 0};
    bool diverged = false;
    for (const StreamOp& so : gen_stream(g)) {
        if (so.query) {
            if (fast->query() != reference_accepts(flipped, naive.content())) {
                diverged = true;
                break;
            }
            continue;
        }
        bool is_pop = so.op == WinOp::LeftPop || so.op == WinOp::RightPop;
        if (is_pop && naive.symbols.empty()) continue;
        naive.apply(so.op, so.symbol);
        fast->apply(so.op, so.symbol);
    }
    CHECK(diverged);
}

TEST_CASE("two-way models are rejected for one-way-only classes before replay") {
    LanguageSpec li;
    li.cls = LangClass::LeftIdeal;
    li.li_reversal.state_count = 2;
    li.li_reversal.alphabet = {"a"};
    li.li_reversal.initial = 0;
    li.li_reversal.finals = {0, 1};
    li.li_reversal.delta = {1, 1};
    li.alphabet = li.li_reversal.alphabet;
    CHECK_THROWS_AS(open_window(li, Model::TwoVar, 0), InputError);
    CHECK_NOTHROW(open_window(li, Model::OneVar, 0));
}

TEST_CASE("check reports are identical across thread counts") {
    LanguageSpec spec;
    spec.cls = LangClass::Dfa;
    spec.dfa.state_count = 2;
    spec.dfa.alphabet = {"a", "b"};
    spec.dfa.initial = 0;
    spec.dfa.finals = {0, 1};
    spec.dfa.delta = {0, 1, 0, 1};
    spec.alphabet = spec.dfa.alphabet;
    CheckReport one = check_equivalence(spec, Model::TwoVar, 99, 16, 400, 0, 1);
    CheckReport four = check_equivalence(spec, Model::TwoVar, 99, 16, 400, 0, 4);
    CHECK(one.streams_passed == four.streams_passed);
    CHECK(one.first_divergence_stream == four.first_divergence_stream);
}
