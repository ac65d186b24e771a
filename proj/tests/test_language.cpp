#include "doctest.h"

#include "core/language.hpp"
#include "core/oracle.hpp"

using namespace slwin;

namespace {
const std::string DATA = SLWIN_TEST_DATA_DIR;

std::vector<std::uint32_t> encode(const LanguageSpec& spec, const std::string& word) {
    std::vector<std::uint32_t> out;
    for (char c : word) {
        int code = spec.symbol_code(std::string(1, c));
        REQUIRE(code >= 0);
        out.push_back(static_cast<std::uint32_t>(code));
    }
    return out;
}
} // namespace

TEST_CASE("dfa file parses and accepts") {
    LanguageSpec spec = load_language(DATA + "/ends-in-b.dfa");
    CHECK(spec.cls == LangClass::Dfa);
    CHECK(spec.dfa.state_count == 2);
    CHECK(spec.alphabet == std::vector<std::string>{"a", "b"});
    CHECK(reference_accepts(spec, encode(spec, "ab")));
    CHECK_FALSE(reference_accepts(spec, encode(spec, "ba")));
}

TEST_CASE("vpa file parses; partition overlaps are rejected") {
    LanguageSpec spec = load_language(DATA + "/dyck.vpa");
    CHECK(spec.cls == LangClass::Vpa);
    CHECK(reference_accepts(spec, encode(spec, "(c)")));

    std::string bad = "vpa\ncalls x\nreturns x\nstates 1\nstack Z\ninitial 0\nfinal 0\n";
    CHECK_THROWS_AS(parse_language(bad, "."), ParseError);
}

TEST_CASE("doca file parses; a negative move on zero is rejected") {
    LanguageSpec spec = load_language(DATA + "/anbn.doca");
    CHECK(spec.cls == LangClass::Doca);
    CHECK(reference_accepts(spec, encode(spec, "aabb")));
    CHECK_FALSE(reference_accepts(spec, encode(spec, "aab")));

    std::string bad = "doca\nstable s\nreset\nalphabet a\ninitial s\nfinal s\n"
                      "trans s a 0 s -1\ntrans s a 1 s 0\n";
    CHECK_THROWS_AS(parse_language(bad, "."), ParseError);
}

TEST_CASE("len and li files parse") {
    LanguageSpec even = load_language(DATA + "/even.len");
    CHECK(even.cls == LangClass::Len);
    std::vector<std::uint32_t> two = {0, 0}, one = {0};
    CHECK(reference_accepts(even, two));
    CHECK_FALSE(reference_accepts(even, one));

    LanguageSpec li = load_language(DATA + "/ends-in-ab.li");
    CHECK(li.cls == LangClass::LeftIdeal);
    CHECK(li.symbol_code("x") == -1);
    CHECK(reference_accepts(li, encode(li, "aab")));
    CHECK_FALSE(reference_accepts(li, encode(li, "aba")));
}

TEST_CASE("li-from-l derives the reversal automaton") {
    LanguageSpec a = load_language(DATA + "/ends-in-ab.li");
    LanguageSpec b = load_language(DATA + "/ends-in-ab-from-l.li");
    // same language even if the automata differ
    Rng rng(5);
    for (int i = 0; i < 500; ++i) {
        std::size_t len = rng.below(10);
        std::vector<std::uint32_t> w(len);
        for (auto& s : w) s = static_cast<std::uint32_t>(rng.below(2));
        REQUIRE(reference_accepts(a, w) == reference_accepts(b, w));
    }
}

TEST_CASE("combo file parses, evaluates and maps symbols") {
    LanguageSpec spec = load_language(DATA + "/even-and-ab.combo");
    CHECK(spec.cls == LangClass::Combo);
    REQUIRE(spec.children.size() == 2);
    CHECK(spec.alphabet == std::vector<std::string>{"a", "b"});
    CHECK(reference_accepts(spec, encode(spec, "ab")));
    CHECK(reference_accepts(spec, encode(spec, "aaab")));
    CHECK_FALSE(reference_accepts(spec, encode(spec, "b")));
    CHECK_FALSE(reference_accepts(spec, encode(spec, "aab")));

    auto w = open_window(spec, Model::OneVar, 0);
    for (std::uint32_t s : encode(spec, "aaab")) w->apply(WinOp::RightPush, s);
    CHECK(w->query());
    CHECK_THROWS_AS(open_window(spec, Model::TwoVar, 0), InputError);
}

TEST_CASE("round trip: parse(dump(spec)) equals spec") {
    for (const char* f : {"ends-in-b.dfa", "mod3.dfa", "dyck.vpa", "anbn.doca", "even.len",
                          "ends-in-ab.li"}) {
        LanguageSpec spec = load_language(DATA + "/" + f);
        LanguageSpec again = parse_language(dump_language(spec), DATA);
        CHECK(language_equal(spec, again));
    }
    // combo round-trips through the referenced child files
    LanguageSpec combo = load_language(DATA + "/even-and-ab.combo");
    LanguageSpec again = parse_language(dump_language(combo), DATA);
    CHECK(language_equal(combo, again));
}

TEST_CASE("random specs survive the round trip") {
    Rng rng(99);
    for (int i = 0; i < 30; ++i) {
        LanguageSpec spec;
        if (rng.below(2)) {
            spec.cls = LangClass::Dfa;
            spec.dfa = random_dfa(rng, 5, 3);
            spec.alphabet = spec.dfa.alphabet;
        } else if (rng.below(2)) {
            spec.cls = LangClass::Vpa;
            spec.vpa = random_vpa(rng, 4);
            spec.alphabet = spec.vpa.alphabet;
        } else {
            spec.cls = LangClass::Doca;
            spec.doca = random_doca(rng, 4, 3);
            spec.alphabet = spec.doca.alphabet;
        }
        LanguageSpec again = parse_language(dump_language(spec), ".");
        REQUIRE(language_equal(spec, again));
    }
}

TEST_CASE("parse errors carry line numbers") {
    try {
        parse_language("dfa\nalphabet a\nstates x\n", ".");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_language("", "."), ParseError);
    CHECK_THROWS_AS(parse_language("nonsense\n", "."), ParseError);
    // incomplete transition table
    CHECK_THROWS_AS(parse_language("dfa\nalphabet a\nstates 2\ninitial 0\nfinal 1\n"
                                   "trans 0 a 1\n", "."),
                    ParseError);
}

TEST_CASE("fixed-size bracket window through the factory") {
    LanguageSpec spec = load_language(DATA + "/dyck.vpa");
    auto w = open_window(spec, Model::TwoFixed, 12);
    CHECK(w->length() == 12); // prefilled with twelve '('
    NaiveWindow naive;
    for (int i = 0; i < 12; ++i) naive.apply(WinOp::RightPush, 0);
    Rng rng(4);
    for (int i = 0; i < 400; ++i) {
        bool left_push = rng.below(2) != 0;
        std::uint32_t s = static_cast<std::uint32_t>(rng.below(3));
        w->apply(left_push ? WinOp::LeftPush : WinOp::RightPush, s);
        w->apply(left_push ? WinOp::RightPop : WinOp::LeftPop, 0);
        naive.apply(left_push ? WinOp::LeftPush : WinOp::RightPush, s);
        naive.apply(left_push ? WinOp::RightPop : WinOp::LeftPop, 0);
        REQUIRE(w->length() == 12);
        REQUIRE(w->query() == reference_accepts(spec, naive.content()));
    }
}

TEST_CASE("combo window passes the randomized equivalence harness") {
    LanguageSpec combo = load_language(DATA + "/even-and-ab.combo");
    CheckReport rep = check_equivalence(combo, Model::OneVar, 17, 40, 800, 0, 2);
    CHECK(rep.ok());
}
