#include <doctest.h>

#include "gsbc/chl.hpp"
#include "gsbc/shift_space.hpp"

using namespace gsbc;

namespace {

Pattern pat(std::vector<Pattern::Entry> e) {
    return Pattern::from_pairs(std::move(e));
}

} // namespace

TEST_CASE("full shift accepts every pattern") {
    ShiftSpace full = ShiftSpace::full(MonoidKind::Naturals);
    CHECK(full.pattern_in_language(pat({{0, 7}, {5, 123}})) == Decision::Yes);
    CHECK(full.pattern_in_language(Pattern()) == Decision::Yes);
}

TEST_CASE("subalphabet union language") {
    ShiftSpace su = ShiftSpace::subalphabets(MonoidKind::Naturals, {{0, 1}, {2}});
    CHECK(su.pattern_in_language(pat({{0, 0}, {5, 2}})) == Decision::No); // straddles blocks
    CHECK(su.pattern_in_language(pat({{0, 0}, {5, 1}})) == Decision::Yes);
    CHECK(su.pattern_in_language(pat({{0, 3}})) == Decision::No); // symbol in no block
    CHECK(su.pattern_in_language(Pattern()) == Decision::Yes);
}

TEST_CASE("forbidden patterns language") {
    ShiftSpace golden = ShiftSpace::forbidden(MonoidKind::Naturals, {pat({{0, 1}, {1, 1}})});
    CHECK(golden.pattern_in_language(pat({{0, 1}, {1, 1}})) == Decision::No);
    CHECK(golden.pattern_in_language(pat({{0, 1}, {1, 0}, {2, 1}})) == Decision::Yes);
    // The forbidden word straddling a gap in the domain is still completable.
    CHECK(golden.pattern_in_language(pat({{0, 1}, {2, 1}})) == Decision::Yes);
}

TEST_CASE("forbidden patterns over the integers") {
    ShiftSpace s = ShiftSpace::forbidden(MonoidKind::Integers, {pat({{0, 2}, {1, 2}})});
    CHECK(s.pattern_in_language(pat({{-1, 2}, {0, 2}})) == Decision::No);
    CHECK(s.pattern_in_language(pat({{-1, 2}, {1, 2}})) == Decision::Yes);
}

TEST_CASE("completion witnesses extend the pattern and lie in the space") {
    ShiftSpace golden = ShiftSpace::forbidden(MonoidKind::Naturals, {pat({{0, 1}, {1, 1}})});
    Pattern p = pat({{1, 1}, {4, 1}});
    Completion c = golden.complete_pattern(p);
    REQUIRE(c.decision == Decision::Yes);
    REQUIRE(c.witness.has_value());
    for (const auto& e : p.entries())
        CHECK(c.witness->get(e.first) == e.second);
    CHECK(golden.config_in_space(*c.witness));
}

TEST_CASE("config membership is exact on finite descriptions") {
    ShiftSpace full = ShiftSpace::full(MonoidKind::Naturals);
    CHECK(full.config_in_space(Config::parse("9;9")));

    ShiftSpace su = ShiftSpace::subalphabets(MonoidKind::Naturals, {{0, 1}, {2, 3}});
    CHECK(su.config_in_space(Config::parse("1,0;1")));
    CHECK_FALSE(su.config_in_space(Config::parse("2;1"))); // symbols straddle blocks

    ShiftSpace golden = ShiftSpace::forbidden(MonoidKind::Naturals, {pat({{0, 1}, {1, 1}})});
    CHECK(golden.config_in_space(Config::parse("1,0;1,0")));
    CHECK_FALSE(golden.config_in_space(Config::parse("0,1;1,0,0")));
    // Occurrence hiding entirely in the periodic tail.
    CHECK_FALSE(golden.config_in_space(Config::parse("0;0,1,1")));
    // Occurrence across the prefix/tail seam.
    CHECK_FALSE(golden.config_in_space(Config::parse("0,1;1")));

    CHECK_THROWS_AS(golden.config_in_space(
                        Config::generator("g", MonoidKind::Naturals, [](Index) { return 0; })),
                    NotDecidableError);
}

TEST_CASE("config membership over the integers") {
    ShiftSpace s = ShiftSpace::forbidden(MonoidKind::Integers, {pat({{0, 1}, {1, 1}})});
    CHECK(s.config_in_space(Config::parse("L=0 C@0=1 R=0")));
    CHECK_FALSE(s.config_in_space(Config::parse("L=1 C@0=2 R=0")));   // in the left tail
    CHECK_FALSE(s.config_in_space(Config::parse("L=0 C@0=1 R=1")));   // core meets right tail
    CHECK_FALSE(s.config_in_space(Config::parse("L=0,1 C@0=1,0 R=0"))); // seam at the core's left edge
}

TEST_CASE("enumerate_words fixtures") {
    IndexSet d{0, 1};
    ShiftSpace full = ShiftSpace::full(MonoidKind::Naturals);
    WordEnumeration w = full.enumerate_words(d, 1);
    REQUIRE(w.words.size() == 4);
    CHECK(w.words[0] == pat({{0, 0}, {1, 0}}));
    CHECK(w.words[1] == pat({{0, 0}, {1, 1}}));
    CHECK(w.words[2] == pat({{0, 1}, {1, 0}}));
    CHECK(w.words[3] == pat({{0, 1}, {1, 1}}));

    ShiftSpace su = ShiftSpace::subalphabets(MonoidKind::Naturals, {{0}, {1}});
    WordEnumeration ws = su.enumerate_words(d, 1);
    REQUIRE(ws.words.size() == 2);
    CHECK(ws.words[0] == pat({{0, 0}, {1, 0}}));
    CHECK(ws.words[1] == pat({{0, 1}, {1, 1}}));

    ShiftSpace golden = ShiftSpace::forbidden(MonoidKind::Naturals, {pat({{0, 0}, {1, 0}})});
    WordEnumeration wf = golden.enumerate_words(d, 1);
    REQUIRE(wf.words.size() == 3);
    CHECK(wf.words[0] == pat({{0, 0}, {1, 1}}));
    CHECK(wf.words[1] == pat({{0, 1}, {1, 0}}));
    CHECK(wf.words[2] == pat({{0, 1}, {1, 1}}));
}

TEST_CASE("completion budget exhaustion is Undecided, not a verdict") {
    ShiftSpace golden = ShiftSpace::forbidden(MonoidKind::Naturals, {pat({{0, 1}, {1, 1}})});
    Pattern p = pat({{0, 1}, {4, 1}});
    CHECK(golden.pattern_in_language(p, 0) == Decision::Undecided);
    CHECK(golden.pattern_in_language(p) == Decision::Yes);
    // A verbatim forbidden occurrence is refuted before any search.
    CHECK(golden.pattern_in_language(pat({{0, 1}, {1, 1}}), 0) == Decision::No);
}

TEST_CASE("enumeration guard") {
    ShiftSpace full = ShiftSpace::full(MonoidKind::Naturals);
    IndexSet big;
    for (Index i = 0; i < 30; ++i)
        big.push_back(i);
    CHECK_THROWS_AS(full.enumerate_words(big, 9), SizeGuardError);
}

TEST_CASE("language is translation invariant") {
    Rng rng(21);
    ShiftSpace golden = ShiftSpace::forbidden(MonoidKind::Naturals,
                                              {pat({{0, 1}, {1, 1}}), pat({{0, 2}})});
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Pattern::Entry> entries;
        int size = static_cast<int>(rng.between(0, 3));
        for (int k = 0; k < size; ++k) {
            Index i = rng.between(0, 5);
            Symbol s = rng.between(0, 2);
            bool dup = false;
            for (const auto& e : entries)
                dup = dup || e.first == i;
            if (!dup)
                entries.emplace_back(i, s);
        }
        Pattern p = Pattern::from_pairs(entries);
        Index g = rng.between(0, 4);
        CHECK(golden.pattern_in_language(p) == golden.pattern_in_language(p.translated(g)));
    }
}

TEST_CASE("membership is shift invariant and closed under restriction") {
    Rng rng(22);
    ShiftSpace golden = ShiftSpace::forbidden(MonoidKind::Naturals, {pat({{0, 1}, {1, 1}})});
    SampleOptions opt;
    opt.max_symbol = 1;
    for (int trial = 0; trial < 100; ++trial) {
        std::optional<Config> x = sample_config(rng, golden, opt);
        REQUIRE(x.has_value());
        Index g = rng.between(0, 5);
        CHECK(golden.config_in_space(x->shifted(g)));
        IndexSet d = make_index_set({rng.between(0, 9), rng.between(0, 9)});
        CHECK(golden.pattern_in_language(x->restrict_to(d)) == Decision::Yes);
    }
}
