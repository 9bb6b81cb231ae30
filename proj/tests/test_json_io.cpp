#include <doctest.h>

#include "gsbc/json_io.hpp"
#include "support.hpp"

using namespace gsbc;
using gsbc::testing::random_tiling_partition;

TEST_CASE("pattern json round-trip") {
    Pattern p = Pattern::parse("2@0,5@3");
    json j = pattern_to_json(p);
    CHECK(j["indices"] == json::array({0, 3}));
    CHECK(j["symbols"] == json::array({2, 5}));
    CHECK(pattern_from_json(j) == p);
    CHECK_THROWS_AS(pattern_from_json(json{{"indices", {0}}, {"symbols", {1, 2}}}), ParseError);
}

TEST_CASE("space json round-trip") {
    ShiftSpace full = ShiftSpace::full(MonoidKind::Naturals);
    CHECK(space_to_json(full) == json{{"space", "full"}});
    CHECK(space_from_json(json::parse(R"({"space":"full"})"), MonoidKind::Naturals).is_full());

    ShiftSpace su = ShiftSpace::subalphabets(MonoidKind::Naturals, {{0, 1}, {2, 3}});
    ShiftSpace su2 = space_from_json(space_to_json(su), MonoidKind::Naturals);
    CHECK(su2.as_subalphabets()->blocks == su.as_subalphabets()->blocks);

    ShiftSpace fb = ShiftSpace::forbidden(MonoidKind::Integers, {Pattern::parse("1@0,1@1")});
    ShiftSpace fb2 = space_from_json(space_to_json(fb), MonoidKind::Integers);
    CHECK(fb2.as_forbidden()->patterns == fb.as_forbidden()->patterns);

    CHECK_THROWS_AS(space_from_json(json::parse(R"({"space":"weird"})"), MonoidKind::Naturals),
                    ParseError);
}

TEST_CASE("partition json round-trip preserves matching") {
    Rng rng(61);
    ShiftSpace full = ShiftSpace::full(MonoidKind::Naturals);
    IndexSet ball = full.monoid().ball(2);
    for (int trial = 0; trial < 10; ++trial) {
        ExplicitPartition p = random_tiling_partition(rng, ball, 2, 2, full);
        json j = partition_to_json(p);
        CHECK(j["version"] == 1);
        CHECK(j["monoid"] == "N");
        ExplicitPartition q = partition_from_json(j);
        WordEnumeration words = full.enumerate_words(ball, 2);
        for (const Pattern& w : words.words) {
            MatchResult a = match_pattern(p, w);
            MatchResult b = match_pattern(q, w);
            CHECK(a.status == b.status);
            if (a.status == MatchStatus::Matched) {
                CHECK(a.output == b.output);
                CHECK(a.witness == b.witness);
            }
        }
    }
}

TEST_CASE("classical code json round-trip") {
    LocalRule::Table table;
    for (Symbol a = 0; a <= 1; ++a) {
        for (Symbol b = 0; b <= 1; ++b)
            table[{a, b}] = a + b;
    }
    CodeMap m("table-sum", ClassicalCode{make_index_set({0, 1}), LocalRule::table(table),
                                         ShiftSpace::full(MonoidKind::Naturals)});
    json j = code_to_json(m);
    CHECK(j["type"] == "classical");
    CodeMap back = code_from_json(j, "table-sum");
    Config x = Config::parse("1,1,0;0");
    for (Index g = 0; g <= 1; ++g)
        CHECK(back.eval(x, g).value == m.eval(x, g).value);
}

TEST_CASE("classical code json infers the monoid from the neighborhood") {
    json j = json::parse(R"({
      "type": "classical",
      "neighborhood": [-1, 0],
      "rule": [{"pattern": [0, 0], "output": 0}]
    })");
    CodeMap m = code_from_json(j, "inferred");
    CHECK(m.domain_space().monoid().kind() == MonoidKind::Integers);
}

TEST_CASE("generalized code json round-trip") {
    Rng rng(62);
    ShiftSpace full = ShiftSpace::full(MonoidKind::Naturals);
    ExplicitPartition p = random_tiling_partition(rng, full.monoid().ball(1), 1, 2, full);
    ShiftSpace space = p.space();
    CodeMap m("tiling", GeneralizedCode{p, space, kDefaultBudget});
    CodeMap back = code_from_json(code_to_json(m), "tiling");
    Config x = Config::parse("1,0;0");
    CHECK(back.eval(x, 0).value == m.eval(x, 0).value);
}

TEST_CASE("load_code_map builtins") {
    CHECK(load_code_map("builtin:example1").name() == "example1");
    CHECK(load_code_map("builtin:example1-formula").as_black_box() != nullptr);
    CodeMap two = load_code_map("builtin:example2?blocks=[[0,1],[2]]");
    REQUIRE(two.as_black_box() != nullptr);
    CHECK(two.domain_space().as_subalphabets()->blocks.size() == 2);
    CHECK(load_code_map("builtin:identity").as_classical() != nullptr);
    CHECK(load_code_map("builtin:identity-z").domain_space().monoid().kind() ==
          MonoidKind::Integers);
    CHECK_THROWS_AS(load_code_map("builtin:nope"), ParseError);
    CHECK_THROWS_AS(load_code_map("/no/such/file.json"), ParseError);
    CHECK_THROWS_AS(load_code_map("builtin:example2?blocks=oops"), ParseError);
}

TEST_CASE("learned partition serializes in the partition schema") {
    LearnedPartition lp = learn_partition(example1_code(), 2, 2);
    json j = learned_partition_to_json(lp);
    CHECK(j["cylinders"] == lp.partition.cylinder_count());
    ExplicitPartition back = partition_from_json(j["partition"]);
    CHECK(back.cylinder_count() == lp.partition.cylinder_count());
}
