#include "doctest.h"
#include "support/fixtures.hpp"

using namespace modspec;
using namespace fixtures;

TEST_CASE("alphabet is sorted and rejects bad symbol sets")
{
    Alphabet a({"b", "a", "c"});
    CHECK(a.symbols() == std::vector<std::string>{"a", "b", "c"});
    CHECK(a.at("c") == 2);
    CHECK_FALSE(a.find("d"));
    CHECK_THROWS_AS(Alphabet(std::vector<std::string>{}), InvariantViolation);
    CHECK_THROWS_AS(Alphabet({"a", "a"}), InvariantViolation);
    CHECK_THROWS_AS(Alphabet({""}), InvariantViolation);
}

TEST_CASE("lts construction checks states and actions")
{
    CHECK_THROWS_AS(Lts(ab(), {"x"}, 1, {{}}), InvariantViolation);
    CHECK_THROWS_AS(Lts(ab(), {"x"}, 0, {{{5, 0}}}), InvariantViolation);
    CHECK_THROWS_AS(Lts(ab(), {"y", "x"}, 0, {{}, {}}), InvariantViolation);
    CHECK_THROWS_AS((void)LtsBuilder(ab()).initial("i").trans("i", "z", "i").build(),
                    InvariantViolation);
    CHECK_THROWS_AS((void)LtsBuilder(ab()).state("i").build(), InvariantViolation);
}

TEST_CASE("lts_as_dmts")
{
    SUBCASE("deadlock")
    {
        auto d = lts_as_dmts(deadlock(ab()));
        CHECK(d.size() == 1);
        CHECK(d.initials().size() == 1);
        CHECK(d.may(0).empty());
        CHECK(d.must(0).empty());
    }
    SUBCASE("a-loop")
    {
        auto d = lts_as_dmts(loops(ab(), {"a"}));
        CHECK(d.may(0) == MoveSet{{0, 0}});
        CHECK(d.must(0) == Family{{{0, 0}}});
    }
    SUBCASE("request/grant implementation")
    {
        auto d = lts_as_dmts(intro_impl());
        CHECK(d.size() == 5);
        CHECK(d.initials().size() == 1);
        std::size_t musts = 0;
        for (StateId s = 0; s < d.size(); ++s) {
            for (const auto& n : d.must(s))
                CHECK(n.size() == 1);
            musts += d.must(s).size();
        }
        CHECK(musts == 6);
        CHECK(dmts_as_lts(d) == intro_impl());
    }
}

TEST_CASE("lts_as_naa")
{
    CHECK(lts_as_naa(deadlock(ab())).tran(0) == Family{MoveSet{}});
    CHECK(lts_as_naa(loops(ab(), {"a"})).tran(0) == Family{{{0, 0}}});
    CHECK(lts_as_naa(loops(ab(), {"a", "b"})).tran(0) == Family{{{0, 0}, {1, 0}}});
    CHECK(lts_as_naa(intro_impl()).is_implementation());
    CHECK(naa_as_lts(lts_as_naa(intro_impl())) == intro_impl());
}

TEST_CASE("must-support is enforced or repaired")
{
    DmtsBuilder b(ab());
    b.initial("s").must("s", {{"a", "s"}});
    CHECK_THROWS_AS((void)b.build(), InvariantViolation);
    auto d = b.build(MustSupport::repair);
    CHECK(d.may(0) == MoveSet{{0, 0}});
}

TEST_CASE("mts_check")
{
    CHECK_NOTHROW(mts_check(lts_as_dmts(deadlock(ab()))));
    CHECK_NOTHROW(mts_check(invariance_dmts()));

    DmtsBuilder two(ab());
    two.initial("s1").initial("s2");
    two.may("s1", "a", "s1").may("s1", "a", "s2").may("s1", "b", "s1").may("s1", "b", "s2");
    two.must("s1", {{"a", "s1"}, {"a", "s2"}}).must("s1", {{"b", "s1"}, {"b", "s2"}});
    CHECK_THROWS_AS(mts_check(two.build()), NotAnMts);

    DmtsBuilder disj(ab());
    disj.initial("s").may("s", "a", "s").may("s", "b", "s").must("s", {{"a", "s"}, {"b", "s"}});
    CHECK_THROWS_WITH_AS(mts_check(disj.build()), doctest::Contains("{(a,s),(b,s)}"), NotAnMts);
}

TEST_CASE("distinguished specifications")
{
    auto bot = bottom_naa(ab());
    CHECK(bot.size() == 0);
    CHECK(bot.initials().empty());

    auto top = top_naa(Alphabet({"a"}));
    CHECK(top.size() == 1);
    CHECK(top.tran(0) == Family{MoveSet{}, MoveSet{{0, 0}}});
    CHECK(top_naa(ab()).tran(0).size() == 4);

    auto u = unit_lts(ab());
    CHECK(u.size() == 1);
    CHECK(u.succ(0) == MoveSet{{0, 0}, {1, 0}});
}

TEST_CASE("naa construction")
{
    CHECK_THROWS_AS(Naa(ab(), {"s"}, {0}, {}), InvariantViolation);
    CHECK_THROWS_AS(Naa(ab(), {"s"}, {1}, {{}}), InvariantViolation);
    auto n = invariance_naa();
    CHECK(n.tran(0) == Family{{{0, 0}}, {{0, 0}, {1, 0}}});
    CHECK_FALSE(n.is_implementation());
}

TEST_CASE("identifier quoting")
{
    CHECK(quote_id("s0") == "s0");
    CHECK(quote_id("u#1") == "u#1");
    CHECK(quote_id("{s1/t1}") == "\"{s1/t1}\"");
    CHECK(quote_id("may") == "\"may\"");
    CHECK(quote_id("a\"b") == "\"a\\\"b\"");
    CHECK(fresh_name("init", {"init", "init'"}) == "init''");
}

TEST_CASE("hml declarations")
{
    using namespace hml;
    CHECK_THROWS_AS(HmlDecl(ab(), {"X"}, {"X"}, {var("Y")}), UnboundVariable);
    CHECK_THROWS_AS(HmlDecl(ab(), {"X"}, {"Y"}, {tt()}), UnboundVariable);
    CHECK_THROWS_AS(HmlDecl(ab(), {"X"}, {"X"}, {diamond("z", tt())}), InvariantViolation);
    CHECK_THROWS_AS(HmlDecl(ab(), {"X", "X"}, {}, {tt(), tt()}), InvariantViolation);

    HmlDecl d(ab(), {"Y", "X"}, {"X"}, {ff(), tt()});
    CHECK(d.vars() == std::vector<std::string>{"X", "Y"});
    CHECK(equal(d.body("X"), tt()));
    CHECK(equal(d.body("Y"), ff()));
    CHECK(d.initials() == std::vector<std::size_t>{0});
}

TEST_CASE("hml printing keeps tree shape")
{
    using namespace hml;
    auto f = conj(var("X"), conj(var("Y"), var("Z")));
    CHECK(to_string(f) == "X & (Y & Z)");
    CHECK(to_string(conj(conj(var("X"), var("Y")), var("Z"))) == "X & Y & Z");
    CHECK(to_string(diamond("a", disj(tt(), ff()))) == "<a>(tt | ff)");
    CHECK(to_string(disj(conj(var("X"), var("Y")), box("b", var("(X,1)")))) ==
          "X & Y | [b]\"(X,1)\"");
    CHECK(depth(invariance_hml().body(0)) == 1);
    CHECK(compare(var("X"), var("Y")) < 0);
    CHECK(equal(conj(tt(), var("X")), conj(tt(), var("X"))));
}
