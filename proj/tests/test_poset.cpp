#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "pnet/fixtures.hpp"

using namespace pnet;

TEST_CASE("closure of a chain infers the long relation") {
    Poset p = fixture_chain3();
    CHECK(p.size() == 3);
    CHECK(p.leq("0", "2")); // not declared, inferred
    CHECK(!p.leq("2", "0"));
    CHECK(p.leq("1", "1"));
    // transitive reduction of the stored order is the declared chain
    auto cov = p.cover_pairs();
    REQUIRE(cov.size() == 2);
}

TEST_CASE("pseudocircle basics") {
    Poset p = fixture_pseudocircle();
    auto ua = p.up_set(p.index("a"));
    std::vector<int> want{p.index("a"), p.index("x"), p.index("y")};
    std::sort(want.begin(), want.end());
    CHECK(ua == want);
    CHECK(p.up_set(p.index("x")) == std::vector<int>{p.index("x")});
    CHECK(p.cover_pairs().size() == 4);
    CHECK(!p.leq("x", "y"));
    CHECK(!p.leq("a", "b"));
}

TEST_CASE("construction rejects bad input") {
    CHECK_THROWS_AS(Poset({"a", "a"}, {}), DuplicateElement);
    CHECK_THROWS_AS(Poset({"a", "b"}, {{"a", "c"}}), UnknownElement);
    CHECK_THROWS_AS(Poset({"a", "b"}, {{"a", "b"}, {"b", "a"}}), OrderCycle);
}

TEST_CASE("dual reverses and is an involution") {
    Poset c = fixture_chain3();
    Poset d = dual(c);
    CHECK(d.leq("2", "0"));
    CHECK(!d.leq("0", "2"));
    CHECK(dual(d) == c);

    Poset pc = fixture_pseudocircle();
    Poset dpc = dual(pc);
    CHECK(dpc.up_set(dpc.index("x")).size() == 3); // x now below a and b
}

TEST_CASE("directedness") {
    CHECK(is_upward_directed(fixture_chain3()));
    CHECK(is_downward_directed(fixture_chain3()));
    CHECK(!is_upward_directed(fixture_pseudocircle())); // x, y have no upper bound
    CHECK(!is_downward_directed(fixture_pseudocircle()));
}

TEST_CASE("products") {
    Poset prod = fixture_product();
    CHECK(prod.size() == 12);
    CHECK(is_pathwise_connected(prod));
    // componentwise order
    CHECK(prod.leq("a|0", "x|2"));
    CHECK(!prod.leq("a|1", "x|0"));

    Poset one({"pt"}, {});
    Poset same = product_poset(fixture_chain3(), one);
    CHECK(same.size() == 3);
    CHECK(same.leq("0|pt", "2|pt"));
}

TEST_CASE("connectivity") {
    CHECK(is_pathwise_connected(fixture_pseudocircle()));
    Poset two({"u", "v"}, {});
    CHECK(!is_pathwise_connected(two));
}

TEST_CASE("morphisms check monotonicity") {
    Poset c = fixture_chain3();
    Poset pc = fixture_pseudocircle();
    PosetMorphism em(c, pc, {{"0", "a"}, {"1", "x"}, {"2", "x"}});
    CHECK(em(c.index("0")) == pc.index("a"));
    // 1 <= 2 but x and a are not ordered that way
    CHECK_THROWS_AS(PosetMorphism(c, pc, {{"0", "a"}, {"1", "x"}, {"2", "a"}}),
                    Error);

    Poset prod = fixture_product();
    PosetMorphism pr0 = product_projection(prod, pc, 0);
    PosetMorphism pr1 = product_projection(prod, c, 1);
    CHECK(pr0(prod.index("b|1")) == pc.index("b"));
    CHECK(pr1(prod.index("b|1")) == c.index("1"));
}
