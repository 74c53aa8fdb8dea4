#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "pnet/fixtures.hpp"

using namespace pnet;

TEST_CASE("poset round trip") {
    for (const char* name : {"chain3", "pseudocircle", "product", "lambda"}) {
        Poset p = fixture_poset(name);
        CHECK(poset_from_json(poset_to_json(p)) == p);
    }
}

TEST_CASE("poset parsing rejects malformed input") {
    CHECK_THROWS_AS(parse_json_text("not json"), ParseError);
    CHECK_THROWS_AS(poset_from_json(parse_json_text("{}")), ParseError);
    CHECK_THROWS_AS(poset_from_json(parse_json_text(
                        R"({"elements":["a"],"covers":[["a"]]})")),
                    ParseError);
    CHECK_THROWS_AS(poset_from_json(parse_json_text(
                        R"({"elements":["a","a"],"covers":[]})")),
                    ParseError);
    CHECK_THROWS_AS(poset_from_json(parse_json_text(
                        R"({"elements":["a","b"],"covers":[["a","b"],["b","a"]]})")),
                    ParseError);
}

TEST_CASE("matrices and scalars") {
    Mat m(1, 2);
    m(0, 0) = Cplx(0.5, -1.25);
    m(0, 1) = Cplx(0, 1);
    Mat back = matrix_from_json(matrix_to_json(m));
    CHECK((back - m).norm() == 0.0);
    CHECK(complex_from_json(complex_to_json(Cplx(3, -4))) == Cplx(3, -4));
    CHECK_THROWS_AS(matrix_from_json(parse_json_text("[]")), ParseError);
    CHECK_THROWS_AS(matrix_from_json(parse_json_text("[[[1,2]],[[1,2],[3,4]]]")),
                    ParseError);
}

TEST_CASE("bundle round trip") {
    for (const char* name : {"t2", "l_i", "l_omega", "dense2"}) {
        NetBundle e = fixture_bundle(name);
        NetBundle back = bundle_from_json(bundle_to_json(e));
        CHECK(back.base() == e.base());
        CHECK(back.rank() == e.rank());
        for (const auto& [key, m] : e.cover_maps())
            CHECK((back.cover_maps().at(key) - m).norm() == 0.0);
    }
}

TEST_CASE("bundle round trip over a product base keeps the keys straight") {
    // element names contain the pair separator; parsing must still resolve
    NetBundle e = trivial_bundle(fixture_product(), 2);
    NetBundle back = bundle_from_json(bundle_to_json(e));
    CHECK(back.base() == e.base());
    CHECK(back.cover_maps().size() == e.cover_maps().size());
}

TEST_CASE("per-element ranks parse into quasinet data") {
    Json j = parse_json_text(R"({
        "base": {"elements":["0","1"],"covers":[["0","1"]]},
        "rank": {"0": 1, "1": 2},
        "maps": {"0|1": [[[1,0]],[[0,0]]]}
    })");
    BundleData d = bundle_data_from_json(j);
    CHECK(d.ranks.at(0) == 1);
    CHECK(d.ranks.at(1) == 2);
    CHECK(validate_bundle(d).is_quasinet);
    CHECK_THROWS_AS(bundle_from_json(j), ParseError); // not constant rank
}

TEST_CASE("poset bundle round trip") {
    for (const char* name : {"twist2", "twistlambda", "trivchain"}) {
        PosetNetBundle x = fixture_poset_bundle(name);
        PosetNetBundle back = poset_bundle_from_json(poset_bundle_to_json(x));
        CHECK(back.base() == x.base());
        CHECK(back.fibre() == x.fibre());
        CHECK(back.cover_transitions() == x.cover_transitions());
    }
}

TEST_CASE("serialized text is stable under reparsing") {
    for (const char* name : {"chain3", "l_i", "twistlambda"}) {
        Json j = fixture_emit(name);
        CHECK(parse_json_text(j.dump()).dump() == j.dump());
    }
}

TEST_CASE("groups serialize with their invariant factors") {
    FGAbelianGroup g;
    g.free_rank = 1;
    g.torsion = {Int(2), Int(6)};
    Json j = group_to_json(g);
    CHECK(j["free_rank"] == 1);
    CHECK(j["torsion"].size() == 2);
    CHECK(j["torsion"][1] == 6);
}

TEST_CASE("fixture registry is consistent") {
    for (const auto& e : fixture_list()) CHECK_NOTHROW(fixture_emit(e.name));
    CHECK_THROWS_AS(fixture_emit("nope"), UnknownElement);
    Json c3 = fixture_emit("chain3");
    CHECK(c3["elements"] == Json::array({"0", "1", "2"}));
}
