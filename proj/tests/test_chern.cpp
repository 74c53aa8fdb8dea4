#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "pnet/chern.hpp"
#include "pnet/fixtures.hpp"

using namespace pnet;

namespace {

const Cplx kI(0, 1);
const Cplx kOmega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);

Path gamma_loop(const Poset& p) {
    return Path{{{p.index("x"), p.index("b"), p.index("a")},
                 {p.index("y"), p.index("a"), p.index("b")}}};
}

Mat random_unitary(int d, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd;
    Mat a(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = Cplx(nd(rng), nd(rng));
    Eigen::HouseholderQR<Mat> qr(a);
    Mat q = qr.householderQ();
    return q;
}

NetBundle bundle_with_holonomy(const Mat& u) {
    Poset p = fixture_pseudocircle();
    std::map<std::pair<int, int>, Mat> maps;
    int d = static_cast<int>(u.rows());
    for (auto pr : p.cover_pairs()) maps[pr] = Mat::Identity(d, d);
    maps[{p.index("b"), p.index("y")}] = u;
    return NetBundle(std::move(p), d, std::move(maps));
}

} // namespace

TEST_CASE("first Chern class values") {
    NetBundle li = fixture_line(kI);
    NetBundle lw = fixture_line(kOmega);
    Path gamma = gamma_loop(li.base());
    CHECK(std::abs(c1_loop(li, gamma) - kI) < 1e-12);
    CHECK(std::abs(c1_loop(direct_sum(li, lw), gamma) - kI * kOmega) < 1e-12);
    CHECK(std::abs(c1_loop(fixture_bundle("t3"), gamma) - 1.0) < 1e-12);

    Complex k(li.base());
    H1Data h1 = h1_integral(k);
    auto vals = abelianized_c1(li, k, h1);
    REQUIRE(vals.size() == 1);
    CHECK(std::abs(std::abs(vals[0].imag()) - 1.0) < 1e-12); // i or -i by orientation
}

TEST_CASE("Chern functions on loops") {
    NetBundle li = fixture_line(kI);
    NetBundle lw = fixture_line(kOmega);
    Path gamma = gamma_loop(li.base());

    CHECK(std::abs(chern_function(li, 1, gamma) - (1.0 - kI)) < 1e-12);
    for (int d = 1; d <= 4; ++d) {
        NetBundle td = trivial_bundle(fixture_pseudocircle(), d);
        for (int i = 1; i <= d; ++i)
            CHECK(std::abs(chern_function(td, i, gamma)) < 1e-12);
    }
    NetBundle sum = direct_sum(li, lw);
    CHECK(std::abs(chern_function(sum, 2, gamma) - (1.0 - kI) * (1.0 - kOmega)) <
          1e-12);
    // Whitney, function version, degree 1
    CHECK(std::abs(chern_function(sum, 1, gamma) -
                   (chern_function(li, 1, gamma) + chern_function(lw, 1, gamma))) <
          1e-12);
}

TEST_CASE("total Chern polynomial at -1 is the determinant") {
    Path gamma = gamma_loop(fixture_pseudocircle());
    for (unsigned seed : {1u, 2u, 3u}) {
        NetBundle e = bundle_with_holonomy(random_unitary(3, seed));
        Cplx det = e.holonomy(gamma).determinant();
        CHECK(std::abs(total_chern_at(e, Cplx(-1, 0), gamma) - det) < 1e-8);
        CHECK(std::abs(c1_loop(e, gamma) - det) < 1e-12);
    }
}

TEST_CASE("K-classes of trivial bundles vanish") {
    VirtualBundle zero;
    for (int d = 1; d <= 3; ++d) {
        NetBundle td = trivial_bundle(fixture_pseudocircle(), d);
        for (const auto& ki : chern_k_classes(td)) CHECK(virtual_equal(ki, zero));
    }
    // and a nontrivial line has a nonzero first K-class
    auto ks = chern_k_classes(fixture_line(kI));
    CHECK(!virtual_equal(ks[0], zero));
}

TEST_CASE("virtual bundle arithmetic") {
    NetBundle li = fixture_line(kI);
    NetBundle lw = fixture_line(kOmega);
    VirtualBundle a = virtual_of(direct_sum(li, lw));
    VirtualBundle b = vb_add(virtual_of(lw), virtual_of(li));
    CHECK(virtual_equal(a, b));
    CHECK(!virtual_equal(virtual_of(li), virtual_of(fixture_bundle("t1"))));
    CHECK(vrank(vb_add(a, vb_neg(b))) == 0);

    auto [r, reduced] = reduce(virtual_of(li), li.base());
    CHECK(r == 1);
    CHECK(vrank(reduced) == 0);
}

TEST_CASE("isomorphism testing") {
    NetBundle li = fixture_line(kI);
    NetBundle lm = fixture_line(Cplx(-1, 0));
    CHECK(are_isomorphic(li, fixture_line(kI)).first);
    CHECK(!are_isomorphic(li, lm).first);
    auto [ok, u] = are_isomorphic(direct_sum(li, lm), direct_sum(lm, li));
    CHECK(ok);
    CHECK((u * u.adjoint() - Mat::Identity(2, 2)).norm() <= 1e-8);
    CHECK(!stably_equivalent(li, lm));
    CHECK(stably_equivalent(li, fixture_line(kI)));
}

TEST_CASE("decomposition into irreducibles") {
    NetBundle li = fixture_line(kI);
    NetBundle lw = fixture_line(kOmega);
    auto parts = decompose(direct_sum(direct_sum(li, li), lw));
    REQUIRE(parts.size() == 2);
    int mult_i = 0, mult_w = 0;
    for (const auto& [s, m] : parts) {
        CHECK(s.rank() == 1);
        if (are_isomorphic(s, li).first) mult_i = m;
        if (are_isomorphic(s, lw).first) mult_w = m;
    }
    CHECK(mult_i == 2);
    CHECK(mult_w == 1);

    auto triv = decompose(fixture_bundle("t2"));
    REQUIRE(triv.size() == 1);
    CHECK(triv[0].second == 2);
    CHECK(are_isomorphic(triv[0].first, fixture_bundle("t1")).first);

    // dense input with abelian holonomy still splits into lines
    auto dense = decompose(fixture_bundle("dense2"));
    int total = 0;
    for (const auto& [s, m] : dense) total += m * s.rank();
    CHECK(total == 2);
    for (const auto& [s, m] : dense) CHECK(s.rank() == 1);
}

TEST_CASE("classification over the pseudocircle") {
    Complex k(fixture_pseudocircle());
    NetBundle li = fixture_line(kI);
    ClassifyResult r = classify_pi1_Z(li, k);
    REQUIRE(r.zeros.size() == 1);
    CHECK(std::abs(r.zeros[0] - Cplx(-0.5, -0.5)) < 1e-8); // (i-1)^-1
    REQUIRE(r.poly.size() == 2);
    CHECK(std::abs(r.poly[1] - (1.0 - kI)) < 1e-8);

    ClassifyResult t = classify_pi1_Z(fixture_bundle("t3"), k);
    CHECK(t.zeros.empty());
    REQUIRE(t.poly.size() == 1); // P(h) = 1, eigenvalues 1 dropped

    NetBundle rebuilt = reconstruct_from_zeros(k, r.zeros, 1);
    CHECK(are_isomorphic(li, rebuilt).first);

    Complex kc(fixture_chain3());
    CHECK_THROWS_AS(classify_pi1_Z(trivial_bundle(fixture_chain3(), 1), kc),
                    WrongFundamentalGroup);
}

TEST_CASE("classification round trip on random bundles") {
    Complex k(fixture_pseudocircle());
    for (unsigned seed : {11u, 12u, 13u}) {
        NetBundle e = bundle_with_holonomy(random_unitary(3, seed));
        ClassifyResult r = classify_pi1_Z(e, k);
        NetBundle back = reconstruct_from_zeros(k, r.zeros, e.rank());
        CHECK(stably_equivalent(e, back));
    }
}

TEST_CASE("isotypes of the swap action") {
    auto [t2, gen, order] = fixture_action("swap_t2");
    auto table = equivariant_split_check(t2, gen, order);
    REQUIRE(table.size() == 2);
    int seen = 0;
    NetBundle resum = table[0].summand;
    for (const auto& [ch, summand] : table) {
        CHECK(summand.rank() == 1);
        seen |= 1 << ch;
    }
    for (size_t i = 1; i < table.size(); ++i)
        resum = direct_sum(resum, table[i].summand);
    CHECK(seen == 3); // trivial and sign characters both present
    CHECK(are_isomorphic(resum, t2).first);
}
