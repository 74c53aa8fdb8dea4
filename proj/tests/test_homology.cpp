#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "pnet/fixtures.hpp"
#include "pnet/homology.hpp"

using namespace pnet;

namespace {

Path gamma_loop(const Poset& p) {
    return Path{{{p.index("x"), p.index("b"), p.index("a")},
                 {p.index("y"), p.index("a"), p.index("b")}}};
}

Chain gamma_chain(const Complex& k) {
    return path_chain(k, gamma_loop(k.poset()));
}

} // namespace

TEST_CASE("first homology of the fixtures") {
    CHECK(h1_integral(Complex(fixture_chain3())).group.is_trivial());

    H1Data h1 = h1_integral(Complex(fixture_pseudocircle()));
    CHECK(h1.group.free_rank == 1);
    CHECK(h1.group.torsion.empty());

    H1Data hp = h1_integral(Complex(fixture_product()));
    CHECK(hp.group.free_rank == 1);
    CHECK(hp.group.torsion.empty());
}

TEST_CASE("boundary squares to zero") {
    Complex k(fixture_pseudocircle());
    for (size_t c = 0; c < k.simplices2().size(); ++c) {
        Chain top;
        top.degree = 2;
        top.add(static_cast<int>(c), 1);
        CHECK(boundary(k, boundary(k, top)).is_zero());
    }
}

TEST_CASE("the standard cycle generates") {
    Complex k(fixture_pseudocircle());
    H1Data h1 = h1_integral(k);
    IntVec cls = h1.project(k, gamma_chain(k));
    REQUIRE(cls.size() == 1);
    CHECK((cls[0] == 1 || cls[0] == -1));

    // a boundary projects to zero
    Chain top;
    top.degree = 2;
    top.add(0, 1);
    Chain b = boundary(k, top);
    IntVec zero = h1.project(k, b);
    CHECK(zero[0] == 0);

    // non-cycles are rejected
    Chain open_chain;
    open_chain.add(k.index1(gamma_loop(k.poset()).steps[0]), 1);
    CHECK_THROWS_AS(h1.project(k, open_chain), NotACycle);
}

TEST_CASE("loop classes agree with cycle classes") {
    Complex k(fixture_pseudocircle());
    H1Data h1 = h1_integral(k);
    Path gamma = gamma_loop(k.poset());
    CHECK(hurewicz_T(k, h1, gamma) == h1.project(k, gamma_chain(k)));
    Path open_path{{gamma.steps[0]}};
    CHECK_THROWS_AS(hurewicz_T(k, h1, open_path), NotALoop);
}

TEST_CASE("class is invariant under elementary deformations") {
    Complex k(fixture_pseudocircle());
    H1Data h1 = h1_integral(k);
    Path gamma = gamma_loop(k.poset());
    IntVec cls = hurewicz_T(k, h1, gamma);
    for (const auto& d : elementary_deformations(k, gamma))
        CHECK(hurewicz_T(k, h1, d.result) == cls);
}

TEST_CASE("cycles thread back into loops") {
    Complex k(fixture_pseudocircle());
    H1Data h1 = h1_integral(k);
    for (const auto& cyc : h1.generator_cycles()) {
        IntVec want = h1.project(k, cyc);
        IntVec got = a_zero(h1.group);
        for (const auto& loop : cycle_to_loops(k, cyc, 0)) {
            CHECK(loop.is_loop());
            CHECK(loop.start() == 0);
            got = a_add(h1.group, got, hurewicz_T(k, h1, loop));
        }
        CHECK(got == want);
    }
}

TEST_CASE("coboundaries are cocycles and pair to zero") {
    Complex k(fixture_pseudocircle());
    FGAbelianGroup z2 = from_cyclic_orders({2});
    CochainZ v;
    v.degree = 0;
    v.A = z2;
    v.values.assign(k.poset().size(), a_zero(z2));
    v.values[0] = IntVec{1};
    CochainZ dv = coboundary(k, v);
    CHECK(is_cocycle(k, dv));
    // d d v = 0
    for (const auto& row : coboundary(k, dv).values)
        for (const Int& e : row) CHECK(e == 0);
    // <dv, cycle> = 0
    IntVec paired = pairing(k, dv, gamma_chain(k));
    for (const Int& e : paired) CHECK(e == 0);
}

TEST_CASE("first cohomology via Hom and directly") {
    Complex kp(fixture_pseudocircle());
    H1Data hp = h1_integral(kp);
    FGAbelianGroup z{1, {}}, z2 = from_cyclic_orders({2}), z6 = from_cyclic_orders({6});

    CHECK(h1_cohomology(kp, hp, z) == z);
    CHECK(h1_cohomology(kp, hp, z2) == z2);
    CHECK(h1_mod_direct(kp, hp, 2) == z2);
    CHECK(h1_mod_direct(kp, hp, 6) == z6);

    Complex kc(fixture_chain3());
    H1Data hc = h1_integral(kc);
    CHECK(h1_cohomology(kc, hc, z).is_trivial());
    CHECK(h1_cohomology(kc, hc, z6).is_trivial());
    CHECK(h1_mod_direct(kc, hc, 6).is_trivial());

    Complex kprod(fixture_product());
    H1Data hprod = h1_integral(kprod);
    CHECK(h1_mod_direct(kprod, hprod, 2) == h1_cohomology(kprod, hprod, z2));
}

TEST_CASE("circle valued cocycles pair with holonomy values") {
    Complex k(fixture_pseudocircle());
    // assign i to the off-tree direction, compatible with every 2-simplex
    NetBundle l = fixture_line(Cplx(0, 1));
    CochainT v;
    v.degree = 1;
    v.values.resize(k.simplices1().size());
    for (size_t i = 0; i < v.values.size(); ++i)
        v.values[i] = l.z(k.simplices1()[i])(0, 0);
    CHECK(is_cocycle(k, v));
    Cplx paired = pairing(k, v, gamma_chain(k));
    CHECK(std::abs(paired - Cplx(0, 1)) < 1e-12);
}
