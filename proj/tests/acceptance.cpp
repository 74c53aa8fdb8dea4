// Acceptance gate: one line per criterion, nonzero exit on any failure.
// All tolerances are pinned here.

#include <chrono>
#include <cmath>
#include <iostream>
#include <numbers>
#include <random>

#include "pnet/chern.hpp"
#include "pnet/fixtures.hpp"

using namespace pnet;

namespace {

constexpr double kTol = 1e-8;
int failures = 0;

void report(int num, const std::string& what, bool ok) {
    std::cout << "criterion " << num << " (" << what << "): "
              << (ok ? "PASS" : "FAIL") << std::endl;
    if (!ok) ++failures;
}

const Cplx kI(0, 1);
const Cplx kOmega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);

Path gamma_loop(const Poset& p) {
    return Path{{{p.index("x"), p.index("b"), p.index("a")},
                 {p.index("y"), p.index("a"), p.index("b")}}};
}

std::vector<Poset> fixture_posets() {
    return {fixture_chain3(), fixture_pseudocircle(), fixture_product(),
            fixture_lambda()};
}

std::vector<NetBundle> fixture_bundles() {
    return {fixture_bundle("t1"), fixture_bundle("t2"), fixture_bundle("t3"),
            fixture_bundle("l_i"), fixture_bundle("l_minus1"),
            fixture_bundle("l_omega"), fixture_bundle("dense2")};
}

Poset random_connected_poset(std::mt19937& rng) {
    std::uniform_int_distribution<int> size_d(3, 8);
    std::bernoulli_distribution edge_d(0.3);
    for (;;) {
        int n = size_d(rng);
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
        std::vector<std::pair<std::string, std::string>> covers;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (edge_d(rng)) covers.emplace_back(names[i], names[j]);
        Poset p(names, covers);
        if (is_pathwise_connected(p)) return p;
    }
}

/// Random loop at the basepoint: a free walk closed up through the tree.
Path random_loop(const Complex& k, const Pi1Presentation& pi, std::mt19937& rng,
                 int len) {
    const auto& s1 = k.simplices1();
    std::vector<std::vector<int>> out_of(k.poset().size());
    for (size_t i = 0; i < s1.size(); ++i)
        if (!is_degenerate(s1[i])) out_of[s1[i].face1].push_back(static_cast<int>(i));
    Path walk = constant_path(pi.basepoint);
    int at = pi.basepoint;
    for (int t = 0; t < len; ++t) {
        const auto& outs = out_of[at];
        if (outs.empty()) break;
        std::uniform_int_distribution<size_t> pick(0, outs.size() - 1);
        walk.steps.push_back(s1[outs[pick(rng)]]);
        at = walk.end();
    }
    if (at == pi.basepoint) return walk;
    return concat(reverse_path(tree_path(pi, k, at)), walk);
}

Mat random_unitary(int d, std::mt19937& rng) {
    std::normal_distribution<double> nd;
    Mat a(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = Cplx(nd(rng), nd(rng));
    Eigen::HouseholderQR<Mat> qr(a);
    return qr.householderQ();
}

NetBundle bundle_with_holonomy(const Mat& u) {
    Poset p = fixture_pseudocircle();
    std::map<std::pair<int, int>, Mat> maps;
    int d = static_cast<int>(u.rows());
    for (auto pr : p.cover_pairs()) maps[pr] = Mat::Identity(d, d);
    maps[{p.index("b"), p.index("y")}] = u;
    return NetBundle(std::move(p), d, std::move(maps));
}

/// abelianize(pi1) equals H1 and the loop-class map is onto (hence an
/// isomorphism of isomorphic finitely generated groups).
bool hurewicz_matches(const Poset& p) {
    Complex k(p);
    H1Data h1 = h1_integral(k);
    Pi1Presentation pi = pi1_presentation(k, 0);
    if (!(abelianize(pi.pres) == h1.group)) return false;
    int s = h1.group.summands();
    int tb = static_cast<int>(h1.group.torsion.size());
    IntMat rel = zero_mat(s, static_cast<int>(pi.generator_edge.size()) + tb);
    for (size_t g = 0; g < pi.generator_edge.size(); ++g) {
        IntVec col = hurewicz_T(k, h1, generator_loop(pi, k, static_cast<int>(g)));
        for (int i = 0; i < s; ++i) rel[i][g] = col[i];
    }
    for (int t = 0; t < tb; ++t)
        rel[h1.group.free_rank + t][pi.generator_edge.size() + t] =
            h1.group.torsion[t];
    return cokernel(rel).is_trivial();
}

bool criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    for (const Poset& p : fixture_posets())
        if (!hurewicz_matches(p)) return false;
    std::mt19937 rng(20260823);
    for (int t = 0; t < 20; ++t)
        if (!hurewicz_matches(random_connected_poset(rng))) return false;
    auto dt = std::chrono::steady_clock::now() - t0;
    return std::chrono::duration_cast<std::chrono::seconds>(dt).count() < 10;
}

bool criterion2() {
    for (const Poset& p : fixture_posets()) {
        Complex k(p);
        H1Data h1 = h1_integral(k);
        for (const auto& cyc : h1.generator_cycles()) {
            IntVec want = h1.project(k, cyc);
            IntVec got = a_zero(h1.group);
            for (const auto& loop : cycle_to_loops(k, cyc, 0))
                got = a_add(h1.group, got, hurewicz_T(k, h1, loop));
            if (got != want) return false;
        }
    }
    return true;
}

bool criterion3() {
    FGAbelianGroup z{1, {}};
    FGAbelianGroup z2 = from_cyclic_orders({2});
    FGAbelianGroup z6 = from_cyclic_orders({6});
    FGAbelianGroup zz{2, {}};
    for (const Poset& p : fixture_posets()) {
        Complex k(p);
        H1Data h1 = h1_integral(k);
        for (const FGAbelianGroup& a : {z, z2, z6, zz}) {
            FGAbelianGroup via_hom = h1_cohomology(k, h1, a);
            if (a.free_rank == 0 && a.torsion.size() == 1 &&
                !(h1_mod_direct(k, h1, a.torsion[0]) == via_hom))
                return false;
            if (a.free_rank > 0) {
                // sanity: Hom(H1, Z^r) = Z^(r * rank H1)
                FGAbelianGroup want{a.free_rank * h1.group.free_rank, {}};
                for (const Int& d : h1.group.torsion)
                    for (const Int& e : a.torsion)
                        want.torsion.push_back(gcd(d, e));
                if (!(via_hom == from_cyclic_orders([&] {
                          IntVec o(want.free_rank, 0);
                          for (const Int& d : want.torsion) o.push_back(d);
                          return o;
                      }())))
                    return false;
            }
        }
    }
    return true;
}

bool criterion4() {
    std::mt19937 rng(4);
    for (const NetBundle& e : fixture_bundles()) {
        Complex k(e.base());
        const auto& s1 = k.simplices1();
        for (const auto& rec : k.simplices2())
            if ((e.z(s1[rec.d0]) * e.z(s1[rec.d2]) - e.z(s1[rec.d1])).norm() > kTol)
                return false;
        Pi1Presentation pi = pi1_presentation(k, 0);
        Path cur = gamma_loop(e.base());
        for (int t = 0; t < 100; ++t) {
            auto defs = elementary_deformations(k, cur);
            if (defs.empty()) break;
            std::uniform_int_distribution<size_t> pick(0, defs.size() - 1);
            Path next = defs[pick(rng)].result;
            if (next.steps.size() > 12) continue; // keep the walk bounded
            if ((e.holonomy(next) - e.holonomy(cur)).norm() > kTol) return false;
            cur = next;
        }
    }
    return true;
}

bool criterion5() {
    std::mt19937 rng(5);
    for (const NetBundle& e : fixture_bundles()) {
        Complex k(e.base());
        Pi1Presentation pi = pi1_presentation(k, 0);
        std::uniform_int_distribution<int> len_d(1, 6);
        for (int t = 0; t < 200; ++t) {
            Path loop = random_loop(k, pi, rng, len_d(rng));
            Cplx det = e.holonomy(loop).determinant();
            if (std::abs(c1_loop(e, loop) - det) > kTol) return false; // chi^d = c1
            if (std::abs(total_chern_at(e, Cplx(-1, 0), loop) - det) > kTol)
                return false; // total polynomial at -1
            if (e.rank() == 1 &&
                std::abs(chern_function(e, 1, loop) - (1.0 - c1_loop(e, loop))) >
                    kTol)
                return false;
        }
    }
    return true;
}

VirtualBundle k_class(const std::vector<VirtualBundle>& ks, const Poset& base,
                      int i) {
    if (i == 0) return virtual_of(trivial_bundle(base, 1));
    if (i <= static_cast<int>(ks.size())) return ks[i - 1];
    return {};
}

bool criterion6() {
    std::mt19937 rng(6);
    auto all = fixture_bundles();
    for (size_t x = 0; x < all.size(); ++x)
        for (size_t y = x; y < all.size(); ++y) {
            const NetBundle &e = all[x], &f = all[y];
            NetBundle sum = direct_sum(e, f);
            Complex k(sum.base());
            Pi1Presentation pi = pi1_presentation(k, 0);
            std::uniform_int_distribution<int> len_d(1, 5);
            for (int t = 0; t < 200; ++t) {
                Path loop = random_loop(k, pi, rng, len_d(rng));
                for (int i = 1; i <= sum.rank(); ++i) {
                    Cplx whitney = 0;
                    for (int l = 0; l <= i; ++l)
                        whitney += chern_function(e, l, loop) *
                                   chern_function(f, i - l, loop);
                    if (std::abs(chern_function(sum, i, loop) - whitney) > kTol)
                        return false;
                }
            }
            auto ks = chern_k_classes(sum);
            auto ke = chern_k_classes(e);
            auto kf = chern_k_classes(f);
            for (int i = 1; i <= sum.rank(); ++i) {
                VirtualBundle want;
                for (int l = 0; l <= i; ++l)
                    want = vb_add(want, vb_tensor(k_class(ke, e.base(), l),
                                                  k_class(kf, f.base(), i - l)));
                if (!virtual_equal(k_class(ks, sum.base(), i), want)) return false;
            }
        }
    return true;
}

bool criterion7() {
    Poset base = fixture_pseudocircle();
    Path gamma = gamma_loop(base);
    VirtualBundle zero;
    for (int d = 1; d <= 4; ++d) {
        NetBundle td = trivial_bundle(base, d);
        for (const auto& ki : chern_k_classes(td))
            if (!virtual_equal(ki, zero)) return false;
        for (int i = 1; i <= d; ++i)
            if (std::abs(chern_function(td, i, gamma)) > kTol) return false;
    }
    std::mt19937 rng(7);
    NetBundle t3 = trivial_bundle(base, 3);
    std::uniform_int_distribution<int> rank_d(1, 2);
    for (int t = 0; t < 20; ++t) {
        Mat u = random_unitary(3, rng);
        int r = rank_d(rng);
        Mat q = u.leftCols(r);
        Mat proj = q * q.adjoint();
        BundleMorphism p{t3, t3, {}};
        for (int a = 0; a < base.size(); ++a) p.T[a] = proj;
        NetBundle sub = subobject(t3, p);
        if (trivial_summand_rank(sub) != sub.rank()) return false;
    }
    return true;
}

bool criterion8() {
    std::mt19937 rng(8);
    Complex k(fixture_pseudocircle());
    std::uniform_int_distribution<int> rank_d(1, 4);
    for (int t = 0; t < 20; ++t) {
        int d = rank_d(rng);
        NetBundle e = bundle_with_holonomy(random_unitary(d, rng));
        ClassifyResult r = classify_pi1_Z(e, k);
        for (const Cplx& zero : r.zeros)
            if (std::abs(zero.real() + 0.5) > kTol) return false; // the line Re = -1/2
        NetBundle back = reconstruct_from_zeros(k, r.zeros, d);
        if (!stably_equivalent(e, back)) return false;
    }
    return true;
}

bool criterion9() {
    for (const char* name : {"twistlambda", "trivchain"}) {
        ExactnessReport r = exactness_check(fixture_poset_bundle(name));
        if (!(r.eta_surjective && r.fibre_kills && r.abelian_exact)) return false;
        if (!(r.fibre_simply_connected && r.base_iso)) return false;
    }
    return true;
}

bool criterion10() {
    for (const char* name : {"twist2", "twistlambda", "trivchain"}) {
        CylinderReport r = cylinders(fixture_poset_bundle(name));
        if (!(r.injective && r.order_isomorphism)) return false;
    }
    for (const NetBundle& e : fixture_bundles()) {
        TransitionReport r = transition_functions(e, kTol);
        if (!(r.cocycle_ok && r.locally_constant)) return false;
    }
    return true;
}

bool criterion11() {
    struct PairCase {
        Poset p, q;
        Path lp, lq;
    };
    Poset pc = fixture_pseudocircle();
    Poset c3 = fixture_chain3();
    Path gamma = gamma_loop(pc);
    Path hop{{{c3.index("2"), c3.index("1"), c3.index("0")},
              {c3.index("2"), c3.index("0"), c3.index("1")}}};
    std::vector<PairCase> cases = {{pc, c3, gamma, hop},
                                   {c3, c3, hop, hop},
                                   {pc, pc, gamma, gamma}};
    for (const auto& cse : cases) {
        Poset prod = product_poset(cse.p, cse.q);
        FGAbelianGroup hp = h1_integral(Complex(cse.p)).group;
        FGAbelianGroup hq = h1_integral(Complex(cse.q)).group;
        IntVec orders(hp.free_rank + hq.free_rank, 0);
        for (const Int& d : hp.torsion) orders.push_back(d);
        for (const Int& d : hq.torsion) orders.push_back(d);
        if (!(h1_integral(Complex(prod)).group == from_cyclic_orders(orders)))
            return false;
        Complex kp(cse.p), kq(cse.q);
        Path aligned = align_paths(cse.p, cse.lp, cse.q, cse.lq, prod);
        Path backp = project_path(prod, cse.p, 0, aligned);
        Path backq = project_path(prod, cse.q, 1, aligned);
        if (homotopic(kp, backp, cse.lp, 10000).verdict != Ternary::Yes)
            return false;
        if (homotopic(kq, backq, cse.lq, 10000).verdict != Ternary::Yes)
            return false;
    }
    return true;
}

bool criterion12() {
    auto [t2, gen, order] = fixture_action("swap_t2");
    auto table = equivariant_split_check(t2, gen, order);
    if (table.size() != 2) return false;
    bool triv = false, sign = false;
    for (const auto& entry : table) {
        if (entry.summand.rank() != 1) return false;
        if (entry.character == 0) triv = true;
        if (entry.character == 1) sign = true;
    }
    if (!(triv && sign)) return false;
    NetBundle resum = direct_sum(table[0].summand, table[1].summand);
    return are_isomorphic(resum, t2).first;
}

} // namespace

int main() {
    report(1, "abelianized pi1 equals H1, fixtures plus 20 random posets",
           criterion1());
    report(2, "generator cycles thread into loops with the same class",
           criterion2());
    report(3, "H^1 via Hom agrees with direct cochain computation", criterion3());
    report(4, "cocycle residuals and holonomy under deformations", criterion4());
    report(5, "first Chern identities on 200 random loops per bundle",
           criterion5());
    report(6, "Whitney formulas, function and K-class versions", criterion6());
    report(7, "trivial bundles have vanishing classes and trivial summands",
           criterion7());
    report(8, "classification round trip over the pseudocircle", criterion8());
    report(9, "three-term exactness for the poset-fibred bundles", criterion9());
    report(10, "cylinder order isomorphism and transition constancy",
           criterion10());
    report(11, "product homology splits and aligned paths project back",
           criterion11());
    report(12, "swap action on the trivial rank-2 bundle splits", criterion12());
    return failures == 0 ? 0 : 1;
}
