#include "pnet/chern.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <numbers>
#include <optional>
#include <random>

namespace pnet {

int vrank(const VirtualBundle& v) {
    int r = 0;
    for (const auto& e : v.plus) r += e.rank();
    for (const auto& e : v.minus) r -= e.rank();
    return r;
}

VirtualBundle virtual_of(const NetBundle& e) { return VirtualBundle{{e}, {}}; }

VirtualBundle vb_add(const VirtualBundle& a, const VirtualBundle& b) {
    VirtualBundle r = a;
    r.plus.insert(r.plus.end(), b.plus.begin(), b.plus.end());
    r.minus.insert(r.minus.end(), b.minus.begin(), b.minus.end());
    return r;
}

VirtualBundle vb_neg(const VirtualBundle& a) { return VirtualBundle{a.minus, a.plus}; }

VirtualBundle vb_tensor(const VirtualBundle& a, const VirtualBundle& b) {
    VirtualBundle r;
    for (const auto& x : a.plus)
        for (const auto& y : b.plus) r.plus.push_back(tensor(x, y));
    for (const auto& x : a.minus)
        for (const auto& y : b.minus) r.plus.push_back(tensor(x, y));
    for (const auto& x : a.plus)
        for (const auto& y : b.minus) r.minus.push_back(tensor(x, y));
    for (const auto& x : a.minus)
        for (const auto& y : b.plus) r.minus.push_back(tensor(x, y));
    return r;
}

std::pair<int, VirtualBundle> reduce(const VirtualBundle& v, const Poset& base) {
    int r = vrank(v);
    VirtualBundle red = v;
    NetBundle t1 = trivial_bundle(base, 1);
    for (int i = 0; i < std::abs(r); ++i)
        (r > 0 ? red.minus : red.plus).push_back(t1);
    return {r, red};
}

NetBundle direct_sum_all(const Poset& base, const std::vector<NetBundle>& list) {
    NetBundle acc = trivial_bundle(base, 0);
    for (const auto& e : list) acc = direct_sum(acc, e);
    return acc;
}

namespace {

Mat intertwiner_nullspace(const std::vector<Mat>& rho, const std::vector<Mat>& rho2,
                          int d, int dd) {
    // { U : U rho(g) = rho2(g) U } via vec (column-major).
    int n = static_cast<int>(rho.size());
    Mat stacked(std::max(1, n) * d * dd, d * dd);
    stacked.setZero();
    for (int g = 0; g < n; ++g)
        stacked.middleRows(g * d * dd, d * dd) =
            kron(rho[g].transpose(), Mat::Identity(dd, dd)) -
            kron(Mat::Identity(d, d), rho2[g]);
    if (n == 0) return Mat::Identity(d * dd, d * dd);
    Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    double scale = std::max(1.0, s.size() ? s(0) : 0.0);
    int rank = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > 1e-8 * scale) ++rank;
    return svd.matrixV().rightCols(d * dd - rank);
}

Mat unvec(const Vec& v, int rows, int cols) {
    Mat m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = v(j * rows + i);
    return m;
}

std::vector<Mat> rep_images(const NetBundle& e, const Complex& k,
                            const Pi1Presentation& pi) {
    std::vector<Mat> out;
    for (size_t g = 0; g < pi.generator_edge.size(); ++g)
        out.push_back(e.holonomy(generator_loop(pi, k, static_cast<int>(g))));
    return out;
}

bool commuting_family(const std::vector<Mat>& rho) {
    for (size_t i = 0; i < rho.size(); ++i)
        for (size_t j = i + 1; j < rho.size(); ++j)
            if ((rho[i] * rho[j] - rho[j] * rho[i]).cwiseAbs().maxCoeff() >
                kTolDerived)
                return false;
    return true;
}

struct JointVector {
    std::vector<Cplx> chi; // character values, one per generator
    Vec v;                 // unit joint eigenvector
};

// Simultaneous eigenbasis of a commuting unitary family, found by
// diagonalizing a random Hermitian combination and verifying that each
// eigenvalue cluster carries a scalar action of every generator.
std::optional<std::vector<JointVector>> joint_eigenbasis(
    const std::vector<Mat>& rho, int d, std::mt19937& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    for (int attempt = 0; attempt < 5; ++attempt) {
        Mat h = Mat::Zero(d, d);
        for (const auto& g : rho) {
            Cplx c(nd(rng), nd(rng));
            h += c * g + std::conj(c) * g.adjoint();
        }
        Eigen::SelfAdjointEigenSolver<Mat> es(h);
        double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
        std::vector<JointVector> out;
        bool ok = true;
        int i = 0;
        while (ok && i < d) {
            int j = i;
            while (j + 1 < d &&
                   es.eigenvalues()(j + 1) - es.eigenvalues()(j) < 1e-7 * scale)
                ++j;
            Mat q = es.eigenvectors().middleCols(i, j - i + 1);
            std::vector<Cplx> chi;
            for (const auto& g : rho) {
                Cplx c = (q.adjoint() * g * q).trace() / double(j - i + 1);
                if ((g * q - c * q).cwiseAbs().maxCoeff() > 1e-6) {
                    ok = false; // two characters collided; re-randomize
                    break;
                }
                chi.push_back(c);
            }
            for (int c = 0; ok && c <= j - i; ++c)
                out.push_back({chi, q.col(c)});
            i = j + 1;
        }
        if (ok) return out;
    }
    return std::nullopt;
}

} // namespace

std::pair<bool, Mat> are_isomorphic(const NetBundle& e, const NetBundle& f,
                                    unsigned seed) {
    if (!(e.base() == f.base()))
        throw BaseMismatch("isomorphism test needs a common base");
    if (e.rank() != f.rank()) return {false, Mat()};
    int d = e.rank();
    if (d == 0) return {true, Mat()};
    Complex k(e.base());
    Pi1Presentation pi = pi1_presentation(k, 0);
    auto rho = rep_images(e, k, pi);
    auto rho2 = rep_images(f, k, pi);

    // Abelian fast path: match joint characters instead of solving the
    // full intertwiner equation (which scales as rank^4).
    if (!rho.empty() && commuting_family(rho) && commuting_family(rho2)) {
        std::mt19937 arng(seed ^ 0x9e3779b9u);
        auto ea = joint_eigenbasis(rho, d, arng);
        auto eb = joint_eigenbasis(rho2, d, arng);
        if (ea && eb) {
            std::vector<bool> used(eb->size(), false);
            Mat u = Mat::Zero(d, d);
            bool matched = true;
            for (const auto& a : *ea) {
                size_t pick = eb->size();
                for (size_t b = 0; b < eb->size(); ++b) {
                    if (used[b]) continue;
                    double diff = 0.0;
                    for (size_t g = 0; g < a.chi.size(); ++g)
                        diff = std::max(diff, std::abs(a.chi[g] - (*eb)[b].chi[g]));
                    if (diff < 1e-6) {
                        pick = b;
                        break;
                    }
                }
                if (pick == eb->size()) {
                    matched = false;
                    break;
                }
                used[pick] = true;
                u += (*eb)[pick].v * a.v.adjoint();
            }
            if (!matched) return {false, Mat()};
            double worst = 0.0;
            for (size_t g = 0; g < rho.size(); ++g)
                worst = std::max(
                    worst, (u * rho[g] - rho2[g] * u).cwiseAbs().maxCoeff());
            if (worst <= kTolDerived) return {true, u};
        }
    }

    Mat space = intertwiner_nullspace(rho, rho2, d, d);
    if (space.cols() == 0) return {false, Mat()};
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (int attempt = 0; attempt < 3; ++attempt) {
        Vec v = Vec::Zero(d * d);
        for (int c = 0; c < space.cols(); ++c)
            v += Cplx(nd(rng), nd(rng)) * space.col(c);
        Mat u = unvec(v, d, d);
        Eigen::JacobiSVD<Mat> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const auto& s = svd.singularValues();
        if (s(s.size() - 1) <= 1e-6 * std::max(1.0, s(0))) continue;
        Mat w = svd.matrixU() * svd.matrixV().adjoint(); // polar unitary part
        double worst = 0.0;
        for (size_t g = 0; g < rho.size(); ++g)
            worst = std::max(worst,
                             (w * rho[g] - rho2[g] * w).cwiseAbs().maxCoeff());
        if (worst <= kTolDerived) return {true, w};
    }
    return {false, Mat()};
}

bool virtual_equal(const VirtualBundle& a, const VirtualBundle& b) {
    const Poset* base = nullptr;
    for (const auto& e : a.plus) base = &e.base();
    for (const auto& e : b.plus) base = base ? base : &e.base();
    for (const auto& e : a.minus) base = base ? base : &e.base();
    for (const auto& e : b.minus) base = base ? base : &e.base();
    if (!base) return true; // both formally zero
    std::vector<NetBundle> lhs = a.plus, rhs = b.plus;
    lhs.insert(lhs.end(), b.minus.begin(), b.minus.end());
    rhs.insert(rhs.end(), a.minus.begin(), a.minus.end());
    return are_isomorphic(direct_sum_all(*base, lhs), direct_sum_all(*base, rhs))
        .first;
}

namespace {

// Projector onto the trivial summand and its complement reduction.
NetBundle strip_trivial(const NetBundle& e) {
    auto secs = global_sections(e);
    if (secs.empty()) return e;
    int d = e.rank();
    BundleMorphism q{e, e, {}};
    for (int a = 0; a < e.base().size(); ++a) {
        Mat p = Mat::Zero(d, d);
        for (const auto& s : secs) p += s.values.at(a) * s.values.at(a).adjoint();
        q.T[a] = Mat::Identity(d, d) - p;
    }
    return subobject(e, q);
}

} // namespace

bool stably_equivalent(const NetBundle& e, const NetBundle& f) {
    if (!(e.base() == f.base()))
        throw BaseMismatch("stable equivalence needs a common base");
    NetBundle re = strip_trivial(e), rf = strip_trivial(f);
    if (re.rank() != rf.rank()) return false;
    return are_isomorphic(re, rf).first;
}

namespace {

bool holonomy_finite(const std::vector<Mat>& rho, int d, size_t cap = 512) {
    std::vector<Mat> group{Mat::Identity(d, d)};
    auto known = [&](const Mat& m) {
        for (const auto& g : group)
            if ((g - m).cwiseAbs().maxCoeff() < 1e-6) return true;
        return false;
    };
    for (size_t i = 0; i < group.size(); ++i) {
        for (const auto& g : rho) {
            for (Mat cand : {Mat(g * group[i]), Mat(g.adjoint() * group[i])}) {
                if (!known(cand)) {
                    group.push_back(cand);
                    if (group.size() > cap) return false;
                }
            }
        }
    }
    return true;
}

} // namespace

std::vector<std::pair<NetBundle, int>> decompose(const NetBundle& e, unsigned seed) {
    int d = e.rank();
    if (d == 0) return {};
    Complex k(e.base());
    Pi1Presentation pi = pi1_presentation(k, 0);
    auto rho = rep_images(e, k, pi);
    if (!commuting_family(rho) && !holonomy_finite(rho, d))
        throw Unsupported("decomposition needs abelian or finite-image holonomy");
    Mat comm = intertwiner_nullspace(rho, rho, d, d);
    if (comm.cols() == 1) return {{e, 1}};

    // Spectral projections of a generic Hermitian commutant element.
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    Vec v = Vec::Zero(d * d);
    for (int c = 0; c < comm.cols(); ++c) v += Cplx(nd(rng), nd(rng)) * comm.col(c);
    Mat m = unvec(v, d, d);
    Mat h = m + m.adjoint();
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());

    std::vector<std::pair<NetBundle, int>> out;
    int i = 0;
    while (i < d) {
        int j = i;
        while (j + 1 < d &&
               es.eigenvalues()(j + 1) - es.eigenvalues()(j) < 1e-6 * scale)
            ++j;
        Mat q = es.eigenvectors().middleCols(i, j - i + 1);
        std::vector<Mat> sub;
        for (const auto& g : rho) sub.push_back(q.adjoint() * g * q);
        NetBundle piece = bundle_from_rep(k, pi, sub, j - i + 1);
        bool merged = false;
        for (auto& [rep, mult] : out)
            if (are_isomorphic(rep, piece).first) {
                ++mult;
                merged = true;
                break;
            }
        if (!merged) out.emplace_back(std::move(piece), 1);
        i = j + 1;
    }
    return out;
}

Cplx c1_loop(const NetBundle& e, const Path& loop) {
    if (loop.start() != loop.end()) throw NotALoop("c1 evaluates on loops");
    return e.holonomy(loop).determinant();
}

std::vector<Cplx> c1(const NetBundle&, const Complex&, const HolonomyRep& rep) {
    std::vector<Cplx> out;
    for (const auto& m : rep.images) out.push_back(m.determinant());
    return out;
}

std::vector<Cplx> abelianized_c1(const NetBundle& e, const Complex& k,
                                 const H1Data& h1, int basepoint) {
    std::vector<Cplx> out;
    for (const Chain& cyc : h1.generator_cycles()) {
        Cplx v(1.0, 0.0);
        for (const Path& loop : cycle_to_loops(k, cyc, basepoint))
            v *= c1_loop(e, loop);
        out.push_back(v);
    }
    return out;
}

Cplx chern_function(const NetBundle& e, int i, const Path& loop) {
    if (loop.start() != loop.end())
        throw NotALoop("Chern functions evaluate on loops");
    int d = e.rank();
    if (i == 0) return Cplx(1.0, 0.0);
    Mat hol = e.holonomy(loop);
    Cplx acc(0.0, 0.0);
    for (int k = 0; k <= std::min(i, d); ++k) {
        long long c = binomial(d - k, i - k);
        if (c == 0) continue;
        Cplx chi = compound_matrix(hol, k).trace();
        acc += (k % 2 == 0 ? 1.0 : -1.0) * static_cast<double>(c) * chi;
    }
    return acc;
}

Cplx total_chern_at(const NetBundle& e, Cplx h, const Path& loop) {
    Cplx acc(1.0, 0.0), hp(1.0, 0.0);
    for (int i = 1; i <= e.rank(); ++i) {
        hp *= h;
        acc += chern_function(e, i, loop) * hp;
    }
    return acc;
}

std::vector<VirtualBundle> chern_k_classes(const NetBundle& e) {
    int d = e.rank();
    std::vector<NetBundle> lambda; // lambda^k E, with lambda^0 = T_1
    lambda.push_back(trivial_bundle(e.base(), 1));
    for (int k = 1; k <= d; ++k) lambda.push_back(exterior_power(e, k));
    std::vector<VirtualBundle> out;
    for (int i = 1; i <= d; ++i) {
        VirtualBundle v;
        for (int k = 0; k <= i; ++k) {
            long long c = binomial(d - k, i - k);
            auto& side = k % 2 == 0 ? v.plus : v.minus;
            for (long long t = 0; t < c; ++t) side.push_back(lambda[k]);
        }
        out.push_back(std::move(v));
    }
    return out;
}

namespace {

Path h1_generator_loop(const Complex& k, const H1Data& h1, int basepoint) {
    auto cycles = h1.generator_cycles();
    auto loops = cycle_to_loops(k, cycles.at(0), basepoint);
    Path acc = loops.at(0);
    for (size_t i = 1; i < loops.size(); ++i) acc = concat(loops[i], acc);
    return acc;
}

} // namespace

ClassifyResult classify_pi1_Z(const NetBundle& e, const Complex& k) {
    H1Data h1 = h1_integral(k);
    if (h1.group.free_rank != 1 || !h1.group.torsion.empty())
        throw WrongFundamentalGroup("classification needs H1 = Z (pi1 = Z)");
    Path gen = h1_generator_loop(k, h1, 0);
    Mat hol = e.holonomy(gen);
    Eigen::ComplexEigenSolver<Mat> es(hol);
    ClassifyResult r;
    r.poly = {Cplx(1.0, 0.0)};
    for (int i = 0; i < e.rank(); ++i) {
        Cplx chi = es.eigenvalues()(i);
        r.eigenvalues.push_back(chi);
        if (std::abs(chi - Cplx(1.0, 0.0)) <= 1e-6) continue;
        r.zeros.push_back(1.0 / (chi - Cplx(1.0, 0.0)));
        // multiply P by (1 + (1 - chi) h)
        std::vector<Cplx> next(r.poly.size() + 1, Cplx(0.0, 0.0));
        for (size_t j = 0; j < r.poly.size(); ++j) {
            next[j] += r.poly[j];
            next[j + 1] += r.poly[j] * (Cplx(1.0, 0.0) - chi);
        }
        r.poly = std::move(next);
    }
    return r;
}

NetBundle reconstruct_from_zeros(const Complex& k, const std::vector<Cplx>& zeros,
                                 int total_rank) {
    H1Data h1 = h1_integral(k);
    if (h1.group.free_rank != 1 || !h1.group.torsion.empty())
        throw WrongFundamentalGroup("reconstruction needs H1 = Z");
    Pi1Presentation pi = pi1_presentation(k, 0);
    // Winding number of each presentation generator in H1 = Z.
    std::vector<long> wind;
    for (size_t g = 0; g < pi.generator_edge.size(); ++g) {
        IntVec cls = hurewicz_T(k, h1, generator_loop(pi, k, static_cast<int>(g)));
        wind.push_back(static_cast<long>(cls.at(0)));
    }
    std::vector<Cplx> chars;
    for (const Cplx& z : zeros) chars.push_back(Cplx(1.0, 0.0) + 1.0 / z);
    while (static_cast<int>(chars.size()) < total_rank)
        chars.push_back(Cplx(1.0, 0.0));
    int d = static_cast<int>(chars.size());
    std::vector<Mat> images;
    for (size_t g = 0; g < pi.generator_edge.size(); ++g) {
        Mat m = Mat::Zero(d, d);
        for (int i = 0; i < d; ++i) m(i, i) = std::pow(chars[i], wind[g]);
        images.push_back(m);
    }
    return bundle_from_rep(k, pi, images, d);
}

std::vector<IsotypeEntry> equivariant_split_check(const NetBundle& e,
                                                  const std::map<int, Mat>& gen,
                                                  int order) {
    equivariant_average(e, gen, order); // validates the action
    int d = e.rank();
    std::vector<IsotypeEntry> out;
    for (int j = 0; j < order; ++j) {
        BundleMorphism pj{e, e, {}};
        for (int a = 0; a < e.base().size(); ++a) {
            Mat acc = Mat::Zero(d, d), pw = Mat::Identity(d, d);
            for (int t = 0; t < order; ++t) {
                double ang = -2.0 * std::numbers::pi * j * t / order;
                acc += Cplx(std::cos(ang), std::sin(ang)) * pw;
                pw = gen.at(a) * pw;
            }
            pj.T[a] = acc / static_cast<double>(order);
        }
        NetBundle piece = subobject(e, pj);
        if (piece.rank() > 0) out.push_back({j, std::move(piece)});
    }
    return out;
}

} // namespace pnet
