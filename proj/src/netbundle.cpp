#include "pnet/netbundle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>

namespace pnet {

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

std::vector<std::vector<int>> k_subsets(int d, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < d; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

Mat compound_matrix(const Mat& a, int k) {
    int d = static_cast<int>(a.rows());
    auto subsets = k_subsets(d, k);
    int n = static_cast<int>(subsets.size());
    Mat r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Mat sub(k, k);
            for (int u = 0; u < k; ++u)
                for (int v = 0; v < k; ++v) sub(u, v) = a(subsets[i][u], subsets[j][v]);
            r(i, j) = k == 0 ? Cplx(1, 0) : sub.determinant();
        }
    return r;
}

namespace {

double max_abs(const Mat& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double unitarity_defect(const Mat& j) {
    Mat d = j.adjoint() * j - Mat::Identity(j.cols(), j.cols());
    return max_abs(d);
}

// Composes cover maps along the order; returns all strict comparable pairs.
// `residual` and `witness` collect the worst path-independence defect.
std::map<std::pair<int, int>, Mat> compose_all(
    const Poset& p, const std::map<std::pair<int, int>, Mat>& cover,
    double* residual, std::string* witness) {
    auto covers = p.cover_pairs();
    std::map<std::pair<int, int>, Mat> comp = cover;
    auto strict = p.strict_pairs();
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto [a, b] : strict) {
            if (comp.count({a, b})) continue;
            for (auto [c, b2] : covers) {
                if (b2 != b || !p.leq(a, c) || c == a) continue;
                auto it = comp.find({a, c});
                if (it == comp.end()) continue;
                comp.emplace(std::pair{a, b}, cover.at({c, b}) * it->second);
                changed = true;
                break;
            }
        }
    }
    if (residual) {
        *residual = 0.0;
        for (auto [a, b] : strict) {
            auto me = comp.find({a, b});
            if (me == comp.end()) continue;
            for (auto [c, b2] : covers) {
                if (b2 != b || !p.leq(a, c)) continue;
                Mat alt = c == a ? cover.at({c, b})
                                 : Mat(cover.at({c, b}) * comp.at({a, c}));
                if (alt.rows() != me->second.rows() || alt.cols() != me->second.cols())
                    continue;
                double d = max_abs(alt - me->second);
                if (d > *residual) {
                    *residual = d;
                    if (witness)
                        *witness = p.name(a) + " <= " + p.name(c) + " <= " + p.name(b);
                }
            }
        }
    }
    return comp;
}

} // namespace

ValidationReport validate_bundle(const BundleData& d, double tol) {
    ValidationReport rep;
    const Poset& p = d.base;
    for (int a = 0; a < p.size(); ++a) {
        auto it = d.ranks.find(a);
        rep.rank_function[a] = it == d.ranks.end() ? -1 : it->second;
        if (it == d.ranks.end()) {
            rep.witness = "no fibre dimension for " + p.name(a);
            return rep;
        }
    }
    bool shapes_ok = true, injective = true, unitary_ok = true;
    for (auto [sub, sup] : p.cover_pairs()) {
        auto it = d.maps.find({sub, sup});
        if (it == d.maps.end())
            throw MissingCoverMatrix("no matrix for cover pair " + p.name(sub) +
                                     " <= " + p.name(sup));
        const Mat& m = it->second;
        if (m.rows() != d.ranks.at(sup) || m.cols() != d.ranks.at(sub)) {
            shapes_ok = false;
            rep.witness = "shape mismatch at " + p.name(sub) + " <= " + p.name(sup);
            continue;
        }
        Eigen::JacobiSVD<Mat> svd(m);
        double smin = m.cols() == 0
                          ? 1.0
                          : svd.singularValues()(svd.singularValues().size() - 1);
        if (smin <= 1e-6) {
            injective = false;
            rep.witness = "non-injective map at " + p.name(sub) + " <= " + p.name(sup);
        }
        double u = unitarity_defect(m);
        rep.worst_unitarity = std::max(rep.worst_unitarity, u);
        if (m.rows() == m.cols() && u > tol) {
            unitary_ok = false;
            if (rep.witness.empty())
                rep.witness = "unitarity defect at " + p.name(sub) + " <= " + p.name(sup);
        }
    }
    if (!shapes_ok) return rep;
    std::string w;
    compose_all(p, d.maps, &rep.worst_cocycle, &w);
    bool path_ok = rep.worst_cocycle <= kTolDerived;
    if (!path_ok && rep.witness.empty()) rep.witness = "path dependence along " + w;
    rep.is_quasinet = injective && path_ok;
    bool constant = true;
    for (int a = 1; a < p.size(); ++a)
        if (d.ranks.at(a) != d.ranks.at(0)) constant = false;
    rep.is_net = rep.is_quasinet && constant && unitary_ok;
    return rep;
}

NetBundle::NetBundle(Poset base, int rank, std::map<std::pair<int, int>, Mat> cover_maps,
                     double tol)
    : base_(std::move(base)), rank_(rank), maps_(std::move(cover_maps)),
      id_(Mat::Identity(rank, rank)) {
    if (rank_ < 0) throw Error("negative rank");
    for (auto [sub, sup] : base_.cover_pairs()) {
        auto it = maps_.find({sub, sup});
        if (it == maps_.end())
            throw MissingCoverMatrix("no matrix for cover pair " + base_.name(sub) +
                                     " <= " + base_.name(sup));
        if (it->second.rows() != rank_ || it->second.cols() != rank_)
            throw Error("matrix shape does not match the rank");
        if (unitarity_defect(it->second) > tol)
            throw NonInjective("matrix on cover pair " + base_.name(sub) + " <= " +
                               base_.name(sup) + " is not unitary");
    }
    // Drop any entries that are not cover pairs of the (closed) base order.
    std::map<std::pair<int, int>, Mat> clean;
    for (auto [sub, sup] : base_.cover_pairs()) clean[{sub, sup}] = maps_.at({sub, sup});
    maps_ = std::move(clean);
    double res = 0.0;
    std::string witness;
    comp_ = compose_all(base_, maps_, &res, &witness);
    if (res > kTolDerived)
        throw CocycleViolation("path-dependent composition along " + witness +
                               " (residual " + std::to_string(res) + ")");
}

const Mat& NetBundle::J(int sub, int sup) const {
    if (sub == sup) return id_;
    if (!base_.leq(sub, sup))
        throw InvalidSimplex("J requested on an incomparable pair");
    return comp_.at({sub, sup});
}

Mat NetBundle::z(const Simplex1& s) const {
    validate_simplex1(base_, s);
    return J(s.face0, s.support).adjoint() * J(s.face1, s.support);
}

Mat NetBundle::holonomy(const Path& p) const {
    validate_path(base_, p);
    Mat h = id_;
    for (const auto& b : p.steps) h = z(b) * h;
    return h;
}

NetBundle trivial_bundle(const Poset& base, int rank) {
    std::map<std::pair<int, int>, Mat> maps;
    for (auto [sub, sup] : base.cover_pairs())
        maps[{sub, sup}] = Mat::Identity(rank, rank);
    return NetBundle(base, rank, std::move(maps));
}

namespace {

void check_same_base(const NetBundle& e, const NetBundle& f) {
    if (!(e.base() == f.base()))
        throw BaseMismatch("bundles live over different posets");
}

NetBundle map_bundle(const NetBundle& e, int rank, const std::function<Mat(const Mat&)>& f) {
    std::map<std::pair<int, int>, Mat> maps;
    for (const auto& [key, m] : e.cover_maps()) maps[key] = f(m);
    return NetBundle(e.base(), rank, std::move(maps));
}

} // namespace

NetBundle direct_sum(const NetBundle& e, const NetBundle& f) {
    check_same_base(e, f);
    std::map<std::pair<int, int>, Mat> maps;
    int d = e.rank(), dd = f.rank();
    for (const auto& [key, m] : e.cover_maps()) {
        Mat blk = Mat::Zero(d + dd, d + dd);
        blk.topLeftCorner(d, d) = m;
        blk.bottomRightCorner(dd, dd) = f.cover_maps().at(key);
        maps[key] = blk;
    }
    return NetBundle(e.base(), d + dd, std::move(maps));
}

NetBundle tensor(const NetBundle& e, const NetBundle& f) {
    check_same_base(e, f);
    std::map<std::pair<int, int>, Mat> maps;
    for (const auto& [key, m] : e.cover_maps())
        maps[key] = kron(m, f.cover_maps().at(key));
    return NetBundle(e.base(), e.rank() * f.rank(), std::move(maps));
}

NetBundle conjugate(const NetBundle& e) {
    return map_bundle(e, e.rank(), [](const Mat& m) { return m.conjugate(); });
}

NetBundle exterior_power(const NetBundle& e, int k) {
    if (k < 0 || k > e.rank())
        throw BadExponent("exterior power index outside 0..rank");
    int n = static_cast<int>(binomial(e.rank(), k));
    return map_bundle(e, n, [k](const Mat& m) { return compound_matrix(m, k); });
}

NetBundle dual_bundle(const NetBundle& e) {
    Poset d = dual(e.base());
    std::map<std::pair<int, int>, Mat> maps;
    for (auto [sub, sup] : d.cover_pairs())
        maps[{sub, sup}] = e.J(sup, sub).adjoint(); // (sup, sub) is a cover in e.base()
    return NetBundle(d, e.rank(), std::move(maps));
}

NetBundle morphism_bundle(const NetBundle& e, const NetBundle& f) {
    check_same_base(e, f);
    std::map<std::pair<int, int>, Mat> maps;
    for (const auto& [key, m] : e.cover_maps())
        maps[key] = kron(m.conjugate(), f.cover_maps().at(key));
    return NetBundle(e.base(), e.rank() * f.rank(), std::move(maps));
}

double morphism_residual(const BundleMorphism& t) {
    if (!(t.source.base() == t.target.base()))
        throw BaseMismatch("morphism endpoints live over different posets");
    double worst = 0.0;
    for (const auto& [key, j] : t.source.cover_maps()) {
        auto [sub, sup] = key;
        Mat lhs = t.T.at(sup) * j;
        Mat rhs = t.target.cover_maps().at(key) * t.T.at(sub);
        worst = std::max(worst, max_abs(lhs - rhs));
    }
    return worst;
}

bool is_morphism(const BundleMorphism& t, double tol) {
    for (int a = 0; a < t.source.base().size(); ++a) {
        auto it = t.T.find(a);
        if (it == t.T.end() || it->second.rows() != t.target.rank() ||
            it->second.cols() != t.source.rank())
            return false;
    }
    return morphism_residual(t) <= tol;
}

BundleMorphism adjoint(const BundleMorphism& t) {
    BundleMorphism r{t.target, t.source, {}};
    for (const auto& [a, m] : t.T) r.T[a] = m.adjoint();
    return r;
}

BundleMorphism identity_bundle_morphism(const NetBundle& e) {
    BundleMorphism r{e, e, {}};
    for (int a = 0; a < e.base().size(); ++a) r.T[a] = Mat::Identity(e.rank(), e.rank());
    return r;
}

BundleMorphism symmetry(const NetBundle& e, const NetBundle& f) {
    check_same_base(e, f);
    int d = e.rank(), dd = f.rank();
    Mat flip = Mat::Zero(d * dd, d * dd);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < dd; ++j) flip(j * d + i, i * dd + j) = 1.0;
    BundleMorphism r{tensor(e, f), tensor(f, e), {}};
    for (int a = 0; a < e.base().size(); ++a) r.T[a] = flip;
    return r;
}

namespace {

// Orthonormal nullspace basis of a stacked constraint matrix.
Mat nullspace(const Mat& m, double tol = 1e-8) {
    if (m.rows() == 0) return Mat::Identity(m.cols(), m.cols());
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    int rank = 0;
    double scale = std::max(1.0, s.size() ? s(0) : 0.0);
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > tol * scale) ++rank;
    return svd.matrixV().rightCols(m.cols() - rank);
}

struct GaugeData {
    Complex k;
    Pi1Presentation pi;
    std::vector<Mat> images;
    explicit GaugeData(const NetBundle& e)
        : k(e.base()), pi(pi1_presentation(k, 0)) {
        for (size_t g = 0; g < pi.generator_edge.size(); ++g)
            images.push_back(e.holonomy(generator_loop(pi, k, static_cast<int>(g))));
    }
};

} // namespace

std::vector<Section> global_sections(const NetBundle& e) {
    if (!is_pathwise_connected(e.base()))
        throw Disconnected("global sections need a connected base");
    GaugeData gd(e);
    int d = e.rank();
    Mat stacked(static_cast<int>(gd.images.size()) * d, d);
    for (size_t g = 0; g < gd.images.size(); ++g)
        stacked.middleRows(static_cast<int>(g) * d, d) =
            gd.images[g] - Mat::Identity(d, d);
    Mat fixed = nullspace(stacked);
    std::vector<Section> out;
    for (int c = 0; c < fixed.cols(); ++c) {
        Section s;
        for (int a = 0; a < e.base().size(); ++a) {
            Path t = tree_path(gd.pi, gd.k, a);
            s.values[a] = e.holonomy(t) * fixed.col(c);
        }
        out.push_back(std::move(s));
    }
    return out;
}

double section_residual(const NetBundle& e, const Section& s) {
    double worst = 0.0;
    for (const auto& [key, j] : e.cover_maps()) {
        auto [sub, sup] = key;
        worst = std::max(worst, (j * s.values.at(sub) - s.values.at(sup))
                                    .cwiseAbs()
                                    .maxCoeff());
    }
    return worst;
}

int trivial_summand_rank(const NetBundle& e) {
    return static_cast<int>(global_sections(e).size());
}

bool is_irreducible(const NetBundle& e) {
    if (!is_pathwise_connected(e.base()))
        throw Disconnected("irreducibility needs a connected base");
    if (e.rank() == 0) return false;
    GaugeData gd(e);
    int d = e.rank();
    Mat stacked(static_cast<int>(gd.images.size()) * d * d, d * d);
    for (size_t g = 0; g < gd.images.size(); ++g) {
        const Mat& rho = gd.images[g];
        stacked.middleRows(static_cast<int>(g) * d * d, d * d) =
            kron(rho.transpose(), Mat::Identity(d, d)) -
            kron(Mat::Identity(d, d), rho);
    }
    Mat comm = stacked.rows() == 0 ? Mat::Identity(d * d, d * d) : nullspace(stacked);
    return comm.cols() == 1;
}

NetBundle subobject(const NetBundle& e, const BundleMorphism& p) {
    if (!(p.source.base() == e.base()) || p.source.rank() != e.rank() ||
        p.target.rank() != e.rank())
        throw NotAMorphism("projection must be an endomorphism of the bundle");
    if (!is_morphism(p)) throw NotAMorphism("projection does not intertwine");
    int d = e.rank();
    std::map<int, Mat> bases;
    int rank0 = -1;
    for (int a = 0; a < e.base().size(); ++a) {
        const Mat& pa = p.T.at(a);
        if (max_abs(pa - pa.adjoint()) > kTolDerived ||
            max_abs(pa * pa - pa) > kTolDerived)
            throw NotAProjection("fibre map is not an orthogonal projection");
        Eigen::SelfAdjointEigenSolver<Mat> es(pa);
        std::vector<int> keep;
        for (int i = 0; i < d; ++i)
            if (es.eigenvalues()(i) > 0.5) keep.push_back(i);
        Mat q(d, static_cast<int>(keep.size()));
        for (size_t i = 0; i < keep.size(); ++i) q.col(i) = es.eigenvectors().col(keep[i]);
        if (rank0 < 0) rank0 = static_cast<int>(keep.size());
        else if (rank0 != static_cast<int>(keep.size()))
            throw Unsupported("projection has non-constant rank (quasinet subobject)");
        bases[a] = std::move(q);
    }
    std::map<std::pair<int, int>, Mat> maps;
    for (const auto& [key, j] : e.cover_maps()) {
        auto [sub, sup] = key;
        maps[key] = bases.at(sup).adjoint() * j * bases.at(sub);
    }
    return NetBundle(e.base(), rank0, std::move(maps), kTolDerived);
}

BundleMorphism equivariant_average(const NetBundle& e, const std::map<int, Mat>& gen,
                                   int order) {
    if (order < 1) throw NotAnAction("group order must be positive");
    int d = e.rank();
    for (int a = 0; a < e.base().size(); ++a) {
        auto it = gen.find(a);
        if (it == gen.end() || it->second.rows() != d || it->second.cols() != d)
            throw NotAnAction("missing or misshaped unitary at " + e.base().name(a));
        if (unitarity_defect(it->second) > kTolDerived)
            throw NotAnAction("group generator is not unitary at " + e.base().name(a));
        Mat pw = Mat::Identity(d, d);
        for (int t = 0; t < order; ++t) pw = it->second * pw;
        if (max_abs(pw - Mat::Identity(d, d)) > kTolDerived)
            throw NotAnAction("generator does not have the stated order");
    }
    for (const auto& [key, j] : e.cover_maps()) {
        auto [sub, sup] = key;
        if (max_abs(gen.at(sup) * j - j * gen.at(sub)) > kTolDerived)
            throw NotAnAction("action does not commute with the net structure");
    }
    BundleMorphism r{e, e, {}};
    for (int a = 0; a < e.base().size(); ++a) {
        Mat acc = Mat::Zero(d, d), pw = Mat::Identity(d, d);
        for (int t = 0; t < order; ++t) {
            acc += pw;
            pw = gen.at(a) * pw;
        }
        r.T[a] = acc / static_cast<double>(order);
    }
    return r;
}

HolonomyRep holonomy_rep(const NetBundle& e, const Complex& k, int basepoint,
                         double tol) {
    if (!(k.poset() == e.base())) throw BaseMismatch("complex/bundle base mismatch");
    HolonomyRep r{pi1_presentation(k, basepoint), {}, e.rank()};
    for (size_t g = 0; g < r.pi.generator_edge.size(); ++g)
        r.images.push_back(e.holonomy(generator_loop(r.pi, k, static_cast<int>(g))));
    for (const auto& rel : r.pi.pres.relators) {
        Mat m = rep_word(r, rel);
        if (max_abs(m - Mat::Identity(e.rank(), e.rank())) > tol)
            throw RelatorViolation("holonomy images violate a presentation relator");
    }
    return r;
}

Mat rep_word(const HolonomyRep& r, const std::vector<int>& word) {
    Mat m = Mat::Identity(r.rank, r.rank);
    for (int l : word) {
        const Mat& g = r.images.at(std::abs(l) - 1);
        m = (l > 0 ? g : Mat(g.adjoint())) * m;
    }
    return m;
}

NetBundle bundle_from_rep(const Complex& k, const Pi1Presentation& pi,
                          const std::vector<Mat>& images, int rank) {
    HolonomyRep r{pi, images, rank};
    std::map<std::pair<int, int>, Mat> maps;
    for (auto [sub, sup] : k.poset().cover_pairs()) {
        Simplex1 step{sup, sup, sub};
        Path loop = concat(reverse_path(tree_path(pi, k, sup)),
                           concat(Path{{step}}, tree_path(pi, k, sub)));
        maps[{sub, sup}] = rep_word(r, path_word(pi, k, loop));
    }
    return NetBundle(k.poset(), rank, std::move(maps), kTolDerived);
}

} // namespace pnet
