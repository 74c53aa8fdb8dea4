#include "pnet/homology.hpp"

#include <algorithm>
#include <set>

namespace pnet {

Chain boundary(const Complex& k, const Chain& x) {
    Chain r;
    r.degree = x.degree - 1;
    if (x.degree == 1) {
        for (const auto& [i, c] : x.coeff) {
            const Simplex1& b = k.simplices1().at(i);
            r.add(b.face0, c);
            r.add(b.face1, -c);
        }
    } else if (x.degree == 2) {
        for (const auto& [i, c] : x.coeff) {
            const auto& rec = k.simplices2().at(i);
            r.add(rec.d0, c);
            r.add(rec.d1, -c);
            r.add(rec.d2, c);
        }
    } else {
        throw Error("boundary needs degree 1 or 2");
    }
    return r;
}

Chain path_chain(const Complex& k, const Path& p) {
    Chain r;
    r.degree = 1;
    for (const auto& b : p.steps) r.add(k.index1(b), 1);
    return r;
}

namespace {

// Solve K y = b where K has full column rank (via its SNF); nullopt when b
// is outside the column span.
std::optional<IntVec> solve_in_basis(const SnfResult& s, const IntVec& b) {
    IntVec ub = mat_vec(s.U, b);
    IntVec y(s.n, 0);
    for (int i = 0; i < s.m; ++i) {
        if (i < s.rank) {
            if (ub[i] % s.diag[i] != 0) return std::nullopt;
            y[i] = ub[i] / s.diag[i];
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return mat_vec(s.V, y);
}

} // namespace

H1Data h1_integral(const Complex& k) {
    if (!is_pathwise_connected(k.poset()))
        throw Disconnected("H1 requires a pathwise connected poset");
    int n0 = k.poset().size();
    int n1 = static_cast<int>(k.simplices1().size());

    IntMat b1 = zero_mat(n0, n1);
    for (int i = 0; i < n1; ++i) {
        const Simplex1& b = k.simplices1()[i];
        b1[b.face0][i] += 1;
        b1[b.face1][i] -= 1;
    }

    H1Data h;
    h.n1_ = n1;
    h.kernel_ = kernel_basis(b1);
    h.z_ = cols(h.kernel_);
    h.snf_kernel_ = smith_normal_form(h.kernel_);

    LatticeBasis lat(n1);
    for (const auto& t : k.boundary_triples()) {
        std::map<int, Int> acc;
        acc[t[0]] += 1;
        acc[t[1]] -= 1;
        acc[t[2]] += 1;
        SparseVec v;
        for (const auto& [i, c] : acc)
            if (c != 0) v.emplace_back(i, c);
        if (!v.empty()) lat.insert(std::move(v));
    }
    h.image_basis_ = lat.basis_columns();

    int r = cols(h.image_basis_);
    IntMat y = zero_mat(h.z_, r);
    for (int j = 0; j < r; ++j) {
        IntVec col(n1);
        for (int i = 0; i < n1; ++i) col[i] = h.image_basis_[i][j];
        auto w = solve_in_basis(h.snf_kernel_, col);
        if (!w) throw Error("boundary image escapes the cycle lattice (b1 b2 != 0?)");
        for (int i = 0; i < h.z_; ++i) y[i][j] = (*w)[i];
    }
    h.snf_quot_ = smith_normal_form(std::move(y));

    h.group.free_rank = h.z_ - h.snf_quot_.rank;
    for (int i = 0; i < h.snf_quot_.rank; ++i)
        if (h.snf_quot_.diag[i] >= 2) {
            h.group.torsion.push_back(h.snf_quot_.diag[i]);
            h.tor_pos_.push_back(i);
        }
    for (int i = h.snf_quot_.rank; i < h.z_; ++i) h.free_pos_.push_back(i);
    return h;
}

IntVec H1Data::project_vec(IntVec x) const {
    auto w = solve_in_basis(snf_kernel_, x);
    if (!w) throw NotACycle("chain is not a 1-cycle");
    IntVec y = mat_vec(snf_quot_.U, *w);
    IntVec out;
    for (int i : free_pos_) out.push_back(y[i]);
    for (size_t j = 0; j < tor_pos_.size(); ++j) {
        Int d = group.torsion[j];
        Int v = y[tor_pos_[j]] % d;
        if (v < 0) v += d;
        out.push_back(v);
    }
    return out;
}

IntVec H1Data::project(const Complex& k, const Chain& x) const {
    if (x.degree != 1) throw NotACycle("expected a 1-chain");
    if (!boundary(k, x).is_zero()) throw NotACycle("chain has nonzero boundary");
    IntVec v(n1_, 0);
    for (const auto& [i, c] : x.coeff) v.at(i) = c;
    return project_vec(std::move(v));
}

std::vector<Chain> H1Data::generator_cycles() const {
    std::vector<Chain> out;
    auto rep_for = [&](int pos) {
        IntVec w(z_);
        for (int i = 0; i < z_; ++i) w[i] = snf_quot_.Uinv[i][pos];
        IntVec v = mat_vec(kernel_, w);
        Chain c;
        c.degree = 1;
        for (int i = 0; i < n1_; ++i)
            if (v[i] != 0) c.coeff[i] = v[i];
        return c;
    };
    for (int pos : free_pos_) out.push_back(rep_for(pos));
    for (int pos : tor_pos_) out.push_back(rep_for(pos));
    return out;
}

IntVec hurewicz_T(const Complex& k, const H1Data& h1, const Path& p) {
    if (!p.is_loop()) throw NotALoop("Hurewicz map is defined on loops");
    return h1.project(k, path_chain(k, p));
}

std::vector<Path> cycle_to_loops(const Complex& k, const Chain& x, int basepoint) {
    if (x.degree != 1) throw NotACycle("expected a 1-chain");
    if (!boundary(k, x).is_zero()) throw NotACycle("chain has nonzero boundary");
    if (!is_pathwise_connected(k.poset()))
        throw Disconnected("cycle threading needs a connected poset");
    if (x.is_zero()) return {};

    const auto& s1 = k.simplices1();
    // Orient: negative coefficients traverse the reverse simplex.
    std::multiset<int> pool;
    for (const auto& [i, c] : x.coeff) {
        int idx = c > 0 ? i : k.reverse_index(i);
        long n = static_cast<long>(abs(c));
        for (long t = 0; t < n; ++t) pool.insert(idx);
    }

    // Deterministic BFS tree for connector paths.
    std::vector<int> in_edge(k.poset().size(), -1);
    {
        std::vector<bool> seen(k.poset().size(), false);
        std::vector<int> order{basepoint};
        seen[basepoint] = true;
        for (size_t qi = 0; qi < order.size(); ++qi) {
            int u = order[qi];
            for (int i = 0; i < static_cast<int>(s1.size()); ++i)
                if (!is_degenerate(s1[i]) && s1[i].face1 == u && !seen[s1[i].face0]) {
                    seen[s1[i].face0] = true;
                    in_edge[s1[i].face0] = i;
                    order.push_back(s1[i].face0);
                }
        }
    }
    auto connector = [&](int v) { // basepoint -> v
        std::vector<Simplex1> up;
        while (v != basepoint) {
            int e = in_edge.at(v);
            if (e < 0) throw Disconnected("no connector path to basepoint");
            up.push_back(s1[e]);
            v = s1[e].face1;
        }
        Path r;
        r.steps.assign(up.rbegin(), up.rend());
        return r;
    };

    std::vector<Path> loops;
    while (!pool.empty()) {
        int first = *pool.begin();
        pool.erase(pool.begin());
        Path seg{{s1[first]}};
        int startv = s1[first].face1;
        int cur = s1[first].face0;
        while (cur != startv) {
            auto it = pool.end();
            for (auto jt = pool.begin(); jt != pool.end(); ++jt)
                if (s1[*jt].face1 == cur) {
                    it = jt;
                    break;
                }
            if (it == pool.end())
                throw NotACycle("threading stalled; chain is not a cycle");
            seg.steps.push_back(s1[*it]);
            cur = s1[*it].face0;
            pool.erase(it);
        }
        if (startv == basepoint) {
            loops.push_back(std::move(seg));
        } else {
            Path q = connector(startv);
            loops.push_back(concat(reverse_path(q), concat(seg, q)));
        }
    }
    return loops;
}

// ---- cochains ----------------------------------------------------------

IntVec a_zero(const FGAbelianGroup& a) { return IntVec(a.summands(), 0); }

IntVec a_reduce(const FGAbelianGroup& a, IntVec v) {
    for (size_t j = 0; j < a.torsion.size(); ++j) {
        Int& x = v.at(a.free_rank + j);
        x %= a.torsion[j];
        if (x < 0) x += a.torsion[j];
    }
    return v;
}

IntVec a_add(const FGAbelianGroup& a, const IntVec& x, const IntVec& y) {
    IntVec r(a.summands());
    for (int i = 0; i < a.summands(); ++i) r[i] = x.at(i) + y.at(i);
    return a_reduce(a, std::move(r));
}

IntVec a_neg(const FGAbelianGroup& a, const IntVec& x) {
    IntVec r(a.summands());
    for (int i = 0; i < a.summands(); ++i) r[i] = -x.at(i);
    return a_reduce(a, std::move(r));
}

namespace {

IntVec a_scale(const FGAbelianGroup& a, const Int& c, const IntVec& x) {
    IntVec r(a.summands());
    for (int i = 0; i < a.summands(); ++i) r[i] = c * x.at(i);
    return a_reduce(a, std::move(r));
}

} // namespace

CochainZ coboundary(const Complex& k, const CochainZ& v) {
    CochainZ r;
    r.A = v.A;
    if (v.degree == 0) {
        r.degree = 1;
        for (const auto& b : k.simplices1())
            r.values.push_back(
                a_add(v.A, v.values.at(b.face0), a_neg(v.A, v.values.at(b.face1))));
    } else if (v.degree == 1) {
        r.degree = 2; // indexed by boundary_triples()
        for (const auto& t : k.boundary_triples())
            r.values.push_back(a_add(
                v.A, v.values.at(t[0]),
                a_add(v.A, a_neg(v.A, v.values.at(t[1])), v.values.at(t[2]))));
    } else {
        throw Error("coboundary needs degree 0 or 1");
    }
    return r;
}

CochainT coboundary(const Complex& k, const CochainT& v) {
    CochainT r;
    if (v.degree == 0) {
        r.degree = 1;
        for (const auto& b : k.simplices1())
            r.values.push_back(v.values.at(b.face0) / v.values.at(b.face1));
    } else if (v.degree == 1) {
        r.degree = 2;
        for (const auto& t : k.boundary_triples())
            r.values.push_back(v.values.at(t[0]) / v.values.at(t[1]) *
                               v.values.at(t[2]));
    } else {
        throw Error("coboundary needs degree 0 or 1");
    }
    return r;
}

bool is_cocycle(const Complex& k, const CochainZ& v) {
    if (v.degree != 1) return false;
    CochainZ dv = coboundary(k, v);
    for (const auto& val : dv.values)
        for (const Int& x : val)
            if (x != 0) return false;
    return true;
}

bool is_cocycle(const Complex& k, const CochainT& v, double tol) {
    if (v.degree != 1) return false;
    CochainT dv = coboundary(k, v);
    for (const auto& z : dv.values)
        if (std::abs(z - std::complex<double>(1.0, 0.0)) > tol) return false;
    return true;
}

FGAbelianGroup h1_cohomology(const Complex&, const H1Data& h1,
                             const FGAbelianGroup& a) {
    return hom_group(h1.group, a);
}

FGAbelianGroup h1_mod_direct(const Complex& k, const H1Data& h1, const Int& m) {
    if (m < 2) throw Error("h1_mod_direct needs a modulus >= 2");
    int n0 = k.poset().size();
    int n1 = static_cast<int>(k.simplices1().size());
    const IntMat& b = h1.image_basis(); // n1 x r
    int r = cols(b);

    // Constraint lattice L = { x : B^t x = 0 mod m }.
    IntMat bt = zero_mat(r, n1);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < r; ++j) bt[j][i] = b[i][j];
    SnfResult s = smith_normal_form(std::move(bt));
    IntVec scale(n1, 1);
    for (int i = 0; i < s.rank; ++i) scale[i] = m / gcd(s.diag[i], m);

    // Relation columns: im d0 plus m * Z^{n1}, expressed in L-coordinates
    // via L = V * diag(scale):  Y = diag(scale)^-1 * Vinv * R.
    IntMat rel = zero_mat(n1, n0 + n1);
    for (int i = 0; i < n1; ++i) {
        const Simplex1& e = k.simplices1()[i];
        rel[i][e.face0] += 1;
        rel[i][e.face1] -= 1;
        rel[i][n0 + i] = m;
    }
    IntMat w = mat_mul(s.Vinv, rel);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n0 + n1; ++j) {
            if (w[i][j] % scale[i] != 0)
                throw Error("relation column escapes the cocycle lattice");
            w[i][j] /= scale[i];
        }
    return cokernel(w);
}

IntVec pairing(const Complex& k, const CochainZ& v, const Chain& x) {
    if (!is_cocycle(k, v)) throw NotACocycle("cochain is not a 1-cocycle");
    if (x.degree != 1 || !boundary(k, x).is_zero())
        throw NotACycle("pairing needs a 1-cycle");
    IntVec acc = a_zero(v.A);
    for (const auto& [i, c] : x.coeff)
        acc = a_add(v.A, acc, a_scale(v.A, c, v.values.at(i)));
    return acc;
}

std::complex<double> pairing(const Complex& k, const CochainT& v, const Chain& x) {
    if (!is_cocycle(k, v)) throw NotACocycle("cochain is not a 1-cocycle");
    if (x.degree != 1 || !boundary(k, x).is_zero())
        throw NotACycle("pairing needs a 1-cycle");
    std::complex<double> acc(1.0, 0.0);
    for (const auto& [i, c] : x.coeff) {
        long e = static_cast<long>(c);
        std::complex<double> base = e >= 0 ? v.values.at(i) : std::conj(v.values.at(i));
        for (long t = 0; t < std::abs(e); ++t) acc *= base;
    }
    return acc;
}

} // namespace pnet
