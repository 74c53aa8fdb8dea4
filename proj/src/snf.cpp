#include "pnet/snf.hpp"

#include <algorithm>
#include <cstdlib>

namespace pnet {

int rows(const IntMat& a) { return static_cast<int>(a.size()); }
int cols(const IntMat& a) { return a.empty() ? 0 : static_cast<int>(a[0].size()); }

IntMat identity_mat(int n) {
    IntMat r(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i) r[i][i] = 1;
    return r;
}

IntMat zero_mat(int m, int n) { return IntMat(m, IntVec(n, 0)); }

IntMat mat_mul(const IntMat& a, const IntMat& b) {
    int m = rows(a), k = cols(a), n = cols(b);
    IntMat r = zero_mat(m, n);
    for (int i = 0; i < m; ++i)
        for (int l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (int j = 0; j < n; ++j)
                if (b[l][j] != 0) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

IntVec mat_vec(const IntMat& a, const IntVec& x) {
    IntVec r(rows(a), 0);
    for (int i = 0; i < rows(a); ++i)
        for (int j = 0; j < cols(a); ++j)
            if (a[i][j] != 0 && x[j] != 0) r[i] += a[i][j] * x[j];
    return r;
}

namespace {

// Floor-free symmetric quotient: q minimizing |a - q*b|.
Int round_div(const Int& a, const Int& b) {
    Int q = a / b;
    Int r = a - q * b;
    if (r != 0) {
        Int hb = abs(b);
        if (2 * abs(r) > hb) q += (a < 0) == (b < 0) ? 1 : -1;
    }
    return q;
}

struct Worker {
    IntMat a;
    IntMat u, uinv, v, vinv;
    int m, n;

    void row_sub(int i, int t, const Int& q) { // row_i -= q * row_t
        if (q == 0) return;
        for (int j = 0; j < n; ++j) a[i][j] -= q * a[t][j];
        for (int j = 0; j < m; ++j) {
            u[i][j] -= q * u[t][j];
            uinv[j][t] += q * uinv[j][i];
        }
    }
    void col_sub(int j, int t, const Int& q) { // col_j -= q * col_t
        if (q == 0) return;
        for (int i = 0; i < m; ++i) a[i][j] -= q * a[i][t];
        for (int i = 0; i < n; ++i) {
            v[i][j] -= q * v[i][t];
            vinv[t][i] += q * vinv[j][i];
        }
    }
    void row_swap(int i, int t) {
        if (i == t) return;
        std::swap(a[i], a[t]);
        std::swap(u[i], u[t]);
        for (int j = 0; j < m; ++j) std::swap(uinv[j][i], uinv[j][t]);
    }
    void col_swap(int j, int t) {
        if (j == t) return;
        for (int i = 0; i < m; ++i) std::swap(a[i][j], a[i][t]);
        for (int i = 0; i < n; ++i) std::swap(v[i][j], v[i][t]);
        std::swap(vinv[j], vinv[t]);
    }
    void row_neg(int t) {
        for (int j = 0; j < n; ++j) a[t][j] = -a[t][j];
        for (int j = 0; j < m; ++j) {
            u[t][j] = -u[t][j];
            uinv[j][t] = -uinv[j][t];
        }
    }
};

} // namespace

SnfResult smith_normal_form(IntMat a0) {
    Worker w;
    w.m = rows(a0);
    w.n = cols(a0);
    w.a = std::move(a0);
    w.u = identity_mat(w.m);
    w.uinv = identity_mat(w.m);
    w.v = identity_mat(w.n);
    w.vinv = identity_mat(w.n);

    int t = 0;
    int lim = std::min(w.m, w.n);
    while (t < lim) {
        // Least-absolute-value pivot in the trailing block.
        int pi = -1, pj = -1;
        for (int i = t; i < w.m; ++i)
            for (int j = t; j < w.n; ++j)
                if (w.a[i][j] != 0 &&
                    (pi < 0 || abs(w.a[i][j]) < abs(w.a[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;
        w.row_swap(pi, t);
        w.col_swap(pj, t);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < w.m; ++i) {
                if (w.a[i][t] == 0) continue;
                Int q = round_div(w.a[i][t], w.a[t][t]);
                w.row_sub(i, t, q);
                if (w.a[i][t] != 0) {
                    w.row_swap(i, t);
                    clean = false;
                }
            }
            for (int j = t + 1; j < w.n; ++j) {
                if (w.a[t][j] == 0) continue;
                Int q = round_div(w.a[t][j], w.a[t][t]);
                w.col_sub(j, t, q);
                if (w.a[t][j] != 0) {
                    w.col_swap(j, t);
                    clean = false;
                }
            }
            if (clean) {
                // The pivot must divide the rest of the block for the
                // divisibility chain; fold a bad row in and redo.
                for (int i = t + 1; i < w.m && clean; ++i)
                    for (int j = t + 1; j < w.n && clean; ++j)
                        if (w.a[i][j] % w.a[t][t] != 0) {
                            w.row_sub(t, i, Int(-1));
                            clean = false;
                        }
            }
        }
        if (w.a[t][t] < 0) w.row_neg(t);
        ++t;
    }

    SnfResult r;
    r.m = w.m;
    r.n = w.n;
    r.rank = t;
    r.diag.reserve(t);
    for (int i = 0; i < t; ++i) r.diag.push_back(w.a[i][i]);
    r.U = std::move(w.u);
    r.Uinv = std::move(w.uinv);
    r.V = std::move(w.v);
    r.Vinv = std::move(w.vinv);
    return r;
}

IntMat kernel_basis(const IntMat& a) {
    SnfResult s = smith_normal_form(a);
    IntMat k(s.n, IntVec(s.n - s.rank, 0));
    for (int i = 0; i < s.n; ++i)
        for (int j = s.rank; j < s.n; ++j) k[i][j - s.rank] = s.V[i][j];
    return k;
}

std::optional<IntVec> solve_integer(const IntMat& a, const IntVec& b) {
    SnfResult s = smith_normal_form(a);
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

namespace {

// v := v - q * w on sparse vectors.
SparseVec axpy(const SparseVec& v, const Int& q, const SparseVec& w) {
    SparseVec r;
    r.reserve(v.size() + w.size());
    size_t i = 0, j = 0;
    while (i < v.size() || j < w.size()) {
        if (j == w.size() || (i < v.size() && v[i].first < w[j].first)) {
            r.push_back(v[i++]);
        } else if (i == v.size() || w[j].first < v[i].first) {
            Int val = -q * w[j].second;
            if (val != 0) r.emplace_back(w[j].first, std::move(val));
            ++j;
        } else {
            Int val = v[i].second - q * w[j].second;
            if (val != 0) r.emplace_back(v[i].first, std::move(val));
            ++i;
            ++j;
        }
    }
    return r;
}

} // namespace

bool LatticeBasis::reduce(SparseVec& x, bool mutate) {
    if (by_pivot_.empty()) by_pivot_.resize(dim_);
    while (!x.empty()) {
        int p = x.front().first;
        SparseVec& w = by_pivot_[p];
        if (w.empty()) {
            if (!mutate) return false;
            if (x.front().second < 0)
                for (auto& e : x) e.second = -e.second;
            w = std::move(x);
            return true;
        }
        const Int& a = x.front().second;
        const Int& b = w.front().second; // positive by construction
        if (a % b == 0) {
            x = axpy(x, a / b, w);
        } else {
            if (!mutate) return false;
            // Extended gcd combination becomes the new pivot vector.
            Int g, s, t;
            {
                Int old_r = a, r2 = b, old_s = 1, s2 = 0, old_t = 0, t2 = 1;
                while (r2 != 0) {
                    Int q = old_r / r2;
                    Int tmp = old_r - q * r2; old_r = r2; r2 = tmp;
                    tmp = old_s - q * s2; old_s = s2; s2 = tmp;
                    tmp = old_t - q * t2; old_t = t2; t2 = tmp;
                }
                g = old_r; s = old_s; t = old_t;
                if (g < 0) { g = -g; s = -s; t = -t; }
            }
            // nv = s*x + t*w has pivot value g at row p.
            SparseVec nv = axpy(SparseVec{}, -s, x);
            nv = axpy(nv, -t, w);
            SparseVec old_w = axpy(w, b / g, nv); // pivot at p cancels
            x = axpy(x, a / g, nv);
            by_pivot_[p] = std::move(nv);
            if (!old_w.empty()) {
                SparseVec tmp = std::move(old_w);
                reduce(tmp, true);
            }
        }
    }
    return true;
}

void LatticeBasis::insert(SparseVec v) { reduce(v, true); }

bool LatticeBasis::contains(SparseVec v) const {
    return const_cast<LatticeBasis*>(this)->reduce(v, false) || v.empty();
}

int LatticeBasis::rank() const {
    int r = 0;
    for (const auto& w : by_pivot_)
        if (!w.empty()) ++r;
    return r;
}

IntMat LatticeBasis::basis_columns() const {
    IntMat b(dim_, IntVec{});
    int r = rank();
    for (auto& row : b) row.assign(r, 0);
    int col = 0;
    for (const auto& w : by_pivot_) {
        if (w.empty()) continue;
        for (const auto& [i, val] : w) b[i][col] = val;
        ++col;
    }
    return b;
}

bool lattice_equal(const LatticeBasis& a, const LatticeBasis& b) {
    if (a.dim() != b.dim()) return false;
    for (const auto& w : a.by_pivot_)
        if (!w.empty() && !b.contains(w)) return false;
    for (const auto& w : b.by_pivot_)
        if (!w.empty() && !a.contains(w)) return false;
    return true;
}

} // namespace pnet
