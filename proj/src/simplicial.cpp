#include "pnet/simplicial.hpp"

#include <algorithm>

namespace pnet {

namespace {

std::uint64_t key1(int n, const Simplex1& b) {
    return (static_cast<std::uint64_t>(b.support) * n + b.face0) * n + b.face1;
}

std::uint64_t key_pair(int a, int b) {
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

} // namespace

void validate_simplex1(const Poset& p, const Simplex1& b) {
    if (b.support < 0 || b.support >= p.size() || b.face0 < 0 || b.face0 >= p.size() ||
        b.face1 < 0 || b.face1 >= p.size())
        throw InvalidSimplex("1-simplex references elements outside the poset");
    if (!p.leq(b.face0, b.support) || !p.leq(b.face1, b.support))
        throw InvalidSimplex("faces of a 1-simplex must lie below its support");
}

void validate_simplex2(const Poset& p, const Simplex2& c) {
    validate_simplex1(p, c.d0);
    validate_simplex1(p, c.d1);
    validate_simplex1(p, c.d2);
    if (!p.leq(c.d0.support, c.support) || !p.leq(c.d1.support, c.support) ||
        !p.leq(c.d2.support, c.support))
        throw InvalidSimplex("face supports of a 2-simplex must lie below its support");
    if (c.d0.face0 != c.d1.face0 || c.d0.face1 != c.d2.face0 ||
        c.d1.face1 != c.d2.face1)
        throw InvalidSimplex("vertex compatibility fails for 2-simplex");
}

void validate_path(const Poset& p, const Path& path) {
    if (path.steps.empty()) throw InvalidSimplex("empty path");
    for (const auto& b : path.steps) validate_simplex1(p, b);
    for (size_t i = 0; i + 1 < path.steps.size(); ++i)
        if (path.steps[i].face0 != path.steps[i + 1].face1)
            throw NonComposable("path steps are not composable");
}

Path concat(const Path& p, const Path& q) {
    if (q.end() != p.start())
        throw NonComposable("concat requires end(q) == start(p)");
    Path r = q;
    r.steps.insert(r.steps.end(), p.steps.begin(), p.steps.end());
    return r;
}

Path reverse_path(const Path& p) {
    Path r;
    r.steps.reserve(p.steps.size());
    for (auto it = p.steps.rbegin(); it != p.steps.rend(); ++it)
        r.steps.push_back(reverse(*it));
    return r;
}

Path constant_path(int a) { return Path{{degeneracy0(a)}}; }

std::vector<int> enumerate_simplices0(const Poset& p) {
    std::vector<int> r(p.size());
    for (int i = 0; i < p.size(); ++i) r[i] = i;
    return r;
}

std::vector<Simplex1> enumerate_simplices1(const Poset& p, bool symmetric) {
    std::vector<Simplex1> r;
    int n = p.size();
    if (symmetric) {
        for (int o = 0; o < n; ++o)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    if (p.leq(c, o) && p.leq(d, o)) r.push_back({o, c, d});
    } else {
        // Nerve 1-simplices (a, a~), a~ <= a, embedded with support a.
        for (int a = 0; a < n; ++a)
            for (int s = 0; s < n; ++s)
                if (p.leq(s, a)) r.push_back({a, a, s});
    }
    std::sort(r.begin(), r.end());
    return r;
}

std::vector<Simplex2> enumerate_simplices2(const Poset& p, bool symmetric) {
    std::vector<Simplex2> r;
    int n = p.size();
    if (!symmetric) {
        // Nerve 2-simplices: chains v0 <= v1 <= v2.
        for (int v0 = 0; v0 < n; ++v0)
            for (int v1 = 0; v1 < n; ++v1)
                for (int v2 = 0; v2 < n; ++v2)
                    if (p.leq(v0, v1) && p.leq(v1, v2))
                        r.push_back({v2,
                                     {v2, v2, v1},
                                     {v2, v2, v0},
                                     {v1, v1, v0}});
        return r;
    }
    std::vector<std::vector<int>> ups(n);
    for (int a = 0; a < n; ++a) ups[a] = p.up_set(a);
    auto common = [&](int a, int b) {
        std::vector<int> r2;
        for (int c : ups[a])
            if (p.leq(b, c)) r2.push_back(c);
        return r2;
    };
    for (int v0 = 0; v0 < n; ++v0)
        for (int v1 = 0; v1 < n; ++v1) {
            auto s01s = common(v0, v1);
            if (s01s.empty()) continue;
            for (int v2 = 0; v2 < n; ++v2) {
                auto s02s = common(v0, v2);
                auto s12s = common(v1, v2);
                for (int s01 : s01s)
                    for (int s02 : s02s)
                        for (int s12 : s12s)
                            for (int top : ups[s01])
                                if (p.leq(s02, top) && p.leq(s12, top))
                                    r.push_back({top,
                                                 {s12, v2, v1},
                                                 {s02, v2, v0},
                                                 {s01, v1, v0}});
            }
        }
    return r;
}

Complex::Complex(Poset p) : P_(std::move(p)) {
    int n = P_.size();
    s1_ = enumerate_simplices1(P_, true);
    for (int i = 0; i < static_cast<int>(s1_.size()); ++i)
        s1_index_.emplace(key1(n, s1_[i]), i);
    rev_.resize(s1_.size());
    for (size_t i = 0; i < s1_.size(); ++i)
        rev_[i] = s1_index_.at(key1(n, reverse(s1_[i])));

    auto all2 = enumerate_simplices2(P_, true);
    s2_.reserve(all2.size());
    amp_.assign(s1_.size(), {});
    std::unordered_map<std::uint64_t, int> seen_triples;
    for (const auto& c : all2) {
        Rec2 rec{c.support, index1(c.d0), index1(c.d1), index1(c.d2)};
        int id = static_cast<int>(s2_.size());
        s2_.push_back(rec);
        amp_[rec.d1].push_back(id);
        contr_[key_pair(rec.d2, rec.d0)].push_back(id);
        std::uint64_t tk =
            (static_cast<std::uint64_t>(rec.d0) * s1_.size() + rec.d1) * s1_.size() +
            rec.d2;
        if (seen_triples.emplace(tk, 0).second)
            triples_.push_back({rec.d0, rec.d1, rec.d2});
    }
}

int Complex::index1(const Simplex1& b) const {
    auto it = s1_index_.find(key1(P_.size(), b));
    if (it == s1_index_.end())
        throw InvalidSimplex("1-simplex is not part of this poset's complex");
    return it->second;
}

Simplex2 Complex::simplex2(int i) const {
    const Rec2& r = s2_.at(i);
    return {r.support, s1_[r.d0], s1_[r.d1], s1_[r.d2]};
}

const std::vector<int>& Complex::with_middle_face(int s1_idx) const {
    return amp_.at(s1_idx);
}

const std::vector<int>& Complex::with_outer_pair(int d2_idx, int d0_idx) const {
    auto it = contr_.find(key_pair(d2_idx, d0_idx));
    return it == contr_.end() ? empty_ : it->second;
}

Path align_paths(const Poset& p, const Path& pp, const Poset& q, const Path& pq,
                 const Poset& prod) {
    validate_path(p, pp);
    validate_path(q, pq);
    Path a = pp, b = pq;
    while (a.length() < b.length())
        a.steps.insert(a.steps.begin(), degeneracy0(a.start()));
    while (b.length() < a.length())
        b.steps.insert(b.steps.begin(), degeneracy0(b.start()));
    Path r;
    auto pair_idx = [&](int i, int j) {
        return prod.index(p.name(i) + "|" + q.name(j));
    };
    for (int k = 0; k < a.length(); ++k) {
        const Simplex1& x = a.steps[k];
        const Simplex1& y = b.steps[k];
        r.steps.push_back({pair_idx(x.support, y.support), pair_idx(x.face0, y.face0),
                           pair_idx(x.face1, y.face1)});
    }
    return r;
}

Path project_path(const Poset& prod, const Poset& factor, int which, const Path& path) {
    PosetMorphism pr = product_projection(prod, factor, which);
    Path r;
    for (const auto& b : path.steps)
        r.steps.push_back({pr(b.support), pr(b.face0), pr(b.face1)});
    return r;
}

} // namespace pnet
