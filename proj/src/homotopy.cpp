#include "pnet/homotopy.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>

namespace pnet {

AbelianQuotient abelian_quotient(int num_gens,
                                 const std::vector<std::vector<int>>& relators) {
    // The raw relator list is hugely redundant; reduce it to a lattice basis
    // first so the normal form below stays small.
    LatticeBasis lat(num_gens);
    for (const auto& rel : relators) {
        IntVec e(num_gens, 0);
        for (int l : rel) e[std::abs(l) - 1] += l > 0 ? 1 : -1;
        SparseVec sv;
        for (int i = 0; i < num_gens; ++i)
            if (e[i] != 0) sv.emplace_back(i, e[i]);
        if (!sv.empty()) lat.insert(std::move(sv));
    }
    AbelianQuotient aq;
    aq.num_gens = num_gens;
    aq.snf = smith_normal_form(lat.basis_columns());
    aq.group.free_rank = num_gens - aq.snf.rank;
    for (int i = 0; i < aq.snf.rank; ++i)
        if (aq.snf.diag[i] >= 2) {
            aq.group.torsion.push_back(aq.snf.diag[i]);
            aq.torsion_pos.push_back(i);
        }
    for (int i = aq.snf.rank; i < num_gens; ++i) aq.free_pos.push_back(i);
    return aq;
}

IntVec AbelianQuotient::project(const IntVec& exponents) const {
    IntVec y = mat_vec(snf.U, exponents);
    IntVec out;
    out.reserve(free_pos.size() + torsion_pos.size());
    for (int i : free_pos) out.push_back(y[i]);
    for (size_t k = 0; k < torsion_pos.size(); ++k) {
        Int d = group.torsion[k];
        Int r = y[torsion_pos[k]] % d;
        if (r < 0) r += d;
        out.push_back(r);
    }
    return out;
}

IntVec AbelianQuotient::project_word(const std::vector<int>& word) const {
    IntVec x(num_gens, 0);
    for (int l : word) x[std::abs(l) - 1] += l > 0 ? 1 : -1;
    return project(x);
}

FGAbelianGroup abelianize(const GroupPresentation& g) {
    return abelian_quotient(static_cast<int>(g.generators.size()), g.relators).group;
}

Pi1Presentation pi1_presentation(const Complex& k, int basepoint) {
    const Poset& p = k.poset();
    if (!is_pathwise_connected(p))
        throw Disconnected("pi1 presentation requires a pathwise connected poset");
    if (basepoint < 0 || basepoint >= p.size())
        throw UnknownElement("basepoint outside the poset");

    const auto& s1 = k.simplices1();
    int n1 = static_cast<int>(s1.size());
    Pi1Presentation pi;
    pi.basepoint = basepoint;
    pi.letter_raw.assign(n1, 0);
    pi.letter_gauge.assign(n1, 0);
    pi.tree_in_edge.assign(p.size(), -1);

    for (int i = 0; i < n1; ++i) {
        if (is_degenerate(s1[i])) continue;
        int r = std::min(i, k.reverse_index(i));
        if (i == r) {
            int g = static_cast<int>(pi.generator_edge.size());
            pi.generator_edge.push_back(i);
            const Simplex1& b = s1[i];
            pi.pres.generators.push_back("(" + p.name(b.support) + ";" +
                                         p.name(b.face0) + "," + p.name(b.face1) + ")");
            pi.letter_raw[i] = g + 1;
        }
    }
    for (int i = 0; i < n1; ++i) {
        if (is_degenerate(s1[i])) continue;
        int r = std::min(i, k.reverse_index(i));
        pi.letter_raw[i] = i == r ? pi.letter_raw[r] : -pi.letter_raw[r];
    }

    // Deterministic BFS spanning tree over the canonical edge order.
    std::vector<bool> seen(p.size(), false);
    std::vector<bool> is_tree(n1, false);
    std::queue<int> q;
    seen[basepoint] = true;
    q.push(basepoint);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int i = 0; i < n1; ++i) {
            const Simplex1& b = s1[i];
            if (is_degenerate(b) || b.face1 != u || seen[b.face0]) continue;
            seen[b.face0] = true;
            pi.tree_in_edge[b.face0] = i;
            is_tree[i] = true;
            is_tree[k.reverse_index(i)] = true;
            q.push(b.face0);
        }
    }

    for (int i = 0; i < n1; ++i)
        pi.letter_gauge[i] = is_tree[i] ? 0 : pi.letter_raw[i];

    // Tree edges are trivial.
    for (size_t g = 0; g < pi.generator_edge.size(); ++g)
        if (is_tree[pi.generator_edge[g]])
            pi.pres.relators.push_back({static_cast<int>(g) + 1});
    // Each 2-simplex c: d2(c) d0(c) d1(c)^-1 = 1.
    for (const auto& rec : k.simplices2()) {
        std::vector<int> w;
        if (pi.letter_raw[rec.d2] != 0) w.push_back(pi.letter_raw[rec.d2]);
        if (pi.letter_raw[rec.d0] != 0) w.push_back(pi.letter_raw[rec.d0]);
        if (pi.letter_raw[rec.d1] != 0) w.push_back(-pi.letter_raw[rec.d1]);
        if (!w.empty()) pi.pres.relators.push_back(std::move(w));
    }
    return pi;
}

std::vector<int> path_word(const Pi1Presentation& pi, const Complex& k,
                           const Path& p) {
    std::vector<int> w;
    for (const auto& b : p.steps) {
        int l = pi.letter_gauge[k.index1(b)];
        if (l != 0) w.push_back(l);
    }
    return w;
}

std::vector<int> class_in_pi1(const Pi1Presentation& pi, const Complex& k,
                              const Path& loop) {
    if (!loop.is_loop() || loop.start() != pi.basepoint)
        throw EndpointMismatch("expected a loop at the presentation basepoint");
    return path_word(pi, k, loop);
}

Path tree_path(const Pi1Presentation& pi, const Complex& k, int v) {
    if (v == pi.basepoint) return constant_path(v);
    std::vector<Simplex1> up;
    int cur = v;
    while (cur != pi.basepoint) {
        int e = pi.tree_in_edge.at(cur);
        if (e < 0) throw Disconnected("vertex not reached by the spanning tree");
        up.push_back(k.simplices1()[e]);
        cur = k.simplices1()[e].face1;
    }
    Path r;
    r.steps.assign(up.rbegin(), up.rend());
    return r;
}

Path generator_loop(const Pi1Presentation& pi, const Complex& k, int gen) {
    const Simplex1& e = k.simplices1()[pi.generator_edge.at(gen)];
    Path to_src = tree_path(pi, k, e.face1);
    Path from_tgt = reverse_path(tree_path(pi, k, e.face0));
    return concat(from_tgt, concat(Path{{e}}, to_src));
}

std::vector<DeformationStep> elementary_deformations(const Complex& k, const Path& p) {
    std::vector<DeformationStep> out;
    std::vector<int> idx;
    idx.reserve(p.steps.size());
    for (const auto& b : p.steps) idx.push_back(k.index1(b));
    const auto& s1 = k.simplices1();
    for (size_t i = 0; i < idx.size(); ++i) {
        // Ampliation: replace step d1(c) by the pair (d2(c), d0(c)).
        for (int c : k.with_middle_face(idx[i])) {
            const auto& rec = k.simplices2()[c];
            Path r;
            r.steps.reserve(p.steps.size() + 1);
            r.steps.insert(r.steps.end(), p.steps.begin(), p.steps.begin() + i);
            r.steps.push_back(s1[rec.d2]);
            r.steps.push_back(s1[rec.d0]);
            r.steps.insert(r.steps.end(), p.steps.begin() + i + 1, p.steps.end());
            out.push_back({std::move(r), true, c});
        }
        // Contraction: consecutive (d2(c), d0(c)) collapse to d1(c).
        if (i + 1 < idx.size()) {
            for (int c : k.with_outer_pair(idx[i], idx[i + 1])) {
                const auto& rec = k.simplices2()[c];
                Path r;
                r.steps.reserve(p.steps.size() - 1);
                r.steps.insert(r.steps.end(), p.steps.begin(), p.steps.begin() + i);
                r.steps.push_back(s1[rec.d1]);
                r.steps.insert(r.steps.end(), p.steps.begin() + i + 2, p.steps.end());
                out.push_back({std::move(r), false, c});
            }
        }
    }
    // Drop duplicate resulting paths (distinct 2-simplices may act alike).
    std::sort(out.begin(), out.end(), [](const DeformationStep& a, const DeformationStep& b) {
        if (a.result.steps != b.result.steps) return a.result.steps < b.result.steps;
        if (a.ampliation != b.ampliation) return a.ampliation < b.ampliation;
        return a.simplex2 < b.simplex2;
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const DeformationStep& a, const DeformationStep& b) {
                              return a.result.steps == b.result.steps &&
                                     a.ampliation == b.ampliation;
                          }),
              out.end());
    return out;
}

HomotopyResult homotopic(const Complex& k, const Path& p, const Path& q, long budget) {
    if (p.start() != q.start() || p.end() != q.end())
        throw EndpointMismatch("paths must share both endpoints");
    validate_path(k.poset(), p);
    validate_path(k.poset(), q);
    HomotopyResult res;
    if (p.steps == q.steps) {
        res.verdict = Ternary::Yes;
        res.certificate = {p};
        return res;
    }

    // Separating invariant: abelianized class of p * reverse(q).
    if (is_pathwise_connected(k.poset())) {
        Pi1Presentation pi = pi1_presentation(k, p.start());
        AbelianQuotient aq = abelian_quotient(
            static_cast<int>(pi.pres.generators.size()), pi.pres.relators);
        Path loop = concat(reverse_path(q), p);
        IntVec cls = aq.project_word(path_word(pi, k, loop));
        bool zero = std::all_of(cls.begin(), cls.end(),
                                [](const Int& x) { return x == 0; });
        if (!zero) {
            res.verdict = Ternary::No;
            res.reason = "abelianized classes differ";
            return res;
        }
    }

    // Breadth-first search over elementary deformations.
    size_t max_len = std::max(p.steps.size(), q.steps.size()) + 6;
    auto key = [&](const Path& x) {
        std::vector<int> v;
        v.reserve(x.steps.size());
        for (const auto& b : x.steps) v.push_back(k.index1(b));
        return v;
    };
    struct Node {
        Path path;
        int parent;
    };
    std::vector<Node> nodes{{p, -1}};
    std::map<std::vector<int>, int> seen{{key(p), 0}};
    std::deque<int> frontier{0};
    long expanded = 0;
    std::vector<int> goal = key(q);
    while (!frontier.empty() && expanded < budget) {
        int cur = frontier.front();
        frontier.pop_front();
        ++expanded;
        Path cur_path = nodes[cur].path;
        for (auto& d : elementary_deformations(k, cur_path)) {
            if (d.result.steps.size() > max_len) continue;
            auto kk = key(d.result);
            if (seen.count(kk)) continue;
            int id = static_cast<int>(nodes.size());
            seen.emplace(std::move(kk), id);
            nodes.push_back({d.result, cur});
            if (d.result.steps == q.steps) {
                std::vector<Path> chain;
                for (int at = id; at >= 0; at = nodes[at].parent)
                    chain.push_back(nodes[at].path);
                std::reverse(chain.begin(), chain.end());
                res.verdict = Ternary::Yes;
                res.certificate = std::move(chain);
                return res;
            }
            frontier.push_back(id);
        }
    }
    res.verdict = Ternary::Unknown;
    res.reason = "budget exhausted";
    return res;
}

} // namespace pnet
