#include "pnet/realization.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <set>
#include <sstream>

namespace pnet {

AlexandroffSpace alexandroff(const Poset& p) {
    int n = p.size();
    if (n > 20) throw Unsupported("open-set enumeration is limited to 20 elements");
    std::vector<std::uint32_t> upmask(n, 0);
    for (int a = 0; a < n; ++a)
        for (int b : p.up_set(a)) upmask[a] |= std::uint32_t{1} << b;
    AlexandroffSpace out;
    out.carrier = p;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
        bool open = true;
        for (int a = 0; a < n && open; ++a)
            if (mask >> a & 1) open = (mask & upmask[a]) == upmask[a];
        if (!open) continue;
        std::vector<int> u;
        for (int a = 0; a < n; ++a)
            if (mask >> a & 1) u.push_back(a);
        out.opens.push_back(std::move(u));
    }
    return out;
}

std::vector<std::vector<int>> connected_components(const Poset& p,
                                                   const std::vector<int>& subset) {
    std::vector<int> nodes = subset;
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    for (int v : nodes)
        if (v < 0 || v >= p.size()) throw UnknownElement("subset element outside the poset");
    std::vector<bool> used(nodes.size(), false);
    std::vector<std::vector<int>> comps;
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (used[i]) continue;
        std::vector<int> comp;
        std::queue<size_t> q;
        q.push(i);
        used[i] = true;
        while (!q.empty()) {
            size_t u = q.front();
            q.pop();
            comp.push_back(nodes[u]);
            for (size_t j = 0; j < nodes.size(); ++j)
                if (!used[j] &&
                    (p.leq(nodes[u], nodes[j]) || p.leq(nodes[j], nodes[u]))) {
                    used[j] = true;
                    q.push(j);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

PosetNetBundle::PosetNetBundle(Poset base, Poset fibre,
                               std::map<std::pair<int, int>, std::vector<int>> ct)
    : base_(std::move(base)), fibre_(std::move(fibre)), maps_(std::move(ct)) {
    if (fibre_.size() == 0) throw Error("the fibre poset is empty");
    int nf = fibre_.size();
    std::set<std::pair<int, int>> covers;
    for (const auto& pr : base_.cover_pairs()) covers.insert(pr);
    for (const auto& pr : covers)
        if (!maps_.count(pr))
            throw MissingCoverMatrix("no transition for the cover pair " +
                                     base_.name(pr.first) + " <= " +
                                     base_.name(pr.second));
    for (const auto& [key, j] : maps_) {
        std::string tag = base_.name(key.first) + " <= " + base_.name(key.second);
        if (!covers.count(key))
            throw Error("transition declared on a non-cover pair " + tag);
        if (static_cast<int>(j.size()) != nf)
            throw Error("transition on " + tag + " has the wrong size");
        std::vector<bool> hit(nf, false);
        for (int v : j) {
            if (v < 0 || v >= nf || hit[v])
                throw NonInjective("transition on " + tag + " is not a bijection");
            hit[v] = true;
        }
        for (int f = 0; f < nf; ++f)
            for (int g = 0; g < nf; ++g)
                if (fibre_.leq(f, g) != fibre_.leq(j[f], j[g]))
                    throw Error("transition on " + tag + " is not an order isomorphism");
    }

    // Exact path independence: compose over all strict pairs, smallest order
    // intervals first, peeling one cover step off the bottom.
    auto sp = base_.strict_pairs();
    auto isize = [&](const std::pair<int, int>& pr) {
        int c = 0;
        for (int v = 0; v < base_.size(); ++v)
            if (base_.leq(pr.first, v) && base_.leq(v, pr.second)) ++c;
        return c;
    };
    std::sort(sp.begin(), sp.end(), [&](const auto& a, const auto& b) {
        int ia = isize(a), ib = isize(b);
        if (ia != ib) return ia < ib;
        return a < b;
    });
    std::vector<int> ident(nf);
    for (int f = 0; f < nf; ++f) ident[f] = f;
    for (auto [sub, sup] : sp) {
        std::optional<std::vector<int>> got;
        for (const auto& [cp, j] : maps_) {
            if (cp.first != sub || !base_.leq(cp.second, sup)) continue;
            const std::vector<int>& rest =
                cp.second == sup ? ident : comp_.at({cp.second, sup});
            std::vector<int> cand(nf);
            for (int f = 0; f < nf; ++f) cand[f] = rest[j[f]];
            if (!got)
                got = std::move(cand);
            else if (*got != cand)
                throw CocycleViolation("composed transitions disagree between " +
                                       base_.name(sub) + " and " + base_.name(sup));
        }
        comp_[{sub, sup}] = std::move(*got);
    }
}

std::vector<int> PosetNetBundle::J(int sub, int sup) const {
    if (sub == sup) {
        std::vector<int> ident(fibre_.size());
        for (int f = 0; f < fibre_.size(); ++f) ident[f] = f;
        return ident;
    }
    auto it = comp_.find({sub, sup});
    if (it == comp_.end())
        throw NonComposable("elements are not comparable: " + base_.name(sub) +
                            ", " + base_.name(sup));
    return it->second;
}

int PosetNetBundle::apply(int sub, int sup, int f) const {
    if (sub == sup) return f;
    return comp_.at({sub, sup}).at(f);
}

int PosetNetBundle::unapply(int sub, int sup, int f) const {
    if (sub == sup) return f;
    const std::vector<int>& j = comp_.at({sub, sup});
    for (int g = 0; g < static_cast<int>(j.size()); ++g)
        if (j[g] == f) return g;
    throw LiftUndefined("fibre element outside the transition image");
}

TotalSpace total_space_order(const PosetNetBundle& x) {
    const Poset& pb = x.base();
    const Poset& pf = x.fibre();
    int nb = pb.size(), nf = pf.size();
    std::vector<std::string> names;
    names.reserve(static_cast<size_t>(nb) * nf);
    for (int b = 0; b < nb; ++b)
        for (int f = 0; f < nf; ++f) names.push_back(pb.name(b) + "|" + pf.name(f));
    std::vector<std::pair<std::string, std::string>> rel;
    for (int b1 = 0; b1 < nb; ++b1)
        for (int b0 = 0; b0 < nb; ++b0) {
            if (!pb.leq(b1, b0)) continue;
            for (int f1 = 0; f1 < nf; ++f1)
                for (int f0 = 0; f0 < nf; ++f0) {
                    if (b1 == b0 && f1 == f0) continue;
                    if (pf.leq(x.apply(b1, b0, f1), f0))
                        rel.emplace_back(names[b1 * nf + f1], names[b0 * nf + f0]);
                }
        }
    TotalSpace t;
    t.order = Poset(std::move(names), rel);
    t.nf = nf;
    t.eta.resize(static_cast<size_t>(nb) * nf);
    for (int b = 0; b < nb; ++b)
        for (int f = 0; f < nf; ++f) t.eta[b * nf + f] = b;
    return t;
}

PosetMorphism eta_morphism(const TotalSpace& t, const Poset& base) {
    return PosetMorphism(t.order, base, t.eta);
}

NetBundle pullback(const PosetMorphism& eta, const NetBundle& e) {
    if (!(eta.target == e.base()))
        throw BaseMismatch("morphism target differs from the bundle base");
    std::map<std::pair<int, int>, Mat> maps;
    for (auto [sub, sup] : eta.source.cover_pairs())
        maps[{sub, sup}] = e.J(eta(sub), eta(sup));
    return NetBundle(eta.source, e.rank(), std::move(maps));
}

PosetNetBundle pullback(const PosetMorphism& eta, const PosetNetBundle& x) {
    if (!(eta.target == x.base()))
        throw BaseMismatch("morphism target differs from the bundle base");
    std::map<std::pair<int, int>, std::vector<int>> maps;
    for (auto [sub, sup] : eta.source.cover_pairs())
        maps[{sub, sup}] = x.J(eta(sub), eta(sup));
    return PosetNetBundle(eta.source, x.fibre(), std::move(maps));
}

CylinderReport cylinders(const PosetNetBundle& x) {
    const Poset& pb = x.base();
    const Poset& pf = x.fibre();
    int nf = pf.size();
    AlexandroffSpace fa = alexandroff(pf);
    CylinderReport rep;
    for (int a = 0; a < pb.size(); ++a)
        for (const auto& u : fa.opens) {
            if (u.empty()) continue;
            std::vector<int> mem;
            for (int o : pb.up_set(a))
                for (int f : u) mem.push_back(o * nf + x.apply(a, o, f));
            std::sort(mem.begin(), mem.end());
            mem.erase(std::unique(mem.begin(), mem.end()), mem.end());
            rep.anchors.emplace_back(a, u);
            rep.members.push_back(std::move(mem));
        }

    auto anchor_name = [&](size_t i) {
        std::string s = pb.name(rep.anchors[i].first) + ",{";
        for (size_t t = 0; t < rep.anchors[i].second.size(); ++t)
            s += (t ? "," : "") + pf.name(rep.anchors[i].second[t]);
        return s + "}";
    };

    rep.injective = true;
    std::map<std::vector<int>, size_t> seen;
    for (size_t i = 0; i < rep.members.size(); ++i) {
        auto [it, fresh] = seen.emplace(rep.members[i], i);
        if (!fresh && rep.injective) {
            rep.injective = false;
            rep.witness = "cylinders coincide: (" + anchor_name(it->second) +
                          ") and (" + anchor_name(i) + ")";
        }
    }

    auto upimage = [&](int asub, int asup, const std::vector<int>& u) {
        std::vector<int> v;
        v.reserve(u.size());
        for (int f : u) v.push_back(x.apply(asub, asup, f));
        std::sort(v.begin(), v.end());
        return v;
    };
    rep.order_isomorphism = rep.injective;
    for (size_t i = 0; i < rep.anchors.size() && rep.order_isomorphism; ++i)
        for (size_t j = 0; j < rep.anchors.size(); ++j) {
            if (i == j) continue;
            auto [ai, ui] = rep.anchors[i];
            auto [aj, uj] = rep.anchors[j];
            bool lhs = false;
            if (pb.leq(aj, ai)) {
                std::vector<int> img = upimage(aj, ai, uj);
                lhs = std::includes(img.begin(), img.end(), ui.begin(), ui.end());
            }
            bool rhs = std::includes(rep.members[j].begin(), rep.members[j].end(),
                                     rep.members[i].begin(), rep.members[i].end());
            if (lhs != rhs) {
                rep.order_isomorphism = false;
                rep.witness = "order mismatch between (" + anchor_name(i) +
                              ") and (" + anchor_name(j) + ")";
                break;
            }
        }
    return rep;
}

Mat transition_value(const NetBundle& e, int a, int b, int o) {
    const Poset& p = e.base();
    if (a < 0 || b < 0 || o < 0 || a >= p.size() || b >= p.size() || o >= p.size())
        throw UnknownElement("index outside the base poset");
    if (!p.leq(a, o) || !p.leq(b, o))
        throw UnknownElement("element outside the overlap of the two minimal opens");
    return e.J(a, o).adjoint() * e.J(b, o);
}

TransitionReport transition_functions(const NetBundle& e, double tol) {
    const Poset& p = e.base();
    int n = p.size();
    TransitionReport rep;
    rep.cocycle_ok = true;
    rep.locally_constant = true;
    auto overlap = [&](int a, int b) {
        std::vector<int> o;
        for (int v = 0; v < n; ++v)
            if (p.leq(a, v) && p.leq(b, v)) o.push_back(v);
        return o;
    };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int o : overlap(a, b)) {
                    if (!p.leq(c, o)) continue;
                    double r = (transition_value(e, a, b, o) * transition_value(e, b, c, o) -
                                transition_value(e, a, c, o))
                                   .norm();
                    rep.worst_cocycle = std::max(rep.worst_cocycle, r);
                    if (r > tol && rep.cocycle_ok) {
                        rep.cocycle_ok = false;
                        rep.witness = "cocycle identity fails at " + p.name(a) + "," +
                                      p.name(b) + "," + p.name(c) + " over " + p.name(o);
                    }
                }
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (const auto& comp : connected_components(p, overlap(a, b))) {
                Mat g0 = transition_value(e, a, b, comp.front());
                for (int o : comp) {
                    double r = (transition_value(e, a, b, o) - g0).norm();
                    rep.worst_constancy = std::max(rep.worst_constancy, r);
                    if (r > tol && rep.locally_constant) {
                        rep.locally_constant = false;
                        rep.witness = "transition " + p.name(a) + "," + p.name(b) +
                                      " varies over a connected overlap piece at " +
                                      p.name(o);
                    }
                }
            }
    return rep;
}

Path lift_path(const PosetNetBundle& x, const Path& p, int fibre_start) {
    validate_path(x.base(), p);
    int nf = x.fibre().size();
    if (fibre_start < 0 || fibre_start >= nf)
        throw UnknownElement("fibre start outside the fibre poset");
    Path out;
    out.steps.reserve(p.steps.size());
    int carried = fibre_start; // fibre point over the current base vertex
    for (const Simplex1& b : p.steps) {
        int s = x.apply(b.face1, b.support, carried);
        int f_tgt = x.unapply(b.face0, b.support, s);
        out.steps.push_back({b.support * nf + s, b.face0 * nf + f_tgt,
                             b.face1 * nf + carried});
        carried = f_tgt;
    }
    return out;
}

namespace {

Path project_total(const TotalSpace& tot, const Path& p) {
    Path r;
    r.steps.reserve(p.steps.size());
    for (const auto& s : p.steps)
        r.steps.push_back({tot.base_of(s.support), tot.base_of(s.face0),
                           tot.base_of(s.face1)});
    return r;
}

Path strip_degenerate(const Path& p, int fallback_vertex) {
    Path r;
    for (const auto& s : p.steps)
        if (!is_degenerate(s)) r.steps.push_back(s);
    if (r.steps.empty()) return constant_path(fallback_vertex);
    return r;
}

/// Path inside the fibre copy over b0 joining two fibre elements.
Path fibre_connector(const PosetNetBundle& x, int b0, int from, int to) {
    const Poset& pf = x.fibre();
    int nf = pf.size();
    if (from == to) return constant_path(b0 * nf + from);
    std::vector<int> prev(nf, -1);
    std::queue<int> q;
    q.push(from);
    prev[from] = from;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v = 0; v < nf; ++v)
            if (prev[v] < 0 && (pf.leq(u, v) || pf.leq(v, u))) {
                prev[v] = u;
                q.push(v);
            }
    }
    if (prev[to] < 0) throw Disconnected("fibre is not pathwise connected");
    std::vector<int> chain;
    for (int v = to; v != from; v = prev[v]) chain.push_back(v);
    chain.push_back(from);
    std::reverse(chain.begin(), chain.end());
    Path r;
    for (size_t i = 0; i + 1 < chain.size(); ++i) {
        int a = chain[i], b = chain[i + 1];
        int sup = pf.leq(a, b) ? b : a;
        r.steps.push_back({b0 * nf + sup, b0 * nf + b, b0 * nf + a});
    }
    return r;
}

} // namespace

ExactnessReport exactness_check(const PosetNetBundle& x, long budget) {
    const Poset& pb = x.base();
    const Poset& pf = x.fibre();
    if (!is_pathwise_connected(pb))
        throw Disconnected("base must be pathwise connected");
    if (!is_pathwise_connected(pf))
        throw Disconnected("fibre must be pathwise connected");
    TotalSpace tot = total_space_order(x);
    Complex kb(pb), kf(pf), kt(tot.order);
    const int b0 = 0, f0 = 0;
    ExactnessReport rep;
    std::ostringstream detail;

    // (i) every generating loop of the base lifts to a loop upstairs whose
    // projection is homotopic to the original.
    Pi1Presentation pib = pi1_presentation(kb, b0);
    rep.eta_surjective = true;
    for (size_t g = 0; g < pib.generator_edge.size(); ++g) {
        if (pib.letter_gauge[pib.generator_edge[g]] == 0) continue; // tree edge
        Path ell = generator_loop(pib, kb, static_cast<int>(g));
        Path lift = lift_path(x, ell, f0);
        int fe = tot.fibre_of(lift.end());
        Path lam = fe == f0 ? lift : concat(fibre_connector(x, b0, fe, f0), lift);
        Path down = strip_degenerate(project_total(tot, lam), b0);
        if (down.steps != ell.steps &&
            homotopic(kb, down, ell, budget).verdict != Ternary::Yes) {
            rep.eta_surjective = false;
            detail << "no visible lift for generator " << pib.pres.generators[g]
                   << "; ";
        }
    }

    // (ii) loops inside a fibre project to constant paths, hence die.
    Pi1Presentation pif = pi1_presentation(kf, f0);
    rep.fibre_kills = true;
    bool directed = is_upward_directed(pf) || is_downward_directed(pf);
    bool fibre_loops_trivial = true;
    for (size_t g = 0; g < pif.generator_edge.size(); ++g) {
        if (pif.letter_gauge[pif.generator_edge[g]] == 0) continue;
        Path gamma = generator_loop(pif, kf, static_cast<int>(g));
        // The projection of the included loop is degenerate at b0 step by
        // step, so it is null-homotopic; nothing numeric to check here.
        if (!directed && fibre_loops_trivial)
            fibre_loops_trivial =
                homotopic(kf, gamma, constant_path(f0), budget).verdict == Ternary::Yes;
    }

    // (iii) abelianized exactness H1(F) -> H1(X) -> H1(P) -> 0.
    H1Data h1b = h1_integral(kb), h1f = h1_integral(kf), h1t = h1_integral(kt);
    int st = h1t.group.summands(), sb = h1b.group.summands();
    int tb = static_cast<int>(h1b.group.torsion.size());

    std::vector<IntVec> mj_cols;
    for (const auto& c : h1f.generator_cycles()) {
        Chain mapped;
        for (const auto& [idx, co] : c.coeff) {
            const Simplex1& s = kf.simplices1()[idx];
            mapped.add(kt.index1({tot.point(b0, s.support), tot.point(b0, s.face0),
                                  tot.point(b0, s.face1)}),
                       co);
        }
        mj_cols.push_back(h1t.project(kt, mapped));
    }
    std::vector<IntVec> me_cols;
    for (const auto& c : h1t.generator_cycles()) {
        Chain mapped;
        for (const auto& [idx, co] : c.coeff) {
            const Simplex1& s = kt.simplices1()[idx];
            mapped.add(kb.index1({tot.base_of(s.support), tot.base_of(s.face0),
                                  tot.base_of(s.face1)}),
                       co);
        }
        me_cols.push_back(h1b.project(kb, mapped));
    }

    IntMat rel = zero_mat(sb, st + tb);
    for (int j = 0; j < st; ++j)
        for (int i = 0; i < sb; ++i) rel[i][j] = me_cols[j][i];
    for (int k2 = 0; k2 < tb; ++k2)
        rel[h1b.group.free_rank + k2][st + k2] = h1b.group.torsion[k2];
    bool surj = cokernel(rel).is_trivial();

    LatticeBasis L1(st), L2(st);
    auto add_col = [](LatticeBasis& l, const IntVec& v) {
        SparseVec sv;
        for (int i = 0; i < static_cast<int>(v.size()); ++i)
            if (v[i] != 0) sv.emplace_back(i, v[i]);
        l.insert(std::move(sv));
    };
    for (const auto& c : mj_cols) add_col(L1, c);
    for (size_t k2 = 0; k2 < h1t.group.torsion.size(); ++k2) {
        IntVec v(st, 0);
        v[h1t.group.free_rank + static_cast<int>(k2)] = h1t.group.torsion[k2];
        add_col(L1, v);
        add_col(L2, v);
    }
    if (sb == 0) {
        for (int i = 0; i < st; ++i) {
            IntVec v(st, 0);
            v[i] = 1;
            add_col(L2, v);
        }
    } else {
        IntMat ker = kernel_basis(rel);
        for (int j = 0; j < cols(ker); ++j) {
            IntVec v(st, 0);
            for (int i = 0; i < st; ++i) v[i] = ker[i][j];
            add_col(L2, v);
        }
    }
    bool middle = lattice_equal(L1, L2);
    rep.abelian_exact = surj && middle;

    // (iv) with a simply connected fibre the projection is an H1 match.
    rep.fibre_simply_connected =
        directed || (h1f.group.is_trivial() && fibre_loops_trivial);
    rep.base_iso =
        rep.fibre_simply_connected && h1t.group == h1b.group && surj;

    detail << "H1(F) = " << h1f.group.to_string()
           << ", H1(X) = " << h1t.group.to_string()
           << ", H1(P) = " << h1b.group.to_string()
           << (surj ? "; induced map onto" : "; induced map not onto")
           << (middle ? "; kernel matches the fibre image"
                      : "; kernel differs from the fibre image");
    rep.detail = detail.str();
    return rep;
}

} // namespace pnet
