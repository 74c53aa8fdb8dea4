#include "pnet/poset.hpp"

#include <algorithm>
#include <queue>

namespace pnet {

Poset::Poset(std::vector<std::string> elements,
             const std::vector<std::pair<std::string, std::string>>& covers)
    : names_(std::move(elements)) {
    for (int i = 0; i < size(); ++i) {
        if (!index_.emplace(names_[i], i).second)
            throw DuplicateElement("duplicate element id: " + names_[i]);
    }
    int n = size();
    leq_.assign(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) leq_[i][i] = true;
    for (const auto& [a, b] : covers) {
        auto ia = index_.find(a);
        auto ib = index_.find(b);
        if (ia == index_.end())
            throw UnknownElement("cover pair references undeclared element: " + a);
        if (ib == index_.end())
            throw UnknownElement("cover pair references undeclared element: " + b);
        leq_[ia->second][ib->second] = true;
    }
    // Warshall closure.
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (leq_[i][k])
                for (int j = 0; j < n; ++j)
                    if (leq_[k][j]) leq_[i][j] = true;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (leq_[i][j] && leq_[j][i])
                throw OrderCycle("antisymmetry violated: " + names_[i] +
                                 " <= " + names_[j] + " <= " + names_[i]);
}

int Poset::index(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw UnknownElement("unknown element: " + id);
    return it->second;
}

std::vector<int> Poset::up_set(int a) const {
    std::vector<int> r;
    for (int c = 0; c < size(); ++c)
        if (leq_[a][c]) r.push_back(c);
    return r;
}

std::vector<int> Poset::down_set(int a) const {
    std::vector<int> r;
    for (int c = 0; c < size(); ++c)
        if (leq_[c][a]) r.push_back(c);
    return r;
}

std::vector<std::pair<int, int>> Poset::cover_pairs() const {
    std::vector<std::pair<int, int>> r;
    int n = size();
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (u == v || !leq_[u][v]) continue;
            bool covered = true;
            for (int w = 0; w < n && covered; ++w)
                if (w != u && w != v && leq_[u][w] && leq_[w][v]) covered = false;
            if (covered) r.emplace_back(u, v);
        }
    return r;
}

std::vector<std::pair<int, int>> Poset::strict_pairs() const {
    std::vector<std::pair<int, int>> r;
    for (int u = 0; u < size(); ++u)
        for (int v = 0; v < size(); ++v)
            if (u != v && leq_[u][v]) r.emplace_back(u, v);
    return r;
}

Poset build_poset(std::vector<std::string> elements,
                  const std::vector<std::pair<std::string, std::string>>& covers) {
    return Poset(std::move(elements), covers);
}

Poset dual(const Poset& p) {
    Poset d;
    d.names_ = p.names_;
    d.index_ = p.index_;
    int n = p.size();
    d.leq_.assign(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d.leq_[i][j] = p.leq_[j][i];
    return d;
}

bool is_upward_directed(const Poset& p) {
    int n = p.size();
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            bool found = false;
            for (int c = 0; c < n && !found; ++c)
                if (p.leq(a, c) && p.leq(b, c)) found = true;
            if (!found) return false;
        }
    return true;
}

bool is_downward_directed(const Poset& p) { return is_upward_directed(dual(p)); }

Poset product_poset(const Poset& p, const Poset& q) {
    std::vector<std::string> names;
    names.reserve(p.size() * q.size());
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < q.size(); ++j)
            names.push_back(p.name(i) + "|" + q.name(j));
    Poset r;
    std::vector<std::pair<std::string, std::string>> covers;
    // Declare all componentwise relations; the closure keeps them.
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < q.size(); ++j)
            for (int k = 0; k < p.size(); ++k)
                for (int l = 0; l < q.size(); ++l)
                    if (p.leq(i, k) && q.leq(j, l) && (i != k || j != l))
                        covers.emplace_back(p.name(i) + "|" + q.name(j),
                                            p.name(k) + "|" + q.name(l));
    return Poset(std::move(names), covers);
}

bool is_pathwise_connected(const Poset& p) {
    int n = p.size();
    if (n == 0) return true;
    std::vector<bool> seen(n, false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    int count = 1;
    while (!q.empty()) {
        int a = q.front();
        q.pop();
        for (int b = 0; b < n; ++b)
            if (!seen[b] && (p.leq(a, b) || p.leq(b, a))) {
                seen[b] = true;
                ++count;
                q.push(b);
            }
    }
    return count == n;
}

PosetMorphism::PosetMorphism(Poset src, Poset tgt, std::vector<int> m)
    : source(std::move(src)), target(std::move(tgt)), map(std::move(m)) {
    if (static_cast<int>(map.size()) != source.size())
        throw Error("morphism map size does not match source");
    for (int a = 0; a < source.size(); ++a)
        for (int b = 0; b < source.size(); ++b)
            if (source.leq(a, b) && !target.leq(map[a], map[b]))
                throw Error("map is not order-preserving at (" + source.name(a) +
                            ", " + source.name(b) + ")");
}

PosetMorphism::PosetMorphism(
    const Poset& src, const Poset& tgt,
    const std::unordered_map<std::string, std::string>& assignment)
    : PosetMorphism(src, tgt, [&] {
          std::vector<int> m(src.size());
          for (int a = 0; a < src.size(); ++a) {
              auto it = assignment.find(src.name(a));
              if (it == assignment.end())
                  throw UnknownElement("no image for element " + src.name(a));
              m[a] = tgt.index(it->second);
          }
          return m;
      }()) {}

PosetMorphism identity_morphism(const Poset& p) {
    std::vector<int> m(p.size());
    for (int i = 0; i < p.size(); ++i) m[i] = i;
    return PosetMorphism(p, p, std::move(m));
}

PosetMorphism constant_morphism(const Poset& src, const Poset& tgt, int value) {
    return PosetMorphism(src, tgt, std::vector<int>(src.size(), value));
}

PosetMorphism product_projection(const Poset& prod, const Poset& factor, int which) {
    std::vector<int> m(prod.size());
    for (int i = 0; i < prod.size(); ++i) {
        const std::string& id = prod.name(i);
        auto bar = id.find('|');
        // Product ids are "p|q"; factor ids may themselves contain '|' when
        // products are nested, so search for the split that parses.
        while (bar != std::string::npos) {
            const std::string part = which == 0 ? id.substr(0, bar) : id.substr(bar + 1);
            if (factor.contains(part)) {
                m[i] = factor.index(part);
                break;
            }
            bar = id.find('|', bar + 1);
        }
        if (bar == std::string::npos)
            throw UnknownElement("cannot split product id " + id);
    }
    return PosetMorphism(prod, factor, std::move(m));
}

} // namespace pnet
