#ifndef PNET_POSET_HPP
#define PNET_POSET_HPP

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pnet/errors.hpp"

namespace pnet {

/// A finite poset. The order is stored as the full reflexive-transitive
/// closure of the declared cover pairs, so leq queries are O(1).
class Poset {
public:
    Poset() = default;

    /// Builds a poset from element identifiers and declared pairs a <= b.
    /// The pairs need not be transitively reduced; the closure is canonical.
    /// Throws DuplicateElement, UnknownElement, or OrderCycle.
    Poset(std::vector<std::string> elements,
          const std::vector<std::pair<std::string, std::string>>& covers);

    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& elements() const { return names_; }
    const std::string& name(int i) const { return names_.at(i); }

    int index(const std::string& id) const;
    bool contains(const std::string& id) const { return index_.count(id) != 0; }

    bool leq(int a, int b) const { return leq_[a][b]; }
    bool leq(const std::string& a, const std::string& b) const {
        return leq_[index(a)][index(b)];
    }

    /// V_a = { c : a <= c }, the minimal open containing a.
    std::vector<int> up_set(int a) const;
    std::vector<int> down_set(int a) const;

    /// Cover pairs (u, v): u < v with no element strictly between.
    std::vector<std::pair<int, int>> cover_pairs() const;

    /// Pairs (u, v) with u <= v, u != v.
    std::vector<std::pair<int, int>> strict_pairs() const;

    bool operator==(const Poset& o) const {
        return names_ == o.names_ && leq_ == o.leq_;
    }

private:
    friend Poset dual(const Poset&);
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<bool>> leq_;
};

Poset build_poset(std::vector<std::string> elements,
                  const std::vector<std::pair<std::string, std::string>>& covers);

/// Same elements, opposite order. dual(dual(P)) == P.
Poset dual(const Poset& p);

/// Every pair admits a common upper (resp. lower) bound.
bool is_upward_directed(const Poset& p);
bool is_downward_directed(const Poset& p);

/// Cartesian product with componentwise order; identifiers are "p|q".
Poset product_poset(const Poset& p, const Poset& q);

/// Whether the comparability graph is connected (pathwise connectivity of
/// the simplicial set, which coincides with connectivity of this graph).
bool is_pathwise_connected(const Poset& p);

/// An order-preserving map of posets.
struct PosetMorphism {
    Poset source;
    Poset target;
    std::vector<int> map; // index in source -> index in target

    PosetMorphism(Poset src, Poset tgt, std::vector<int> m);
    PosetMorphism(const Poset& src, const Poset& tgt,
                  const std::unordered_map<std::string, std::string>& assignment);

    int operator()(int a) const { return map.at(a); }
};

PosetMorphism identity_morphism(const Poset& p);
PosetMorphism constant_morphism(const Poset& src, const Poset& tgt, int value);
/// Projections of a product poset built by product_poset.
PosetMorphism product_projection(const Poset& prod, const Poset& factor, int which);

} // namespace pnet

#endif
