#ifndef PNET_REALIZATION_HPP
#define PNET_REALIZATION_HPP

#include "pnet/homology.hpp"
#include "pnet/netbundle.hpp"

namespace pnet {

/// Opens of the Alexandroff topology: all up-sets, as sorted element lists
/// (the empty set included).
struct AlexandroffSpace {
    Poset carrier;
    std::vector<std::vector<int>> opens;
};

AlexandroffSpace alexandroff(const Poset& p); // Unsupported beyond 20 elements

/// Partition of a subset into comparability components.
std::vector<std::vector<int>> connected_components(const Poset& p,
                                                   const std::vector<int>& subset);

/// Net bundle whose fibre is a finite poset and whose transitions are order
/// isomorphisms; path independence is exact (permutation data).
class PosetNetBundle {
public:
    PosetNetBundle(Poset base, Poset fibre,
                   std::map<std::pair<int, int>, std::vector<int>> cover_transitions);

    const Poset& base() const { return base_; }
    const Poset& fibre() const { return fibre_; }
    const std::map<std::pair<int, int>, std::vector<int>>& cover_transitions() const {
        return maps_;
    }

    /// Composed transition fibre(sub) -> fibre(sup); identity on reflexive
    /// pairs.
    std::vector<int> J(int sub, int sup) const;
    int apply(int sub, int sup, int f) const;   // J(sub,sup)(f)
    int unapply(int sub, int sup, int f) const; // J(sub,sup)^-1(f)

private:
    Poset base_, fibre_;
    std::map<std::pair<int, int>, std::vector<int>> maps_, comp_;
};

/// Total space with the canonical order: (b1,f1) < (b0,f0) iff b1 <= b0 and
/// J(b1,b0)(f1) <= f0. Point ids are "<base>|<fibre>".
struct TotalSpace {
    Poset order;
    std::vector<int> eta; // point -> base element
    int nf = 0;

    int point(int b, int f) const { return b * nf + f; }
    int base_of(int x) const { return x / nf; }
    int fibre_of(int x) const { return x % nf; }
};

TotalSpace total_space_order(const PosetNetBundle& x);
PosetMorphism eta_morphism(const TotalSpace& t, const Poset& base);

NetBundle pullback(const PosetMorphism& eta, const NetBundle& e);
PosetNetBundle pullback(const PosetMorphism& eta, const PosetNetBundle& x);

/// Cylinder poset machinery: X_{o,<} has elements (a, U) with U a nonempty
/// fibre up-set; T_{a,U} = { (o, f) : o in V_a, f in J(a,o)(U) }.
struct CylinderReport {
    std::vector<std::pair<int, std::vector<int>>> anchors; // (a, U)
    std::vector<std::vector<int>> members; // T_{a,U} as total-space points
    bool injective = false;
    bool order_isomorphism = false; // (a,U) < (a',U') iff T inclusion
    std::string witness;
};

CylinderReport cylinders(const PosetNetBundle& x);

/// Transition functions g_ab(o) = J(a,o)^* J(b,o) for o in V_a cap V_b.
Mat transition_value(const NetBundle& e, int a, int b, int o);

struct TransitionReport {
    bool cocycle_ok = false;
    double worst_cocycle = 0.0;
    bool locally_constant = false;
    double worst_constancy = 0.0;
    std::string witness;
};

TransitionReport transition_functions(const NetBundle& e, double tol = kTolDerived);

/// Path lifting along the canonical recursion; start is a fibre element
/// placed over the source of the first step. Returns a path in the total
/// order whose projection is p up to degenerate steps.
Path lift_path(const PosetNetBundle& x, const Path& p, int fibre_start);

struct ExactnessReport {
    bool eta_surjective = false;      // (i) generators of pi1(base) lift
    bool fibre_kills = false;         // (ii) eta of fibre loops null-homotopic
    bool abelian_exact = false;       // (iii) H1(F) -> H1(X) -> H1(P) -> 0 exact
    bool fibre_simply_connected = false;
    bool base_iso = false;            // (iv) H1(X) = H1(P) when fibre is s.c.
    std::string detail;
};

ExactnessReport exactness_check(const PosetNetBundle& x, long budget = 20000);

} // namespace pnet

#endif
