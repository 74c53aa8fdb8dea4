#ifndef PNET_HOMOLOGY_HPP
#define PNET_HOMOLOGY_HPP

#include <complex>
#include <map>

#include "pnet/abelian.hpp"
#include "pnet/homotopy.hpp"
#include "pnet/simplicial.hpp"

namespace pnet {

/// Integer chain: sparse coefficients over the canonical simplex enumeration
/// of the ambient Complex (degree 0: vertices, 1: simplices1, 2: simplices2).
struct Chain {
    int degree = 1;
    std::map<int, Int> coeff;

    void add(int idx, const Int& c) {
        auto it = coeff.emplace(idx, 0).first;
        it->second += c;
        if (it->second == 0) coeff.erase(it);
    }
    bool is_zero() const { return coeff.empty(); }
};

/// b x = sum_k (-1)^k d_k x.
Chain boundary(const Complex& k, const Chain& x);

/// T(p): the steps of a path as a 1-chain.
Chain path_chain(const Complex& k, const Path& p);

/// H1(P, Z) with change-of-basis data: project() maps a 1-cycle to canonical
/// coordinates (free coordinates first, then torsion residues).
class H1Data {
public:
    FGAbelianGroup group;

    IntVec project(const Complex& k, const Chain& x) const; // throws NotACycle
    /// Representative 1-cycles, one per canonical summand.
    std::vector<Chain> generator_cycles() const;
    /// Columns form an echelon basis of the boundary lattice im b2.
    const IntMat& image_basis() const { return image_basis_; }

private:
    friend H1Data h1_integral(const Complex& k);
    IntVec project_vec(IntVec x) const;
    int n1_ = 0, z_ = 0;
    IntMat kernel_;            // n1 x z, basis of ker b1
    SnfResult snf_kernel_;     // SNF of kernel_, for coordinate solves
    SnfResult snf_quot_;       // SNF of the image expressed in kernel coords
    std::vector<int> free_pos_, tor_pos_;
    IntMat image_basis_;
};

H1Data h1_integral(const Complex& k); // throws Disconnected

/// Class of a loop in H1 coordinates. Throws NotALoop.
IntVec hurewicz_T(const Complex& k, const H1Data& h1, const Path& p);

/// Threads a 1-cycle into loops at the basepoint whose classes sum to the
/// class of x. Throws NotACycle, Disconnected.
std::vector<Path> cycle_to_loops(const Complex& k, const Chain& x, int basepoint);

// ---- cochains ----------------------------------------------------------

/// Element of a f.g. abelian group A: free coordinates followed by torsion
/// residues (length = A.summands()).
IntVec a_zero(const FGAbelianGroup& a);
IntVec a_reduce(const FGAbelianGroup& a, IntVec v);
IntVec a_add(const FGAbelianGroup& a, const IntVec& x, const IntVec& y);
IntVec a_neg(const FGAbelianGroup& a, const IntVec& x);

/// A-valued cochain of degree 0 or 1, total on the simplex enumeration.
struct CochainZ {
    int degree = 0;
    FGAbelianGroup A;
    std::vector<IntVec> values;
};

/// Circle-valued cochain (unit complex numbers).
struct CochainT {
    int degree = 0;
    std::vector<std::complex<double>> values;
};

/// d v for degree 0 -> 1; degree 1 input evaluates d v on all 2-simplex
/// boundary triples (returned indexed like Complex::boundary_triples()).
CochainZ coboundary(const Complex& k, const CochainZ& v);
CochainT coboundary(const Complex& k, const CochainT& v);
bool is_cocycle(const Complex& k, const CochainZ& v);
bool is_cocycle(const Complex& k, const CochainT& v, double tol = 1e-8);

/// H^1(P, A) = Hom(H1(P, Z), A).
FGAbelianGroup h1_cohomology(const Complex& k, const H1Data& h1,
                             const FGAbelianGroup& a);

/// Independent check: H^1(P, Z/m) by direct kernel/image cochain
/// computation (m >= 2), using only the stored boundary-image lattice.
FGAbelianGroup h1_mod_direct(const Complex& k, const H1Data& h1, const Int& m);

/// <v, x> for a 1-cocycle v and a 1-cycle x. Throws NotACocycle/NotACycle.
IntVec pairing(const Complex& k, const CochainZ& v, const Chain& x);
std::complex<double> pairing(const Complex& k, const CochainT& v, const Chain& x);

} // namespace pnet

#endif
