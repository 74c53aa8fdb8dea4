#ifndef PNET_ABELIAN_HPP
#define PNET_ABELIAN_HPP

#include <string>

#include "pnet/snf.hpp"

namespace pnet {

/// Finitely generated abelian group in invariant-factor form:
/// Z^free_rank + Z/d1 + ... with d1 | d2 | ..., each di >= 2.
struct FGAbelianGroup {
    int free_rank = 0;
    IntVec torsion;

    bool operator==(const FGAbelianGroup&) const = default;
    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    /// Number of cyclic summands.
    int summands() const { return free_rank + static_cast<int>(torsion.size()); }
    std::string to_string() const;
};

/// Normalizes an arbitrary list of cyclic orders (0 meaning Z, 1 dropped)
/// into invariant-factor form, via the SNF of the diagonal matrix.
FGAbelianGroup from_cyclic_orders(const IntVec& orders);

/// Cokernel Z^n / column-lattice(rel), n = rows(rel).
FGAbelianGroup cokernel(const IntMat& rel);

/// Hom(H, A) for f.g. abelian H and A:
/// Hom(Z, A) = A, Hom(Z/d, Z) = 0, Hom(Z/d, Z/e) = Z/gcd(d, e).
FGAbelianGroup hom_group(const FGAbelianGroup& h, const FGAbelianGroup& a);

} // namespace pnet

#endif
