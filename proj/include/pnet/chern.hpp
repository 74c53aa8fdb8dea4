#ifndef PNET_CHERN_HPP
#define PNET_CHERN_HPP

#include "pnet/homology.hpp"
#include "pnet/netbundle.hpp"

namespace pnet {

/// Formal difference of bundles over a common base; integer coefficients
/// are realized by multiset repetition.
struct VirtualBundle {
    std::vector<NetBundle> plus, minus;
};

int vrank(const VirtualBundle& v);
VirtualBundle virtual_of(const NetBundle& e);
VirtualBundle vb_add(const VirtualBundle& a, const VirtualBundle& b);
VirtualBundle vb_neg(const VirtualBundle& a);
/// K-ring product: bilinear expansion of tensor products.
VirtualBundle vb_tensor(const VirtualBundle& a, const VirtualBundle& b);
/// (rank, v - rank [T1]).
std::pair<int, VirtualBundle> reduce(const VirtualBundle& v, const Poset& base);

NetBundle direct_sum_all(const Poset& base, const std::vector<NetBundle>& list);

/// Unitary isomorphism test via the intertwiner space of the holonomy
/// representations; on success the witness is a unitary intertwiner.
std::pair<bool, Mat> are_isomorphic(const NetBundle& e, const NetBundle& f,
                                    unsigned seed = 7);

bool virtual_equal(const VirtualBundle& a, const VirtualBundle& b);
bool stably_equivalent(const NetBundle& e, const NetBundle& f);

/// Irreducible decomposition with multiplicities. Requires abelian or
/// finite-image holonomy (throws Unsupported otherwise).
std::vector<std::pair<NetBundle, int>> decompose(const NetBundle& e,
                                                 unsigned seed = 11);

/// det of the holonomy: value on a loop, or per presentation generator.
Cplx c1_loop(const NetBundle& e, const Path& loop);
std::vector<Cplx> c1(const NetBundle& e, const Complex& k, const HolonomyRep& rep);
/// Values of the abelianized first Chern class on the H1 generators.
std::vector<Cplx> abelianized_c1(const NetBundle& e, const Complex& k,
                                 const H1Data& h1, int basepoint = 0);

/// Chern function c_i E evaluated on a loop; total polynomial at h.
Cplx chern_function(const NetBundle& e, int i, const Path& loop);
Cplx total_chern_at(const NetBundle& e, Cplx h, const Path& loop);

/// Chern K-classes k_i(E), i = 1..rank.
std::vector<VirtualBundle> chern_k_classes(const NetBundle& e);

struct ClassifyResult {
    std::vector<Cplx> eigenvalues; // all holonomy eigenvalues of the generator
    std::vector<Cplx> zeros;       // (chi - 1)^-1 for chi != 1, with multiplicity
    std::vector<Cplx> poly;        // coefficients of P(h) = prod (1 + (1-chi) h)
};

/// Classification over a base with pi1 = Z. Throws WrongFundamentalGroup.
ClassifyResult classify_pi1_Z(const NetBundle& e, const Complex& k);
/// Inverse construction: direct sum of line bundles with the characters
/// encoded by the zeros, padded with trivial lines up to total_rank.
NetBundle reconstruct_from_zeros(const Complex& k, const std::vector<Cplx>& zeros,
                                 int total_rank);

struct IsotypeEntry {
    int character; // j: alpha(gen) = exp(2 pi i j / order)
    NetBundle summand;
};

/// Isotypical decomposition for a finite cyclic action trivial on the base.
std::vector<IsotypeEntry> equivariant_split_check(const NetBundle& e,
                                                  const std::map<int, Mat>& gen,
                                                  int order);

} // namespace pnet

#endif
