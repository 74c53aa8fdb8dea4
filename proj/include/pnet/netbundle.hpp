#ifndef PNET_NETBUNDLE_HPP
#define PNET_NETBUNDLE_HPP

#include <Eigen/Dense>
#include <map>
#include <optional>

#include "pnet/homotopy.hpp"
#include "pnet/simplicial.hpp"

namespace pnet {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Cplx = std::complex<double>;

constexpr double kTolConstruct = 1e-9;
constexpr double kTolDerived = 1e-8;

Mat kron(const Mat& a, const Mat& b);
/// k-element subsets of {0..d-1} in lexicographic order (wedge basis).
std::vector<std::vector<int>> k_subsets(int d, int k);
/// k-th compound matrix: minors on the wedge basis, size C(d,k).
Mat compound_matrix(const Mat& a, int k);
long long binomial(int n, int k);

/// Raw bundle data as stored on disk: one matrix per cover pair, possibly
/// rectangular (quasinet) with per-element fibre dimensions.
struct BundleData {
    Poset base;
    std::map<int, int> ranks; // element -> fibre dimension
    std::map<std::pair<int, int>, Mat> maps; // (sub, sup) cover pair
};

struct ValidationReport {
    bool is_quasinet = false;
    bool is_net = false;
    std::map<int, int> rank_function;
    double worst_unitarity = 0.0;
    double worst_cocycle = 0.0;
    std::string witness; // offending cover pair or chain, if any
};

/// Checks shape, injectivity, unitarity where square, and path-independence
/// of compositions. Never throws on mere numerical failure; missing
/// matrices throw MissingCoverMatrix.
ValidationReport validate_bundle(const BundleData& d, double tol = kTolConstruct);

/// Finite-rank Hilbert net bundle: unitary cocycle over the nerve.
class NetBundle {
public:
    NetBundle(Poset base, int rank, std::map<std::pair<int, int>, Mat> cover_maps,
              double tol = kTolConstruct);

    const Poset& base() const { return base_; }
    int rank() const { return rank_; }
    const std::map<std::pair<int, int>, Mat>& cover_maps() const { return maps_; }

    /// Composed map fibre(sub) -> fibre(sup); identity on reflexive pairs.
    const Mat& J(int sub, int sup) const;
    /// z(o; c, d) = J(c,o)^* J(d,o).
    Mat z(const Simplex1& s) const;
    Mat holonomy(const Path& p) const;

private:
    Poset base_;
    int rank_;
    std::map<std::pair<int, int>, Mat> maps_; // cover pairs
    std::map<std::pair<int, int>, Mat> comp_; // all pairs sub <= sup
    Mat id_;
};

NetBundle trivial_bundle(const Poset& base, int rank);

NetBundle direct_sum(const NetBundle& e, const NetBundle& f);
NetBundle tensor(const NetBundle& e, const NetBundle& f);
NetBundle conjugate(const NetBundle& e);
NetBundle exterior_power(const NetBundle& e, int k);
/// Same maps inverted, over the dual poset.
NetBundle dual_bundle(const NetBundle& e);
/// B(E, F) with I_b(t) = J^F_b t (J^E_b)^-1 on vec'd fibres.
NetBundle morphism_bundle(const NetBundle& e, const NetBundle& f);

struct BundleMorphism {
    NetBundle source;
    NetBundle target;
    std::map<int, Mat> T; // element -> matrix fibre(source) -> fibre(target)
};

double morphism_residual(const BundleMorphism& t);
bool is_morphism(const BundleMorphism& t, double tol = kTolDerived);
BundleMorphism adjoint(const BundleMorphism& t);
BundleMorphism identity_bundle_morphism(const NetBundle& e);
/// Flip E (x) F -> F (x) E.
BundleMorphism symmetry(const NetBundle& e, const NetBundle& f);

struct Section {
    std::map<int, Vec> values; // element -> fibre vector
};

/// Orthonormal basis of the space of global sections (the common fixed
/// space of all loop holonomies, transported over the poset).
std::vector<Section> global_sections(const NetBundle& e);
int trivial_summand_rank(const NetBundle& e);
bool is_irreducible(const NetBundle& e);
double section_residual(const NetBundle& e, const Section& s);

/// Range restriction along a projection morphism p: E -> E. Requires the
/// pointwise ranks of p to be constant (throws Unsupported otherwise).
NetBundle subobject(const NetBundle& e, const BundleMorphism& p);

/// Finite cyclic group action on E over a trivial base action: gen_a per
/// element with gen^order = 1 and gen_{sup} J = J gen_{sub} on covers.
/// Returns the averaging projection morphism.
BundleMorphism equivariant_average(const NetBundle& e, const std::map<int, Mat>& gen,
                                   int order);

/// Holonomy images of the pi1 presentation generators in the tree gauge.
struct HolonomyRep {
    Pi1Presentation pi;
    std::vector<Mat> images;
    int rank = 0;
};

HolonomyRep holonomy_rep(const NetBundle& e, const Complex& k, int basepoint,
                         double tol = kTolDerived);
/// Image of a gauge word under a representation.
Mat rep_word(const HolonomyRep& r, const std::vector<int>& word);
/// Net bundle over k.poset() whose holonomy representation is the given
/// generator assignment (images must satisfy the relators).
NetBundle bundle_from_rep(const Complex& k, const Pi1Presentation& pi,
                          const std::vector<Mat>& images, int rank);

} // namespace pnet

#endif
