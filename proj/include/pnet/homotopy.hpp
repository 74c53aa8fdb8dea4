#ifndef PNET_HOMOTOPY_HPP
#define PNET_HOMOTOPY_HPP

#include <string>
#include <vector>

#include "pnet/abelian.hpp"
#include "pnet/simplicial.hpp"

namespace pnet {

/// Finite group presentation. Relators are words of signed 1-based
/// generator indices: +k means generator k-1, -k its inverse.
struct GroupPresentation {
    std::vector<std::string> generators;
    std::vector<std::vector<int>> relators;
};

/// Smith-normal-form abelianization of Z^gens / (relator columns), with a
/// projection of exponent vectors onto canonical coordinates
/// (free coordinates first, then torsion residues matching group.torsion).
struct AbelianQuotient {
    FGAbelianGroup group;
    SnfResult snf;
    int num_gens = 0;
    std::vector<int> free_pos, torsion_pos; // rows of U*x to read off

    IntVec project(const IntVec& exponents) const;
    IntVec project_word(const std::vector<int>& word) const;
};

AbelianQuotient abelian_quotient(int num_gens,
                                 const std::vector<std::vector<int>>& relators);
FGAbelianGroup abelianize(const GroupPresentation& g);

/// Edge-path presentation of pi1 in a deterministic spanning-tree gauge.
/// Generators: one per reversal pair of nondegenerate symmetric 1-simplices
/// (tree edges kept, with trivial relators). Each 2-simplex c contributes
/// the relator d2(c) d0(c) d1(c)^-1.
struct Pi1Presentation {
    GroupPresentation pres;
    int basepoint = 0;
    std::vector<int> generator_edge; // generator -> representative s1 index
    std::vector<int> letter_raw;     // s1 index -> signed letter, 0 = degenerate
    std::vector<int> letter_gauge;   // as letter_raw but tree edges -> 0
    std::vector<int> tree_in_edge;   // vertex -> s1 index of tree edge from parent, -1 at root
};

Pi1Presentation pi1_presentation(const Complex& k, int basepoint);

/// Tree-gauge word of any path: degenerate and spanning-tree steps drop
/// out. For loops at the basepoint this is the pi1 class; for general
/// paths it is the tree-transported groupoid arrow.
std::vector<int> path_word(const Pi1Presentation& pi, const Complex& k,
                           const Path& p);

/// Tree-gauge word of a loop at the presentation basepoint.
std::vector<int> class_in_pi1(const Pi1Presentation& pi, const Complex& k,
                              const Path& loop);

/// Tree path from the basepoint to vertex v (constant path at the root).
Path tree_path(const Pi1Presentation& pi, const Complex& k, int v);
/// Loop at the basepoint representing a generator, conjugated by tree paths.
Path generator_loop(const Pi1Presentation& pi, const Complex& k, int gen);

struct DeformationStep {
    Path result;
    bool ampliation; // false = contraction
    int simplex2;    // index into Complex::simplices2()
};

std::vector<DeformationStep> elementary_deformations(const Complex& k, const Path& p);

enum class Ternary { Yes, No, Unknown };

struct HomotopyResult {
    Ternary verdict = Ternary::Unknown;
    /// For Yes: chain of paths p = c_0, ..., c_n = q, one deformation apart.
    std::vector<Path> certificate;
    std::string reason;
};

/// Bounded bidirectional-invariant homotopy test. Yes via breadth-first
/// search over elementary deformations (at most `budget` expanded nodes);
/// No when the abelianized classes differ; Unknown otherwise.
HomotopyResult homotopic(const Complex& k, const Path& p, const Path& q, long budget);

} // namespace pnet

#endif
