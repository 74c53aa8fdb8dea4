#ifndef PNET_SIMPLICIAL_HPP
#define PNET_SIMPLICIAL_HPP

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "pnet/poset.hpp"

namespace pnet {

/// Symmetric 1-simplex (o; c, d): support o, target face0 = c = d0,
/// source face1 = d = d1, with c <= o and d <= o.
struct Simplex1 {
    int support;
    int face0; // target
    int face1; // source

    bool operator==(const Simplex1& o) const {
        return support == o.support && face0 == o.face0 && face1 == o.face1;
    }
    auto operator<=>(const Simplex1&) const = default;
};

inline Simplex1 reverse(const Simplex1& b) { return {b.support, b.face1, b.face0}; }
inline Simplex1 degeneracy0(int a) { return {a, a, a}; }
inline bool is_degenerate(const Simplex1& b) {
    return b.support == b.face0 && b.support == b.face1;
}

/// Symmetric 2-simplex stored as support plus the three 1-simplex faces,
/// satisfying d0(d0) = d0(d1), d1(d0) = d0(d2), d1(d1) = d1(d2) and
/// the composition d0 * d2 = d1 at the level of endpoints.
struct Simplex2 {
    int support;
    Simplex1 d0, d1, d2;

    bool operator==(const Simplex2&) const = default;
};

void validate_simplex1(const Poset& p, const Simplex1& b);
void validate_simplex2(const Poset& p, const Simplex2& c);

/// A composable string of 1-simplices b_n * ... * b_1, applied right to left:
/// steps[0] = b_1 runs first. Nonempty by contract.
struct Path {
    std::vector<Simplex1> steps;

    int start() const { return steps.front().face1; }
    int end() const { return steps.back().face0; }
    int length() const { return static_cast<int>(steps.size()); }
    bool is_loop() const { return start() == end(); }
    bool operator==(const Path&) const = default;
};

void validate_path(const Poset& p, const Path& path);

/// concat(p, q) = p * q: runs q first; requires end(q) == start(p).
Path concat(const Path& p, const Path& q);
Path reverse_path(const Path& p);
Path constant_path(int a);

/// Cached enumeration of the symmetric simplicial set of a poset up to
/// degree 2, with lookup indices used by homotopy and homology.
class Complex {
public:
    explicit Complex(Poset p);

    const Poset& poset() const { return P_; }

    // Degree-1 simplices in canonical (lexicographic) order.
    const std::vector<Simplex1>& simplices1() const { return s1_; }
    int index1(const Simplex1& b) const; // throws InvalidSimplex
    int reverse_index(int i) const { return rev_[i]; }

    // Degree-2 simplices; faces stored as indices into simplices1().
    struct Rec2 {
        int support;
        int d0, d1, d2;
    };
    const std::vector<Rec2>& simplices2() const { return s2_; }
    Simplex2 simplex2(int i) const;

    // 2-simplices whose middle face d1 is the given 1-simplex (ampliation
    // sites), and whose outer pair (d2, d0) matches (contraction sites).
    const std::vector<int>& with_middle_face(int s1_idx) const;
    const std::vector<int>& with_outer_pair(int d2_idx, int d0_idx) const;

    // Distinct boundary columns d0 - d1 + d2 of 2-simplices, as face index
    // triples (duplicates with equal faces but different support removed).
    const std::vector<std::array<int, 3>>& boundary_triples() const { return triples_; }

private:
    Poset P_;
    std::vector<Simplex1> s1_;
    std::unordered_map<std::uint64_t, int> s1_index_;
    std::vector<int> rev_;
    std::vector<Rec2> s2_;
    std::vector<std::array<int, 3>> triples_;
    std::vector<std::vector<int>> amp_;
    std::unordered_map<std::uint64_t, std::vector<int>> contr_;
    std::vector<int> empty_;
};

/// Full enumeration per degree. symmetric=false yields the nerve
/// (order-compatible simplices), embedded into the symmetric set.
std::vector<int> enumerate_simplices0(const Poset& p);
std::vector<Simplex1> enumerate_simplices1(const Poset& p, bool symmetric);
std::vector<Simplex2> enumerate_simplices2(const Poset& p, bool symmetric);

/// Pads the shorter path at its start with degenerate steps, then pairs
/// componentwise into a path over product_poset(P, Q).
Path align_paths(const Poset& p, const Path& pp, const Poset& q, const Path& pq,
                 const Poset& prod);

/// Componentwise projection of a path over product_poset(P, Q).
Path project_path(const Poset& prod, const Poset& factor, int which, const Path& path);

} // namespace pnet

#endif
