#ifndef PNET_SNF_HPP
#define PNET_SNF_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

namespace pnet {

using Int = boost::multiprecision::cpp_int;
using IntVec = std::vector<Int>;
/// Dense integer matrix, row-major.
using IntMat = std::vector<IntVec>;

IntMat identity_mat(int n);
IntMat mat_mul(const IntMat& a, const IntMat& b);
IntVec mat_vec(const IntMat& a, const IntVec& x);
IntMat zero_mat(int rows, int cols);
int rows(const IntMat& a);
int cols(const IntMat& a);

/// Smith normal form U * A * V = D with U, V unimodular; diag holds the
/// nonzero diagonal of D (d1 | d2 | ...), rank = diag.size().
/// Pivoting on least absolute value keeps intermediate growth modest.
struct SnfResult {
    IntMat U, Uinv, V, Vinv;
    IntVec diag;
    int rank = 0;
    int m = 0, n = 0; // shape of A
};

SnfResult smith_normal_form(IntMat a);

/// Columns form an integer basis of { x : A x = 0 }.
IntMat kernel_basis(const IntMat& a);

/// Integer solution of A x = b, if one exists.
std::optional<IntVec> solve_integer(const IntMat& a, const IntVec& b);

/// Sparse integer vector as sorted (index, value) pairs, value != 0.
using SparseVec = std::vector<std::pair<int, Int>>;

/// Incrementally built column-echelon basis of an integer lattice in Z^dim.
/// Insertion reduces against existing pivots with gcd steps; the basis ends
/// in (non-canonical) echelon form, one vector per pivot row.
class LatticeBasis {
public:
    explicit LatticeBasis(int dim) : dim_(dim) {}

    void insert(SparseVec v);
    /// True if v lies in the lattice (reduction leaves no remainder).
    bool contains(SparseVec v) const;

    int dim() const { return dim_; }
    int rank() const;
    /// Basis as dense columns.
    IntMat basis_columns() const;

private:
    int dim_;
    std::vector<SparseVec> by_pivot_; // indexed by pivot row; may be empty
    bool reduce(SparseVec& v, bool mutate);
    friend bool lattice_equal(const LatticeBasis&, const LatticeBasis&);
};

bool lattice_equal(const LatticeBasis& a, const LatticeBasis& b);

} // namespace pnet

#endif
