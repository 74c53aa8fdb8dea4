#include "pnet/abelian.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace pnet {

std::string FGAbelianGroup::to_string() const {
    if (is_trivial()) return "0";
    std::string s;
    auto sep = [&] { if (!s.empty()) s += " + "; };
    if (free_rank == 1) {
        s += "Z";
    } else if (free_rank > 1) {
        s += "Z^" + std::to_string(free_rank);
    }
    for (const Int& d : torsion) {
        sep();
        s += "Z/" + d.str();
    }
    return s;
}

FGAbelianGroup from_cyclic_orders(const IntVec& orders) {
    int n = static_cast<int>(orders.size());
    IntMat diag = zero_mat(n, n);
    for (int i = 0; i < n; ++i) diag[i][i] = orders[i];
    return cokernel(diag);
}

FGAbelianGroup cokernel(const IntMat& rel) {
    int n = rows(rel);
    SnfResult s = smith_normal_form(rel);
    FGAbelianGroup g;
    g.free_rank = n - s.rank;
    for (const Int& d : s.diag)
        if (d >= 2) g.torsion.push_back(d);
    return g;
}

FGAbelianGroup hom_group(const FGAbelianGroup& h, const FGAbelianGroup& a) {
    IntVec orders;
    for (int i = 0; i < h.free_rank; ++i) {
        for (int j = 0; j < a.free_rank; ++j) orders.push_back(0);
        for (const Int& e : a.torsion) orders.push_back(e);
    }
    for (const Int& d : h.torsion)
        for (const Int& e : a.torsion) orders.push_back(gcd(d, e));
    return from_cyclic_orders(orders);
}

} // namespace pnet
