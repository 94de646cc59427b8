#pragma once

#include "chtouca/matrix.hpp"

#include <vector>

namespace chtouca {

// Nonzero invariant factors d_1 | d_2 | ... of an integer matrix.
std::vector<Z> smith_invariants(const ZMat& a);
std::size_t integer_rank(const ZMat& a);

// Column echelon form: a * u = h, u unimodular, the first rank columns of h
// nonzero and the rest zero.
struct ColumnEchelon {
    ZMat h, u;
    std::size_t rank = 0;
};
ColumnEchelon column_echelon(const ZMat& a);

// Rows form a basis of the lattice {x in Z^n : a x = 0}.
ZMat integer_kernel(const ZMat& a);

// Given rows spanning a saturated sublattice of Z^d, returns a unimodular
// matrix whose first k columns span that sublattice.
ZMat complete_to_unimodular(const ZMat& rows);

ZMat zmul(const ZMat& a, const ZMat& b);
std::vector<Z> zmul_vec(const ZMat& a, const std::vector<Z>& x);
Z zdet(const ZMat& a);
// Inverse of a unimodular integer matrix.
ZMat zinverse_unimodular(const ZMat& a);

}  // namespace chtouca
