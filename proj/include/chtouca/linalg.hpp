#pragma once

#include "chtouca/field.hpp"
#include "chtouca/matrix.hpp"

#include <optional>
#include <vector>

namespace chtouca {

struct Rref {
    QMat m;                         // reduced row echelon form, zero rows kept at the bottom
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

Rref rref(const Field& f, QMat m);
std::size_t rank(const Field& f, const QMat& m);

// Rows of the result form a basis of {x : m x = 0}.
QMat nullspace(const Field& f, const QMat& m);
// Canonical basis (nonzero RREF rows) of the row space.
QMat row_space(const Field& f, const QMat& m);
// Canonical basis of the intersection of two row spaces.
QMat intersect_rows(const Field& f, const QMat& a, const QMat& b);

QMat mul(const Field& f, const QMat& a, const QMat& b);
std::vector<Q> mul_vec(const Field& f, const QMat& a, const std::vector<Q>& x);
QMat identity(const Field& f, std::size_t n);
QMat scale(const Field& f, const QMat& a, const Q& c);
QMat inverse(const Field& f, const QMat& m);  // throws Singular
Q det(const Field& f, const QMat& m);
std::optional<std::vector<Q>> solve(const Field& f, const QMat& a, const std::vector<Q>& b);

// Canonical complement of span(b) inside span(a): the vectors of span(a) that
// vanish on the pivot columns of rref(b); returned as RREF rows. Requires
// span(b) to lie in span(a).
QMat quotient_basis(const Field& f, const QMat& a, const QMat& b);
// Coordinates of x (assumed in the row span) in the basis given by rows.
std::vector<Q> coordinates(const Field& f, const QMat& basis, const std::vector<Q>& x);

}  // namespace chtouca
