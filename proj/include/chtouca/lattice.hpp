#pragma once

#include "chtouca/rational.hpp"

#include <map>
#include <vector>

namespace chtouca {

using Point = std::vector<int>;

// (i_0, ..., i_n) with sum r, ordered (r,0,..,0), (r-1,1,0,..), ... i.e.
// descending lexicographic order of the coordinate vector.
std::vector<Point> enumerate_lattice_points(int r, int n);

// S^{r,n} with an index over its points.
class Simplex {
public:
    Simplex(int r, int n);

    int r() const { return r_; }
    int n() const { return n_; }
    std::size_t size() const { return points_.size(); }
    const std::vector<Point>& points() const { return points_; }
    const Point& point(std::size_t i) const { return points_[i]; }
    // throws std::out_of_range for points not in S^{r,n}
    std::size_t index(const Point& p) const;
    bool contains(const Point& p) const { return index_.count(p) != 0; }
    // index of the vertex r*e_k
    std::size_t vertex(int k) const;
    // indices of the corner basis {r e_0} u {(r-1) e_0 + e_j}
    const std::vector<std::size_t>& corner_basis() const { return corner_; }
    // indices of the remaining points, in point order: coordinates of the quotient lattice
    const std::vector<std::size_t>& quotient_coords() const { return free_; }

private:
    int r_, n_;
    std::vector<Point> points_;
    std::map<Point, std::size_t> index_;
    std::vector<std::size_t> corner_, free_;
};

struct LatticeFunction {
    int r = 1, n = 0;
    std::vector<Q> values;  // indexed like enumerate_lattice_points(r, n)
};

struct QuotientClass {
    LatticeFunction normal_form;  // vanishes at the vertices r e_k
};

// Affine functions on the simplex are x -> sum_k c_k x_k.
Q affine_eval(const std::vector<Q>& c, const Point& x);

QuotientClass affine_normal_form(const LatticeFunction& f);
bool is_affine(const LatticeFunction& f);

// Representative vanishing on the corner basis, restricted to the quotient coordinates.
std::vector<Q> quotient_coordinates(const Simplex& s, const std::vector<Q>& h);
// Inverse of quotient_coordinates: the function vanishing on the corner basis.
std::vector<Q> lift_coordinates(const Simplex& s, const std::vector<Q>& y);

}  // namespace chtouca
