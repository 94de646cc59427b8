#pragma once

#include "chtouca/cone.hpp"
#include "chtouca/lattice.hpp"

#include <vector>

namespace chtouca {

// Subsets J of {0..n} are bitmasks.
using Subset = unsigned;

Q subset_sum(const std::vector<Q>& x, Subset j);
int subset_sum(const Point& x, Subset j);

// Integer pave: the lattice points of {x in S : x(J) >= d(J) for all J}.
struct Pave {
    std::vector<std::size_t> points;  // sorted indices into the simplex point list
    std::vector<int> d;               // d[J] for every mask J

    bool operator==(const Pave& o) const { return points == o.points; }
    bool operator<(const Pave& o) const;
};

struct Paving {
    int r = 1, n = 0;
    std::vector<Pave> paves;  // sorted

    void canonicalize();
    bool operator==(const Paving& o) const { return r == o.r && n == o.n && paves == o.paves; }
    bool operator<(const Paving& o) const;
};

Pave pave_from_points(const Simplex& s, std::vector<std::size_t> points);
Pave pave_from_points(const Simplex& s, const std::vector<Point>& points);

// n! times the Euclidean volume in the coordinates x_1..x_n; the whole simplex has r^n.
Q normalized_volume(const Simplex& s, const Pave& p);
std::size_t affine_dimension(const Simplex& s, const std::vector<std::size_t>& pts);
// Number of edges of a pave of S^{r,2}.
std::size_t edge_count(const Simplex& s, const Pave& p);

// Volumes sum to r^n and interiors are pairwise disjoint; throws NotAPaving otherwise.
void validate_paving(const Simplex& s, const Paving& p);
bool interiors_disjoint(const Simplex& s, const Pave& a, const Pave& b);

Paving trivial_paving(const Simplex& s);
Paving regular_subdivision(const Simplex& s, const std::vector<Q>& heights);

// Linear conditions on quotient coordinates describing the closed secondary cone.
struct SecondarySystem {
    std::vector<IVec> equations, inequalities;
};
SecondarySystem secondary_system(const Simplex& s, const Paving& p);

struct Admissibility {
    bool admissible = false;
    Q delta;
    std::vector<Q> witness;  // heights on the simplex, vanishing on the corner basis
};
Admissibility is_admissible(const Simplex& s, const Paving& p);
Cone sigma_cone(const Simplex& s, const Paving& p);
bool refines(const Paving& p, const Paving& q);

struct EnumerationOptions {
    std::size_t cap = 12;
    unsigned jobs = 1;
};
std::vector<Paving> enumerate_admissible_pavings(int r, int n, const EnumerationOptions& opt = {});

// Points of open chambers of the arrangement {x(J) in Z}; one per chamber.
std::vector<std::vector<Q>> chamber_witnesses(const Simplex& s);

Admissibility q_admissibility(const Simplex& s, const Paving& p, long q);
bool is_q_admissible(const Simplex& s, const Paving& p, long q);

}  // namespace chtouca
