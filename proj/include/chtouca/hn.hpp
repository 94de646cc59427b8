#pragma once

#include "chtouca/complete_homs.hpp"
#include "chtouca/rational.hpp"

#include <random>
#include <string>
#include <utility>
#include <vector>

namespace chtouca {

struct SubobjectRecord {
    std::string id;
    int rank = 0;
    Z deg0, deg1;
};

// Finite poset of sub-objects; relations lists declared containments (a, b)
// meaning records[a] <= records[b], closed reflexively and transitively.
struct SubobjectLattice {
    int r = 0;
    std::vector<SubobjectRecord> records;
    std::vector<std::pair<std::size_t, std::size_t>> relations;
};

// Containment matrix after closure; throws InvalidData when the poset axioms fail
// or the zero and total objects are missing.
struct LatticeOrder {
    std::vector<std::vector<bool>> leq;
    std::size_t zero = 0, top = 0;
};
LatticeOrder lattice_order(const SubobjectLattice& lat);

struct Polygon {
    int r = 0;
    std::vector<Q> values;  // p(0), ..., p(r)

    bool operator==(const Polygon& o) const { return r == o.r && values == o.values; }
};

Q deg_alpha(const SubobjectRecord& rec, const Q& alpha);

// chain: record indices 0 = F_0 < ... < F_s = top; throws NotAChain
Polygon polygon_of_filtration(const SubobjectLattice& lat, const std::vector<std::size_t>& chain, const Q& alpha);

constexpr std::size_t kChainCap = 1000000;

// every chain from the zero object to the top, in lexicographic order of indices
std::vector<std::vector<std::size_t>> all_chains(const SubobjectLattice& lat);

struct HnResult {
    Polygon polygon;
    std::vector<std::size_t> chain;
};
// throws NoDominantChain, TooLarge
HnResult hn_polygon(const SubobjectLattice& lat, const Q& alpha);

bool polygon_leq(const Polygon& p, const Polygon& q);
bool is_mu_convex(const Polygon& p, const Q& mu);

struct SplitResult {
    std::vector<Z> d_parts;
    std::vector<Polygon> p_parts;
};

// floor(p(rho) + rho d / r)
std::vector<Z> shifted_floor(const Polygon& p, const Z& d);
// throws NotConvexEnough unless p is 2-convex
SplitResult split_truncation(const Polygon& p, const Z& d, const Composition& R);

// Boolean lattice on at most three atoms with additive ranks (total r <= 5) and
// supermodular degrees sum a_i + sum_{i<j} b_ij, b_ij >= 0.
SubobjectLattice random_supermodular_lattice(std::mt19937_64& rng);

}  // namespace chtouca
