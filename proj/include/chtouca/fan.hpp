#pragma once

#include "chtouca/cone.hpp"
#include "chtouca/pavings.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chtouca {

// Cones in a common lattice Z^rank; pavings[i], when present, is the paving
// whose secondary cone is cones[i].
struct Fan {
    std::size_t rank = 0;
    std::vector<Cone> cones;
    std::vector<Paving> pavings;

    // sorts cones (and their tags) and drops duplicates
    void canonicalize();
};

struct FanReport {
    bool pass = true;
    std::string failure;
    std::optional<std::pair<std::size_t, std::size_t>> pair;
};

FanReport verify_fan(const Fan& f, unsigned jobs = 1);

// Secondary fan of S^{r,n} in the coordinates of Simplex::quotient_coords().
Fan paving_fan(int r, int n, const EnumerationOptions& opt = {});

constexpr std::size_t kMonoidRankCap = 4;

// Generating set of Z^dim ∩ dual(c); a Hilbert basis when the dual is pointed.
std::vector<IVec> monoid_generators(const Cone& c);

// c as a full-dimensional cone in a lattice basis of span(c) ∩ Z^dim.
Cone restrict_to_span(const Cone& c);

struct TorusReport {
    bool exact = false;
    std::size_t points = 0;
    std::size_t torus_dim = 0;
    std::string detail;
};

// 1 -> G_m -> G_m^{n+1} x G_m -> G_m^{S^{r,n}} -> T^{r,n} -> 1 on cocharacter lattices.
TorusReport torus_sequence_check(int r, int n);

struct TauReport {
    bool exact = false;
    bool embeds = false;
    std::size_t points = 0;
    std::size_t torus_dim = 0;
    std::string detail;
};

// 1 -> G_m -> G_m^{S^{r,tau}} -> T^{r,tau} -> 1 with u -> (u^{i_0 + q i_1}), and the
// map T^{r,tau} -> T^{r,2} given by t_{(0,a,b)} = t_{(a,0,b)}^q, t_{(0,0,r)} = 1.
TauReport tau_sequence_check(int r, long q);

}  // namespace chtouca
