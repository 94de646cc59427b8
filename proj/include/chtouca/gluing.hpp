#pragma once

#include "chtouca/complete_homs.hpp"
#include "chtouca/field.hpp"
#include "chtouca/pavings.hpp"

#include <string>
#include <vector>

namespace chtouca {

// W[i] is an r x r(n+1) row basis of the subspace attached to paving.paves[i];
// block j of the columns is the j-th copy of V.
struct GluedGraphFamily {
    Field field = Field::rational();
    int r = 0, n = 0;
    Paving paving;
    std::vector<QMat> W;
};

// Checks shapes and ranks and puts every W in reduced row echelon form; throws InvalidData.
GluedGraphFamily normalize(const GluedGraphFamily& fam);

// Two paves sharing the wall x(J) = d, where d is the minimum of x(J) on upper
// and the maximum on lower; J never contains 0.
struct Wall {
    std::size_t upper = 0, lower = 0;
    Subset J = 0;
    int d = 0;
};
std::vector<Wall> shared_walls(const Simplex& s, const Paving& p);

struct Violation {
    std::size_t pave = 0, other = 0;
    Subset J = 0;
    std::string what;
};

struct GluingReport {
    bool pass = true;
    std::vector<Violation> violations;
};

GluingReport check_dimension_condition(const GluedGraphFamily& fam);
GluingReport check_gluing_condition(const GluedGraphFamily& fam);

// W ∩ V^J written in the coordinates of V^J, and the projection of W to V^J
QMat restrict_to(const Field& f, const QMat& w, int r, int n, Subset J);
QMat project_to(const Field& f, const QMat& w, int r, int n, Subset J);

// n = 1: the family on the interval paving with breaks R attached to stratum data,
// W_{P_sigma} = {(x, y) : x in V^{sigma-1}, y in W_sigma, y = v_sigma(x) mod W_{sigma-1}}.
GluedGraphFamily family_from_stratum(const StratumData& d);

}  // namespace chtouca
