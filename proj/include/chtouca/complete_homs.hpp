#pragma once

#include "chtouca/field.hpp"
#include "chtouca/matrix.hpp"

#include <random>
#include <vector>

namespace chtouca {

// Strictly increasing subset {r_1, ..., r_{s-1}} of {1, ..., r-1}.
using Composition = std::vector<int>;

// parts r_1 - r_0, ..., r_s - r_{s-1}
std::vector<int> composition_parts(const Composition& R, int r);
Composition composition_from_parts(const std::vector<int>& parts);

// rho-subsets of {0, ..., r-1} in lexicographic order
std::vector<std::vector<int>> subsets(int r, int rho);

QMat exterior_power(const Field& f, const QMat& a, int rho);

struct CompleteHom {
    Field field = Field::rational();
    int r = 0;
    std::vector<QMat> u;       // u[rho-1] acts on the rho-th exterior power
    std::vector<Q> lambda;     // lambda[rho-1], rho = 1..r-1

    bool operator==(const CompleteHom& o) const {
        return field == o.field && r == o.r && u == o.u && lambda == o.lambda;
    }
};

// Sizes, nonvanishing of every u_rho and the relations
// wedge^rho u_1 = lambda_1^{rho-1} ... lambda_{rho-1} u_rho.
bool satisfies_relations(const CompleteHom& h);

CompleteHom complete_from_open(const Field& f, const QMat& u1, const std::vector<Q>& lambda);
Composition stratum_of(const CompleteHom& h);

// Subspaces are stored as canonical (RREF) row bases. V[sigma] has codimension
// r_sigma (V[0] = V, V[s] = 0), W[sigma] has dimension r_sigma. v[sigma-1] is the
// matrix of v_sigma from the canonical complement of V[sigma] in V[sigma-1] to the
// canonical complement of W[sigma-1] in W[sigma]. lambda has zeros exactly on R.
struct StratumData {
    Field field = Field::rational();
    int r = 0;
    Composition R;
    std::vector<QMat> V, W, v;
    std::vector<Q> lambda;

    bool operator==(const StratumData& o) const {
        return field == o.field && r == o.r && R == o.R && V == o.V && W == o.W && v == o.v && lambda == o.lambda;
    }
};

// Checks the data and replaces every subspace by its canonical basis; throws InvalidData.
StratumData normalize(const StratumData& d);
CompleteHom build_stratum_point(const StratumData& d);
// throws NotOnStratum
StratumData stratum_data(const CompleteHom& h);

// u_rho -> prod_{k<rho} mu_k^{-(rho-k)} u_rho, lambda_k -> mu_k lambda_k
CompleteHom torus_action(const CompleteHom& h, const std::vector<Q>& mu);

// tau(g)^{-1} g with tau the entrywise q-th power; the field must contain F_q.
QMat lang_isogeny(const Field& f, const QMat& g, long q);

StratumData random_stratum_data(const Field& f, int r, const Composition& R, std::mt19937_64& rng);

}  // namespace chtouca
