#pragma once

#include "chtouca/rational.hpp"

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace chtouca {

// P(T) = prod_{i=1}^r (1 - z_i T) by its coefficients, ascending in T; r = coeffs.size() - 1.
struct SatakeParams {
    std::vector<Q> coeffs{Q(1)};

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool operator==(const SatakeParams& o) const { return coeffs == o.coeffs; }
    static SatakeParams from_roots(const std::vector<Q>& roots);
};

// throws InvalidData unless the constant coefficient is 1
void validate(const SatakeParams& p);

struct PlaceData {
    int deg = 1;
    SatakeParams params;
};

struct PowerSeries {
    std::vector<Q> c;  // c_0, ..., c_D
    bool operator==(const PowerSeries& o) const { return c == o.c; }
};

PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b);
PowerSeries local_factor(const PlaceData& pd, int D);
PowerSeries partial_L(const std::vector<PlaceData>& places, int D, unsigned jobs = 1);

// prod (1 - alpha_i beta_j T), by resultants evaluated at T = 1, 2, ... and interpolation
SatakeParams star_convolve(const SatakeParams& a, const SatakeParams& b);

// z_1^nu + ... + z_r^nu; throws NonInvertibleRoots for nu < 0 with a zero root
Q power_sum(const SatakeParams& p, long nu);

struct PlacePairStats {
    long delta = 0, mu = 0;
};
PlacePairStats place_pair_stats(long deg_inf, long deg_o);

// q^{(r-1) deg_xi n} tracePi S_inf^{(-deg_xi n / deg_inf)} S_o^{(deg_xi n / deg_o)};
// throws NonIntegralExponent
Q spectral_term(const Q& trace_pi, int r, long deg_xi, long n, const SatakeParams& inf, long deg_inf,
                const SatakeParams& o, long deg_o, long q);

// Roots z_i (with multiplicity) in long double; throws RootFindingFailed.
std::vector<std::complex<long double>> float_roots(const SatakeParams& p);

enum class BoundMode { JS, RP };
bool check_bounds(const PlaceData& pd, long q, BoundMode mode, long double tol);

using PlacePairKey = std::pair<std::string, std::string>;
bool is_rank_splittable(const std::map<PlacePairKey, SatakeParams>& table,
                        const std::map<std::string, SatakeParams>& first,
                        const std::map<std::string, SatakeParams>& second);

}  // namespace chtouca
