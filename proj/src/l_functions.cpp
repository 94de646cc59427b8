#include "chtouca/l_functions.hpp"

#include "chtouca/error.hpp"
#include "chtouca/field.hpp"
#include "chtouca/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace chtouca {

namespace {

using Poly = std::vector<Q>;  // ascending powers
using CLD = std::complex<long double>;

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly derivative(const Poly& p) {
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    trim(d);
    return d;
}

Poly sub(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Q(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    trim(a);
    Poly q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Q(0));
    while (a.size() >= b.size() && !a.empty()) {
        std::size_t shift = a.size() - b.size();
        Q c = a.back() / b.back();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        trim(a);
    }
    trim(q);
    return {q, a};
}

Poly monic(Poly p) {
    trim(p);
    if (p.empty()) return p;
    Q lc = p.back();
    for (auto& x : p) x /= lc;
    return p;
}

Poly gcd(Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

// square-free factors f_1, f_2, ... with f = prod f_i^i (Yun)
std::vector<Poly> squarefree_parts(const Poly& f0) {
    Poly f = monic(f0);
    std::vector<Poly> out;
    if (f.size() <= 1) return out;
    Poly fp = derivative(f);
    Poly a = gcd(f, fp);
    Poly b = divmod(f, a).first, c = divmod(fp, a).first;
    Poly d = sub(c, derivative(b));
    while (b.size() > 1) {
        Poly g = gcd(b, d);
        out.push_back(g);
        Poly nb = divmod(b, g).first;
        Poly nc = divmod(d, g).first;
        b = nb;
        d = sub(nc, derivative(b));
    }
    return out;
}

CLD eval(const std::vector<CLD>& p, CLD z) {
    CLD v = 0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * z + p[i];
    return v;
}

// roots of a square-free polynomial (ascending coefficients) by Aberth iteration
std::vector<CLD> aberth(const Poly& p) {
    std::size_t n = p.size() - 1;
    std::vector<CLD> c, dc;
    for (const auto& x : p) c.emplace_back(static_cast<long double>(x.get_d()), 0.0L);
    for (std::size_t i = 1; i < c.size(); ++i) dc.push_back(c[i] * static_cast<long double>(i));
    if (n == 1) return {-c[0] / c[1]};
    long double bound = 0;
    for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, std::abs(c[i] / c[n]));
    bound += 1;
    std::vector<CLD> z(n);
    for (std::size_t k = 0; k < n; ++k)
        z[k] = std::polar(bound * 0.5L, 0.4L + 2.0L * 3.14159265358979323846L * static_cast<long double>(k) / static_cast<long double>(n));
    for (int it = 0; it < 2000; ++it) {
        long double moved = 0;
        for (std::size_t k = 0; k < n; ++k) {
            CLD f = eval(c, z[k]), fd = eval(dc, z[k]);
            if (f == CLD(0)) continue;
            CLD ratio = f / fd, s = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) s += 1.0L / (z[k] - z[j]);
            CLD w = ratio / (1.0L - ratio * s);
            z[k] -= w;
            moved = std::max(moved, std::abs(w) / std::max(1.0L, std::abs(z[k])));
        }
        if (moved < 1e-18L) return z;
    }
    throw RootFindingFailed("root iteration did not converge");
}

Q qpow(const Q& x, long e) { return pow_q(x, e); }

}  // namespace

SatakeParams SatakeParams::from_roots(const std::vector<Q>& roots) {
    SatakeParams p;
    for (const auto& z : roots) {
        std::vector<Q> next(p.coeffs.size() + 1, Q(0));
        for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
            next[i] += p.coeffs[i];
            next[i + 1] -= z * p.coeffs[i];
        }
        p.coeffs = next;
    }
    return p;
}

void validate(const SatakeParams& p) {
    if (p.coeffs.empty() || p.coeffs[0] != 1) throw InvalidData("Satake polynomial must have constant term 1");
}

PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b) {
    std::size_t n = std::min(a.c.size(), b.c.size());
    PowerSeries out;
    out.c.assign(n, Q(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; i + j < n; ++j)
            if (a.c[i] != 0 && b.c[j] != 0) out.c[i + j] += a.c[i] * b.c[j];
    return out;
}

PowerSeries local_factor(const PlaceData& pd, int D) {
    validate(pd.params);
    if (D < 0) throw InvalidData("series order must be nonnegative");
    if (pd.deg < 1) throw InvalidData("place degree must be positive");
    PowerSeries s;
    s.c.assign(static_cast<std::size_t>(D) + 1, Q(0));
    s.c[0] = 1;
    const auto& p = pd.params.coeffs;
    for (int k = 1; k <= D; ++k) {
        Q v = 0;
        for (std::size_t j = 1; j < p.size(); ++j) {
            long idx = k - static_cast<long>(j) * pd.deg;
            if (idx < 0) break;
            v -= p[j] * s.c[static_cast<std::size_t>(idx)];
        }
        s.c[static_cast<std::size_t>(k)] = v;
    }
    return s;
}

PowerSeries partial_L(const std::vector<PlaceData>& places, int D, unsigned jobs) {
    if (D < 0) throw InvalidData("series order must be nonnegative");
    std::vector<PowerSeries> local(places.size());
    jobs = std::max(1u, jobs);
    if (jobs == 1 || places.size() <= 1) {
        for (std::size_t i = 0; i < places.size(); ++i) local[i] = local_factor(places[i], D);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errs(jobs);
        for (unsigned t = 0; t < jobs; ++t)
            pool.emplace_back([&, t] {
                try {
                    for (std::size_t i = t; i < places.size(); i += jobs) local[i] = local_factor(places[i], D);
                } catch (...) {
                    errs[t] = std::current_exception();
                }
            });
        for (auto& th : pool) th.join();
        for (auto& e : errs)
            if (e) std::rethrow_exception(e);
    }
    PowerSeries out;
    out.c.assign(static_cast<std::size_t>(D) + 1, Q(0));
    out.c[0] = 1;
    for (const auto& l : local) out = series_mul(out, l);
    return out;
}

SatakeParams star_convolve(const SatakeParams& a, const SatakeParams& b) {
    validate(a);
    validate(b);
    int m = a.degree(), n = b.degree();
    std::size_t deg = static_cast<std::size_t>(m * n);
    SatakeParams out;
    if (deg == 0) return out;
    const Field qf = Field::rational();
    // a*(z) = z^m a(1/z) is monic with roots alpha_i; Res_z(a*(z), b(t z)) = prod_i b(t alpha_i)
    std::vector<Q> xs, ys;
    for (std::size_t k = 1; k <= deg + 1; ++k) {
        Q t = static_cast<long>(k);
        std::size_t sz = static_cast<std::size_t>(m + n);
        QMat syl(sz, sz);
        // rows of a*: descending coefficients 1, a_1, ..., a_m
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= m; ++j) syl(i, i + j) = a.coeffs[j];
        // rows of b(t z): descending coefficients b_n t^n, ..., b_0
        for (int i = 0; i < m; ++i)
            for (int j = 0; j <= n; ++j) syl(n + i, i + j) = b.coeffs[n - j] * qpow(t, n - j);
        xs.push_back(t);
        ys.push_back(det(qf, syl));
    }
    // interpolate prod_i b(alpha_i T) through the samples
    QMat vand(deg + 1, deg + 1);
    for (std::size_t i = 0; i <= deg; ++i)
        for (std::size_t j = 0; j <= deg; ++j) vand(i, j) = qpow(xs[i], static_cast<long>(j));
    auto c = solve(qf, vand, ys);
    if (!c) throw std::logic_error("interpolation failed");
    Q c0 = (*c)[0];
    for (auto& x : *c) x /= c0;
    out.coeffs = *c;
    return out;
}

Q power_sum(const SatakeParams& p0, long nu) {
    validate(p0);
    if (nu == 0) return Q(p0.degree());
    Poly p = p0.coeffs;
    if (nu < 0) {
        if (p.back() == 0) throw NonInvertibleRoots("a Satake parameter vanishes");
        std::reverse(p.begin(), p.end());
        Q lead = p[0];
        for (auto& x : p) x /= lead;
        nu = -nu;
    }
    // -T P'(T) / P(T) = sum_k p_k T^k
    std::vector<Q> ps(static_cast<std::size_t>(nu) + 1, Q(0));
    for (long k = 1; k <= nu; ++k) {
        Q v = k < static_cast<long>(p.size()) ? Q(-p[static_cast<std::size_t>(k)] * k) : Q(0);
        for (long i = 1; i < k && i < static_cast<long>(p.size()); ++i) v -= p[static_cast<std::size_t>(i)] * ps[static_cast<std::size_t>(k - i)];
        ps[static_cast<std::size_t>(k)] = v;
    }
    return ps[static_cast<std::size_t>(nu)];
}

PlacePairStats place_pair_stats(long deg_inf, long deg_o) {
    if (deg_inf < 1 || deg_o < 1) throw InvalidData("degrees must be positive");
    long g = std::gcd(deg_inf, deg_o);
    return {g, deg_inf / g * deg_o};
}

Q spectral_term(const Q& trace_pi, int r, long deg_xi, long n, const SatakeParams& inf, long deg_inf,
                const SatakeParams& o, long deg_o, long q) {
    if (deg_xi < 1 || n < 1 || deg_inf < 1 || deg_o < 1 || q < 2 || r < 1) throw InvalidData("degrees, n and r must be positive and q >= 2");
    long e = deg_xi * n;
    if (e % deg_inf != 0 || e % deg_o != 0) throw NonIntegralExponent("power-sum exponent is not an integer");
    Q scale = pow_q(Q(q), static_cast<long>(r - 1) * e);
    return scale * trace_pi * power_sum(inf, -(e / deg_inf)) * power_sum(o, e / deg_o);
}

std::vector<std::complex<long double>> float_roots(const SatakeParams& p) {
    validate(p);
    // z^r P(1/z) has roots z_i
    Poly rev(p.coeffs.rbegin(), p.coeffs.rend());
    std::vector<CLD> roots;
    std::size_t zeros = 0;
    while (!rev.empty() && rev.front() == 0 && rev.size() > 1) {
        rev.erase(rev.begin());
        ++zeros;
    }
    roots.assign(zeros, CLD(0));
    auto parts = squarefree_parts(rev);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].size() <= 1) continue;
        auto zs = aberth(parts[i]);
        for (std::size_t m = 0; m <= i; ++m) roots.insert(roots.end(), zs.begin(), zs.end());
    }
    if (roots.size() != static_cast<std::size_t>(p.degree())) throw RootFindingFailed("root count mismatch");
    std::sort(roots.begin(), roots.end(), [](const CLD& x, const CLD& y) {
        return std::make_pair(x.real(), x.imag()) < std::make_pair(y.real(), y.imag());
    });
    return roots;
}

bool check_bounds(const PlaceData& pd, long q, BoundMode mode, long double tol) {
    if (!(tol > 0)) throw InvalidData("tolerance must be positive");
    if (q < 2 || pd.deg < 1) throw InvalidData("q must be at least 2 and the degree positive");
    auto roots = float_roots(pd.params);
    long double lo = std::pow(static_cast<long double>(q), -0.5L), hi = std::pow(static_cast<long double>(q), 0.5L);
    for (const auto& z : roots) {
        long double a = std::abs(z);
        if (mode == BoundMode::RP) {
            if (std::fabs(a - 1.0L) > tol) return false;
        } else {
            long double s = std::pow(a, 1.0L / static_cast<long double>(pd.deg));
            if (!(s > lo + tol && s < hi - tol)) return false;
        }
    }
    return true;
}

bool is_rank_splittable(const std::map<PlacePairKey, SatakeParams>& table,
                        const std::map<std::string, SatakeParams>& first,
                        const std::map<std::string, SatakeParams>& second) {
    for (const auto& [key, poly] : table) {
        auto a = first.find(key.first);
        auto b = second.find(key.second);
        if (a == first.end() || b == second.end()) return false;
        if (!(star_convolve(a->second, b->second) == poly)) return false;
    }
    return true;
}

}  // namespace chtouca
