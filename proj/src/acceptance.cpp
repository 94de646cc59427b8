#include "chtouca/acceptance.hpp"

#include "chtouca/cli.hpp"
#include "chtouca/complete_homs.hpp"
#include "chtouca/error.hpp"
#include "chtouca/fan.hpp"
#include "chtouca/gluing.hpp"
#include "chtouca/io.hpp"
#include "chtouca/l_functions.hpp"
#include "chtouca/linalg.hpp"
#include "chtouca/pavings.hpp"
#include "chtouca/smith.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

namespace chtouca {

namespace {

// Collects the first few failure messages of a criterion.
struct Tally {
    std::size_t checks = 0, failures = 0;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what) {
        ++checks;
        if (ok) return;
        ++failures;
        if (notes.size() < 3) notes.push_back(what);
    }
    bool ok() const { return failures == 0; }
    std::string summary() const {
        std::ostringstream s;
        if (ok()) {
            s << checks << " checks";
        } else {
            s << failures << "/" << checks << " checks failed";
            for (const auto& n : notes) s << "; " << n;
        }
        return s.str();
    }
};

using Config = std::pair<int, int>;
const std::vector<Config> kFanConfigs{{2, 1}, {3, 1}, {4, 1}, {2, 2}};

std::string cfg(int r, int n) { return "(" + std::to_string(r) + "," + std::to_string(n) + ")"; }

EnumerationOptions enum_opts(const AcceptanceOptions& opt) {
    EnumerationOptions e;
    e.cap = opt.cap;
    e.jobs = opt.jobs;
    return e;
}

std::vector<Composition> all_compositions(int r) {
    std::vector<Composition> out;
    for (unsigned mask = 0; mask < (1u << (r - 1)); ++mask) {
        Composition R;
        for (int k = 1; k < r; ++k)
            if (mask >> (k - 1) & 1) R.push_back(k);
        out.push_back(R);
    }
    return out;
}

Composition random_composition(int r, std::mt19937_64& rng) {
    Composition R;
    for (int k = 1; k < r; ++k)
        if (rng() % 2) R.push_back(k);
    return R;
}

QMat random_matrix(const Field& f, std::size_t n, std::mt19937_64& rng) {
    QMat m(n, n);
    for (auto& x : m.a) x = f.random(rng);
    return m;
}

// criterion 1
void lattice_counts(Tally& t) {
    for (int r = 1; r <= 6; ++r)
        for (int n = 0; n <= 4; ++n) {
            auto pts = enumerate_lattice_points(r, n);
            t.check(Z(static_cast<unsigned long>(pts.size())) == binomial(r + n, n), "count " + cfg(r, n));
            std::set<Point> seen(pts.begin(), pts.end());
            t.check(seen.size() == pts.size(), "duplicates " + cfg(r, n));
            for (const auto& p : pts) {
                int sum = 0;
                bool nonneg = true;
                for (int x : p) {
                    sum += x;
                    nonneg = nonneg && x >= 0;
                }
                t.check(nonneg && sum == r && static_cast<int>(p.size()) == n + 1, "point outside " + cfg(r, n));
            }
            t.check(std::is_sorted(pts.rbegin(), pts.rend()), "order " + cfg(r, n));
        }
}

// breakpoints of an interval paving, as a composition of r
Composition breaks_of(const Simplex& s, const Paving& p) {
    Composition R;
    for (const auto& v : p.paves) {
        int lo = s.r();
        for (auto i : v.points) lo = std::min(lo, s.point(i)[1]);
        if (lo > 0) R.push_back(lo);
    }
    std::sort(R.begin(), R.end());
    return R;
}

Fan orthant_faces(std::size_t d) {
    Fan f;
    f.rank = d;
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
        std::vector<IVec> rays;
        for (std::size_t i = 0; i < d; ++i)
            if (mask >> i & 1) {
                IVec e(d, Z(0));
                e[i] = 1;
                rays.push_back(e);
            }
        f.cones.push_back(Cone::from_generators(d, rays));
    }
    f.canonicalize();
    return f;
}

// criterion 2
void interval_pavings(const AcceptanceOptions& opt, Tally& t) {
    for (int r = 2; r <= 4; ++r) {
        Simplex s(r, 1);
        auto all = enumerate_admissible_pavings(r, 1, enum_opts(opt));
        t.check(all.size() == (std::size_t(1) << (r - 1)), "count for r = " + std::to_string(r));
        std::set<Composition> comps;
        for (const auto& p : all) {
            t.check(is_admissible(s, p).admissible, "inadmissible interval paving");
            comps.insert(breaks_of(s, p));
        }
        auto expect = all_compositions(r);
        t.check(comps == std::set<Composition>(expect.begin(), expect.end()), "compositions for r = " + std::to_string(r));

        // second differences h(k-1) - 2h(k) + h(k+1) map the fan onto the orthant fan
        Fan f = paving_fan(r, 1, enum_opts(opt));
        std::size_t d = static_cast<std::size_t>(r - 1);
        ZMat m(d, d);
        bool integral = true;
        for (std::size_t c = 0; c < d; ++c) {
            std::vector<Q> y(d, Q(0));
            y[c] = 1;
            auto h = lift_coordinates(s, y);
            for (int k = 1; k < r; ++k) {
                Q v = h[s.index({r - k + 1, k - 1})] - 2 * h[s.index({r - k, k})] + h[s.index({r - k - 1, k + 1})];
                integral = integral && v.get_den() == 1;
                m(static_cast<std::size_t>(k - 1), c) = v.get_num();
            }
        }
        t.check(integral && abs(zdet(m)) == 1, "second-difference map is not unimodular");
        Fan image;
        image.rank = d;
        for (const auto& c : f.cones) {
            std::vector<IVec> rays, lin;
            for (const auto& ray : c.rays) rays.push_back(zmul_vec(m, ray));
            for (const auto& v : c.lineality) lin.push_back(zmul_vec(m, v));
            image.cones.push_back(Cone::from_generators(d, rays, lin));
        }
        image.canonicalize();
        t.check(image.cones == orthant_faces(d).cones, "image is not the orthant fan for r = " + std::to_string(r));
    }
}

// criterion 3
void fan_axioms(const AcceptanceOptions& opt, Tally& t) {
    for (auto [r, n] : kFanConfigs) {
        Fan f = paving_fan(r, n, enum_opts(opt));
        FanReport rep = verify_fan(f, opt.jobs);
        t.check(rep.pass, "verify_fan " + cfg(r, n) + ": " + rep.failure);
        t.check(f.pavings.size() == f.cones.size(), "untagged cones " + cfg(r, n));
        for (std::size_t i = 0; i < f.cones.size(); ++i)
            for (std::size_t j = 0; j < f.cones.size(); ++j)
                t.check(is_face(f.cones[i], f.cones[j]) == refines(f.pavings[j], f.pavings[i]), "face/coarsening " + cfg(r, n));
    }
}

// criterion 4
void regular_subdivisions(const AcceptanceOptions& opt, Tally& t) {
    std::mt19937_64 rng(opt.seed + 4);
    std::uniform_int_distribution<int> num(-20, 20), den(1, 7);
    for (auto [r, n] : kFanConfigs) {
        Simplex s(r, n);
        auto all = enumerate_admissible_pavings(r, n, enum_opts(opt));
        int valid = 0, tries = 0;
        while (valid < 500 && tries < 50000) {
            ++tries;
            std::vector<Q> h;
            for (std::size_t i = 0; i < s.size(); ++i) h.push_back(make_q(num(rng), den(rng)));
            Paving p;
            try {
                p = regular_subdivision(s, h);
            } catch (const NotAPaving&) {
                continue;
            }
            ++valid;
            t.check(is_admissible(s, p).admissible, "inadmissible subdivision " + cfg(r, n));
            t.check(std::binary_search(all.begin(), all.end(), p), "subdivision missing from enumeration " + cfg(r, n));
        }
        t.check(valid >= 500, "only " + std::to_string(valid) + " valid heights for " + cfg(r, n));
    }
}

// criterion 5
void hexagons(const AcceptanceOptions& opt, Tally& t) {
    for (int r = 1; r <= 3; ++r) {
        Simplex s(r, 2);
        for (const auto& p : enumerate_admissible_pavings(r, 2, enum_opts(opt)))
            for (const auto& v : p.paves) t.check(edge_count(s, v) <= 6, "pave with more than 6 edges for r = " + std::to_string(r));
    }
}

// criterion 6
void torus_dimensions(Tally& t) {
    for (auto [r, n] : kFanConfigs) {
        TorusReport rep = torus_sequence_check(r, n);
        std::size_t pts = Simplex(r, n).size();
        t.check(rep.exact, "torus sequence " + cfg(r, n) + ": " + rep.detail);
        t.check(rep.points == pts && rep.torus_dim == pts - static_cast<std::size_t>(n) - 1, "torus dimension " + cfg(r, n));
    }
    for (int r = 1; r <= 3; ++r)
        for (long q : {2L, 3L}) {
            TauReport rep = tau_sequence_check(r, q);
            t.check(rep.exact && rep.embeds, "tau sequence r = " + std::to_string(r) + ", q = " + std::to_string(q) + ": " + rep.detail);
        }
}

// criterion 7
void complete_hom_round_trip(const AcceptanceOptions& opt, Tally& t) {
    std::mt19937_64 rng(opt.seed + 7);
    for (const Field& f : {Field::rational(), Field::finite(5, 1)})
        for (int r = 2; r <= 4; ++r)
            for (int k = 0; k < 200; ++k) {
                Composition R = random_composition(r, rng);
                StratumData d = random_stratum_data(f, r, R, rng);
                CompleteHom h = build_stratum_point(d);
                t.check(satisfies_relations(h) && stratum_of(h) == R, "built point off its stratum");
                t.check(stratum_data(h) == d, "round trip r = " + std::to_string(r));
            }
    for (int k = 0; k < 100; ++k) {
        Field f = k % 2 ? Field::finite(5, 1) : Field::rational();
        std::size_t r = 2 + static_cast<std::size_t>(k % 3);
        QMat a = random_matrix(f, r, rng), b = random_matrix(f, r, rng);
        int rho = 1 + static_cast<int>(rng() % r);
        t.check(exterior_power(f, mul(f, a, b), rho) == mul(f, exterior_power(f, a, rho), exterior_power(f, b, rho)),
                "exterior power is not multiplicative");
    }
    for (int k = 0; k < 100; ++k) {
        Field f = k % 2 ? Field::finite(5, 1) : Field::rational();
        int r = 2 + k % 3;
        Composition R = random_composition(r, rng);
        CompleteHom x = build_stratum_point(random_stratum_data(f, r, R, rng));
        std::vector<Q> mu;
        for (int i = 1; i < r; ++i) mu.push_back(f.random_nonzero(rng));
        CompleteHom y = torus_action(x, mu);
        bool lam = true;
        for (int i = 0; i < r - 1; ++i) lam = lam && y.lambda[i] == f.mul(mu[i], x.lambda[i]);
        t.check(lam, "lambda does not scale by mu");
        t.check(satisfies_relations(y) && stratum_of(y) == R, "torus action leaves the stratum");
    }
}

// criterion 8
void lang_fixed_points(Tally& t) {
    struct Case {
        int r, p, k;
    };
    for (auto c : {Case{1, 2, 2}, Case{1, 3, 2}, Case{2, 2, 2}}) {
        Field f = Field::finite(c.p, c.k);
        auto els = f.elements();
        std::size_t n = static_cast<std::size_t>(c.r * c.r), total = 1;
        for (std::size_t i = 0; i < n; ++i) total *= els.size();
        std::size_t fixed = 0;
        bool agree = true;
        for (std::size_t code = 0; code < total; ++code) {
            QMat g(static_cast<std::size_t>(c.r), static_cast<std::size_t>(c.r));
            std::size_t x = code;
            bool rational = true;
            for (std::size_t i = 0; i < n; ++i) {
                g.a[i] = els[x % els.size()];
                x /= els.size();
                rational = rational && f.pow(g.a[i], c.p) == g.a[i];
            }
            if (f.is_zero(det(f, g))) continue;
            bool fix = lang_isogeny(f, g, c.p) == identity(f, static_cast<std::size_t>(c.r));
            agree = agree && fix == rational;
            fixed += fix;
        }
        // |GL_r(F_p)| = prod_{i<r} (p^r - p^i)
        std::size_t order = 1, pr = 1;
        for (int i = 0; i < c.r; ++i) pr *= static_cast<std::size_t>(c.p);
        for (std::size_t i = 0, pi = 1; i < static_cast<std::size_t>(c.r); ++i, pi *= static_cast<std::size_t>(c.p)) order *= pr - pi;
        std::string tag = "(" + std::to_string(c.r) + "," + std::to_string(c.p) + "," + std::to_string(c.k) + ")";
        t.check(agree, "fixed points differ from GL_r(F_q) for " + tag);
        t.check(fixed == order, "fixed-point count for " + tag);
    }
}

SubobjectRecord record(const std::string& id, int rank, long d0, long d1) {
    SubobjectRecord s;
    s.id = id;
    s.rank = rank;
    s.deg0 = d0;
    s.deg1 = d1;
    return s;
}

bool is_subsequence(const std::vector<std::size_t>& small, const std::vector<std::size_t>& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// criterion 9
void hn_domination(const AcceptanceOptions& opt, Tally& t) {
    std::mt19937_64 rng(opt.seed + 9);
    for (int k = 0; k < 200; ++k) {
        SubobjectLattice lat = random_supermodular_lattice(rng);
        t.check(lat.records.size() <= 8 && lat.r <= 5, "random lattice too large");
        Q alpha = make_q(k % 5, 4);
        HnResult res = hn_polygon(lat, alpha);
        auto chains = all_chains(lat);
        bool dominates = true, coarsest = true;
        for (const auto& c : chains) {
            Polygon p = polygon_of_filtration(lat, c, alpha);
            dominates = dominates && polygon_leq(p, res.polygon);
            if (p == res.polygon) coarsest = coarsest && is_subsequence(res.chain, c);
        }
        t.check(dominates, "a chain polygon exceeds the HN polygon");
        t.check(polygon_of_filtration(lat, res.chain, alpha) == res.polygon, "canonical chain does not achieve the polygon");
        t.check(coarsest, "canonical chain is not the unique coarsest achiever");
    }
    // two incomparable destabilizing lines of equal slope, and a crossing pair of ranks 1 and 2
    SubobjectLattice twin;
    twin.r = 2;
    twin.records = {record("0", 0, 0, 0), record("A", 1, 5, 5), record("B", 1, 5, 5), record("V", 2, 0, 0)};
    twin.relations = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
    SubobjectLattice cross;
    cross.r = 3;
    cross.records = {record("0", 0, 0, 0), record("A", 1, 2, 2), record("B", 2, 3, 3), record("V", 3, 0, 0)};
    cross.relations = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
    for (const auto* lat : {&twin, &cross}) {
        bool raised = false;
        try {
            hn_polygon(*lat, 0);
        } catch (const NoDominantChain&) {
            raised = true;
        }
        t.check(raised, "adversarial lattice did not raise NoDominantChain");
    }
}

// concave polygon with second differences >= mu plus random rational slack, vanishing at 0 and r
Polygon random_convex_polygon(int r, long mu, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> extra(0, 12), den(1, 4);
    std::vector<Q> slopes(static_cast<std::size_t>(r));
    Q s = 0;
    for (int x = r - 1; x >= 0; --x) {
        slopes[static_cast<std::size_t>(x)] = s;
        s += Q(mu) + make_q(extra(rng), den(rng));
    }
    Polygon p;
    p.r = r;
    p.values.push_back(0);
    for (int x = 0; x < r; ++x) p.values.push_back(p.values.back() + slopes[static_cast<std::size_t>(x)]);
    Q end = p.values.back();
    for (int x = 0; x <= r; ++x) p.values[static_cast<std::size_t>(x)] -= end * make_q(x, r);
    return p;
}

// criterion 10
void truncation_splitting(const AcceptanceOptions& opt, Tally& t) {
    std::mt19937_64 rng(opt.seed + 10);
    std::uniform_int_distribution<int> rd(1, 8), dd(-20, 20), mud(2, 6);
    for (int k = 0; k < 1000; ++k) {
        int r = rd(rng);
        Polygon p = random_convex_polygon(r, 2, rng);
        Composition R = random_composition(r, rng);
        Z d = dd(rng);
        SplitResult res = opt.split(p, d, R);
        Z sum = 0;
        for (const auto& x : res.d_parts) sum += x;
        t.check(res.d_parts.size() == R.size() + 1, "wrong number of parts");
        t.check(sum == d - static_cast<long>(R.size()), "sum of d_sigma is not d - s + 1");
    }
    for (int k = 0; k < 500; ++k) {
        int r = rd(rng);
        long mu = mud(rng);
        Polygon p = random_convex_polygon(r, mu, rng);
        if (!is_mu_convex(p, mu)) {
            t.check(false, "generator produced a polygon that is not mu-convex");
            continue;
        }
        SplitResult res = opt.split(p, Z(dd(rng)), random_composition(r, rng));
        for (const auto& part : res.p_parts) t.check(is_mu_convex(part, Q(mu - 2)), "part is not (mu-2)-convex");
    }
}

SatakeParams random_params(std::mt19937_64& rng, int deg) {
    std::uniform_int_distribution<int> u(-9, 9), den(1, 5);
    SatakeParams p;
    for (int i = 1; i <= deg; ++i) {
        Q c = make_q(u(rng), den(rng));
        if (i == deg && c == 0) c = 1;
        p.coeffs.push_back(c);
    }
    return p;
}

// criterion 11
void star_operation(const AcceptanceOptions& opt, Tally& t) {
    std::mt19937_64 rng(opt.seed + 11);
    std::uniform_int_distribution<int> dd(1, 3);
    for (int k = 0; k < 200; ++k) {
        SatakeParams a = random_params(rng, dd(rng)), b = random_params(rng, dd(rng));
        SatakeParams c = star_convolve(a, b);
        std::vector<std::complex<long double>> brute{1};
        for (const auto& x : float_roots(a))
            for (const auto& y : float_roots(b)) {
                std::vector<std::complex<long double>> next(brute.size() + 1, 0);
                for (std::size_t i = 0; i < brute.size(); ++i) {
                    next[i] += brute[i];
                    next[i + 1] -= x * y * brute[i];
                }
                brute = next;
            }
        bool close = brute.size() == c.coeffs.size();
        for (std::size_t i = 0; close && i < brute.size(); ++i) {
            long double e = static_cast<long double>(c.coeffs[i].get_d());
            close = std::fabs(brute[i].real() - e) <= 1e-9L * std::max(1.0L, std::fabs(e)) &&
                    std::fabs(brute[i].imag()) <= 1e-9L * std::max(1.0L, std::abs(brute[i]));
        }
        t.check(close, "resultant and float-root products differ");
        for (long nu : {-3L, -2L, -1L, 1L, 2L, 3L})
            t.check(power_sum(c, nu) == power_sum(a, nu) * power_sum(b, nu), "power sum is not multiplicative for nu = " + std::to_string(nu));
    }
}

// criterion 12
void glued_graphs(const AcceptanceOptions& opt, Tally& t) {
    std::mt19937_64 rng(opt.seed + 12);
    for (const Field& f : {Field::rational(), Field::finite(2, 1), Field::finite(3, 1), Field::finite(5, 1)})
        for (int r = 1; r <= 4; ++r)
            for (const auto& R : all_compositions(r))
                for (int k = 0; k < 2; ++k) {
                    GluedGraphFamily fam = family_from_stratum(random_stratum_data(f, r, R, rng));
                    t.check(check_dimension_condition(fam).pass, "stratum family fails the dimension condition");
                    t.check(check_gluing_condition(fam).pass, "stratum family fails the gluing condition");
                }

    // r = 2 stratum R = {1} with the lower graph's kernel moved from span(e_1) to span(e_2)
    Field q = Field::rational();
    StratumData d;
    d.r = 2;
    d.R = {1};
    d.V = {identity(q, 2), QMat::from_rows({{1, 0}}), QMat(0, 2)};
    d.W = {QMat(0, 2), QMat::from_rows({{1, 0}}), identity(q, 2)};
    d.v = {QMat::from_rows({{1}}), QMat::from_rows({{1}})};
    d.lambda = {Q(0)};
    GluedGraphFamily fam = family_from_stratum(d);
    t.check(check_gluing_condition(fam).pass, "genuine r = 2 family fails");
    std::size_t low = shared_walls(Simplex(2, 1), fam.paving).at(0).lower;
    fam.W[low] = QMat::from_rows({{0, 1, 0, 0}, {1, 0, 1, 0}});
    t.check(check_dimension_condition(fam).pass, "corrupted family should keep its dimensions");
    t.check(!check_gluing_condition(fam).pass, "corrupted family passes the gluing condition");

    // trivial paving, r = 1, n = 1: passing lines are exactly the graphs of nonzero scalars
    for (int p : {2, 3}) {
        Field f = Field::finite(p, 1);
        for (const auto& a : f.elements())
            for (const auto& b : f.elements()) {
                if (f.is_zero(a) && f.is_zero(b)) continue;
                GluedGraphFamily g;
                g.field = f;
                g.r = 1;
                g.n = 1;
                g.paving = trivial_paving(Simplex(1, 1));
                QMat w(1, 2);
                w(0, 0) = a;
                w(0, 1) = b;
                g.W = {w};
                bool pass = check_dimension_condition(g).pass && check_gluing_condition(g).pass;
                t.check(pass == (!f.is_zero(a) && !f.is_zero(b)), "trivial paving characterization over F_" + std::to_string(p));
            }
    }
}

// criterion 13
void bound_checks(Tally& t) {
    auto place = [](int deg, std::vector<Q> coeffs) {
        PlaceData pd;
        pd.deg = deg;
        pd.params.coeffs = std::move(coeffs);
        return pd;
    };
    constexpr long double tol = 1e-9L;
    // |z|^{1/deg} = q^{1/2} exactly sits on the boundary
    t.check(!check_bounds(place(1, {1, -2}), 4, BoundMode::JS, tol), "JS accepts root 2 for q = 4");
    t.check(!check_bounds(place(2, {1, -4}), 4, BoundMode::JS, tol), "JS accepts root 4 at degree 2 for q = 4");
    t.check(!check_bounds(place(1, {1, -3}), 9, BoundMode::JS, tol), "JS accepts root 3 for q = 9");
    t.check(!check_bounds(place(1, {1, Q(-1, 2)}), 4, BoundMode::JS, tol), "JS accepts root 1/2 for q = 4");
    t.check(check_bounds(place(1, {1, Q(-19, 10)}), 4, BoundMode::JS, tol), "JS rejects root 1.9 for q = 4");
    t.check(check_bounds(place(2, {1, -3}), 4, BoundMode::JS, tol), "JS rejects root 3 at degree 2 for q = 4");
    // unit-circle roots: +-i, primitive cube roots of unity, a triple root 1, fourth roots of unity
    t.check(check_bounds(place(1, {1, 0, 1}), 4, BoundMode::RP, tol), "RP rejects +-i");
    t.check(check_bounds(place(1, {1, 1, 1}), 4, BoundMode::RP, tol), "RP rejects cube roots of unity");
    t.check(check_bounds(place(1, {1, -3, 3, -1}), 4, BoundMode::RP, tol), "RP rejects a triple root 1");
    t.check(check_bounds(place(3, {1, 0, 0, 0, -1}), 4, BoundMode::RP, tol), "RP rejects fourth roots of unity");
    t.check(check_bounds(place(1, {1, Q(-6, 5), 1}), 4, BoundMode::RP, tol), "RP rejects a conjugate unit pair");
    t.check(!check_bounds(place(1, {1, -2}), 4, BoundMode::RP, tol), "RP accepts root 2");
}

// criterion 14
struct CliRun {
    int status = 0;
    std::string out, err, file;
    bool operator==(const CliRun& o) const { return status == o.status && out == o.out && err == o.err && file == o.file; }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p);
    f << text;
}

void cli_determinism(const AcceptanceOptions& opt, Tally& t) {
    namespace fs = std::filesystem;
    std::mt19937_64 rng(opt.seed + 14);
    fs::path dir = fs::temp_directory_path() / ("chtouca-accept-" + std::to_string(opt.seed) + "-" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
    auto path = [&](const char* name) { return (dir / name).string(); };

    write_text(path("paving.json"), R"({"r": 2, "n": 1, "paves": [{"points": [[2, 0], [1, 1]]}, {"points": [[1, 1], [0, 2]]}]})");
    write_text(path("paving22.json"),
               R"({"r": 2, "n": 2, "paves": [{"points": [[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]]}]})");
    write_text(path("cone.json"), R"({"dim": 2, "rays": [[1, 0], [1, 2]]})");
    write_text(path("open.json"), R"({"field": "Q", "u1": [["1", "1"], ["0", "1"]], "lambda": ["2"]})");
    write_text(path("lang.json"), R"({"field": {"GF": [2, 2]}, "g": [["2", "1"], ["0", "3"]]})");
    write_text(path("lattice.json"),
               R"({"r": 2, "records": [{"id": "0", "rank": 0, "deg0": 0, "deg1": 0}, {"id": "F", "rank": 1, "deg0": 5, "deg1": 3},)"
               R"( {"id": "V", "rank": 2, "deg0": 0, "deg1": 0}], "relations": [["0", "F"], ["F", "V"]]})");
    write_text(path("bad_lattice.json"),
               R"({"r": 2, "records": [{"id": "0", "rank": 0, "deg0": 0, "deg1": 0}, {"id": "A", "rank": 1, "deg0": 5, "deg1": 5},)"
               R"( {"id": "B", "rank": 1, "deg0": 5, "deg1": 5}, {"id": "V", "rank": 2, "deg0": 0, "deg1": 0}],)"
               R"( "relations": [["0", "A"], ["0", "B"], ["A", "V"], ["B", "V"]]})");
    write_text(path("polygon.json"), R"({"r": 3, "values": ["0", "4", "4", "0"]})");
    write_text(path("a.json"), R"({"coeffs": ["1", "-2"]})");
    write_text(path("b.json"), R"({"coeffs": ["1", "-3"]})");
    write_text(path("place.json"), R"({"deg": 2, "coeffs": ["1", "-5", "6"]})");
    write_text(path("places.json"), R"([{"deg": 1, "coeffs": ["1", "-5", "6"]}, {"deg": 2, "coeffs": ["1", "1/2"]}, {"deg": 3, "coeffs": ["1", "0", "1"]}])");
    write_text(path("unit.json"), R"({"deg": 1, "coeffs": ["1", "0", "1"]})");
    write_text(path("spectral.json"),
               R"({"trace_pi": "1", "r": 2, "deg_xi": 1, "n": 1, "inf": {"deg": 1, "coeffs": ["1", "-5/2", "1"]}, "o": {"deg": 1, "coeffs": ["1", "-10/3", "1"]}})");
    StratumData sd = random_stratum_data(Field::rational(), 3, {1}, rng);
    write_text(path("hom.json"), io::dump(io::complete_hom_to_json(build_stratum_point(sd))));
    write_text(path("stratum.json"), io::dump(io::stratum_data_to_json(sd)));
    write_text(path("family.json"), io::dump(io::family_to_json(family_from_stratum(random_stratum_data(Field::finite(3, 1), 3, {1}, rng)))));

    struct Command {
        std::vector<std::string> args;
        int expect;
        std::string file;  // output file to compare, if any
    };
    std::vector<Command> cmds{
        {{"pavings", "enum", "--r", "2", "--n", "2", "--fan", path("fan.json")}, 0, path("fan.json")},
        {{"pavings", "enum", "--r", "3", "--n", "1", "--out", path("enum.json")}, 0, path("enum.json")},
        {{"pavings", "check", path("paving.json")}, 0, ""},
        {{"pavings", "qadm", "--q", "2", path("paving22.json")}, 0, ""},
        {{"fans", "verify", path("fan.json")}, 0, ""},
        {{"fans", "dual", "--cone", path("cone.json")}, 0, ""},
        {{"fans", "monoid", "--cone", path("cone.json")}, 0, ""},
        {{"fans", "torus-seq", "--r", "2", "--n", "2"}, 0, ""},
        {{"fans", "tau-seq", "--r", "2", "--q", "3"}, 0, ""},
        {{"homs", "complete", path("open.json")}, 0, ""},
        {{"homs", "stratum", path("hom.json")}, 0, ""},
        {{"homs", "stratum", "--build", path("stratum.json")}, 0, ""},
        {{"homs", "act", "--mu", "3,1/2", path("hom.json")}, 0, ""},
        {{"homs", "lang", "--q", "2", path("lang.json")}, 0, ""},
        {{"hn", "compute", "--alpha", "1/2", path("lattice.json")}, 0, ""},
        {{"hn", "compute", path("bad_lattice.json")}, 1, ""},
        {{"trunc", "split", "--p", path("polygon.json"), "--d", "2", "--R", "1"}, 0, ""},
        {{"trunc", "convex", "--p", path("polygon.json"), "--mu", "2"}, 0, ""},
        {{"graphs", "check", path("family.json")}, 0, ""},
        {{"lfun", "local", "--order", "6", path("place.json")}, 0, ""},
        {{"lfun", "partial", "--order", "8", path("places.json")}, 0, ""},
        {{"lfun", "star", "--a", path("a.json"), "--b", path("b.json")}, 0, ""},
        {{"lfun", "psum", "--nu", "-1", path("place.json")}, 0, ""},
        {{"lfun", "bounds", "--q", "4", "--mode", "js", path("place.json")}, 0, ""},
        {{"lfun", "bounds", "--q", "4", "--mode", "rp", path("unit.json")}, 0, ""},
        {{"lfun", "spectral", "--q", "4", path("spectral.json")}, 0, ""},
        {{"lfun", "star", "--a", path("missing.json"), "--b", path("b.json")}, 2, ""},
    };

    for (const auto& c : cmds) {
        std::vector<CliRun> runs;
        for (const char* jobs : {"1", "4"})
            for (int rep = 0; rep < 3; ++rep) {
                if (!c.file.empty()) fs::remove(c.file);
                std::vector<std::string> args{"--jobs", jobs};
                args.insert(args.end(), c.args.begin(), c.args.end());
                std::ostringstream out, err;
                CliRun run;
                run.status = run_cli(args, out, err);
                run.out = out.str();
                run.err = err.str();
                if (!c.file.empty()) run.file = slurp(c.file);
                runs.push_back(run);
            }
        std::string name = c.args[0] + " " + c.args[1];
        t.check(runs[0].status == c.expect, name + " exited with " + std::to_string(runs[0].status) + (runs[0].err.empty() ? "" : ": " + one_line(runs[0].err)));
        t.check(std::all_of(runs.begin(), runs.end(), [&](const CliRun& r) { return r == runs[0]; }), name + " output differs between runs");
    }
    std::error_code ec;
    fs::remove_all(dir, ec);
}

const char* const kNames[kCriteria + 1] = {
    "",
    "lattice point counts",
    "interval pavings and the orthant fan",
    "fan axioms of paving fans",
    "regular subdivisions land in the enumeration",
    "hexagon property",
    "torus dimensions",
    "complete-homomorphism round trip",
    "Lang fixed points",
    "HN domination",
    "truncation splitting",
    "star operation",
    "glued graphs",
    "bound checks",
    "CLI determinism",
};

// wall-clock limits in seconds; 0 means none
const double kLimits[kCriteria + 1] = {0, 1, 10, 300, 300, 0, 0, 60, 0, 60, 0, 30, 0, 0, 0};

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& opt) {
    CriterionResult res;
    res.id = id;
    if (id < 1 || id > kCriteria) {
        res.detail = "no such criterion";
        return res;
    }
    res.name = kNames[id];
    Tally t;
    auto start = std::chrono::steady_clock::now();
    try {
        switch (id) {
            case 1: lattice_counts(t); break;
            case 2: interval_pavings(opt, t); break;
            case 3: fan_axioms(opt, t); break;
            case 4: regular_subdivisions(opt, t); break;
            case 5: hexagons(opt, t); break;
            case 6: torus_dimensions(t); break;
            case 7: complete_hom_round_trip(opt, t); break;
            case 8: lang_fixed_points(t); break;
            case 9: hn_domination(opt, t); break;
            case 10: truncation_splitting(opt, t); break;
            case 11: star_operation(opt, t); break;
            case 12: glued_graphs(opt, t); break;
            case 13: bound_checks(t); break;
            case 14: cli_determinism(opt, t); break;
        }
        res.status = t.ok() ? Status::Pass : Status::Fail;
        res.detail = t.summary();
    } catch (const TooLarge& e) {
        res.status = Status::Skip;
        res.detail = std::string("skipped: ") + e.what();
    } catch (const std::exception& e) {
        res.status = Status::Fail;
        res.detail = std::string("unexpected exception: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (res.status == Status::Pass && kLimits[id] > 0 && res.seconds > kLimits[id]) {
        res.status = Status::Fail;
        std::ostringstream s;
        s << "exceeded the " << kLimits[id] << " s limit";
        res.detail = s.str();
    }
    return res;
}

std::string format_result(const CriterionResult& r) {
    std::ostringstream s;
    const char* tag = r.status == Status::Pass ? "PASS" : r.status == Status::Skip ? "SKIP" : "FAIL";
    s << "criterion " << std::setw(2) << r.id << " " << tag << " " << std::fixed << std::setprecision(2) << std::setw(7) << r.seconds
      << " s  " << r.name << " (" << r.detail << ")";
    return s.str();
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream& log, const std::vector<int>& only) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriteria; ++id) {
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        out.push_back(run_criterion(id, opt));
        log << format_result(out.back()) << std::endl;
    }
    std::size_t pass = 0, skip = 0;
    for (const auto& r : out) {
        pass += r.status == Status::Pass;
        skip += r.status == Status::Skip;
    }
    log << pass << " passed, " << skip << " skipped, " << out.size() - pass - skip << " failed" << std::endl;
    return out;
}

bool no_failures(const std::vector<CriterionResult>& rs) {
    return std::none_of(rs.begin(), rs.end(), [](const CriterionResult& r) { return r.status == Status::Fail; });
}

}  // namespace chtouca
