#include "chtouca/fan.hpp"

#include "chtouca/error.hpp"
#include "chtouca/linalg.hpp"
#include "chtouca/smith.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <thread>

namespace chtouca {

namespace {

// runs body(i) for i in [0, count) on up to jobs threads
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body) {
    jobs = std::max(1u, jobs);
    if (jobs == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < count; i += jobs) body(i);
        });
    for (auto& th : pool) th.join();
}

ZMat from_rows(std::size_t cols, const std::vector<IVec>& rows) {
    ZMat m(0, cols);
    for (const auto& r : rows) m.append_row(r);
    return m;
}

bool all_units(const std::vector<Z>& inv) {
    return std::all_of(inv.begin(), inv.end(), [](const Z& d) { return d == 1; });
}

}  // namespace

void Fan::canonicalize() {
    std::vector<std::size_t> order(cones.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cones[a] < cones[b]; });
    std::vector<Cone> cs;
    std::vector<Paving> ps;
    bool tagged = pavings.size() == cones.size();
    for (auto i : order) {
        if (!cs.empty() && cs.back() == cones[i]) continue;
        cs.push_back(cones[i]);
        if (tagged) ps.push_back(pavings[i]);
    }
    cones = std::move(cs);
    pavings = std::move(ps);
}

FanReport verify_fan(const Fan& f, unsigned jobs) {
    FanReport rep;
    auto fail = [&](std::string why, std::size_t i, std::size_t j) {
        rep.pass = false;
        rep.failure = std::move(why);
        rep.pair = std::make_pair(i, j);
        return rep;
    };
    for (std::size_t i = 0; i < f.cones.size(); ++i)
        if (f.cones[i].dim != f.rank) return fail("cone has the wrong ambient rank", i, i);
    std::vector<Cone> sorted = f.cones;
    std::sort(sorted.begin(), sorted.end());
    auto member = [&](const Cone& c) { return std::binary_search(sorted.begin(), sorted.end(), c); };
    if (!member(Cone::zero(f.rank))) {
        rep.pass = false;
        rep.failure = "zero cone missing";
        return rep;
    }
    for (std::size_t i = 0; i < f.cones.size(); ++i)
        for (const auto& t : faces(f.cones[i]))
            if (!member(t)) return fail("a face of a cone is not in the fan", i, i);

    std::size_t m = f.cones.size();
    std::vector<std::string> why(m);
    std::vector<std::size_t> partner(m, m);
    parallel_for(m, jobs, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const Cone &a = f.cones[i], &b = f.cones[j];
            if (a == b) {
                why[i] = "duplicate cone";
            } else {
                Cone c = intersect(a, b);
                if (!is_face(c, a) || !is_face(c, b))
                    why[i] = "intersection is not a common face";
                else if (!member(c))
                    why[i] = "intersection is not in the fan";
                else if (relative_interiors_meet(a, b))
                    why[i] = "relative interiors meet";
            }
            if (!why[i].empty()) {
                partner[i] = j;
                return;
            }
        }
    });
    for (std::size_t i = 0; i < m; ++i)
        if (partner[i] != m) return fail(why[i], i, partner[i]);
    return rep;
}

Fan paving_fan(int r, int n, const EnumerationOptions& opt) {
    Simplex s(r, n);
    Fan f;
    f.rank = s.quotient_coords().size();
    f.pavings = enumerate_admissible_pavings(r, n, opt);
    f.cones.resize(f.pavings.size());
    parallel_for(f.pavings.size(), opt.jobs, [&](std::size_t i) { f.cones[i] = sigma_cone(s, f.pavings[i]); });
    f.canonicalize();
    return f;
}

std::vector<IVec> monoid_generators(const Cone& c) {
    std::size_t d = c.dim;
    if (d > kMonoidRankCap) throw TooLarge("monoid generators are computed up to rank 4");
    Cone dual = dual_cone(c);
    // saturated lattice basis of the lineality space of the dual, completed to a basis of Z^d
    ZMat lin = integer_kernel(from_rows(d, c.generators()));
    std::size_t k = lin.rows;
    ZMat u = complete_to_unimodular(lin);
    ZMat uinv = zinverse_unimodular(u);
    std::size_t e = d - k;
    std::vector<IVec> proj;
    for (const auto& ray : dual.rays) {
        auto z = zmul_vec(uinv, ray);
        proj.emplace_back(z.begin() + static_cast<long>(k), z.end());
    }
    Cone pointed = Cone::from_generators(e, proj);
    IVec grade(e, Z(0));
    for (const auto& fct : pointed.facets)
        for (std::size_t j = 0; j < e; ++j) grade[j] += fct[j];

    std::vector<long> bound(e, 0);
    for (const auto& p : pointed.rays)
        for (std::size_t j = 0; j < e; ++j) bound[j] += Z(abs(p[j])).get_si();
    std::vector<std::pair<Z, IVec>> cand;
    IVec z(e, Z(0));
    std::function<void(std::size_t)> box = [&](std::size_t j) {
        if (j == e) {
            if (std::any_of(z.begin(), z.end(), [](const Z& t) { return t != 0; }) && pointed.contains(z))
                cand.emplace_back(dot(grade, z), z);
            return;
        }
        for (long t = -bound[j]; t <= bound[j]; ++t) {
            z[j] = t;
            box(j + 1);
        }
    };
    box(0);
    std::sort(cand.begin(), cand.end());
    std::vector<IVec> hilbert;
    for (const auto& [g, v] : cand) {
        bool reducible = false;
        for (const auto& h : hilbert) {
            IVec diff(e);
            for (std::size_t j = 0; j < e; ++j) diff[j] = v[j] - h[j];
            if (pointed.contains(diff)) {
                reducible = true;
                break;
            }
        }
        if (!reducible) hilbert.push_back(v);
    }

    std::vector<IVec> out;
    for (const auto& h : hilbert) {
        IVec full(d, Z(0));
        for (std::size_t j = 0; j < e; ++j) full[k + j] = h[j];
        out.push_back(zmul_vec(u, full));
    }
    for (std::size_t i = 0; i < k; ++i) {
        IVec b = lin.row(i), nb(d);
        for (std::size_t j = 0; j < d; ++j) nb[j] = -b[j];
        out.push_back(b);
        out.push_back(nb);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Cone restrict_to_span(const Cone& c) {
    ZMat basis = integer_kernel(from_rows(c.dim, c.equations));
    std::size_t k = basis.rows;
    QMat bt(c.dim, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < c.dim; ++j) bt(j, i) = basis(i, j);
    auto coords = [&](const IVec& v) {
        auto x = solve(Field::rational(), bt, to_q(v));
        if (!x) throw std::logic_error("generator outside the span");
        return primitive(*x);
    };
    std::vector<IVec> rays, lin;
    for (const auto& r : c.rays) rays.push_back(coords(r));
    for (const auto& l : c.lineality) lin.push_back(coords(l));
    return Cone::from_generators(k, rays, lin);
}

TorusReport torus_sequence_check(int r, int n) {
    Simplex s(r, n);
    if (s.size() > 12) throw TooLarge("torus sequence check is limited to 12 points");
    TorusReport rep;
    rep.points = s.size();
    std::size_t m = static_cast<std::size_t>(n) + 2;
    ZMat a1(m, 1);
    for (int k = 0; k <= n; ++k) a1(k, 0) = 1;
    a1(m - 1, 0) = r;
    ZMat a2(s.size(), m);
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (int k = 0; k <= n; ++k) a2(i, k) = s.point(i)[k];
        a2(i, m - 1) = -1;
    }
    ZMat comp = zmul(a2, a1);
    bool zero = true;
    for (const auto& x : comp.a) zero = zero && x == 0;
    std::size_t rk1 = integer_rank(a1), rk2 = integer_rank(a2);
    bool injective = rk1 == 1 && all_units(smith_invariants(a1));
    bool middle = rk1 + rk2 == m;
    bool saturated = all_units(smith_invariants(a2));
    rep.exact = zero && injective && middle && saturated;
    rep.torus_dim = s.size() - rk2;
    if (!zero) rep.detail = "composite map is not trivial";
    else if (!injective) rep.detail = "first map is not a saturated injection";
    else if (!middle) rep.detail = "not exact in the middle";
    else if (!saturated) rep.detail = "cokernel has torsion";
    return rep;
}

TauReport tau_sequence_check(int r, long q) {
    if (r > 4) throw TooLarge("tau sequence check is limited to r <= 4");
    if (r < 1) throw InvalidData("r must be positive");
    if (q < 2) throw InvalidData("q must be at least 2");
    Simplex s(r, 2);
    std::vector<std::size_t> tau;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s.point(i)[0] != 0) tau.push_back(i);
    TauReport rep;
    rep.points = tau.size();
    ZMat v(tau.size(), 1);
    for (std::size_t j = 0; j < tau.size(); ++j) v(j, 0) = s.point(tau[j])[0] + q * s.point(tau[j])[1];
    bool injective = integer_rank(v) == 1 && all_units(smith_invariants(v));
    rep.torus_dim = tau.size() - 1;

    // cocharacter map Z^{S^tau} -> Z^{S^{r,2}}
    ZMat emb(s.size(), tau.size());
    for (std::size_t j = 0; j < tau.size(); ++j) {
        const Point& x = s.point(tau[j]);
        emb(tau[j], j) = 1;
        if (x[1] == 0) emb(s.index({0, x[0], x[2]}), j) = q;
    }
    ZMat a2(s.size(), 4);
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (int k = 0; k < 3; ++k) a2(i, k) = s.point(i)[k];
        a2(i, 3) = -1;
    }
    // the image of G_m lands in the image of G_m^3 x G_m
    auto mv = zmul_vec(emb, v.col(0));
    auto target = zmul_vec(a2, IVec{Z(1), Z(q), Z(0), Z(0)});
    bool descends = mv == target;
    // injectivity on quotients: emb x in im(a2) forces x in Z v
    ZMat joint(s.size(), tau.size() + 4);
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = 0; j < tau.size(); ++j) joint(i, j) = emb(i, j);
        for (std::size_t j = 0; j < 4; ++j) joint(i, tau.size() + j) = -a2(i, j);
    }
    ZMat ker = integer_kernel(joint);
    ZMat xs(0, tau.size());
    for (std::size_t i = 0; i < ker.rows; ++i) {
        IVec row = ker.row(i);
        IVec x(row.begin(), row.begin() + static_cast<long>(tau.size()));
        xs.append_row(x);
    }
    ZMat withv = xs;
    withv.append_row(v.col(0));
    bool quotient_injective = integer_rank(withv) == 1;
    rep.exact = injective;
    rep.embeds = descends && quotient_injective;
    if (!injective) rep.detail = "character vector is not primitive";
    else if (!descends) rep.detail = "embedding does not descend to the quotient tori";
    else if (!quotient_injective) rep.detail = "embedding is not injective on quotient tori";
    return rep;
}

}  // namespace chtouca
