#include "chtouca/pavings.hpp"

#include "chtouca/error.hpp"
#include "chtouca/linalg.hpp"
#include "chtouca/lp.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <thread>

namespace chtouca {

namespace {

const Field& QQ() {
    static const Field f = Field::rational();
    return f;
}

Subset full_mask(int n) { return (Subset(1) << (n + 1)) - 1; }

std::vector<Q> qpoint(const Point& p) { return std::vector<Q>(p.begin(), p.end()); }

// maximize delta subject to x in the hyperplane, x(J) >= lo_J + delta, x(J) <= hi_J - delta
struct SlackLp {
    int n;
    LinearProgram lp;
    explicit SlackLp(int n_, int r) : n(n_), lp(n_ + 2) {
        std::vector<Q> sum(n + 2, Q(1));
        sum[n + 1] = 0;
        lp.add(sum, Rel::EQ, r);
        std::vector<Q> cap(n + 2, Q(0));
        cap[n + 1] = 1;
        lp.add(cap, Rel::LE, 1);
        lp.objective = cap;
    }
    void lower(Subset j, const Q& v) {
        std::vector<Q> row(n + 2, Q(0));
        for (int k = 0; k <= n; ++k)
            if (j >> k & 1) row[k] = 1;
        row[n + 1] = -1;
        lp.add(row, Rel::GE, v);
    }
    void upper(Subset j, const Q& v) {
        std::vector<Q> row(n + 2, Q(0));
        for (int k = 0; k <= n; ++k)
            if (j >> k & 1) row[k] = -1;
        row[n + 1] = -1;
        lp.add(row, Rel::GE, -v);
    }
    // optimum delta (or -1 when infeasible) and the point
    std::pair<Q, std::vector<Q>> solve() const {
        LpResult r = solve_lp(lp);
        if (r.status != LpStatus::Optimal) return {Q(-1), {}};
        std::vector<Q> x(r.x.begin(), r.x.begin() + n + 1);
        return {r.value, x};
    }
};

bool satisfies(const Point& x, const std::vector<int>& d, int n) {
    for (Subset j = 1; j < full_mask(n); ++j)
        if (subset_sum(x, j) < d[j]) return false;
    return true;
}

// facets of a face (point set of affine dimension k) of a pave, as point sets
std::vector<std::vector<std::size_t>> face_facets(const Simplex& s, const std::vector<std::size_t>& f, std::size_t k) {
    std::set<std::vector<std::size_t>> out;
    int n = s.n();
    for (Subset j = 1; j < full_mask(n); ++j) {
        int m = INT32_MAX;
        for (auto i : f) m = std::min(m, subset_sum(s.point(i), j));
        std::vector<std::size_t> g;
        for (auto i : f)
            if (subset_sum(s.point(i), j) == m) g.push_back(i);
        if (g.size() == f.size()) continue;
        if (k >= 1 && affine_dimension(s, g) == k - 1) out.insert(g);
    }
    return {out.begin(), out.end()};
}

void triangulate(const Simplex& s, const std::vector<std::size_t>& f, std::size_t k,
                 std::vector<std::vector<std::size_t>>& out, std::vector<std::size_t>& prefix) {
    if (f.size() == k + 1) {
        std::vector<std::size_t> t = prefix;
        t.insert(t.end(), f.begin(), f.end());
        out.push_back(t);
        return;
    }
    std::size_t apex = f[0];
    prefix.push_back(apex);
    for (const auto& g : face_facets(s, f, k)) {
        if (std::find(g.begin(), g.end(), apex) != g.end()) continue;
        triangulate(s, g, k - 1, out, prefix);
    }
    prefix.pop_back();
}

std::vector<Q> solve_affine(const Simplex& s, const std::vector<std::size_t>& basis, const std::vector<Q>& h) {
    int n = s.n();
    QMat a(n + 1, n + 1);
    std::vector<Q> b(n + 1);
    for (int i = 0; i <= n; ++i) {
        for (int k = 0; k <= n; ++k) a(i, k) = s.point(basis[i])[k];
        b[i] = h[basis[i]];
    }
    auto c = solve(QQ(), a, b);
    if (!c) throw std::logic_error("affine interpolation failed");
    return *c;
}

// first affinely independent (n+1)-subset of the given points
std::vector<std::size_t> affine_basis(const Simplex& s, const std::vector<std::size_t>& pts) {
    std::vector<std::size_t> basis;
    QMat m(0, s.n() + 1);
    for (auto i : pts) {
        QMat t = m;
        t.append_row(qpoint(s.point(i)));
        if (rank(QQ(), t) == t.rows) {
            m = t;
            basis.push_back(i);
            if (basis.size() == static_cast<std::size_t>(s.n() + 1)) break;
        }
    }
    return basis;
}

}  // namespace

Q subset_sum(const std::vector<Q>& x, Subset j) {
    Q v = 0;
    for (std::size_t k = 0; k < x.size(); ++k)
        if (j >> k & 1) v += x[k];
    return v;
}

int subset_sum(const Point& x, Subset j) {
    int v = 0;
    for (std::size_t k = 0; k < x.size(); ++k)
        if (j >> k & 1) v += x[k];
    return v;
}

bool Pave::operator<(const Pave& o) const {
    if (points.size() != o.points.size()) return points.size() < o.points.size();
    return points < o.points;
}

void Paving::canonicalize() { std::sort(paves.begin(), paves.end()); }

bool Paving::operator<(const Paving& o) const {
    if (paves.size() != o.paves.size()) return paves.size() < o.paves.size();
    return std::lexicographical_compare(paves.begin(), paves.end(), o.paves.begin(), o.paves.end());
}

std::size_t affine_dimension(const Simplex& s, const std::vector<std::size_t>& pts) {
    if (pts.empty()) return 0;
    QMat m(0, s.n() + 1);
    const Point& p0 = s.point(pts[0]);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        std::vector<Q> v(s.n() + 1);
        for (int k = 0; k <= s.n(); ++k) v[k] = s.point(pts[i])[k] - p0[k];
        m.append_row(v);
    }
    return m.rows == 0 ? 0 : rank(QQ(), m);
}

Pave pave_from_points(const Simplex& s, std::vector<std::size_t> pts) {
    if (pts.empty()) throw NotAPave("empty point set");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (auto i : pts)
        if (i >= s.size()) throw NotAPave("point outside the simplex");
    int n = s.n();
    Subset full = full_mask(n);
    Pave p;
    p.d.assign(full + 1, 0);
    for (Subset j = 0; j <= full; ++j) {
        int m = INT32_MAX;
        for (auto i : pts) m = std::min(m, subset_sum(s.point(i), j));
        p.d[j] = m;
    }
    for (Subset a = 0; a <= full; ++a)
        for (Subset b = a + 1; b <= full; ++b)
            if (p.d[a] + p.d[b] > p.d[a | b] + p.d[a & b]) throw NotAPave("profile is not supermodular");
    std::vector<std::size_t> rec;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (satisfies(s.point(i), p.d, n)) rec.push_back(i);
    if (rec != pts) throw NotAPave("points are not the lattice points of their pave");
    SlackLp lp(n, s.r());
    for (Subset j = 1; j < full; ++j) lp.lower(j, p.d[j]);
    if (lp.solve().first <= 0) throw EmptyInterior("pave has empty interior");
    p.points = std::move(pts);
    return p;
}

Pave pave_from_points(const Simplex& s, const std::vector<Point>& points) {
    std::vector<std::size_t> idx;
    for (const auto& x : points) {
        if (!s.contains(x)) throw NotAPave("point outside the simplex");
        idx.push_back(s.index(x));
    }
    return pave_from_points(s, idx);
}

Q normalized_volume(const Simplex& s, const Pave& p) {
    int n = s.n();
    if (n == 0) return Q(1);
    std::vector<std::vector<std::size_t>> simplices;
    std::vector<std::size_t> prefix;
    triangulate(s, p.points, static_cast<std::size_t>(n), simplices, prefix);
    Q vol = 0;
    for (const auto& t : simplices) {
        QMat m(n, n);
        const Point& x0 = s.point(t[0]);
        for (int i = 1; i <= n; ++i)
            for (int k = 1; k <= n; ++k) m(i - 1, k - 1) = s.point(t[i])[k] - x0[k];
        vol += abs(det(QQ(), m));
    }
    return vol;
}

std::size_t edge_count(const Simplex& s, const Pave& p) {
    if (s.n() != 2) throw WrongDimension("edge count needs n = 2");
    return face_facets(s, p.points, 2).size();
}

bool interiors_disjoint(const Simplex& s, const Pave& a, const Pave& b) {
    int n = s.n();
    SlackLp lp(n, s.r());
    for (Subset j = 1; j < full_mask(n); ++j) {
        lp.lower(j, a.d[j]);
        lp.lower(j, b.d[j]);
    }
    return lp.solve().first <= 0;
}

void validate_paving(const Simplex& s, const Paving& p) {
    if (p.r != s.r() || p.n != s.n()) throw NotAPaving("paving dimensions do not match");
    if (p.paves.empty()) throw NotAPaving("no paves");
    Q total = 0;
    for (const auto& v : p.paves) total += normalized_volume(s, v);
    Q expect = pow_q(Q(s.r()), s.n());
    if (total != expect) throw NotAPaving("pave volumes sum to " + to_string(total) + ", expected " + to_string(expect));
    for (std::size_t i = 0; i < p.paves.size(); ++i)
        for (std::size_t j = i + 1; j < p.paves.size(); ++j)
            if (!interiors_disjoint(s, p.paves[i], p.paves[j])) throw NotAPaving("overlapping paves");
}

Paving trivial_paving(const Simplex& s) {
    std::vector<std::size_t> all(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) all[i] = i;
    Paving p;
    p.r = s.r();
    p.n = s.n();
    p.paves.push_back(pave_from_points(s, all));
    return p;
}

Paving regular_subdivision(const Simplex& s, const std::vector<Q>& h) {
    if (h.size() != s.size()) throw InvalidData("height function must be defined on every point");
    int n = s.n();
    std::size_t m = s.size(), k = static_cast<std::size_t>(n + 1);
    std::set<std::vector<std::size_t>> cells;
    std::vector<std::size_t> comb(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
        if (pos == k) {
            if (affine_dimension(s, comb) != static_cast<std::size_t>(n)) return;
            auto c = solve_affine(s, comb, h);
            std::vector<std::size_t> cell;
            for (std::size_t i = 0; i < m; ++i) {
                Q a = affine_eval(c, s.point(i));
                if (h[i] < a) return;
                if (h[i] == a) cell.push_back(i);
            }
            cells.insert(cell);
            return;
        }
        for (std::size_t i = start; i < m; ++i) {
            comb[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    rec(0, 0);
    Paving p;
    p.r = s.r();
    p.n = n;
    Subset full = full_mask(n);
    for (const auto& c : cells) {
        // the cell is the convex hull of its tight points; take every lattice point of its alcoved hull
        std::vector<int> d(full + 1, INT32_MAX);
        for (Subset j = 0; j <= full; ++j)
            for (auto i : c) d[j] = std::min(d[j], subset_sum(s.point(i), j));
        std::vector<std::size_t> hull;
        for (std::size_t i = 0; i < m; ++i)
            if (satisfies(s.point(i), d, n)) hull.push_back(i);
        try {
            p.paves.push_back(pave_from_points(s, hull));
        } catch (const DomainError& e) {
            throw NotAPaving(std::string("cell is not a pave: ") + e.what());
        }
    }
    p.canonicalize();
    Q total = 0;
    for (const auto& v : p.paves) total += normalized_volume(s, v);
    if (total != pow_q(Q(s.r()), n)) throw NotAPaving("cells of the lower envelope are not integer paves");
    return p;
}

SecondarySystem secondary_system(const Simplex& s, const Paving& p) {
    std::set<IVec> eqs, ineqs;
    const auto& fc = s.quotient_coords();
    int n = s.n();
    for (const auto& v : p.paves) {
        auto basis = affine_basis(s, v.points);
        if (basis.size() != static_cast<std::size_t>(n + 1)) throw NotAPaving("pave is not full-dimensional");
        QMat bm(n + 1, n + 1);
        for (int i = 0; i <= n; ++i)
            for (int c = 0; c <= n; ++c) bm(c, i) = s.point(basis[i])[c];
        QMat binv = inverse(QQ(), bm);
        std::vector<bool> inside(s.size(), false);
        for (auto i : v.points) inside[i] = true;
        for (std::size_t x = 0; x < s.size(); ++x) {
            if (std::find(basis.begin(), basis.end(), x) != basis.end()) continue;
            auto lambda = mul_vec(QQ(), binv, qpoint(s.point(x)));
            std::vector<Q> row(s.size(), Q(0));
            row[x] += 1;
            for (int i = 0; i <= n; ++i) row[basis[i]] -= lambda[i];
            std::vector<Q> y;
            for (auto idx : fc) y.push_back(row[idx]);
            bool zero = std::all_of(y.begin(), y.end(), [](const Q& t) { return t == 0; });
            if (zero) {
                if (!inside[x]) ineqs.insert(IVec(y.size(), Z(0)));
                continue;
            }
            (inside[x] ? eqs : ineqs).insert(primitive(y));
        }
    }
    return SecondarySystem{{eqs.begin(), eqs.end()}, {ineqs.begin(), ineqs.end()}};
}

namespace {

Admissibility solve_admissibility(const Simplex& s, const SecondarySystem& sys,
                                  const std::vector<std::pair<std::vector<Q>, std::vector<Q>>>& extra_eqs,
                                  std::size_t extra_vars) {
    std::size_t m = s.quotient_coords().size();
    std::size_t nv = m + extra_vars + 1;
    LinearProgram lp(nv);
    for (const auto& e : sys.equations) {
        std::vector<Q> row(nv, Q(0));
        for (std::size_t j = 0; j < m; ++j) row[j] = e[j];
        lp.add(row, Rel::EQ, 0);
    }
    for (const auto& a : sys.inequalities) {
        std::vector<Q> row(nv, Q(0));
        for (std::size_t j = 0; j < m; ++j) row[j] = a[j];
        row[nv - 1] = -1;
        lp.add(row, Rel::GE, 0);
    }
    for (const auto& [yrow, xrow] : extra_eqs) {
        std::vector<Q> row(nv, Q(0));
        for (std::size_t j = 0; j < m; ++j) row[j] = yrow[j];
        for (std::size_t j = 0; j < extra_vars; ++j) row[m + j] = xrow[j];
        lp.add(row, Rel::EQ, 0);
    }
    std::vector<Q> cap(nv, Q(0));
    cap[nv - 1] = 1;
    lp.add(cap, Rel::LE, 1);
    lp.objective = cap;
    LpResult res = solve_lp(lp);
    Admissibility out;
    if (res.status != LpStatus::Optimal) return out;
    out.delta = res.value;
    out.admissible = res.value > 0;
    std::vector<Q> y(res.x.begin(), res.x.begin() + m);
    out.witness = lift_coordinates(s, y);
    return out;
}

}  // namespace

Admissibility is_admissible(const Simplex& s, const Paving& p) {
    return solve_admissibility(s, secondary_system(s, p), {}, 0);
}

Cone sigma_cone(const Simplex& s, const Paving& p) {
    auto sys = secondary_system(s, p);
    if (!solve_admissibility(s, sys, {}, 0).admissible) throw NotAdmissible("paving is not admissible");
    return Cone::from_constraints(s.quotient_coords().size(), sys.equations, sys.inequalities);
}

bool refines(const Paving& p, const Paving& q) {
    for (const auto& a : p.paves) {
        bool found = false;
        for (const auto& b : q.paves)
            if (std::includes(b.points.begin(), b.points.end(), a.points.begin(), a.points.end())) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

std::vector<std::vector<Q>> chamber_witnesses(const Simplex& s) {
    int n = s.n(), r = s.r();
    std::vector<Subset> funcs;
    for (Subset j = 1; j < full_mask(n); ++j)
        if (!(j & 1)) funcs.push_back(j);
    std::vector<std::vector<Q>> out;
    SlackLp base(n, r);
    for (int k = 0; k <= n; ++k) base.lower(Subset(1) << k, 0);
    std::function<void(std::size_t, SlackLp&)> rec = [&](std::size_t t, SlackLp& lp) {
        if (t == funcs.size()) {
            auto [delta, x] = lp.solve();
            if (delta > 0) out.push_back(x);
            return;
        }
        for (int k = 0; k < r; ++k) {
            SlackLp next = lp;
            next.lower(funcs[t], k);
            next.upper(funcs[t], k + 1);
            if (next.solve().first <= 0) continue;
            rec(t + 1, next);
        }
    };
    rec(0, base);
    return out;
}

std::vector<Paving> enumerate_admissible_pavings(int r, int n, const EnumerationOptions& opt) {
    if (r < 1 || n < 0) throw InvalidData("need r >= 1 and n >= 0");
    if (binomial(r + n, n) > Z(static_cast<unsigned long>(opt.cap)))
        throw TooLarge("|S^{r,n}| = " + to_string(binomial(r + n, n)) + " exceeds the cap " + std::to_string(opt.cap));
    Simplex s(r, n);
    if (r == 1 || n == 0) return {trivial_paving(s)};

    auto witnesses = chamber_witnesses(s);
    std::size_t nch = witnesses.size();
    if (nch > 64) throw TooLarge("too many chambers");

    struct Candidate {
        Pave pave;
        std::uint64_t mask;
    };
    std::vector<Candidate> cands;
    std::size_t m = s.size();
    for (std::uint64_t bits = 1; bits < (std::uint64_t(1) << m); ++bits) {
        std::vector<std::size_t> pts;
        for (std::size_t i = 0; i < m; ++i)
            if (bits >> i & 1) pts.push_back(i);
        if (pts.size() < static_cast<std::size_t>(n + 1)) continue;
        if (affine_dimension(s, pts) != static_cast<std::size_t>(n)) continue;
        Pave p;
        try {
            p = pave_from_points(s, pts);
        } catch (const DomainError&) {
            continue;
        }
        std::uint64_t mask = 0;
        for (std::size_t c = 0; c < nch; ++c) {
            bool in = true;
            for (Subset j = 1; j < full_mask(n) && in; ++j)
                if (subset_sum(witnesses[c], j) < p.d[j]) in = false;
            if (in) mask |= std::uint64_t(1) << c;
        }
        cands.push_back({p, mask});
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) { return a.pave < b.pave; });
    const std::uint64_t all = nch == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << nch) - 1;

    auto search = [&](std::size_t first) {
        std::vector<std::vector<std::size_t>> covers;
        std::vector<std::size_t> chosen{first};
        std::function<void(std::uint64_t)> rec = [&](std::uint64_t covered) {
            if (covered == all) {
                covers.push_back(chosen);
                return;
            }
            std::size_t c = 0;
            while (covered >> c & 1) ++c;
            for (std::size_t i = 0; i < cands.size(); ++i) {
                if (!(cands[i].mask >> c & 1) || (cands[i].mask & covered)) continue;
                chosen.push_back(i);
                rec(covered | cands[i].mask);
                chosen.pop_back();
            }
        };
        rec(cands[first].mask);
        std::vector<Paving> found;
        for (const auto& cv : covers) {
            Paving p;
            p.r = r;
            p.n = n;
            for (auto i : cv) p.paves.push_back(cands[i].pave);
            p.canonicalize();
            if (is_admissible(s, p).admissible) found.push_back(p);
        }
        return found;
    };

    std::vector<std::size_t> firsts;
    for (std::size_t i = 0; i < cands.size(); ++i)
        if (cands[i].mask & 1) firsts.push_back(i);
    std::vector<std::vector<Paving>> parts(firsts.size());
    unsigned jobs = std::max(1u, opt.jobs);
    if (jobs == 1 || firsts.size() <= 1) {
        for (std::size_t k = 0; k < firsts.size(); ++k) parts[k] = search(firsts[k]);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t k = t; k < firsts.size(); k += jobs) parts[k] = search(firsts[k]);
            });
        for (auto& th : pool) th.join();
    }
    std::vector<Paving> out;
    for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Admissibility q_admissibility(const Simplex& s, const Paving& p, long q) {
    if (s.n() != 2) throw WrongDimension("q-admissibility is defined for n = 2");
    if (q < 2) throw InvalidData("q must be at least 2");
    const auto& fc = s.quotient_coords();
    std::map<std::size_t, std::size_t> coord;
    for (std::size_t k = 0; k < fc.size(); ++k) coord[fc[k]] = k;
    std::vector<std::pair<std::vector<Q>, std::vector<Q>>> extra;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Point& x = s.point(i);
        if (x[0] != 0) continue;
        Point y{x[1], 0, x[2]};
        std::size_t j = s.index(y);
        std::vector<Q> yrow(fc.size(), Q(0)), arow(3, Q(0));
        if (coord.count(i)) yrow[coord[i]] += 1;
        if (coord.count(j)) yrow[coord[j]] -= q;
        for (int k = 0; k < 3; ++k) arow[k] = Q(x[k]) - Q(q) * y[k];
        extra.push_back({yrow, arow});
    }
    return solve_admissibility(s, secondary_system(s, p), extra, 3);
}

bool is_q_admissible(const Simplex& s, const Paving& p, long q) { return q_admissibility(s, p, q).admissible; }

}  // namespace chtouca
