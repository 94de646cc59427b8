#include "chtouca/cone.hpp"

#include "chtouca/linalg.hpp"
#include "chtouca/lp.hpp"
#include "chtouca/smith.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace chtouca {

namespace {

const Field& QQ() {
    static const Field f = Field::rational();
    return f;
}

Q qdot(const std::vector<Q>& a, const std::vector<Q>& b) {
    Q s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

std::vector<Q> scaled_primitive(const std::vector<Q>& v) { return to_q(primitive(v)); }

QMat as_mat(std::size_t dim, const std::vector<std::vector<Q>>& rows) {
    QMat m(0, dim);
    for (const auto& r : rows) m.append_row(r);
    return m;
}

std::vector<std::vector<Q>> as_q(const std::vector<IVec>& v) {
    std::vector<std::vector<Q>> out;
    for (const auto& x : v) out.push_back(to_q(x));
    return out;
}

// canonical primitive basis of a row space
std::vector<IVec> canonical_basis(std::size_t dim, const QMat& m) {
    std::vector<IVec> out;
    if (m.rows == 0) return out;
    QMat rs = row_space(QQ(), m);
    for (std::size_t i = 0; i < rs.rows; ++i) out.push_back(primitive(rs.row(i)));
    (void)dim;
    return out;
}

// reduce v modulo a row space given by its RREF (zero on pivot columns)
std::vector<Q> reduce_mod(const std::vector<Q>& v0, const Rref& rr) {
    std::vector<Q> v = v0;
    for (std::size_t k = 0; k < rr.pivots.size(); ++k) {
        Q c = v[rr.pivots[k]];
        if (c == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (rr.m(k, j) != 0) v[j] -= c * rr.m(k, j);
    }
    return v;
}

bool is_zero_vec(const std::vector<Q>& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

Cone assemble(std::size_t dim, const DDResult& dd, const std::vector<std::vector<Q>>& candidates) {
    Cone c;
    c.dim = dim;
    QMat lin = as_mat(dim, dd.lineality);
    c.lineality = canonical_basis(dim, lin);
    Rref lr = rref(QQ(), lin);
    std::set<IVec> rayset;
    for (const auto& r : dd.rays) {
        auto red = reduce_mod(r, lr);
        if (!is_zero_vec(red)) rayset.insert(primitive(red));
    }
    c.rays.assign(rayset.begin(), rayset.end());

    std::vector<std::vector<Q>> span = dd.lineality;
    for (const auto& r : c.rays) span.push_back(to_q(r));
    QMat spanm = as_mat(dim, span);
    QMat eq = nullspace(QQ(), spanm);
    c.equations = canonical_basis(dim, eq);
    std::size_t cdim = dim - c.equations.size();

    QMat eqm(0, dim);
    for (const auto& e : c.equations) eqm.append_row(to_q(e));
    Rref er = rref(QQ(), eqm);
    std::set<IVec> facetset;
    for (const auto& a : candidates) {
        bool all_zero = true;
        QMat tight = lin;
        if (tight.rows == 0) tight.cols = dim;
        for (const auto& r : c.rays) {
            Q v = qdot(a, to_q(r));
            if (v != 0) all_zero = false;
            else tight.append_row(to_q(r));
        }
        if (all_zero) continue;
        if (rank(QQ(), tight) + 1 != cdim) continue;
        auto red = reduce_mod(a, er);
        facetset.insert(primitive(red));
    }
    c.facets.assign(facetset.begin(), facetset.end());
    return c;
}

}  // namespace

Q dot(const IVec& a, const std::vector<Q>& x) {
    Q s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) s += a[i] * x[i];
    return s;
}

Z dot(const IVec& a, const IVec& x) {
    Z s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
    return s;
}

DDResult double_description(std::size_t dim, const std::vector<std::vector<Q>>& equations,
                            const std::vector<std::vector<Q>>& inequalities) {
    QMat em = as_mat(dim, equations);
    QMat l = em.rows == 0 ? identity(QQ(), dim) : nullspace(QQ(), em);
    std::vector<std::vector<Q>> lin = l.to_rows();
    std::vector<std::vector<Q>> rays;
    std::vector<std::vector<bool>> tight;
    std::size_t k = 0;
    for (const auto& a : inequalities) {
        if (is_zero_vec(a)) continue;
        std::size_t li = lin.size();
        for (std::size_t i = 0; i < lin.size(); ++i)
            if (qdot(a, lin[i]) != 0) {
                li = i;
                break;
            }
        if (li < lin.size()) {
            std::vector<Q> l0 = lin[li];
            Q al0 = qdot(a, l0);
            if (al0 < 0) {
                for (auto& x : l0) x = -x;
                al0 = -al0;
            }
            std::vector<std::vector<Q>> nl;
            for (std::size_t i = 0; i < lin.size(); ++i) {
                if (i == li) continue;
                Q f = qdot(a, lin[i]) / al0;
                std::vector<Q> v = lin[i];
                if (f != 0)
                    for (std::size_t j = 0; j < dim; ++j) v[j] -= f * l0[j];
                nl.push_back(scaled_primitive(v));
            }
            lin = nl;
            for (std::size_t i = 0; i < rays.size(); ++i) {
                Q f = qdot(a, rays[i]) / al0;
                if (f != 0) {
                    for (std::size_t j = 0; j < dim; ++j) rays[i][j] -= f * l0[j];
                    rays[i] = scaled_primitive(rays[i]);
                }
                tight[i].push_back(true);
            }
            std::vector<bool> t(k, true);
            t.push_back(false);
            rays.push_back(scaled_primitive(l0));
            tight.push_back(t);
        } else {
            std::vector<Q> val(rays.size());
            std::vector<std::size_t> pos, neg;
            for (std::size_t i = 0; i < rays.size(); ++i) {
                val[i] = qdot(a, rays[i]);
                if (val[i] > 0) pos.push_back(i);
                else if (val[i] < 0) neg.push_back(i);
            }
            std::vector<std::vector<Q>> nrays;
            std::vector<std::vector<bool>> ntight;
            for (std::size_t i = 0; i < rays.size(); ++i) {
                if (val[i] < 0) continue;
                nrays.push_back(rays[i]);
                auto t = tight[i];
                t.push_back(val[i] == 0);
                ntight.push_back(t);
            }
            for (auto p : pos)
                for (auto n : neg) {
                    std::vector<bool> common(k);
                    for (std::size_t j = 0; j < k; ++j) common[j] = tight[p][j] && tight[n][j];
                    bool adjacent = true;
                    for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
                        if (o == p || o == n) continue;
                        bool sup = true;
                        for (std::size_t j = 0; j < k; ++j)
                            if (common[j] && !tight[o][j]) {
                                sup = false;
                                break;
                            }
                        if (sup) adjacent = false;
                    }
                    if (!adjacent) continue;
                    std::vector<Q> v(dim);
                    for (std::size_t j = 0; j < dim; ++j) v[j] = val[p] * rays[n][j] - val[n] * rays[p][j];
                    nrays.push_back(scaled_primitive(v));
                    common.push_back(true);
                    ntight.push_back(common);
                }
            rays = std::move(nrays);
            tight = std::move(ntight);
        }
        ++k;
    }
    return DDResult{lin, rays};
}

Cone Cone::from_constraints(std::size_t dim, const std::vector<IVec>& equations,
                            const std::vector<IVec>& inequalities) {
    for (const auto& v : equations)
        if (v.size() != dim) throw std::invalid_argument("equation length mismatch");
    for (const auto& v : inequalities)
        if (v.size() != dim) throw std::invalid_argument("inequality length mismatch");
    auto ineq = as_q(inequalities);
    DDResult dd = double_description(dim, as_q(equations), ineq);
    return assemble(dim, dd, ineq);
}

Cone Cone::from_generators(std::size_t dim, const std::vector<IVec>& rays, const std::vector<IVec>& lineality) {
    for (const auto& v : rays)
        if (v.size() != dim) throw std::invalid_argument("ray length mismatch");
    for (const auto& v : lineality)
        if (v.size() != dim) throw std::invalid_argument("lineality length mismatch");
    DDResult dual = double_description(dim, as_q(lineality), as_q(rays));
    std::vector<IVec> eqs, ineqs;
    for (const auto& l : dual.lineality) eqs.push_back(primitive(l));
    for (const auto& r : dual.rays) ineqs.push_back(primitive(r));
    return from_constraints(dim, eqs, ineqs);
}

bool Cone::contains(const std::vector<Q>& x) const {
    for (const auto& e : equations)
        if (dot(e, x) != 0) return false;
    for (const auto& f : facets)
        if (dot(f, x) < 0) return false;
    return true;
}

bool Cone::contains(const IVec& x) const { return contains(to_q(x)); }

std::vector<IVec> Cone::generators() const {
    std::vector<IVec> g = rays;
    for (const auto& l : lineality) {
        g.push_back(l);
        IVec m = l;
        for (auto& x : m) x = -x;
        g.push_back(m);
    }
    return g;
}

bool Cone::operator<(const Cone& o) const {
    if (dim != o.dim) return dim < o.dim;
    if (dimension() != o.dimension()) return dimension() < o.dimension();
    if (lineality != o.lineality) return lineality < o.lineality;
    return rays < o.rays;
}

Cone dual_cone(const Cone& c) { return Cone::from_constraints(c.dim, c.lineality, c.rays); }

Cone intersect(const Cone& a, const Cone& b) {
    std::vector<IVec> eqs = a.equations, ineqs = a.facets;
    eqs.insert(eqs.end(), b.equations.begin(), b.equations.end());
    ineqs.insert(ineqs.end(), b.facets.begin(), b.facets.end());
    return Cone::from_constraints(a.dim, eqs, ineqs);
}

bool is_face(const Cone& t, const Cone& c) {
    if (t.dim != c.dim) return false;
    auto tg = t.generators();
    for (const auto& g : tg)
        if (!c.contains(g)) return false;
    std::vector<const IVec*> z;
    for (const auto& f : c.facets) {
        bool tight = true;
        for (const auto& g : tg)
            if (dot(f, g) != 0) {
                tight = false;
                break;
            }
        if (tight) z.push_back(&f);
    }
    // the face of c cut out by z: lineality of c plus the rays tight on all of z
    auto in_t = [&](const IVec& v) { return t.contains(v); };
    for (const auto& l : c.lineality) {
        IVec m = l;
        for (auto& x : m) x = -x;
        if (!in_t(l) || !in_t(m)) return false;
    }
    for (const auto& r : c.rays) {
        bool tight = true;
        for (auto* f : z)
            if (dot(*f, r) != 0) {
                tight = false;
                break;
            }
        if (tight && !in_t(r)) return false;
    }
    return true;
}

bool relative_interiors_meet(const Cone& a, const Cone& b) {
    std::size_t d = a.dim;
    LinearProgram lp(d + 1);
    auto row = [&](const IVec& v, Q delta) {
        std::vector<Q> r(d + 1, Q(0));
        for (std::size_t j = 0; j < d; ++j) r[j] = v[j];
        r[d] = delta;
        return r;
    };
    for (const Cone* c : {&a, &b}) {
        for (const auto& e : c->equations) lp.add(row(e, 0), Rel::EQ, 0);
        for (const auto& f : c->facets) lp.add(row(f, -1), Rel::GE, 0);
    }
    std::vector<Q> cap(d + 1, Q(0));
    cap[d] = 1;
    lp.add(cap, Rel::LE, 1);
    lp.objective = cap;
    LpResult res = solve_lp(lp);
    return res.status == LpStatus::Optimal && res.value > 0;
}

bool is_smooth(const Cone& c) {
    ZMat m(0, c.dim);
    for (const auto& r : c.rays) m.append_row(r);
    if (!c.lineality.empty()) {
        // lattice basis of Z^dim intersected with the lineality space
        QMat l(0, c.dim);
        for (const auto& v : c.lineality) l.append_row(to_q(v));
        QMat perp = nullspace(QQ(), l);
        ZMat pz(0, c.dim);
        for (std::size_t i = 0; i < perp.rows; ++i) pz.append_row(primitive(perp.row(i)));
        ZMat k(c.dim, c.dim);
        if (pz.rows == 0)
            for (std::size_t i = 0; i < c.dim; ++i) k(i, i) = 1;
        else
            k = integer_kernel(pz);
        for (std::size_t i = 0; i < k.rows; ++i) m.append_row(k.row(i));
    }
    if (m.rows == 0) return true;
    auto inv = smith_invariants(m);
    if (inv.size() != m.rows) return false;
    for (const auto& d : inv)
        if (d != 1) return false;
    return true;
}

std::vector<Cone> faces(const Cone& c) {
    std::size_t nr = c.rays.size();
    std::vector<std::vector<bool>> facet_sets;
    for (const auto& f : c.facets) {
        std::vector<bool> s(nr);
        for (std::size_t i = 0; i < nr; ++i) s[i] = dot(f, c.rays[i]) == 0;
        facet_sets.push_back(s);
    }
    std::set<std::vector<bool>> seen;
    std::vector<std::vector<bool>> queue{std::vector<bool>(nr, true)};
    seen.insert(queue[0]);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        for (const auto& fs : facet_sets) {
            std::vector<bool> s(nr);
            for (std::size_t i = 0; i < nr; ++i) s[i] = queue[qi][i] && fs[i];
            if (seen.insert(s).second) queue.push_back(s);
        }
    }
    std::vector<Cone> out;
    for (const auto& s : queue) {
        std::vector<IVec> rs;
        for (std::size_t i = 0; i < nr; ++i)
            if (s[i]) rs.push_back(c.rays[i]);
        out.push_back(Cone::from_generators(c.dim, rs, c.lineality));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace chtouca
