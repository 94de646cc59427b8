#include "chtouca/hn.hpp"

#include "chtouca/error.hpp"

#include <algorithm>
#include <functional>

namespace chtouca {

LatticeOrder lattice_order(const SubobjectLattice& lat) {
    std::size_t m = lat.records.size();
    if (lat.r < 0) throw InvalidData("rank must be nonnegative");
    LatticeOrder o;
    o.leq.assign(m, std::vector<bool>(m, false));
    for (std::size_t i = 0; i < m; ++i) {
        o.leq[i][i] = true;
        if (lat.records[i].rank < 0 || lat.records[i].rank > lat.r) throw InvalidData("sub-object rank out of range");
    }
    for (auto [a, b] : lat.relations) {
        if (a >= m || b >= m) throw InvalidData("relation refers to an unknown record");
        o.leq[a][b] = true;
    }
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i = 0; i < m; ++i)
            if (o.leq[i][k])
                for (std::size_t j = 0; j < m; ++j)
                    if (o.leq[k][j]) o.leq[i][j] = true;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (i != j && o.leq[i][j]) {
                if (o.leq[j][i]) throw InvalidData("containment is not antisymmetric");
                if (lat.records[i].rank >= lat.records[j].rank) throw InvalidData("rank is not strictly monotone");
            }
    bool found_zero = false, found_top = false;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& rec = lat.records[i];
        if (rec.rank == 0 && rec.deg0 == 0 && rec.deg1 == 0 && !found_zero) {
            o.zero = i;
            found_zero = true;
        }
        if (rec.rank == lat.r && !found_top) {
            o.top = i;
            found_top = true;
        }
    }
    if (!found_zero || !found_top) throw InvalidData("lattice needs the zero and total objects");
    for (std::size_t i = 0; i < m; ++i)
        if (!o.leq[o.zero][i] || !o.leq[i][o.top]) throw InvalidData("every record must lie between zero and top");
    return o;
}

Q deg_alpha(const SubobjectRecord& rec, const Q& alpha) { return (1 - alpha) * Q(rec.deg0) + alpha * Q(rec.deg1); }

Polygon polygon_of_filtration(const SubobjectLattice& lat, const std::vector<std::size_t>& chain, const Q& alpha) {
    LatticeOrder o = lattice_order(lat);
    if (chain.size() < 2 || chain.front() != o.zero || chain.back() != o.top)
        throw NotAChain("chain must run from the zero object to the top");
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        if (chain[i + 1] >= lat.records.size() || chain[i] == chain[i + 1] || !o.leq[chain[i]][chain[i + 1]])
            throw NotAChain("members are not strictly increasing");
    }
    int r = lat.r;
    Q top = deg_alpha(lat.records[o.top], alpha);
    Polygon p;
    p.r = r;
    p.values.assign(static_cast<std::size_t>(r) + 1, Q(0));
    if (r == 0) return p;
    std::vector<std::pair<int, Q>> knots;
    for (auto i : chain) {
        const auto& rec = lat.records[i];
        knots.emplace_back(rec.rank, deg_alpha(rec, alpha) - make_q(rec.rank, r) * top);
    }
    knots.front().second = 0;
    knots.back().second = 0;
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        auto [x0, y0] = knots[k];
        auto [x1, y1] = knots[k + 1];
        for (int x = x0; x <= x1; ++x) p.values[static_cast<std::size_t>(x)] = y0 + (y1 - y0) * make_q(x - x0, x1 - x0);
    }
    for (auto& v : p.values) v.canonicalize();
    return p;
}

std::vector<std::vector<std::size_t>> all_chains(const SubobjectLattice& lat) {
    LatticeOrder o = lattice_order(lat);
    std::size_t m = lat.records.size();
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur{o.zero};
    std::function<void()> rec = [&] {
        std::size_t last = cur.back();
        if (last == o.top) {
            if (out.size() >= kChainCap) throw TooLarge("more than 10^6 chains");
            out.push_back(cur);
            return;
        }
        for (std::size_t j = 0; j < m; ++j)
            if (j != last && o.leq[last][j]) {
                cur.push_back(j);
                rec();
                cur.pop_back();
            }
    };
    if (o.zero == o.top) return {{o.zero}};
    rec();
    std::sort(out.begin(), out.end());
    return out;
}

HnResult hn_polygon(const SubobjectLattice& lat, const Q& alpha) {
    auto chains = all_chains(lat);
    std::vector<Polygon> polys;
    for (const auto& c : chains) polys.push_back(chains.size() == 1 && c.size() == 1 ? Polygon{lat.r, {Q(0)}} : polygon_of_filtration(lat, c, alpha));
    Polygon best = polys.front();
    for (const auto& p : polys)
        for (std::size_t x = 0; x < best.values.size(); ++x) best.values[x] = std::max(best.values[x], p.values[x]);
    std::vector<std::size_t> achievers;
    for (std::size_t i = 0; i < polys.size(); ++i)
        if (polys[i] == best) achievers.push_back(i);
    if (achievers.empty()) throw NoDominantChain("no chain attains the pointwise maximum");
    std::size_t coarsest = achievers.front();
    for (auto i : achievers)
        if (chains[i].size() < chains[coarsest].size()) coarsest = i;
    for (auto i : achievers) {
        if (i == coarsest) continue;
        std::vector<std::size_t> a = chains[coarsest], b = chains[i];
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (!std::includes(b.begin(), b.end(), a.begin(), a.end()))
            throw NoDominantChain("the maximal polygon has no unique coarsest chain");
    }
    return {best, chains[coarsest]};
}

bool polygon_leq(const Polygon& p, const Polygon& q) {
    if (p.r != q.r || p.values.size() != q.values.size()) throw InvalidData("polygons have different lengths");
    for (std::size_t i = 0; i < p.values.size(); ++i)
        if (p.values[i] > q.values[i]) return false;
    return true;
}

bool is_mu_convex(const Polygon& p, const Q& mu) {
    for (int x = 1; x < p.r; ++x) {
        std::size_t i = static_cast<std::size_t>(x);
        if ((p.values[i] - p.values[i - 1]) - (p.values[i + 1] - p.values[i]) < mu) return false;
    }
    return true;
}

std::vector<Z> shifted_floor(const Polygon& p, const Z& d) {
    std::vector<Z> out;
    for (int x = 0; x <= p.r; ++x) out.push_back(floor_q(p.values[static_cast<std::size_t>(x)] + make_q(Z(x) * d, Z(p.r))));
    return out;
}

SplitResult split_truncation(const Polygon& p, const Z& d, const Composition& R) {
    int r = p.r;
    if (r < 1 || p.values.size() != static_cast<std::size_t>(r) + 1) throw InvalidData("polygon must have r+1 values");
    if (p.values.front() != 0 || p.values.back() != 0) throw InvalidData("polygon must vanish at 0 and r");
    if (!is_mu_convex(p, Q(2))) throw NotConvexEnough("truncation parameter is not 2-convex");
    auto parts = composition_parts(R, r);
    std::vector<int> b{0};
    for (int x : parts) b.push_back(b.back() + x);
    auto pt = shifted_floor(p, d);
    SplitResult res;
    std::size_t s = parts.size();
    for (std::size_t sg = 1; sg <= s; ++sg) {
        int lo = b[sg - 1], hi = b[sg], len = hi - lo;
        Z ds = sg == 1 ? pt[hi] : Z(pt[hi] - pt[lo] - 1);
        res.d_parts.push_back(ds);
        Polygon q;
        q.r = len;
        q.values.assign(static_cast<std::size_t>(len) + 1, Q(0));
        for (int x = 1; x <= len; ++x) {
            Q base = sg == 1 ? Q(pt[lo + x]) : Q(pt[lo + x] - pt[lo] - 1);
            Q v = base - make_q(Z(x) * ds, Z(len));
            v.canonicalize();
            q.values[static_cast<std::size_t>(x)] = v;
        }
        res.p_parts.push_back(q);
    }
    Z sum = 0;
    for (const auto& x : res.d_parts) sum += x;
    if (sum != d - Z(static_cast<long>(s)) + 1) throw std::logic_error("degree identity failed");
    return res;
}

SubobjectLattice random_supermodular_lattice(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> atoms_d(1, 3), coef(-4, 4), bonus(0, 3);
    int m = atoms_d(rng);
    std::vector<int> w(static_cast<std::size_t>(m), 1);
    int r = m;
    std::uniform_int_distribution<int> pick(0, m - 1);
    while (r < 5 && bonus(rng) > 1) {
        ++w[static_cast<std::size_t>(pick(rng))];
        ++r;
    }
    std::vector<std::vector<long>> a(2, std::vector<long>(static_cast<std::size_t>(m)));
    std::vector<std::vector<std::vector<long>>> bij(2, std::vector<std::vector<long>>(static_cast<std::size_t>(m), std::vector<long>(static_cast<std::size_t>(m), 0)));
    for (int t = 0; t < 2; ++t)
        for (int i = 0; i < m; ++i) {
            a[t][i] = coef(rng);
            for (int j = i + 1; j < m; ++j) bij[t][i][j] = bonus(rng);
        }
    SubobjectLattice lat;
    lat.r = r;
    unsigned n = 1u << m;
    for (unsigned s = 0; s < n; ++s) {
        SubobjectRecord rec;
        rec.id = "S" + std::to_string(s);
        long d[2] = {0, 0};
        for (int i = 0; i < m; ++i) {
            if (!(s >> i & 1)) continue;
            rec.rank += w[static_cast<std::size_t>(i)];
            for (int t = 0; t < 2; ++t) {
                d[t] += a[t][i];
                for (int j = i + 1; j < m; ++j)
                    if (s >> j & 1) d[t] += bij[t][i][j];
            }
        }
        rec.deg0 = d[0];
        rec.deg1 = d[1];
        lat.records.push_back(rec);
    }
    for (unsigned s = 0; s < n; ++s)
        for (int i = 0; i < m; ++i)
            if (!(s >> i & 1)) lat.relations.emplace_back(s, s | (1u << i));
    return lat;
}

}  // namespace chtouca
