#include "chtouca/gluing.hpp"

#include "chtouca/error.hpp"
#include "chtouca/linalg.hpp"

#include <algorithm>

namespace chtouca {

namespace {

std::vector<std::size_t> block_columns(int r, int n, Subset J) {
    std::vector<std::size_t> cols;
    for (int j = 0; j <= n; ++j)
        if (J >> j & 1)
            for (int k = 0; k < r; ++k) cols.push_back(static_cast<std::size_t>(j * r + k));
    return cols;
}

QMat select_columns(const QMat& m, const std::vector<std::size_t>& cols) {
    QMat out(m.rows, cols.size());
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t c = 0; c < cols.size(); ++c) out(i, c) = m(i, cols[c]);
    return out;
}

Subset all_blocks(int n) { return (Subset(1) << (n + 1)) - 1; }

}  // namespace

GluedGraphFamily normalize(const GluedGraphFamily& fam) {
    if (fam.r < 1 || fam.n < 0) throw InvalidData("family needs r >= 1 and n >= 0");
    if (fam.paving.r != fam.r || fam.paving.n != fam.n) throw InvalidData("paving does not match r and n");
    if (fam.W.size() != fam.paving.paves.size()) throw InvalidData("need one subspace per pave");
    Simplex s(fam.r, fam.n);
    validate_paving(s, fam.paving);
    GluedGraphFamily out = fam;
    std::size_t cols = static_cast<std::size_t>(fam.r * (fam.n + 1));
    for (auto& w : out.W) {
        if (w.cols != cols) throw InvalidData("subspace has the wrong ambient dimension");
        for (const auto& x : w.a)
            if (!fam.field.contains(x)) throw InvalidData("entry outside the field");
        w = row_space(fam.field, w);
        if (w.rows != static_cast<std::size_t>(fam.r)) throw InvalidData("subspace must have dimension r");
    }
    return out;
}

QMat restrict_to(const Field& f, const QMat& w, int r, int n, Subset J) {
    auto in = block_columns(r, n, J), out = block_columns(r, n, all_blocks(n) & ~J);
    // combinations c with c W vanishing outside J
    QMat coeffs = out.empty() ? identity(f, w.rows) : nullspace(f, select_columns(w, out).transpose());
    return row_space(f, select_columns(mul(f, coeffs, w), in));
}

QMat project_to(const Field& f, const QMat& w, int r, int n, Subset J) {
    return row_space(f, select_columns(w, block_columns(r, n, J)));
}

std::vector<Wall> shared_walls(const Simplex& s, const Paving& p) {
    std::vector<Wall> walls;
    int n = s.n();
    Subset full = all_blocks(n);
    for (std::size_t a = 0; a < p.paves.size(); ++a)
        for (std::size_t b = 0; b < p.paves.size(); ++b) {
            if (a == b) continue;
            for (Subset J = 2; J < full; J += 2) {
                int lo = p.paves[a].d[J];
                int hi = -p.paves[b].d[full & ~J] + s.r();
                if (lo != hi) continue;
                std::vector<std::size_t> common;
                std::set_intersection(p.paves[a].points.begin(), p.paves[a].points.end(), p.paves[b].points.begin(),
                                      p.paves[b].points.end(), std::back_inserter(common));
                common.erase(std::remove_if(common.begin(), common.end(),
                                            [&](std::size_t i) { return subset_sum(s.point(i), J) != lo; }),
                             common.end());
                if (common.empty() || affine_dimension(s, common) + 1 != static_cast<std::size_t>(n)) continue;
                walls.push_back({a, b, J, lo});
            }
        }
    return walls;
}

GluingReport check_dimension_condition(const GluedGraphFamily& fam0) {
    GluedGraphFamily fam = normalize(fam0);
    const Field& f = fam.field;
    GluingReport rep;
    Subset full = all_blocks(fam.n);
    for (std::size_t i = 0; i < fam.W.size(); ++i)
        for (Subset J = 0; J <= full; ++J) {
            auto other = block_columns(fam.r, fam.n, full & ~J);
            std::size_t dim = static_cast<std::size_t>(fam.r) - (other.empty() ? 0 : rank(f, select_columns(fam.W[i], other)));
            int want = fam.paving.paves[i].d[J];
            if (dim != static_cast<std::size_t>(want))
                rep.violations.push_back({i, i, J,
                                          "dim(W ∩ V^J) = " + std::to_string(dim) + ", expected " + std::to_string(want)});
        }
    rep.pass = rep.violations.empty();
    return rep;
}

GluingReport check_gluing_condition(const GluedGraphFamily& fam0) {
    GluedGraphFamily fam = normalize(fam0);
    const Field& f = fam.field;
    GluingReport rep;
    Simplex s(fam.r, fam.n);
    Subset full = all_blocks(fam.n);
    for (const auto& w : shared_walls(s, fam.paving)) {
        const QMat &up = fam.W[w.upper], &low = fam.W[w.lower];
        Subset Jc = full & ~w.J;
        if (restrict_to(f, up, fam.r, fam.n, w.J) != project_to(f, low, fam.r, fam.n, w.J))
            rep.violations.push_back({w.upper, w.lower, w.J, "i_J^{-1}(W') differs from pr_J(W'')"});
        if (project_to(f, up, fam.r, fam.n, Jc) != restrict_to(f, low, fam.r, fam.n, Jc))
            rep.violations.push_back({w.upper, w.lower, w.J, "pr_{J^c}(W') differs from i_{J^c}^{-1}(W'')"});
    }
    rep.pass = rep.violations.empty();
    return rep;
}

GluedGraphFamily family_from_stratum(const StratumData& d0) {
    StratumData d = normalize(d0);
    const Field& f = d.field;
    int r = d.r;
    Simplex s(r, 1);
    std::vector<int> b{0};
    b.insert(b.end(), d.R.begin(), d.R.end());
    b.push_back(r);
    std::size_t count = b.size() - 1;
    std::vector<Pave> paves;
    std::vector<QMat> spaces;
    std::size_t ur = static_cast<std::size_t>(r);
    for (std::size_t sg = 1; sg <= count; ++sg) {
        std::vector<Point> pts;
        for (int x = b[sg - 1]; x <= b[sg]; ++x) pts.push_back({r - x, x});
        paves.push_back(pave_from_points(s, pts));
        QMat w(0, 2 * ur);
        auto pad = [&](const std::vector<Q>& x, const std::vector<Q>& y) {
            std::vector<Q> row(x);
            row.insert(row.end(), y.begin(), y.end());
            w.append_row(row);
        };
        std::vector<Q> zero(ur, f.zero());
        for (std::size_t i = 0; i < d.V[sg].rows; ++i) pad(d.V[sg].row(i), zero);
        QMat e = quotient_basis(f, d.V[sg - 1], d.V[sg]), fb = quotient_basis(f, d.W[sg], d.W[sg - 1]);
        const QMat& B = d.v[sg - 1];
        for (std::size_t j = 0; j < e.rows; ++j) {
            std::vector<Q> y(ur, f.zero());
            for (std::size_t i = 0; i < fb.rows; ++i)
                for (std::size_t c = 0; c < ur; ++c) y[c] = f.add(y[c], f.mul(B(i, j), fb(i, c)));
            pad(e.row(j), y);
        }
        for (std::size_t i = 0; i < d.W[sg - 1].rows; ++i) pad(zero, d.W[sg - 1].row(i));
        spaces.push_back(row_space(f, w));
    }
    GluedGraphFamily fam;
    fam.field = f;
    fam.r = r;
    fam.n = 1;
    std::vector<std::size_t> order(count);
    for (std::size_t i = 0; i < count; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return paves[x] < paves[y]; });
    fam.paving.r = r;
    fam.paving.n = 1;
    for (auto i : order) {
        fam.paving.paves.push_back(paves[i]);
        fam.W.push_back(spaces[i]);
    }
    return fam;
}

}  // namespace chtouca
