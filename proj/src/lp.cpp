#include "chtouca/lp.hpp"

#include <stdexcept>

namespace chtouca {

namespace {

struct Tableau {
    std::vector<std::vector<Q>> t;  // m constraint rows then the objective row; last column is rhs
    std::vector<std::size_t> basis;
    std::size_t ncols = 0;          // number of variable columns

    std::size_t m() const { return basis.size(); }

    void pivot(std::size_t r, std::size_t c) {
        Q inv = Q(1) / t[r][c];
        for (auto& x : t[r])
            if (x != 0) x *= inv;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i == r || t[i][c] == 0) continue;
            Q f = t[i][c];
            for (std::size_t j = 0; j <= ncols; ++j)
                if (t[r][j] != 0) t[i][j] -= f * t[r][j];
        }
        basis[r] = c;
    }

    // Maximizes the objective row (stored as -c). Returns false when unbounded.
    bool run(std::size_t usable_cols) {
        auto& obj = t.back();
        for (;;) {
            std::size_t enter = usable_cols;
            for (std::size_t j = 0; j < usable_cols; ++j)
                if (obj[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter == usable_cols) return true;
            std::size_t leave = m();
            Q best;
            for (std::size_t i = 0; i < m(); ++i) {
                if (t[i][enter] <= 0) continue;
                Q ratio = t[i][ncols] / t[i][enter];
                if (leave == m() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m()) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
    const std::size_t n = lp.num_vars;
    if (lp.objective.size() != n) throw std::invalid_argument("objective length mismatch");
    // column layout: for each original variable a positive part, then a negative part if free
    std::vector<std::size_t> pos(n), negc(n, SIZE_MAX);
    std::size_t nc = 0;
    for (std::size_t j = 0; j < n; ++j) {
        pos[j] = nc++;
        if (!lp.nonneg[j]) negc[j] = nc++;
    }
    const std::size_t nstruct = nc;
    std::size_t m = lp.rows.size();
    std::vector<std::vector<Q>> rows(m);
    std::vector<Rel> rel(m);
    std::vector<Q> rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& row = lp.rows[i];
        if (row.coef.size() != n) throw std::invalid_argument("row length mismatch");
        bool flip = row.rhs < 0;
        rows[i].assign(nstruct, Q(0));
        for (std::size_t j = 0; j < n; ++j) {
            Q c = flip ? Q(-row.coef[j]) : row.coef[j];
            rows[i][pos[j]] = c;
            if (negc[j] != SIZE_MAX) rows[i][negc[j]] = -c;
        }
        rhs[i] = flip ? Q(-row.rhs) : row.rhs;
        rel[i] = row.rel;
        if (flip && rel[i] != Rel::EQ) rel[i] = rel[i] == Rel::LE ? Rel::GE : Rel::LE;
    }
    std::size_t nslack = 0, nart = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (rel[i] != Rel::EQ) ++nslack;
        if (rel[i] != Rel::LE) ++nart;
    }
    Tableau tb;
    tb.ncols = nstruct + nslack + nart;
    tb.t.assign(m + 1, std::vector<Q>(tb.ncols + 1, Q(0)));
    tb.basis.assign(m, 0);
    std::size_t s = nstruct, a = nstruct + nslack;
    const std::size_t art_begin = a;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < nstruct; ++j) tb.t[i][j] = rows[i][j];
        tb.t[i][tb.ncols] = rhs[i];
        if (rel[i] == Rel::LE) {
            tb.t[i][s] = 1;
            tb.basis[i] = s++;
        } else {
            if (rel[i] == Rel::GE) tb.t[i][s++] = -1;
            tb.t[i][a] = 1;
            tb.basis[i] = a++;
        }
    }
    LpResult res;
    if (nart > 0) {
        auto& obj = tb.t.back();
        for (std::size_t j = art_begin; j < tb.ncols; ++j) obj[j] = 1;
        for (std::size_t i = 0; i < m; ++i)
            if (tb.basis[i] >= art_begin)
                for (std::size_t j = 0; j <= tb.ncols; ++j) obj[j] -= tb.t[i][j];
        tb.run(tb.ncols);
        if (obj[tb.ncols] < 0) {
            res.status = LpStatus::Infeasible;
            return res;
        }
        // drive artificials out of the basis, dropping redundant rows
        for (std::size_t i = 0; i < tb.m();) {
            if (tb.basis[i] < art_begin) {
                ++i;
                continue;
            }
            std::size_t c = art_begin;
            for (std::size_t j = 0; j < art_begin; ++j)
                if (tb.t[i][j] != 0) {
                    c = j;
                    break;
                }
            if (c < art_begin) {
                tb.pivot(i, c);
                ++i;
            } else {
                tb.t.erase(tb.t.begin() + i);
                tb.basis.erase(tb.basis.begin() + i);
            }
        }
        for (auto& row : tb.t) {
            Q r = row[tb.ncols];
            row.resize(art_begin);
            row.push_back(r);
        }
        tb.ncols = art_begin;
    }
    auto& obj = tb.t.back();
    std::fill(obj.begin(), obj.end(), Q(0));
    for (std::size_t j = 0; j < n; ++j) {
        obj[pos[j]] = -lp.objective[j];
        if (negc[j] != SIZE_MAX) obj[negc[j]] = lp.objective[j];
    }
    for (std::size_t i = 0; i < tb.m(); ++i) {
        Q f = obj[tb.basis[i]];
        if (f == 0) continue;
        for (std::size_t j = 0; j <= tb.ncols; ++j) obj[j] -= f * tb.t[i][j];
    }
    if (!tb.run(tb.ncols)) {
        res.status = LpStatus::Unbounded;
        return res;
    }
    std::vector<Q> y(tb.ncols, Q(0));
    for (std::size_t i = 0; i < tb.m(); ++i) y[tb.basis[i]] = tb.t[i][tb.ncols];
    res.status = LpStatus::Optimal;
    res.value = obj[tb.ncols];
    res.x.assign(n, Q(0));
    for (std::size_t j = 0; j < n; ++j) {
        res.x[j] = y[pos[j]];
        if (negc[j] != SIZE_MAX) res.x[j] -= y[negc[j]];
    }
    return res;
}

}  // namespace chtouca
