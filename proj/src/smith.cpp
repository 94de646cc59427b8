#include "chtouca/smith.hpp"

#include "chtouca/field.hpp"
#include "chtouca/linalg.hpp"

#include <stdexcept>

namespace chtouca {

std::vector<Z> smith_invariants(const ZMat& a0) {
    ZMat a = a0;
    std::size_t m = a.rows, n = a.cols;
    std::vector<Z> out;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            // smallest nonzero entry in the remaining block
            std::size_t pi = m, pj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (a(i, j) != 0 && (pi == m || abs(a(i, j)) < abs(a(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == m) return out;
            for (std::size_t j = 0; j < n; ++j) std::swap(a(t, j), a(pi, j));
            for (std::size_t i = 0; i < m; ++i) std::swap(a(i, t), a(i, pj));
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a(i, t) == 0) continue;
                Z q;
                mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
                for (std::size_t j = t; j < n; ++j) a(i, j) -= q * a(t, j);
                if (a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a(t, j) == 0) continue;
                Z q;
                mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
                for (std::size_t i = t; i < m; ++i) a(i, j) -= q * a(i, t);
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            // pivot must divide the rest of the block
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        for (std::size_t k = t; k < n; ++k) a(t, k) += a(i, k);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        out.push_back(abs(a(t, t)));
    }
    return out;
}

std::size_t integer_rank(const ZMat& a) { return smith_invariants(a).size(); }

ColumnEchelon column_echelon(const ZMat& a) {
    ColumnEchelon ce;
    ce.h = a;
    std::size_t n = a.cols;
    ce.u = ZMat(n, n);
    for (std::size_t i = 0; i < n; ++i) ce.u(i, i) = 1;
    auto colop = [&](std::size_t j1, std::size_t j2, const Z& p, const Z& q, const Z& r, const Z& s) {
        // (c1, c2) <- (p c1 + q c2, r c1 + s c2)
        for (ZMat* m : {&ce.h, &ce.u})
            for (std::size_t i = 0; i < m->rows; ++i) {
                Z x = (*m)(i, j1), y = (*m)(i, j2);
                (*m)(i, j1) = p * x + q * y;
                (*m)(i, j2) = r * x + s * y;
            }
    };
    std::size_t c = 0;
    for (std::size_t i = 0; i < a.rows && c < n; ++i) {
        for (std::size_t j = c + 1; j < n; ++j) {
            if (ce.h(i, j) == 0) continue;
            Z x = ce.h(i, c), y = ce.h(i, j), g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
            // new c = s*c + t*j (entry g); new j = -(y/g) c + (x/g) j (entry 0); det = 1
            colop(c, j, s, t, Z(-y / g), Z(x / g));
        }
        if (ce.h(i, c) != 0) {
            if (ce.h(i, c) < 0) colop(c, c, Z(-1), Z(0), Z(-1), Z(0));
            ++c;
        }
    }
    ce.rank = c;
    return ce;
}

ZMat integer_kernel(const ZMat& a) {
    ColumnEchelon ce = column_echelon(a);
    ZMat k(0, a.cols);
    for (std::size_t j = ce.rank; j < a.cols; ++j) k.append_row(ce.u.col(j));
    if (k.rows == 0) k.cols = a.cols;
    return k;
}

ZMat complete_to_unimodular(const ZMat& rows) {
    ColumnEchelon ce = column_echelon(rows);
    if (ce.rank != rows.rows) throw std::invalid_argument("rows are not independent");
    ZMat w = zinverse_unimodular(ce.u);
    // rows = [H | 0] * w, so the first k rows of w span the same lattice when H is unimodular
    ZMat hk(rows.rows, rows.rows);
    for (std::size_t i = 0; i < rows.rows; ++i)
        for (std::size_t j = 0; j < rows.rows; ++j) hk(i, j) = ce.h(i, j);
    Z d = zdet(hk);
    if (abs(d) != 1) throw std::invalid_argument("sublattice is not saturated");
    return w.transpose();
}

ZMat zmul(const ZMat& a, const ZMat& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matrix size mismatch");
    ZMat c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

std::vector<Z> zmul_vec(const ZMat& a, const std::vector<Z>& x) {
    std::vector<Z> y(a.rows, Z(0));
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) y[i] += a(i, j) * x[j];
    return y;
}

static QMat to_qmat(const ZMat& a) {
    QMat q(a.rows, a.cols);
    for (std::size_t i = 0; i < a.a.size(); ++i) q.a[i] = Q(a.a[i]);
    return q;
}

Z zdet(const ZMat& a) {
    Q d = det(Field::rational(), to_qmat(a));
    return d.get_num();
}

ZMat zinverse_unimodular(const ZMat& a) {
    QMat inv = inverse(Field::rational(), to_qmat(a));
    ZMat out(a.rows, a.cols);
    for (std::size_t i = 0; i < inv.a.size(); ++i) {
        if (inv.a[i].get_den() != 1) throw std::invalid_argument("matrix is not unimodular");
        out.a[i] = inv.a[i].get_num();
    }
    return out;
}

}  // namespace chtouca
