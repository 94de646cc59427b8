#include "chtouca/linalg.hpp"

#include "chtouca/error.hpp"

namespace chtouca {

Rref rref(const Field& f, QMat m) {
    Rref out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t piv = r;
        while (piv < m.rows && f.is_zero(m(piv, c))) ++piv;
        if (piv == m.rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(r, j));
        Q inv = f.inv(m(r, c));
        for (std::size_t j = c; j < m.cols; ++j) m(r, j) = f.mul(m(r, j), inv);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || f.is_zero(m(i, c))) continue;
            Q factor = m(i, c);
            for (std::size_t j = c; j < m.cols; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.m = std::move(m);
    return out;
}

std::size_t rank(const Field& f, const QMat& m) { return rref(f, m).pivots.size(); }

QMat nullspace(const Field& f, const QMat& m) {
    Rref rr = rref(f, m);
    std::vector<bool> is_piv(m.cols, false);
    for (auto p : rr.pivots) is_piv[p] = true;
    QMat out(0, m.cols);
    for (std::size_t free = 0; free < m.cols; ++free) {
        if (is_piv[free]) continue;
        std::vector<Q> v(m.cols, Q(0));
        v[free] = f.one();
        for (std::size_t i = 0; i < rr.pivots.size(); ++i) v[rr.pivots[i]] = f.neg(rr.m(i, free));
        out.append_row(v);
    }
    return out;
}

QMat row_space(const Field& f, const QMat& m) {
    Rref rr = rref(f, m);
    QMat out(0, m.cols);
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) out.append_row(rr.m.row(i));
    return out;
}

QMat intersect_rows(const Field& f, const QMat& a, const QMat& b) {
    // x = s a = t b  <=>  [a; -b]^T (s, t) = 0
    std::size_t n = a.cols;
    QMat stacked(n, a.rows + b.rows);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < a.rows; ++i) stacked(j, i) = a(i, j);
        for (std::size_t i = 0; i < b.rows; ++i) stacked(j, a.rows + i) = f.neg(b(i, j));
    }
    QMat ker = nullspace(f, stacked);
    QMat gens(0, n);
    for (std::size_t k = 0; k < ker.rows; ++k) {
        std::vector<Q> v(n, Q(0));
        for (std::size_t i = 0; i < a.rows; ++i) {
            if (f.is_zero(ker(k, i))) continue;
            for (std::size_t j = 0; j < n; ++j) v[j] = f.add(v[j], f.mul(ker(k, i), a(i, j)));
        }
        gens.append_row(v);
    }
    if (gens.rows == 0) return QMat(0, n);
    return row_space(f, gens);
}

QMat mul(const Field& f, const QMat& a, const QMat& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matrix size mismatch");
    QMat c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            if (f.is_zero(a(i, k))) continue;
            for (std::size_t j = 0; j < b.cols; ++j) c(i, j) = f.add(c(i, j), f.mul(a(i, k), b(k, j)));
        }
    return c;
}

std::vector<Q> mul_vec(const Field& f, const QMat& a, const std::vector<Q>& x) {
    std::vector<Q> y(a.rows, Q(0));
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) y[i] = f.add(y[i], f.mul(a(i, j), x[j]));
    return y;
}

QMat identity(const Field& f, std::size_t n) {
    QMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
}

QMat scale(const Field& f, const QMat& a, const Q& c) {
    QMat m = a;
    for (auto& x : m.a) x = f.mul(x, c);
    return m;
}

QMat inverse(const Field& f, const QMat& m) {
    if (m.rows != m.cols) throw Singular("non-square matrix");
    std::size_t n = m.rows;
    QMat aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = f.one();
    }
    Rref rr = rref(f, aug);
    if (rr.pivots.size() < n || (n > 0 && rr.pivots[n - 1] != n - 1)) throw Singular("matrix is not invertible");
    QMat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = rr.m(i, n + j);
    return inv;
}

Q det(const Field& f, const QMat& m0) {
    if (m0.rows != m0.cols) throw std::invalid_argument("det of non-square matrix");
    QMat m = m0;
    std::size_t n = m.rows;
    Q d = f.one();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && f.is_zero(m(piv, c))) ++piv;
        if (piv == n) return f.zero();
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
            d = f.neg(d);
        }
        d = f.mul(d, m(c, c));
        Q inv = f.inv(m(c, c));
        for (std::size_t i = c + 1; i < n; ++i) {
            if (f.is_zero(m(i, c))) continue;
            Q factor = f.mul(m(i, c), inv);
            for (std::size_t j = c; j < n; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(c, j)));
        }
    }
    return d;
}

std::optional<std::vector<Q>> solve(const Field& f, const QMat& a, const std::vector<Q>& b) {
    QMat aug(a.rows, a.cols + 1);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < a.cols; ++j) aug(i, j) = a(i, j);
        aug(i, a.cols) = b[i];
    }
    Rref rr = rref(f, aug);
    if (!rr.pivots.empty() && rr.pivots.back() == a.cols) return std::nullopt;
    std::vector<Q> x(a.cols, Q(0));
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) x[rr.pivots[i]] = rr.m(i, a.cols);
    return x;
}

QMat quotient_basis(const Field& f, const QMat& a, const QMat& b) {
    Rref rb = rref(f, b);
    QMat ra = row_space(f, a);
    QMat red(0, a.cols);
    for (std::size_t i = 0; i < ra.rows; ++i) {
        std::vector<Q> v = ra.row(i);
        for (std::size_t k = 0; k < rb.pivots.size(); ++k) {
            Q c = v[rb.pivots[k]];
            if (f.is_zero(c)) continue;
            for (std::size_t j = 0; j < a.cols; ++j) v[j] = f.sub(v[j], f.mul(c, rb.m(k, j)));
        }
        red.append_row(v);
    }
    if (red.rows == 0) return QMat(0, a.cols);
    return row_space(f, red);
}

std::vector<Q> coordinates(const Field& f, const QMat& basis, const std::vector<Q>& x) {
    auto sol = solve(f, basis.transpose(), x);
    if (!sol) throw InvalidData("vector not in the span of the basis");
    return *sol;
}

}  // namespace chtouca
