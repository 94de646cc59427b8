#include "chtouca/complete_homs.hpp"

#include "chtouca/error.hpp"
#include "chtouca/linalg.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace chtouca {

namespace {

std::vector<int> bounds(const Composition& R, int r) {
    std::vector<int> b{0};
    b.insert(b.end(), R.begin(), R.end());
    b.push_back(r);
    return b;
}

void check_composition(const Composition& R, int r) {
    int prev = 0;
    for (int x : R) {
        if (x <= prev || x >= r) throw InvalidData("composition must be an increasing subset of 1..r-1");
        prev = x;
    }
}

std::map<std::vector<int>, std::size_t> subset_index(int r, int rho) {
    std::map<std::vector<int>, std::size_t> m;
    auto ss = subsets(r, rho);
    for (std::size_t i = 0; i < ss.size(); ++i) m[ss[i]] = i;
    return m;
}

bool is_zero_mat(const QMat& m) {
    return std::all_of(m.a.begin(), m.a.end(), [](const Q& x) { return x == 0; });
}

// rows of a as the columns of an r x r matrix, in order
QMat columns_of(const std::vector<QMat>& blocks, int r) {
    QMat m(static_cast<std::size_t>(r), static_cast<std::size_t>(r));
    std::size_t c = 0;
    for (const auto& b : blocks)
        for (std::size_t i = 0; i < b.rows; ++i, ++c)
            for (std::size_t j = 0; j < b.cols; ++j) m(j, c) = b(i, j);
    return m;
}

QMat empty_space(int r) { return QMat(0, static_cast<std::size_t>(r)); }

bool contained(const Field& f, const QMat& small, const QMat& big) {
    if (small.rows == 0) return true;
    QMat both = big;
    for (std::size_t i = 0; i < small.rows; ++i) both.append_row(small.row(i));
    return rank(f, both) == rank(f, big);
}

// product over k < rho, k not in R, of lambda_k^{rho-k}
Q lambda_weight(const Field& f, const std::vector<Q>& lambda, const Composition& R, int rho) {
    Q w = f.one();
    for (int k = 1; k < rho; ++k)
        if (std::find(R.begin(), R.end(), k) == R.end()) w = f.mul(w, f.pow(lambda[k - 1], rho - k));
    return w;
}

struct Adapted {
    QMat E, F;  // adapted bases as columns
};

Adapted adapted_bases(const Field& f, const StratumData& d) {
    std::size_t s = d.R.size() + 1;
    std::vector<QMat> eb, fb;
    for (std::size_t sg = 1; sg <= s; ++sg) {
        eb.push_back(quotient_basis(f, d.V[sg - 1], d.V[sg]));
        fb.push_back(quotient_basis(f, d.W[sg], d.W[sg - 1]));
    }
    return {columns_of(eb, d.r), columns_of(fb, d.r)};
}

// u_rho in adapted bases before the lambda normalization
QMat adapted_block(const Field& f, const StratumData& d, int rho) {
    auto b = bounds(d.R, d.r);
    std::size_t sg = 1;
    while (b[sg] < rho) ++sg;
    int lo = b[sg - 1];
    Q c = f.one();
    for (std::size_t t = 1; t < sg; ++t) c = f.mul(c, det(f, d.v[t - 1]));
    int part = b[sg] - lo;
    QMat wedge = exterior_power(f, d.v[sg - 1], rho - lo);
    auto inner = subsets(part, rho - lo);
    auto idx = subset_index(d.r, rho);
    std::size_t n = idx.size();
    QMat u(n, n);
    for (std::size_t i = 0; i < inner.size(); ++i)
        for (std::size_t j = 0; j < inner.size(); ++j) {
            std::vector<int> I, J;
            for (int k = 0; k < lo; ++k) {
                I.push_back(k);
                J.push_back(k);
            }
            for (int x : inner[i]) I.push_back(lo + x);
            for (int x : inner[j]) J.push_back(lo + x);
            u(idx[I], idx[J]) = f.mul(c, wedge(i, j));
        }
    return u;
}

}  // namespace

std::vector<int> composition_parts(const Composition& R, int r) {
    check_composition(R, r);
    auto b = bounds(R, r);
    std::vector<int> parts;
    for (std::size_t i = 1; i < b.size(); ++i) parts.push_back(b[i] - b[i - 1]);
    return parts;
}

Composition composition_from_parts(const std::vector<int>& parts) {
    Composition R;
    int acc = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] <= 0) throw InvalidData("parts must be positive");
        acc += parts[i];
        if (i + 1 < parts.size()) R.push_back(acc);
    }
    return R;
}

std::vector<std::vector<int>> subsets(int r, int rho) {
    std::vector<std::vector<int>> out;
    if (rho < 0 || rho > r) return out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == rho) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < r; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

QMat exterior_power(const Field& f, const QMat& a, int rho) {
    if (rho < 0 || static_cast<std::size_t>(rho) > std::min(a.rows, a.cols))
        throw InvalidData("exterior degree out of range");
    auto rs = subsets(static_cast<int>(a.rows), rho), cs = subsets(static_cast<int>(a.cols), rho);
    QMat out(rs.size(), cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = 0; j < cs.size(); ++j) {
            QMat minor(static_cast<std::size_t>(rho), static_cast<std::size_t>(rho));
            for (int x = 0; x < rho; ++x)
                for (int y = 0; y < rho; ++y) minor(x, y) = a(rs[i][x], cs[j][y]);
            out(i, j) = rho == 0 ? f.one() : det(f, minor);
        }
    return out;
}

bool satisfies_relations(const CompleteHom& h) {
    const Field& f = h.field;
    if (h.r < 1 || h.u.size() != static_cast<std::size_t>(h.r) || h.lambda.size() != static_cast<std::size_t>(h.r - 1))
        return false;
    for (int rho = 1; rho <= h.r; ++rho) {
        std::size_t n = subsets(h.r, rho).size();
        const QMat& u = h.u[rho - 1];
        if (u.rows != n || u.cols != n || is_zero_mat(u)) return false;
        Q w = f.one();
        for (int k = 1; k < rho; ++k) w = f.mul(w, f.pow(h.lambda[k - 1], rho - k));
        if (exterior_power(f, h.u[0], rho) != scale(f, u, w)) return false;
    }
    return true;
}

CompleteHom complete_from_open(const Field& f, const QMat& u1, const std::vector<Q>& lambda) {
    int r = static_cast<int>(u1.rows);
    if (u1.rows != u1.cols || r < 1) throw InvalidData("u_1 must be square");
    if (lambda.size() != static_cast<std::size_t>(r - 1)) throw InvalidData("need r-1 lambda values");
    if (f.is_zero(det(f, u1))) throw Singular("u_1 is not invertible");
    for (const auto& l : lambda)
        if (f.is_zero(l)) throw ZeroLambda("lambda must be nonzero on the open stratum");
    CompleteHom h;
    h.field = f;
    h.r = r;
    h.lambda = lambda;
    for (int rho = 1; rho <= r; ++rho) {
        Q w = f.one();
        for (int k = 1; k < rho; ++k) w = f.mul(w, f.pow(lambda[k - 1], rho - k));
        h.u.push_back(scale(f, exterior_power(f, u1, rho), f.inv(w)));
    }
    return h;
}

Composition stratum_of(const CompleteHom& h) {
    Composition R;
    for (std::size_t k = 0; k < h.lambda.size(); ++k)
        if (h.field.is_zero(h.lambda[k])) R.push_back(static_cast<int>(k + 1));
    return R;
}

StratumData normalize(const StratumData& d) {
    const Field& f = d.field;
    int r = d.r;
    if (r < 1) throw InvalidData("r must be positive");
    check_composition(d.R, r);
    auto b = bounds(d.R, r);
    std::size_t s = d.R.size() + 1;
    if (d.V.size() != s + 1 || d.W.size() != s + 1 || d.v.size() != s)
        throw InvalidData("filtrations must have s+1 terms and s graded maps");
    if (d.lambda.size() != static_cast<std::size_t>(r - 1)) throw InvalidData("need r-1 lambda values");
    StratumData out = d;
    for (std::size_t sg = 0; sg <= s; ++sg) {
        if (d.V[sg].cols != static_cast<std::size_t>(r) || d.W[sg].cols != static_cast<std::size_t>(r))
            throw InvalidData("subspace has the wrong ambient dimension");
        out.V[sg] = row_space(f, d.V[sg]);
        out.W[sg] = row_space(f, d.W[sg]);
        if (out.V[sg].rows != static_cast<std::size_t>(r - b[sg])) throw InvalidData("V filtration has the wrong codimensions");
        if (out.W[sg].rows != static_cast<std::size_t>(b[sg])) throw InvalidData("W filtration has the wrong dimensions");
        if (sg > 0 && (!contained(f, out.V[sg], out.V[sg - 1]) || !contained(f, out.W[sg - 1], out.W[sg])))
            throw InvalidData("filtrations are not nested");
    }
    for (std::size_t sg = 1; sg <= s; ++sg) {
        std::size_t part = static_cast<std::size_t>(b[sg] - b[sg - 1]);
        if (d.v[sg - 1].rows != part || d.v[sg - 1].cols != part) throw InvalidData("graded map has the wrong size");
        if (f.is_zero(det(f, d.v[sg - 1]))) throw InvalidData("graded map is not invertible");
    }
    for (int k = 1; k < r; ++k) {
        bool inR = std::find(d.R.begin(), d.R.end(), k) != d.R.end();
        if (inR && !f.is_zero(d.lambda[k - 1])) throw InvalidData("lambda must vanish on R");
        if (!inR && f.is_zero(d.lambda[k - 1])) throw InvalidData("free lambda must be nonzero");
    }
    for (const auto& m : d.v)
        for (const auto& x : m.a)
            if (!f.contains(x)) throw InvalidData("entry outside the field");
    return out;
}

CompleteHom build_stratum_point(const StratumData& d0) {
    StratumData d = normalize(d0);
    const Field& f = d.field;
    Adapted ab = adapted_bases(f, d);
    CompleteHom h;
    h.field = f;
    h.r = d.r;
    h.lambda = d.lambda;
    for (int rho = 1; rho <= d.r; ++rho) {
        QMat ua = adapted_block(f, d, rho);
        QMat u = mul(f, mul(f, exterior_power(f, ab.F, rho), ua), inverse(f, exterior_power(f, ab.E, rho)));
        h.u.push_back(scale(f, u, f.inv(lambda_weight(f, d.lambda, d.R, rho))));
    }
    return h;
}

StratumData stratum_data(const CompleteHom& h) {
    const Field& f = h.field;
    int r = h.r;
    if (r < 1 || h.u.size() != static_cast<std::size_t>(r) || h.lambda.size() != static_cast<std::size_t>(r - 1))
        throw InvalidData("complete homomorphism has the wrong shape");
    for (int rho = 1; rho <= r; ++rho) {
        std::size_t n = subsets(r, rho).size();
        if (h.u[rho - 1].rows != n || h.u[rho - 1].cols != n) throw InvalidData("u_rho has the wrong size");
        if (is_zero_mat(h.u[rho - 1])) throw NotOnStratum("u_rho vanishes");
    }
    StratumData d;
    d.field = f;
    d.r = r;
    d.R = stratum_of(h);
    d.lambda = h.lambda;
    auto b = bounds(d.R, r);
    std::size_t s = d.R.size() + 1;
    d.V.assign(s + 1, empty_space(r));
    d.W.assign(s + 1, empty_space(r));
    d.V[0] = identity(f, static_cast<std::size_t>(r));
    d.W[s] = identity(f, static_cast<std::size_t>(r));
    for (std::size_t sg = 1; sg < s; ++sg) {
        int rho = b[sg];
        const QMat& u = h.u[rho - 1];
        auto top = subset_index(r, rho);
        auto lower = subsets(r, rho - 1);
        // v -> (u(v ^ e_K))_K
        QMat big(lower.size() * top.size(), static_cast<std::size_t>(r));
        for (std::size_t k = 0; k < lower.size(); ++k)
            for (int i = 0; i < r; ++i) {
                const auto& K = lower[k];
                if (std::find(K.begin(), K.end(), i) != K.end()) continue;
                auto I = K;
                I.push_back(i);
                std::sort(I.begin(), I.end());
                long below = std::count_if(K.begin(), K.end(), [&](int x) { return x < i; });
                std::size_t col = top[I];
                for (std::size_t row = 0; row < top.size(); ++row) {
                    Q val = u(row, col);
                    big(k * top.size() + row, static_cast<std::size_t>(i)) = below % 2 ? f.neg(val) : val;
                }
            }
        d.V[sg] = row_space(f, nullspace(f, big));
        if (d.V[sg].rows != static_cast<std::size_t>(r - rho)) throw NotOnStratum("kernel filtration has the wrong codimension");
        if (rank(f, u) != 1) throw NotOnStratum("u_{r_sigma} does not have rank one");
        std::vector<Q> omega;
        for (std::size_t c = 0; c < u.cols && omega.empty(); ++c) {
            auto col = u.col(c);
            if (std::any_of(col.begin(), col.end(), [](const Q& x) { return x != 0; })) omega = col;
        }
        // w -> w ^ omega
        auto upper = subset_index(r, rho + 1);
        auto tops = subsets(r, rho);
        QMat wedge(upper.size(), static_cast<std::size_t>(r));
        for (std::size_t t = 0; t < tops.size(); ++t)
            for (int i = 0; i < r; ++i) {
                const auto& K = tops[t];
                if (std::find(K.begin(), K.end(), i) != K.end()) continue;
                auto I = K;
                I.push_back(i);
                std::sort(I.begin(), I.end());
                long below = std::count_if(K.begin(), K.end(), [&](int x) { return x < i; });
                Q val = below % 2 ? f.neg(omega[t]) : omega[t];
                Q& cell = wedge(upper[I], static_cast<std::size_t>(i));
                cell = f.add(cell, val);
            }
        d.W[sg] = row_space(f, nullspace(f, wedge));
        if (d.W[sg].rows != static_cast<std::size_t>(rho)) throw NotOnStratum("image of u_{r_sigma} is not decomposable");
    }
    for (std::size_t sg = 1; sg <= s; ++sg)
        if (!contained(f, d.V[sg], d.V[sg - 1]) || !contained(f, d.W[sg - 1], d.W[sg]))
            throw NotOnStratum("recovered filtrations are not nested");

    Adapted ab = adapted_bases(f, d);
    Q prod = f.one();
    for (std::size_t sg = 1; sg <= s; ++sg) {
        int lo = b[sg - 1], part = b[sg] - b[sg - 1], rho = lo + 1;
        QMat ua = mul(f, mul(f, inverse(f, exterior_power(f, ab.F, rho)), h.u[rho - 1]), exterior_power(f, ab.E, rho));
        ua = scale(f, ua, f.div(lambda_weight(f, d.lambda, d.R, rho), prod));
        auto idx = subset_index(r, rho);
        QMat B(static_cast<std::size_t>(part), static_cast<std::size_t>(part));
        for (int i = 0; i < part; ++i)
            for (int j = 0; j < part; ++j) {
                std::vector<int> I, J;
                for (int k = 0; k < lo; ++k) {
                    I.push_back(k);
                    J.push_back(k);
                }
                I.push_back(lo + i);
                J.push_back(lo + j);
                B(i, j) = ua(idx[I], idx[J]);
            }
        Q db = det(f, B);
        if (f.is_zero(db)) throw NotOnStratum("graded map is not invertible");
        prod = f.mul(prod, db);
        d.v.push_back(B);
    }
    if (build_stratum_point(d) != h) throw NotOnStratum("input is not the stratum point of its recovered data");
    return d;
}

CompleteHom torus_action(const CompleteHom& h, const std::vector<Q>& mu) {
    const Field& f = h.field;
    if (mu.size() != static_cast<std::size_t>(h.r - 1)) throw InvalidData("need r-1 values of mu");
    for (const auto& m : mu)
        if (f.is_zero(m)) throw ZeroMu("mu must be nonzero");
    CompleteHom out = h;
    for (int rho = 2; rho <= h.r; ++rho) {
        Q w = f.one();
        for (int k = 1; k < rho; ++k) w = f.mul(w, f.pow(mu[k - 1], rho - k));
        out.u[rho - 1] = scale(f, h.u[rho - 1], f.inv(w));
    }
    for (std::size_t k = 0; k < mu.size(); ++k) out.lambda[k] = f.mul(h.lambda[k], mu[k]);
    return out;
}

QMat lang_isogeny(const Field& f, const QMat& g, long q) {
    if (f.is_rational()) throw InvalidData("the Lang isogeny needs a finite field");
    long pw = f.characteristic(), j = 1;
    while (pw < q) {
        pw *= f.characteristic();
        ++j;
    }
    if (pw != q || f.degree() % j != 0) throw InvalidData("the field does not contain F_q");
    if (g.rows != g.cols) throw InvalidData("matrix must be square");
    QMat t = g;
    for (auto& x : t.a) x = f.pow(x, q);
    return mul(f, inverse(f, t), g);
}

StratumData random_stratum_data(const Field& f, int r, const Composition& R, std::mt19937_64& rng) {
    check_composition(R, r);
    auto random_invertible = [&](int n) {
        while (true) {
            QMat m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
            for (auto& x : m.a) x = f.random(rng);
            if (!f.is_zero(det(f, m))) return m;
        }
    };
    auto b = bounds(R, r);
    std::size_t s = R.size() + 1;
    StratumData d;
    d.field = f;
    d.r = r;
    d.R = R;
    QMat pv = random_invertible(r), pw = random_invertible(r);
    for (std::size_t sg = 0; sg <= s; ++sg) {
        QMat v(0, static_cast<std::size_t>(r)), w(0, static_cast<std::size_t>(r));
        for (int i = b[sg]; i < r; ++i) v.append_row(pv.row(static_cast<std::size_t>(i)));
        for (int i = 0; i < b[sg]; ++i) w.append_row(pw.row(static_cast<std::size_t>(i)));
        d.V.push_back(v);
        d.W.push_back(w);
    }
    for (std::size_t sg = 1; sg <= s; ++sg) d.v.push_back(random_invertible(b[sg] - b[sg - 1]));
    for (int k = 1; k < r; ++k)
        d.lambda.push_back(std::find(R.begin(), R.end(), k) != R.end() ? f.zero() : f.random_nonzero(rng));
    return normalize(d);
}

}  // namespace chtouca
