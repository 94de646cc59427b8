#include "doctest.h"

#include "chtouca/complete_homs.hpp"
#include "chtouca/error.hpp"
#include "chtouca/linalg.hpp"

#include <random>
#include <set>

using namespace chtouca;

namespace {

QMat mat(const std::vector<std::vector<long>>& rows) {
    QMat m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

QMat random_mat(const Field& f, std::size_t n, std::mt19937_64& rng) {
    QMat m(n, n);
    for (auto& x : m.a) x = f.random(rng);
    return m;
}

// minors computed by cofactor expansion, independent of the library determinant
Q cofactor_det(const Field& f, const QMat& m) {
    std::size_t n = m.rows;
    if (n == 0) return f.one();
    Q s = f.zero();
    for (std::size_t j = 0; j < n; ++j) {
        QMat minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t c = 0, cc = 0; c < n; ++c)
                if (c != j) minor(i - 1, cc++) = m(i, c);
        Q t = f.mul(m(0, j), cofactor_det(f, minor));
        s = j % 2 ? f.sub(s, t) : f.add(s, t);
    }
    return s;
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

}  // namespace

TEST_SUITE("complete_homs") {

TEST_CASE("exterior powers") {
    Field q = Field::rational(), f5 = Field::finite(5, 1);
    CHECK(exterior_power(q, identity(q, 3), 2) == identity(q, 3));
    CHECK(exterior_power(q, mat({{2, 0, 0}, {0, 3, 0}, {0, 0, 7}}), 2) == mat({{6, 0, 0}, {0, 14, 0}, {0, 0, 21}}));
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        QMat a = random_mat(f5, 3, rng), b = random_mat(f5, 3, rng);
        CHECK(exterior_power(f5, mul(f5, a, b), 2) == mul(f5, exterior_power(f5, a, 2), exterior_power(f5, b, 2)));
        CHECK(exterior_power(f5, a, 3)(0, 0) == cofactor_det(f5, a));
        auto ss = subsets(3, 2);
        QMat w = exterior_power(f5, a, 2);
        for (std::size_t i = 0; i < ss.size(); ++i)
            for (std::size_t j = 0; j < ss.size(); ++j) {
                QMat m(2, 2);
                for (int x = 0; x < 2; ++x)
                    for (int y = 0; y < 2; ++y) m(x, y) = a(ss[i][x], ss[j][y]);
                CHECK(w(i, j) == cofactor_det(f5, m));
            }
    }
    for (int r = 1; r <= 4; ++r)
        for (int rho = 0; rho <= r; ++rho) CHECK(exterior_power(q, identity(q, r), rho) == identity(q, subsets(r, rho).size()));
}

TEST_CASE("complete_from_open examples") {
    Field q = Field::rational();
    auto h = complete_from_open(q, identity(q, 2), {Q(5)});
    CHECK(h.u[1](0, 0) == Q(1, 5));
    CHECK(complete_from_open(q, identity(q, 2), {Q(1)}).u[1](0, 0) == 1);
    auto h3 = complete_from_open(q, mat({{1, 0, 0}, {0, 2, 0}, {0, 0, 3}}), {Q(1), Q(1)});
    CHECK(h3.u[1] == mat({{2, 0, 0}, {0, 3, 0}, {0, 0, 6}}));
    CHECK(h3.u[2] == mat({{6}}));
    CHECK(satisfies_relations(h3));
    CHECK(stratum_of(h3).empty());
    CHECK_THROWS_AS(complete_from_open(q, mat({{1, 2}, {2, 4}}), {Q(1)}), Singular);
    CHECK_THROWS_AS(complete_from_open(q, identity(q, 2), {Q(0)}), ZeroLambda);
}

TEST_CASE("stratum_of examples") {
    Field q = Field::rational();
    CompleteHom h;
    h.r = 4;
    h.lambda = {Q(0), Q(3), Q(0)};
    CHECK(stratum_of(h) == Composition{1, 3});
    h.r = 2;
    h.lambda = {Q(0)};
    CHECK(stratum_of(h) == Composition{1});
}

TEST_CASE("compositions") {
    for (int r = 1; r <= 8; ++r) {
        std::set<std::vector<int>> parts;
        for (const auto& R : all_compositions(r)) {
            auto p = composition_parts(R, r);
            int sum = 0;
            for (int x : p) sum += x;
            CHECK(sum == r);
            CHECK(composition_from_parts(p) == R);
            parts.insert(p);
        }
        CHECK(parts.size() == (std::size_t(1) << (r - 1)));
    }
    CHECK_THROWS_AS(composition_parts({2, 1}, 3), InvalidData);
}

TEST_CASE("elementary stratum point for r = 2") {
    Field q = Field::rational();
    StratumData d;
    d.r = 2;
    d.R = {1};
    d.V = {identity(q, 2), mat({{1, 0}}), QMat(0, 2)};
    d.W = {QMat(0, 2), mat({{1, 0}}), identity(q, 2)};
    d.v = {mat({{1}}), mat({{1}})};
    d.lambda = {Q(0)};
    auto h = build_stratum_point(d);
    CHECK(h.u[0] == mat({{0, 1}, {0, 0}}));
    CHECK(h.u[1] == mat({{-1}}));
    CHECK(stratum_of(h) == Composition{1});
    CHECK(satisfies_relations(h));
    auto back = stratum_data(h);
    CHECK(back.V[1] == mat({{1, 0}}));
    CHECK(back.W[1] == mat({{1, 0}}));
    CHECK(back == normalize(d));
}

TEST_CASE("open stratum data") {
    Field q = Field::rational();
    QMat u1 = mat({{1, 2, 0}, {0, 1, 1}, {1, 0, 3}});
    auto h = complete_from_open(q, u1, {Q(2), Q(-3)});
    auto d = stratum_data(h);
    CHECK(d.R.empty());
    CHECK(d.v[0] == u1);
    StratumData e;
    e.r = 3;
    e.V = {identity(q, 3), QMat(0, 3)};
    e.W = {QMat(0, 3), identity(q, 3)};
    e.v = {u1};
    e.lambda = {Q(2), Q(-3)};
    CHECK(build_stratum_point(e) == h);
}

TEST_CASE("round trips over Q and F_5") {
    std::mt19937_64 rng(5);
    for (const Field& f : {Field::rational(), Field::finite(5, 1), Field::finite(3, 2)})
        for (int r = 1; r <= 4; ++r)
            for (const auto& R : all_compositions(r))
                for (int t = 0; t < 6; ++t) {
                    auto d = random_stratum_data(f, r, R, rng);
                    auto h = build_stratum_point(d);
                    CHECK(stratum_of(h) == R);
                    CHECK(satisfies_relations(h));
                    CHECK(stratum_data(h) == d);
                }
}

TEST_CASE("corrupted inputs are not on a stratum") {
    Field q = Field::rational();
    CompleteHom bad;
    bad.r = 2;
    bad.u = {identity(q, 2), mat({{1}})};
    bad.lambda = {Q(0)};
    CHECK_THROWS_AS(stratum_data(bad), NotOnStratum);

    std::mt19937_64 rng(9);
    auto d = random_stratum_data(q, 3, {1}, rng);
    auto h = build_stratum_point(d);
    h.u[1] = mat({{1, 2, 0}, {0, 1, 3}, {4, 0, 1}});
    CHECK_THROWS_AS(stratum_data(h), NotOnStratum);

    auto d2 = random_stratum_data(q, 3, {1, 2}, rng);
    auto h2 = build_stratum_point(d2);
    h2.u[1] = identity(q, 3);
    CHECK_THROWS_AS(stratum_data(h2), NotOnStratum);
}

TEST_CASE("torus action") {
    Field q = Field::rational();
    auto h = complete_from_open(q, mat({{1, 1}, {0, 1}}), {Q(2)});
    auto g = torus_action(h, {Q(3)});
    CHECK(g.u[0] == h.u[0]);
    CHECK(g.u[1] == scale(q, h.u[1], Q(1, 3)));
    CHECK(g.lambda[0] == 6);
    CHECK(torus_action(h, {Q(1)}) == h);
    CHECK_THROWS_AS(torus_action(h, {Q(0)}), ZeroMu);

    std::mt19937_64 rng(13);
    for (const Field& f : {Field::rational(), Field::finite(5, 1)})
        for (int r = 2; r <= 4; ++r)
            for (const auto& R : all_compositions(r)) {
                auto x = build_stratum_point(random_stratum_data(f, r, R, rng));
                std::vector<Q> mu, nu, prod;
                for (int k = 1; k < r; ++k) {
                    mu.push_back(f.random_nonzero(rng));
                    nu.push_back(f.random_nonzero(rng));
                    prod.push_back(f.mul(mu.back(), nu.back()));
                }
                auto y = torus_action(x, mu);
                CHECK(stratum_of(y) == R);
                CHECK(satisfies_relations(y));
                for (int k = 0; k < r - 1; ++k) CHECK(y.lambda[k] == f.mul(mu[k], x.lambda[k]));
                CHECK(torus_action(y, nu) == torus_action(x, prod));
                CHECK(stratum_data(y).R == R);
            }
}

TEST_CASE("Lang isogeny") {
    Field f4 = Field::finite(2, 2);
    Q w = 2;
    QMat g(1, 1);
    g(0, 0) = w;
    CHECK(lang_isogeny(f4, g, 2)(0, 0) == f4.mul(w, w));
    CHECK(f4.mul(w, w) == 3);
    CHECK(lang_isogeny(f4, identity(f4, 2), 2) == identity(f4, 2));
    CHECK_THROWS_AS(lang_isogeny(f4, QMat(1, 1), 2), Singular);
    CHECK_THROWS_AS(lang_isogeny(f4, g, 3), InvalidData);
    CHECK_THROWS_AS(lang_isogeny(Field::rational(), g, 2), InvalidData);
}

TEST_CASE("Lang fixed points are the F_q-points") {
    struct Case {
        int r, p, k;
    };
    for (auto c : {Case{1, 2, 2}, Case{1, 3, 2}, Case{2, 2, 2}, Case{1, 2, 1}, Case{2, 3, 1}}) {
        Field f = Field::finite(c.p, c.k);
        auto els = f.elements();
        std::size_t n = static_cast<std::size_t>(c.r * c.r), total = 1;
        for (std::size_t i = 0; i < n; ++i) total *= els.size();
        std::size_t fixed = 0, small = 0;
        for (std::size_t code = 0; code < total; ++code) {
            QMat g(static_cast<std::size_t>(c.r), static_cast<std::size_t>(c.r));
            std::size_t x = code;
            bool in_fq = true;
            for (std::size_t i = 0; i < n; ++i) {
                g.a[i] = els[x % els.size()];
                x /= els.size();
                in_fq = in_fq && f.pow(g.a[i], c.p) == g.a[i];
            }
            if (f.is_zero(det(f, g))) continue;
            bool fix = lang_isogeny(f, g, c.p) == identity(f, static_cast<std::size_t>(c.r));
            CHECK(fix == in_fq);
            fixed += fix;
            small += in_fq;
        }
        // |GL_r(F_p)|
        std::size_t gl = 1, pr = 1;
        for (int i = 0; i < c.r; ++i) pr *= static_cast<std::size_t>(c.p);
        std::size_t pi = 1;
        for (int i = 0; i < c.r; ++i, pi *= static_cast<std::size_t>(c.p)) gl *= pr - pi;
        CHECK(fixed == gl);
        CHECK(small == gl);
    }
}

}  // TEST_SUITE
