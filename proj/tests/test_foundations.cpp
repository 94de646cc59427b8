#include "doctest.h"

#include "chtouca/cone.hpp"
#include "chtouca/error.hpp"
#include "chtouca/field.hpp"
#include "chtouca/lattice.hpp"
#include "chtouca/linalg.hpp"
#include "chtouca/lp.hpp"
#include "chtouca/smith.hpp"

#include <random>

using namespace chtouca;

namespace {
IVec iv(std::initializer_list<long> l) {
    IVec v;
    for (long x : l) v.push_back(Z(x));
    return v;
}
}  // namespace

TEST_SUITE("foundations") {

TEST_CASE("rational parsing and formatting") {
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(to_string(parse_rational("-1.25")) == "-5/4");
    CHECK(to_string(parse_rational("7")) == "7");
    CHECK(to_string(parse_rational("3/-6")) == "-1/2");
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK(floor_q(Q(-7, 2)) == -4);
    CHECK(ceil_q(Q(7, 2)) == 4);
    CHECK(binomial(6, 2) == 15);
}

TEST_CASE("finite field arithmetic") {
    Field f4 = Field::finite(2, 2);
    CHECK(f4.modulus() == std::vector<int>{1, 1, 1});
    Q w(2);  // the class of x
    CHECK(f4.mul(w, w) == Q(3));  // x^2 = x + 1
    CHECK(f4.inv(w) == Q(3));
    CHECK(f4.pow(w, 3) == Q(1));
    Field f5 = Field::finite(5, 1);
    CHECK(f5.mul(Q(3), Q(4)) == Q(2));
    CHECK(f5.sub(Q(1), Q(3)) == Q(3));
    Field f9 = Field::finite(3, 2);
    for (const auto& a : f9.elements()) {
        if (a == 0) continue;
        CHECK(f9.mul(a, f9.inv(a)) == Q(1));
        CHECK(f9.pow(a, 8) == Q(1));
    }
    // distributivity over GF(7^2)
    Field f49 = Field::finite(7, 2);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        Q a = f49.random(rng), b = f49.random(rng), c = f49.random(rng);
        CHECK(f49.mul(a, f49.add(b, c)) == f49.add(f49.mul(a, b), f49.mul(a, c)));
    }
    CHECK_THROWS_AS(Field::finite(4, 1), InvalidData);
}

TEST_CASE("linear algebra over Q and GF(5)") {
    Field qf = Field::rational();
    QMat a = QMat::from_rows({{Q(1), Q(2)}, {Q(3), Q(4)}});
    CHECK(det(qf, a) == Q(-2));
    CHECK(mul(qf, a, inverse(qf, a)) == identity(qf, 2));
    QMat s = QMat::from_rows({{Q(1), Q(2)}, {Q(2), Q(4)}});
    CHECK(rank(qf, s) == 1);
    CHECK_THROWS_AS(inverse(qf, s), Singular);
    QMat ns = nullspace(qf, s);
    REQUIRE(ns.rows == 1);
    CHECK(mul_vec(qf, s, ns.row(0)) == std::vector<Q>{Q(0), Q(0)});
    Field f5 = Field::finite(5, 1);
    QMat b = QMat::from_rows({{Q(1), Q(2)}, {Q(3), Q(4)}});
    CHECK(det(f5, b) == Q(3));
    CHECK(mul(f5, b, inverse(f5, b)) == identity(f5, 2));
    // quotient basis of span(e1,e2) mod span(e1+e2)
    QMat big = QMat::from_rows({{Q(1), Q(0), Q(0)}, {Q(0), Q(1), Q(0)}});
    QMat small = QMat::from_rows({{Q(1), Q(1), Q(0)}});
    QMat qb = quotient_basis(qf, big, small);
    CHECK(qb == QMat::from_rows({{Q(0), Q(1), Q(0)}}));
    QMat i = intersect_rows(qf, big, QMat::from_rows({{Q(1), Q(1), Q(1)}, {Q(0), Q(1), Q(0)}}));
    CHECK(i == QMat::from_rows({{Q(0), Q(1), Q(0)}}));
}

TEST_CASE("exact simplex") {
    // max x + y s.t. x + 2y <= 4, 3x + y <= 6, x,y >= 0 -> (8/5, 6/5), value 14/5
    LinearProgram lp(2);
    lp.nonneg = {true, true};
    lp.add({Q(1), Q(2)}, Rel::LE, 4);
    lp.add({Q(3), Q(1)}, Rel::LE, 6);
    lp.objective = {Q(1), Q(1)};
    auto r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == Q(14, 5));
    CHECK(r.x == std::vector<Q>{Q(8, 5), Q(6, 5)});

    LinearProgram inf(1);
    inf.add({Q(1)}, Rel::GE, 2);
    inf.add({Q(1)}, Rel::LE, 1);
    CHECK(solve_lp(inf).status == LpStatus::Infeasible);

    LinearProgram unb(2);
    unb.add({Q(1), Q(-1)}, Rel::EQ, 0);
    unb.objective = {Q(1), Q(0)};
    CHECK(solve_lp(unb).status == LpStatus::Unbounded);

    // free variables with redundant equalities
    LinearProgram fr(2);
    fr.add({Q(1), Q(1)}, Rel::EQ, -3);
    fr.add({Q(2), Q(2)}, Rel::EQ, -6);
    fr.add({Q(1), Q(0)}, Rel::GE, -10);
    fr.objective = {Q(-1), Q(0)};
    auto f = solve_lp(fr);
    REQUIRE(f.status == LpStatus::Optimal);
    CHECK(f.x[0] == -10);
    CHECK(f.x[1] == 7);
}

TEST_CASE("smith form, kernels and unimodular completion") {
    ZMat a = ZMat::from_rows({{Z(2), Z(4), Z(4)}, {Z(-6), Z(6), Z(12)}, {Z(10), Z(-4), Z(-16)}});
    CHECK(smith_invariants(a) == std::vector<Z>{Z(2), Z(6), Z(12)});
    ZMat b = ZMat::from_rows({{Z(1), Z(2), Z(3)}});
    ZMat k = integer_kernel(b);
    CHECK(k.rows == 2);
    for (std::size_t i = 0; i < k.rows; ++i) CHECK(zmul_vec(b, k.row(i))[0] == 0);
    // kernel is saturated: together with a preimage of 1 it is unimodular
    ZMat u = complete_to_unimodular(ZMat::from_rows({{Z(1), Z(-1), Z(0)}}));
    CHECK(abs(zdet(u)) == 1);
    CHECK(u.col(0) == IVec{Z(1), Z(-1), Z(0)});
}

TEST_CASE("lattice points of the simplex") {
    auto p = enumerate_lattice_points(2, 2);
    std::vector<Point> want{{2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}};
    CHECK(p == want);
    CHECK(enumerate_lattice_points(1, 0) == std::vector<Point>{{1}});
    CHECK(enumerate_lattice_points(3, 1) == std::vector<Point>{{3, 0}, {2, 1}, {1, 2}, {0, 3}});
    for (int r = 1; r <= 6; ++r)
        for (int n = 0; n <= 4; ++n) CHECK(Z(enumerate_lattice_points(r, n).size()) == binomial(r + n, n));
}

TEST_CASE("affine normal forms") {
    LatticeFunction c{2, 1, {Q(7), Q(7), Q(7)}};
    CHECK(is_affine(c));
    LatticeFunction i0{2, 1, {Q(2), Q(1), Q(0)}};
    CHECK(is_affine(i0));
    LatticeFunction tent{2, 1, {Q(0), Q(1), Q(0)}};
    CHECK(affine_normal_form(tent).normal_form.values == std::vector<Q>{Q(0), Q(1), Q(0)});
    CHECK_FALSE(is_affine(tent));
    Simplex s22(2, 2);
    LatticeFunction lin{2, 2, {}}, prod{2, 2, {}};
    for (const auto& x : s22.points()) {
        lin.values.push_back(Q(3 * x[1] - 2));
        prod.values.push_back(Q(x[0] * x[1]));
    }
    CHECK(is_affine(lin));
    CHECK_FALSE(is_affine(prod));
    CHECK(affine_normal_form(prod).normal_form.values[s22.index({1, 1, 0})] == Q(1));
}

TEST_CASE("normal form is linear, idempotent, and kills exactly the affine functions") {
    std::mt19937_64 rng(11);
    Field qf = Field::rational();
    for (int r = 1; r <= 3; ++r)
        for (int n = 0; n <= 2; ++n) {
            Simplex s(r, n);
            for (int t = 0; t < 10; ++t) {
                LatticeFunction f{r, n, {}}, g{r, n, {}}, sum{r, n, {}};
                for (std::size_t i = 0; i < s.size(); ++i) {
                    f.values.push_back(qf.random(rng));
                    g.values.push_back(qf.random(rng));
                    sum.values.push_back(f.values.back() + 3 * g.values.back());
                }
                auto nf = affine_normal_form(f).normal_form;
                CHECK(affine_normal_form(nf).normal_form.values == nf.values);
                auto ng = affine_normal_form(g).normal_form;
                auto ns = affine_normal_form(sum).normal_form;
                for (std::size_t i = 0; i < s.size(); ++i) CHECK(ns.values[i] == nf.values[i] + 3 * ng.values[i]);
                for (int k = 0; k <= n; ++k) CHECK(nf.values[s.vertex(k)] == 0);
            }
            if (s.size() <= 6) {
                // kernel of the normal-form map has dimension n+1
                QMat m(s.size(), s.size());
                for (std::size_t j = 0; j < s.size(); ++j) {
                    LatticeFunction e{r, n, std::vector<Q>(s.size(), Q(0))};
                    e.values[j] = 1;
                    auto col = affine_normal_form(e).normal_form.values;
                    for (std::size_t i = 0; i < s.size(); ++i) m(i, j) = col[i];
                }
                CHECK(s.size() - rank(qf, m) == static_cast<std::size_t>(n + 1));
            }
            CHECK(s.quotient_coords().size() == s.size() - (n + 1));
        }
}

TEST_CASE("cones: duals, faces, canonical forms") {
    Cone zero = Cone::zero(2);
    Cone full = dual_cone(zero);
    CHECK(full.lineality.size() == 2);
    CHECK(full.rays.empty());
    Cone orth = Cone::from_generators(2, {iv({1, 0}), iv({0, 1})});
    CHECK(dual_cone(orth) == orth);
    Cone ray12 = Cone::from_generators(2, {iv({1, 2})});
    Cone half = dual_cone(ray12);
    CHECK(half.facets == std::vector<IVec>{iv({1, 2})});
    CHECK(half.lineality.size() == 1);
    CHECK(dual_cone(half) == ray12);

    CHECK(is_face(zero, orth));
    CHECK(is_face(Cone::from_generators(2, {iv({1, 0})}), orth));
    CHECK_FALSE(is_face(Cone::from_generators(2, {iv({1, 1})}), orth));
    CHECK(is_face(orth, orth));

    Cone redundant = Cone::from_generators(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({1, 1, 0}), iv({2, 3, 0})});
    CHECK(redundant.rays == std::vector<IVec>{iv({0, 1, 0}), iv({1, 0, 0})});
    CHECK(redundant.equations == std::vector<IVec>{iv({0, 0, 1})});
    // round trip through the H-description
    Cone back = Cone::from_constraints(3, redundant.equations, redundant.facets);
    CHECK(back == redundant);
    CHECK(is_smooth(orth));
    CHECK_FALSE(is_smooth(Cone::from_generators(2, {iv({1, 0}), iv({1, 2})})));
    CHECK(faces(orth).size() == 4);
    CHECK(relative_interiors_meet(orth, orth));
    CHECK_FALSE(relative_interiors_meet(orth, Cone::from_generators(2, {iv({1, 0})})));
}

TEST_CASE("double description on random cones matches generator membership") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int t = 0; t < 40; ++t) {
        std::size_t dim = 2 + t % 3;
        std::vector<IVec> gens;
        for (int k = 0; k < 5; ++k) {
            IVec g(dim);
            for (auto& x : g) x = d(rng);
            gens.push_back(g);
        }
        Cone c = Cone::from_generators(dim, gens);
        for (const auto& g : gens) CHECK(c.contains(g));
        for (const auto& r : c.rays) CHECK(c.contains(r));
        Cone h = Cone::from_constraints(dim, c.equations, c.facets);
        CHECK(h == c);
        CHECK(dual_cone(dual_cone(c)) == c);
    }
}

}  // TEST_SUITE
