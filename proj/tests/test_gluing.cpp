#include "doctest.h"

#include "chtouca/error.hpp"
#include "chtouca/gluing.hpp"
#include "chtouca/linalg.hpp"

#include <random>

using namespace chtouca;

namespace {

QMat mat(const std::vector<std::vector<long>>& rows) {
    QMat m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

GluedGraphFamily trivial_family(const Field& f, int r, const QMat& w) {
    GluedGraphFamily fam;
    fam.field = f;
    fam.r = r;
    fam.n = 1;
    fam.paving = trivial_paving(Simplex(r, 1));
    fam.W = {w};
    return fam;
}

StratumData elementary() {
    Field q = Field::rational();
    StratumData d;
    d.r = 2;
    d.R = {1};
    d.V = {identity(q, 2), mat({{1, 0}}), QMat(0, 2)};
    d.W = {QMat(0, 2), mat({{1, 0}}), identity(q, 2)};
    d.v = {mat({{1}}), mat({{1}})};
    d.lambda = {Q(0)};
    return d;
}

// applies g to every copy of V
QMat diagonal_action(const Field& f, const QMat& w, const QMat& g, int n) {
    std::size_t r = g.rows;
    QMat big(r * static_cast<std::size_t>(n + 1), r * static_cast<std::size_t>(n + 1));
    for (int b = 0; b <= n; ++b)
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) big(b * r + j, b * r + i) = g(i, j);
    return mul(f, w, big);
}

}  // namespace

TEST_SUITE("gluing") {

TEST_CASE("dimension condition on the trivial paving") {
    Field q = Field::rational();
    // graph {(v, g v)} of an invertible g
    auto graph = trivial_family(q, 2, mat({{1, 0, 2, 1}, {0, 1, 1, 1}}));
    CHECK(check_dimension_condition(graph).pass);
    CHECK(check_gluing_condition(graph).pass);
    auto first = trivial_family(q, 2, mat({{1, 0, 0, 0}, {0, 1, 0, 0}}));
    auto rep = check_dimension_condition(first);
    CHECK_FALSE(rep.pass);
    bool saw = false;
    for (const auto& v : rep.violations) saw = saw || v.J == 1;
    CHECK(saw);
    CHECK_THROWS_AS(check_dimension_condition(trivial_family(q, 2, mat({{1, 0, 0, 0}, {2, 0, 0, 0}}))), InvalidData);
}

TEST_CASE("shared walls") {
    Simplex s(2, 1);
    CHECK(shared_walls(s, trivial_paving(s)).empty());
    auto fam = family_from_stratum(elementary());
    auto walls = shared_walls(s, fam.paving);
    REQUIRE(walls.size() == 1);
    CHECK(walls[0].J == 2);
    CHECK(walls[0].d == 1);
    CHECK(fam.paving.paves[walls[0].upper].d[2] == 1);

    Simplex t(2, 2);
    auto all = enumerate_admissible_pavings(2, 2);
    const Paving& finest = all.back();
    REQUIRE(finest.paves.size() == 4);
    CHECK(shared_walls(t, finest).size() == 3);
    for (int r = 2; r <= 4; ++r) {
        Simplex u(r, 1);
        for (const auto& p : enumerate_admissible_pavings(r, 1)) CHECK(shared_walls(u, p).size() == p.paves.size() - 1);
    }
}

TEST_CASE("families built from stratum data glue") {
    auto fam = family_from_stratum(elementary());
    CHECK(check_dimension_condition(fam).pass);
    CHECK(check_gluing_condition(fam).pass);
    std::mt19937_64 rng(31);
    for (const Field& f : {Field::rational(), Field::finite(2, 1), Field::finite(3, 1), Field::finite(5, 1)})
        for (int r = 1; r <= 4; ++r)
            for (unsigned mask = 0; mask < (1u << (r - 1)); ++mask) {
                Composition R;
                for (int k = 1; k < r; ++k)
                    if (mask >> (k - 1) & 1) R.push_back(k);
                auto g = family_from_stratum(random_stratum_data(f, r, R, rng));
                CHECK(g.paving.paves.size() == R.size() + 1);
                CHECK(check_dimension_condition(g).pass);
                CHECK(check_gluing_condition(g).pass);
            }
}

TEST_CASE("a corrupted family fails the gluing condition") {
    auto fam = family_from_stratum(elementary());
    Simplex s(2, 1);
    std::size_t low = shared_walls(s, fam.paving)[0].lower;
    // same dimensions as the genuine W, but with kernel span(e_2) instead of span(e_1)
    fam.W[low] = mat({{0, 1, 0, 0}, {1, 0, 1, 0}});
    CHECK(check_dimension_condition(fam).pass);
    auto rep = check_gluing_condition(fam);
    CHECK_FALSE(rep.pass);
    CHECK(rep.violations.size() >= 1);
}

TEST_CASE("trivial paving: passing lines are the graphs of G x G mod G") {
    for (int p : {2, 3, 5}) {
        Field f = Field::finite(p, 1);
        auto els = f.elements();
        std::size_t passing = 0;
        for (const auto& a : els)
            for (const auto& b : els) {
                if (f.is_zero(a) && f.is_zero(b)) continue;
                QMat w(1, 2);
                w(0, 0) = a;
                w(0, 1) = b;
                auto fam = trivial_family(f, 1, w);
                bool pass = check_dimension_condition(fam).pass && check_gluing_condition(fam).pass;
                CHECK(pass == (!f.is_zero(a) && !f.is_zero(b)));
                passing += pass;
            }
        // each line is counted once per nonzero scalar
        CHECK(passing / (els.size() - 1) == els.size() - 1);
    }
}

TEST_CASE("checks are invariant under the diagonal action") {
    std::mt19937_64 rng(37);
    Field f = Field::finite(3, 1);
    for (int t = 0; t < 40; ++t) {
        int r = 2 + t % 2;
        Composition R = t % 3 == 0 ? Composition{} : Composition{1};
        auto fam = family_from_stratum(random_stratum_data(f, r, R, rng));
        if (t % 2) fam.W.back() = mat(std::vector<std::vector<long>>(static_cast<std::size_t>(r), std::vector<long>(2 * r, 0)));
        if (t % 2)
            for (int i = 0; i < r; ++i) fam.W.back()(i, (i * 3) % (2 * r)) = 1;
        QMat g;
        do {
            g = QMat(r, r);
            for (auto& x : g.a) x = f.random(rng);
        } while (f.is_zero(det(f, g)));
        auto moved = fam;
        for (auto& w : moved.W) w = diagonal_action(f, w, g, 1);
        bool ok1 = true, ok2 = true;
        try {
            ok1 = check_dimension_condition(fam).pass;
            ok2 = check_gluing_condition(fam).pass;
        } catch (const InvalidData&) {
            continue;
        }
        CHECK(check_dimension_condition(moved).pass == ok1);
        CHECK(check_gluing_condition(moved).pass == ok2);
    }
}

}  // TEST_SUITE
