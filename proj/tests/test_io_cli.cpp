#include "doctest.h"

#include "chtouca/acceptance.hpp"
#include "chtouca/cli.hpp"
#include "chtouca/error.hpp"
#include "chtouca/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace chtouca;
using io::json;

namespace {

namespace fs = std::filesystem;

struct Run {
    int status;
    std::string out, err;
};

Run cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int st = run_cli(args, out, err);
    return {st, out.str(), err.str()};
}

// scratch directory removed at the end of each test case
struct Scratch {
    fs::path dir;
    Scratch() {
        dir = fs::temp_directory_path() / ("chtouca-unit-" + std::to_string(std::random_device{}()));
        fs::create_directories(dir);
    }
    ~Scratch() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(dir / name) << text;
        return (dir / name).string();
    }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_SUITE("io_cli") {

TEST_CASE("rationals and fields") {
    CHECK(io::rational(make_q(-6, 4)) == "-3/2");
    CHECK(io::rational_of("4/6") == make_q(2, 3));
    CHECK(io::rational_of(7) == 7);
    CHECK_THROWS_AS(io::rational_of(1.5), ParseError);
    CHECK(io::field_of("Q").is_rational());
    Field f9 = io::field_of(json::parse(R"({"GF": [3, 2]})"));
    CHECK(f9.order() == 9);
    CHECK(io::field_of(io::field_to_json(f9)) == f9);
    CHECK_THROWS_AS(io::field_of("R"), ParseError);
    QMat m(2, 2);
    m(0, 0) = 4;
    m(1, 1) = 8;
    CHECK(io::matrix_of(f9, io::matrix_to_json(f9, m)) == m);
    CHECK_THROWS_AS(io::matrix_of(f9, json::parse(R"([["9"]])")), ParseError);
    CHECK_THROWS_AS(io::matrix_of(f9, json::parse(R"([["1", "2"], ["3"]])")), ParseError);
    CHECK(io::matrix_of(f9, json::array(), 3).cols == 3);
}

TEST_CASE("round trips of module objects") {
    Simplex s(2, 2);
    for (const auto& p : enumerate_admissible_pavings(2, 2)) CHECK(io::paving_of(io::paving_to_json(s, p)) == p);

    Fan f = paving_fan(3, 1);
    Fan g = io::fan_of(io::fan_to_json(f));
    CHECK(g.cones == f.cones);
    CHECK(g.pavings == f.pavings);
    CHECK(io::fan_to_json(f)["zero_included"] == true);

    Cone c = Cone::from_generators(3, {{Z(1), Z(0), Z(0)}, {Z(1), Z(2), Z(0)}}, {{Z(0), Z(0), Z(1)}});
    CHECK(io::cone_of(io::cone_to_json(c)) == c);
    json constraints = json::parse(R"({"dim": 2, "inequalities": [[1, 0], [0, 1]]})");
    CHECK(io::cone_of(constraints).rays.size() == 2);

    std::mt19937_64 rng(3);
    for (const Field& fld : {Field::rational(), Field::finite(3, 2)}) {
        StratumData d = random_stratum_data(fld, 3, {2}, rng);
        CHECK(io::stratum_data_of(io::stratum_data_to_json(d)) == d);
        CompleteHom h = build_stratum_point(d);
        CHECK(io::complete_hom_of(io::complete_hom_to_json(h)) == h);
        GluedGraphFamily fam = family_from_stratum(d);
        GluedGraphFamily back = io::family_of(io::family_to_json(fam));
        CHECK(back.paving == fam.paving);
        CHECK(back.W == fam.W);
    }

    SubobjectLattice lat = random_supermodular_lattice(rng);
    SubobjectLattice lat2 = io::lattice_of(io::lattice_to_json(lat));
    CHECK(lat2.relations == lat.relations);
    CHECK(lat2.records.size() == lat.records.size());
    CHECK(hn_polygon(lat2, Q(1, 2)).polygon == hn_polygon(lat, Q(1, 2)).polygon);

    Polygon p;
    p.r = 2;
    p.values = {0, make_q(7, 2), 0};
    CHECK(io::polygon_of(io::polygon_to_json(p)) == p);
    CHECK_THROWS_AS(io::polygon_of(json::parse(R"({"r": 3, "values": ["0", "1"]})")), ParseError);

    PlaceData pd{3, SatakeParams::from_roots({2, make_q(-1, 3)})};
    PlaceData pd2 = io::place_of(io::place_to_json(pd));
    CHECK(pd2.deg == 3);
    CHECK(pd2.params == pd.params);
    CHECK(io::places_of(json::parse(R"({"places": [{"deg": 2, "coeffs": ["1"]}]})")).size() == 1);
    CHECK_THROWS_AS(io::places_of(json::parse(R"([{"coeffs": ["1"]}])")), ParseError);
}

TEST_CASE("cli examples") {
    Scratch tmp;
    auto e = cli({"pavings", "enum", "--r", "2", "--n", "1"});
    REQUIRE(e.status == 0);
    json j = json::parse(e.out);
    CHECK(j["count"] == 2);
    CHECK(j["pavings"].size() == 2);
    CHECK(j["version"] == "chtouca-kit/1");

    auto fan = tmp.path("fan.json");
    REQUIRE(cli({"pavings", "enum", "--r", "2", "--n", "2", "--fan", fan}).status == 0);
    auto v = cli({"fans", "verify", fan});
    REQUIRE(v.status == 0);
    CHECK(json::parse(v.out)["pass"] == true);

    auto a = tmp.write("a.json", R"({"coeffs": ["1", "-2"]})"), b = tmp.write("b.json", R"({"coeffs": ["1", "-3"]})");
    auto st = cli({"lfun", "star", "--a", a, "--b", b});
    REQUIRE(st.status == 0);
    CHECK(json::parse(st.out)["coeffs"] == json::parse(R"(["1", "-6"])"));
    // keys are sorted and the output ends in a newline
    CHECK(st.out == "{\n  \"coeffs\": [\n    \"1\",\n    \"-6\"\n  ],\n  \"version\": \"chtouca-kit/1\"\n}\n");

    auto poly = tmp.write("p.json", R"({"r": 3, "values": ["0", "4", "4", "0"]})");
    auto sp = cli({"trunc", "split", "--p", poly, "--d", "0", "--R", "1"});
    REQUIRE(sp.status == 0);
    CHECK(json::parse(sp.out)["d_parts"] == json::parse(R"(["4", "-5"])"));

    auto place = tmp.write("place.json", R"({"coeffs": ["1", "-5", "6"]})");
    auto ps = cli({"lfun", "psum", "--nu", "-1", place});
    REQUIRE(ps.status == 0);
    CHECK(json::parse(ps.out)["value"] == "5/6");
    auto lf = cli({"lfun", "local", "--order", "2", place});
    CHECK(json::parse(lf.out)["series"] == json::parse(R"(["1", "5", "19"])"));

    auto lang = tmp.write("lang.json", R"({"field": {"GF": [2, 2]}, "g": [["1", "1"], ["0", "1"]]})");
    auto lg = cli({"homs", "lang", "--q", "2", lang});
    REQUIRE(lg.status == 0);
    CHECK(json::parse(lg.out)["fixed"] == true);

    auto open = tmp.write("open.json", R"({"field": "Q", "u1": [["1", "1"], ["0", "1"]], "lambda": ["2"]})");
    auto hc = cli({"homs", "complete", open});
    REQUIRE(hc.status == 0);
    auto hom = tmp.write("hom.json", hc.out);
    auto act = cli({"homs", "act", "--mu", "3", hom});
    REQUIRE(act.status == 0);
    CHECK(json::parse(act.out)["lambda"] == json::parse(R"(["6"])"));
    auto strat = cli({"homs", "stratum", hom});
    REQUIRE(strat.status == 0);
    auto sd = tmp.write("sd.json", strat.out);
    auto rebuilt = cli({"homs", "stratum", "--build", sd});
    REQUIRE(rebuilt.status == 0);
    json h1 = json::parse(hc.out), h2 = json::parse(rebuilt.out);
    CHECK(h1 == h2);

    auto out = tmp.path("out.json");
    REQUIRE(cli({"--out", out, "lfun", "star", "--a", a, "--b", b}).status == 0);
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == st.out);
}

TEST_CASE("cli exit codes") {
    Scratch tmp;
    auto bad = tmp.write("bad.json", R"({"coeffs": ["2", "1"]})");
    auto good = tmp.write("good.json", R"({"coeffs": ["1", "1"]})");
    auto r1 = cli({"lfun", "star", "--a", bad, "--b", good});
    CHECK(r1.status == 1);
    CHECK(json::parse(r1.err)["error"] == "InvalidData");
    CHECK(r1.out.empty());

    auto zero = tmp.write("zero.json", R"({"coeffs": ["1", "-2", "0"]})");
    auto r2 = cli({"lfun", "psum", "--nu", "-1", zero});
    CHECK(r2.status == 1);
    CHECK(json::parse(r2.err)["error"] == "NonInvertibleRoots");

    CHECK(cli({"lfun", "star", "--a", tmp.path("missing.json"), "--b", good}).status == 2);
    auto garbage = tmp.write("garbage.json", "{not json");
    auto r3 = cli({"lfun", "psum", "--nu", "1", garbage});
    CHECK(r3.status == 2);
    CHECK(json::parse(r3.err)["error"] == "ParseError");
    CHECK(cli({"lfun", "psum", "--nu", "1", tmp.write("shape.json", R"({"coefs": []})")}).status == 2);
    CHECK(cli({"pavings"}).status == 2);
    CHECK(cli({"nonsense"}).status == 2);
    CHECK(cli({"lfun", "bounds", "--q", "4", "--mode", "xx", good}).status == 2);
    CHECK(cli({"--help"}).status == 0);

    auto paving = tmp.write("paving.json", R"({"r": 2, "n": 1, "paves": [{"points": [[2, 0], [1, 1]]}]})");
    auto r4 = cli({"pavings", "check", paving});
    CHECK(r4.status == 1);
    CHECK(json::parse(r4.err)["error"] == "NotAPaving");
    CHECK(cli({"pavings", "enum", "--r", "4", "--n", "2"}).status == 1);
}

TEST_CASE("parallelism degree and its environment override") {
    auto one = cli({"--jobs", "1", "pavings", "enum", "--r", "2", "--n", "2"});
    auto four = cli({"pavings", "enum", "--r", "2", "--n", "2", "--jobs", "4"});
    CHECK(one.out == four.out);
    setenv("CHTOUCA_JOBS", "3", 1);
    CHECK(cli({"pavings", "enum", "--r", "2", "--n", "2"}).out == one.out);
    setenv("CHTOUCA_JOBS", "zero", 1);
    CHECK(cli({"pavings", "enum", "--r", "2", "--n", "2"}).status == 2);
    unsetenv("CHTOUCA_JOBS");
}

TEST_CASE("selftest mutation and cap handling") {
    AcceptanceOptions opt;
    CHECK(run_criterion(10, opt).status == Status::Pass);
    AcceptanceOptions mutated;
    mutated.split = [](const Polygon& p, const Z& d, const Composition& R) {
        SplitResult res = split_truncation(p, d, R);
        res.d_parts.front() += 1;
        return res;
    };
    auto m = run_criterion(10, mutated);
    CHECK(m.status == Status::Fail);
    CHECK(m.detail.find("d - s + 1") != std::string::npos);

    AcceptanceOptions small;
    small.cap = 4;
    CHECK(run_criterion(3, small).status == Status::Skip);
    CHECK(run_criterion(5, small).status == Status::Skip);
    CHECK(run_criterion(13, small).status == Status::Pass);
    CHECK(no_failures({run_criterion(3, small), run_criterion(13, small)}));

    auto st = cli({"selftest", "--only", "1,13", "--cap", "4"});
    CHECK(st.status == 0);
    CHECK(st.out.find("criterion  1 PASS") != std::string::npos);
    CHECK(st.out.find("criterion 13 PASS") != std::string::npos);
}

}  // TEST_SUITE
