#include "chtouca/cli.hpp"

#include "chtouca/acceptance.hpp"
#include "chtouca/error.hpp"
#include "chtouca/io.hpp"
#include "chtouca/linalg.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

namespace chtouca {

namespace {

using io::json;

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

Composition composition_arg(const std::string& s) {
    Composition R;
    for (const auto& x : split_list(s)) {
        Q v = parse_rational(x);
        if (v.get_den() != 1 || !v.get_num().fits_sint_p()) throw ParseError("--R takes integers");
        R.push_back(static_cast<int>(v.get_num().get_si()));
    }
    return R;
}

json report_json(const GluingReport& rep) {
    json vs = json::array();
    for (const auto& v : rep.violations) vs.push_back(json{{"pave", v.pave}, {"other", v.other}, {"J", v.J}, {"what", v.what}});
    return json{{"pass", rep.pass}, {"violations", vs}};
}

json admissibility_json(const Admissibility& a) {
    return json{{"admissible", a.admissible}, {"delta", io::rational(a.delta)}, {"witness", io::rationals(a.witness)}};
}

unsigned jobs_from_env() {
    const char* env = std::getenv("CHTOUCA_JOBS");
    if (!env || !*env) return 1;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 256) throw ParseError("CHTOUCA_JOBS must be an integer in [1, 256]");
    return static_cast<unsigned>(v);
}

void error_json(std::ostream& err, const std::string& code, const std::string& message) {
    err << io::dump(json{{"error", code}, {"message", message}, {"version", io::kVersion}});
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact combinatorics of pavings, complete homomorphisms, truncations and L-factors", "chtouca"};
    app.fallthrough();
    app.require_subcommand(1);

    int jobs_flag = 0;
    std::string out_path;
    app.add_option("--jobs", jobs_flag, "parallelism degree (default: CHTOUCA_JOBS or 1)");
    app.add_option("--out", out_path, "write the JSON result to this file");

    // The selected leaf stores its work here; it runs after parsing completes.
    std::function<json(unsigned)> action;
    std::function<int(unsigned)> text_action;

    int r = 0, n = 0;
    long q = 0, nu = 0;
    std::size_t cap = 12;
    int order = 0, deg = 0;
    std::string file, file_a, file_b, fan_path, R_arg, mu_arg, alpha_arg = "0", d_arg, mode = "js", only_arg;
    double tol = 1e-9;
    bool build = false;

    // pavings
    auto* pav = app.add_subcommand("pavings", "integer pavings of S^{r,n}");
    pav->require_subcommand(1);
    auto* pav_enum = pav->add_subcommand("enum", "enumerate admissible pavings");
    pav_enum->add_option("--r", r)->required();
    pav_enum->add_option("--n", n)->required();
    pav_enum->add_option("--cap", cap, "largest |S^{r,n}| to enumerate");
    pav_enum->add_option("--fan", fan_path, "also write the secondary fan to this file");
    pav_enum->callback([&] {
        action = [&](unsigned jobs) {
            EnumerationOptions opt;
            opt.cap = cap;
            opt.jobs = jobs;
            Simplex s(r, n);
            auto all = enumerate_admissible_pavings(r, n, opt);
            json ps = json::array();
            for (const auto& p : all) ps.push_back(io::paving_to_json(s, p));
            if (!fan_path.empty()) {
                std::ofstream f(fan_path);
                json fj = io::fan_to_json(paving_fan(r, n, opt));
                fj["version"] = io::kVersion;
                if (!(f << io::dump(fj))) throw ParseError("cannot write " + fan_path);
            }
            return json{{"r", r}, {"n", n}, {"count", all.size()}, {"pavings", ps}};
        };
    });
    auto* pav_check = pav->add_subcommand("check", "validate a paving and test admissibility");
    pav_check->add_option("file", file)->required();
    pav_check->callback([&] {
        action = [&](unsigned) {
            Paving p = io::paving_of(io::read_file(file));
            Simplex s(p.r, p.n);
            validate_paving(s, p);
            json j = admissibility_json(is_admissible(s, p));
            j["paving"] = io::paving_to_json(s, p);
            return j;
        };
    });
    auto* pav_qadm = pav->add_subcommand("qadm", "q-admissibility of a paving");
    pav_qadm->add_option("--q", q)->required();
    pav_qadm->add_option("file", file)->required();
    pav_qadm->callback([&] {
        action = [&](unsigned) {
            Paving p = io::paving_of(io::read_file(file));
            Simplex s(p.r, p.n);
            validate_paving(s, p);
            Admissibility a = q_admissibility(s, p, q);
            json j = admissibility_json(a);
            j["q"] = q;
            j["q_admissible"] = a.admissible;
            j.erase("admissible");
            return j;
        };
    });

    // fans
    auto* fans = app.add_subcommand("fans", "rational polyhedral fans and cones");
    fans->require_subcommand(1);
    auto* fan_verify = fans->add_subcommand("verify", "check the fan axioms");
    fan_verify->add_option("file", file)->required();
    fan_verify->callback([&] {
        action = [&](unsigned jobs) {
            Fan f = io::fan_of(io::read_file(file));
            FanReport rep = verify_fan(f, jobs);
            json pair = nullptr;
            if (rep.pair) pair = json::array({rep.pair->first, rep.pair->second});
            return json{{"pass", rep.pass}, {"failure", rep.failure}, {"pair", pair}, {"cones", f.cones.size()}};
        };
    });
    auto* fan_dual = fans->add_subcommand("dual", "dual cone");
    fan_dual->add_option("--cone", file)->required();
    fan_dual->callback([&] { action = [&](unsigned) { return io::cone_to_json(dual_cone(io::cone_of(io::read_file(file)))); }; });
    auto* fan_monoid = fans->add_subcommand("monoid", "generators of the dual lattice monoid");
    fan_monoid->add_option("--cone", file)->required();
    fan_monoid->callback([&] {
        action = [&](unsigned) {
            Cone c = io::cone_of(io::read_file(file));
            json gens = json::array();
            for (const auto& g : monoid_generators(c)) gens.push_back(io::integers(g));
            return json{{"generators", gens}, {"smooth", is_smooth(c)}};
        };
    });
    auto* fan_torus = fans->add_subcommand("torus-seq", "exact sequence of cocharacter lattices for T^{r,n}");
    fan_torus->add_option("--r", r)->required();
    fan_torus->add_option("--n", n)->required();
    fan_torus->callback([&] {
        action = [&](unsigned) {
            TorusReport t = torus_sequence_check(r, n);
            return json{{"exact", t.exact}, {"points", t.points}, {"torus_dim", t.torus_dim}, {"detail", t.detail}};
        };
    });
    auto* fan_tau = fans->add_subcommand("tau-seq", "exact sequence for T^{r,tau} and its map to T^{r,2}");
    fan_tau->add_option("--r", r)->required();
    fan_tau->add_option("--q", q)->required();
    fan_tau->callback([&] {
        action = [&](unsigned) {
            TauReport t = tau_sequence_check(r, q);
            return json{{"exact", t.exact}, {"embeds", t.embeds}, {"points", t.points}, {"torus_dim", t.torus_dim}, {"detail", t.detail}};
        };
    });

    // complete homomorphisms
    auto* homs = app.add_subcommand("homs", "complete homomorphisms and their strata");
    homs->require_subcommand(1);
    auto* homs_complete = homs->add_subcommand("complete", "complete homomorphism of an invertible u_1");
    homs_complete->add_option("file", file)->required();
    homs_complete->callback([&] {
        action = [&](unsigned) {
            json in = io::read_file(file);
            if (!in.contains("field") || !in.contains("u1") || !in.contains("lambda")) throw ParseError("expected field, u1 and lambda");
            Field f = io::field_of(in.at("field"));
            CompleteHom h = complete_from_open(f, io::matrix_of(f, in.at("u1")), [&] {
                std::vector<Q> l;
                for (const auto& x : in.at("lambda")) {
                    if (!x.is_string()) throw ParseError("field elements are strings");
                    l.push_back(f.parse(x.get<std::string>()));
                }
                return l;
            }());
            json j = io::complete_hom_to_json(h);
            j["stratum"] = stratum_of(h);
            return j;
        };
    });
    auto* homs_stratum = homs->add_subcommand("stratum", "stratum data of a complete homomorphism");
    homs_stratum->add_option("file", file)->required();
    homs_stratum->add_flag("--build", build, "read stratum data and build the point instead");
    homs_stratum->callback([&] {
        action = [&](unsigned) {
            json in = io::read_file(file);
            if (build) {
                CompleteHom h = build_stratum_point(normalize(io::stratum_data_of(in)));
                json j = io::complete_hom_to_json(h);
                j["stratum"] = stratum_of(h);
                return j;
            }
            return io::stratum_data_to_json(stratum_data(io::complete_hom_of(in)));
        };
    });
    auto* homs_act = homs->add_subcommand("act", "action of the torus G_m^{r-1}");
    homs_act->add_option("--mu", mu_arg, "comma-separated field elements mu_1,...,mu_{r-1}");
    homs_act->add_option("file", file)->required();
    homs_act->callback([&] {
        action = [&](unsigned) {
            CompleteHom h = io::complete_hom_of(io::read_file(file));
            std::vector<Q> mu;
            for (const auto& x : split_list(mu_arg)) mu.push_back(h.field.parse(x));
            if (static_cast<int>(mu.size()) != h.r - 1) throw ParseError("--mu needs r - 1 entries");
            return io::complete_hom_to_json(torus_action(h, mu));
        };
    });
    auto* homs_lang = homs->add_subcommand("lang", "Lang isogeny g -> tau(g)^{-1} g");
    homs_lang->add_option("--q", q)->required();
    homs_lang->add_option("file", file)->required();
    homs_lang->callback([&] {
        action = [&](unsigned) {
            json in = io::read_file(file);
            if (!in.contains("field") || !in.contains("g")) throw ParseError("expected field and g");
            Field f = io::field_of(in.at("field"));
            QMat g = io::matrix_of(f, in.at("g"));
            QMat L = lang_isogeny(f, g, q);
            bool fixed = L == identity(f, g.rows);
            return json{{"field", io::field_to_json(f)}, {"q", q}, {"L", io::matrix_to_json(f, L)}, {"fixed", fixed}};
        };
    });

    // Harder-Narasimhan and truncations
    auto* hn = app.add_subcommand("hn", "Harder-Narasimhan polygons");
    hn->require_subcommand(1);
    auto* hn_compute = hn->add_subcommand("compute", "HN polygon and canonical chain of a sub-object lattice");
    hn_compute->add_option("--alpha", alpha_arg, "weight in [0, 1]");
    hn_compute->add_option("file", file)->required();
    hn_compute->callback([&] {
        action = [&](unsigned) {
            SubobjectLattice lat = io::lattice_of(io::read_file(file));
            HnResult res = hn_polygon(lat, parse_rational(alpha_arg));
            json chain = json::array();
            for (auto i : res.chain) chain.push_back(lat.records[i].id);
            return json{{"alpha", io::rational(parse_rational(alpha_arg))}, {"polygon", io::polygon_to_json(res.polygon)}, {"chain", chain}};
        };
    });
    auto* trunc = app.add_subcommand("trunc", "truncation parameters");
    trunc->require_subcommand(1);
    auto* trunc_split = trunc->add_subcommand("split", "split a truncation parameter along a composition");
    trunc_split->add_option("--p", file)->required();
    trunc_split->add_option("--d", d_arg)->required();
    trunc_split->add_option("--R", R_arg, "comma-separated breaks, e.g. 1,3");
    trunc_split->callback([&] {
        action = [&](unsigned) {
            Polygon p = io::polygon_of(io::read_file(file));
            Q dq = parse_rational(d_arg);
            if (dq.get_den() != 1) throw ParseError("--d takes an integer");
            Z d = dq.get_num();
            SplitResult res = split_truncation(p, d, composition_arg(R_arg));
            json dp = json::array(), pp = json::array(), fl = json::array();
            for (const auto& x : res.d_parts) dp.push_back(io::rational(Q(x)));
            for (const auto& x : res.p_parts) pp.push_back(io::polygon_to_json(x));
            for (const auto& x : shifted_floor(p, d)) fl.push_back(io::rational(Q(x)));
            return json{{"d_parts", dp}, {"p_parts", pp}, {"shifted_floor", fl}};
        };
    });
    auto* trunc_convex = trunc->add_subcommand("convex", "mu-convexity of a truncation parameter");
    trunc_convex->add_option("--p", file)->required();
    trunc_convex->add_option("--mu", mu_arg)->required();
    trunc_convex->callback([&] {
        action = [&](unsigned) {
            Polygon p = io::polygon_of(io::read_file(file));
            Q mu = parse_rational(mu_arg);
            return json{{"mu", io::rational(mu)}, {"mu_convex", is_mu_convex(p, mu)}};
        };
    });

    // glued graphs
    auto* graphs = app.add_subcommand("graphs", "glued graph families");
    graphs->require_subcommand(1);
    auto* graphs_check = graphs->add_subcommand("check", "dimension and gluing conditions");
    graphs_check->add_option("file", file)->required();
    graphs_check->callback([&] {
        action = [&](unsigned) {
            GluedGraphFamily fam = io::family_of(io::read_file(file));
            return json{{"dimension", report_json(check_dimension_condition(fam))}, {"gluing", report_json(check_gluing_condition(fam))}};
        };
    });

    // L-functions
    auto* lfun = app.add_subcommand("lfun", "Satake parameters and L-factors");
    lfun->require_subcommand(1);
    auto* lfun_local = lfun->add_subcommand("local", "local factor 1/P(T^deg) to order D");
    lfun_local->add_option("--order", order)->required();
    lfun_local->add_option("--deg", deg, "place degree when the file has none");
    lfun_local->add_option("file", file)->required();
    lfun_local->callback([&] {
        action = [&](unsigned) {
            PlaceData pd = io::place_of(io::read_file(file), deg > 0 ? deg : 1);
            return json{{"series", io::rationals(local_factor(pd, order).c)}};
        };
    });
    auto* lfun_partial = lfun->add_subcommand("partial", "product of local factors to order D");
    lfun_partial->add_option("--order", order)->required();
    lfun_partial->add_option("file", file)->required();
    lfun_partial->callback([&] {
        action = [&](unsigned jobs) {
            return json{{"series", io::rationals(partial_L(io::places_of(io::read_file(file)), order, jobs).c)}};
        };
    });
    auto* lfun_star = lfun->add_subcommand("star", "Rankin-Selberg convolution of Satake polynomials");
    lfun_star->add_option("--a", file_a)->required();
    lfun_star->add_option("--b", file_b)->required();
    lfun_star->callback([&] {
        action = [&](unsigned) {
            SatakeParams a = io::satake_of(io::read_file(file_a)), b = io::satake_of(io::read_file(file_b));
            validate(a);
            validate(b);
            return io::satake_to_json(star_convolve(a, b));
        };
    });
    auto* lfun_psum = lfun->add_subcommand("psum", "power sum of the Satake parameters");
    lfun_psum->add_option("--nu", nu)->required();
    lfun_psum->add_option("file", file)->required();
    lfun_psum->callback([&] {
        action = [&](unsigned) {
            SatakeParams p = io::satake_of(io::read_file(file));
            validate(p);
            return json{{"nu", nu}, {"value", io::rational(power_sum(p, nu))}};
        };
    });
    auto* lfun_bounds = lfun->add_subcommand("bounds", "Jacquet-Shalika or Ramanujan-Petersson bounds");
    lfun_bounds->add_option("--q", q)->required();
    lfun_bounds->add_option("--mode", mode)->check(CLI::IsMember({"js", "rp"}));
    lfun_bounds->add_option("--deg", deg, "place degree when the file has none");
    lfun_bounds->add_option("--tol", tol)->check(CLI::Range(1e-300, 1.0));
    lfun_bounds->add_option("file", file)->required();
    lfun_bounds->callback([&] {
        action = [&](unsigned) {
            PlaceData pd = io::place_of(io::read_file(file), deg > 0 ? deg : 1);
            validate(pd.params);
            bool pass = check_bounds(pd, q, mode == "rp" ? BoundMode::RP : BoundMode::JS, static_cast<long double>(tol));
            return json{{"pass", pass}, {"mode", mode}, {"q", q}, {"deg", pd.deg}};
        };
    });
    auto* lfun_spectral = lfun->add_subcommand("spectral", "main spectral term for a pair of places");
    lfun_spectral->add_option("--q", q)->required();
    lfun_spectral->add_option("file", file)->required();
    lfun_spectral->callback([&] {
        action = [&](unsigned) {
            json in = io::read_file(file);
            for (const char* k : {"trace_pi", "r", "deg_xi", "n", "inf", "o"})
                if (!in.contains(k)) throw ParseError(std::string("missing key \"") + k + "\"");
            if (!in.at("r").is_number_integer() || !in.at("deg_xi").is_number_integer() || !in.at("n").is_number_integer())
                throw ParseError("r, deg_xi and n are integers");
            PlaceData inf = io::place_of(in.at("inf")), o = io::place_of(in.at("o"));
            validate(inf.params);
            validate(o.params);
            Q v = spectral_term(io::rational_of(in.at("trace_pi")), in.at("r").get<int>(), in.at("deg_xi").get<long>(),
                                in.at("n").get<long>(), inf.params, inf.deg, o.params, o.deg, q);
            PlacePairStats st = place_pair_stats(inf.deg, o.deg);
            return json{{"value", io::rational(v)}, {"delta", st.delta}, {"mu", st.mu}};
        };
    });

    // acceptance suite
    auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
    selftest->add_option("--cap", cap, "enumeration cap; configurations above it are skipped");
    selftest->add_option("--only", only_arg, "comma-separated criterion numbers");
    selftest->callback([&] {
        text_action = [&](unsigned jobs) {
            AcceptanceOptions opt;
            opt.cap = cap;
            opt.jobs = jobs;
            std::vector<int> only;
            for (const auto& x : split_list(only_arg)) only.push_back(std::stoi(x));
            auto results = run_acceptance(opt, out, only);
            return no_failures(results) ? 0 : 1;
        };
    });

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        error_json(err, "UsageError", e.what());
        return 2;
    }

    try {
        unsigned jobs = jobs_flag > 0 ? static_cast<unsigned>(jobs_flag) : jobs_from_env();
        if (jobs_flag < 0) throw ParseError("--jobs must be positive");
        if (text_action) return text_action(jobs);
        json result = action(jobs);
        result["version"] = io::kVersion;
        std::string text = io::dump(result);
        if (out_path.empty()) {
            out << text;
        } else {
            std::ofstream f(out_path);
            if (!(f << text)) throw ParseError("cannot write " + out_path);
        }
        return 0;
    } catch (const DomainError& e) {
        error_json(err, e.code(), e.what());
        return 1;
    } catch (const ParseError& e) {
        error_json(err, "ParseError", e.what());
        return 2;
    } catch (const io::json::exception& e) {
        error_json(err, "ParseError", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        error_json(err, "ParseError", e.what());
        return 2;
    } catch (const std::out_of_range& e) {
        error_json(err, "ParseError", e.what());
        return 2;
    }
}

}  // namespace chtouca
