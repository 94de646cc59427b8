#include "chtouca/io.hpp"

#include "chtouca/error.hpp"
#include "chtouca/linalg.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace chtouca::io {

namespace {

const json& need(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
    return j.at(key);
}

const json& need_array(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    return j;
}

long integer_of(const json& j, const char* what) {
    if (j.is_number_integer()) return j.get<long>();
    throw ParseError(std::string(what) + " must be an integer");
}

Z big_integer_of(const json& j) {
    if (j.is_number_integer()) return Z(j.get<long>());
    if (j.is_string()) {
        Q v = parse_rational(j.get<std::string>());
        if (v.get_den() != 1) throw ParseError("expected an integer, got " + j.get<std::string>());
        return v.get_num();
    }
    throw ParseError("expected an integer");
}

json big_integer(const Z& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

json points_json(const Simplex& s, const std::vector<std::size_t>& idx) {
    json out = json::array();
    for (auto i : idx) out.push_back(s.point(i));
    return out;
}

std::vector<Q> field_vector(const Field& f, const json& j) {
    std::vector<Q> out;
    for (const auto& x : need_array(j, "vector")) {
        if (!x.is_string() && !x.is_number_integer()) throw ParseError("field elements are strings");
        out.push_back(f.parse(x.is_string() ? x.get<std::string>() : std::to_string(x.get<long>())));
    }
    return out;
}

json field_vector_json(const Field& f, const std::vector<Q>& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(f.format(x));
    return out;
}

int small_int(const json& j, const char* what, int lo, int hi) {
    long v = integer_of(j, what);
    if (v < lo || v > hi) throw ParseError(std::string(what) + " out of range");
    return static_cast<int>(v);
}

}  // namespace

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json rational(const Q& x) { return to_string(x); }

Q rational_of(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Q(j.get<long>());
    throw ParseError("rationals are written as \"p/q\" strings");
}

json rationals(const std::vector<Q>& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(rational(x));
    return out;
}

std::vector<Q> rationals_of(const json& j) {
    std::vector<Q> out;
    for (const auto& x : need_array(j, "rational list")) out.push_back(rational_of(x));
    return out;
}

json integers(const std::vector<Z>& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(big_integer(x));
    return out;
}

IVec integers_of(const json& j) {
    IVec out;
    for (const auto& x : need_array(j, "integer vector")) out.push_back(big_integer_of(x));
    return out;
}

json field_to_json(const Field& f) {
    if (f.is_rational()) return "Q";
    json m = json::array();
    for (int c : f.modulus()) m.push_back(c);
    return json{{"GF", {f.characteristic(), f.degree()}}, {"modulus_poly", m}};
}

Field field_of(const json& j) {
    if (j.is_string() && j.get<std::string>() == "Q") return Field::rational();
    if (j.is_object() && j.contains("Q")) return Field::rational();
    if (j.is_object() && j.contains("GF")) {
        const auto& gf = need_array(j.at("GF"), "GF");
        if (gf.size() != 2) throw ParseError("GF takes [p, k]");
        int p = small_int(gf[0], "p", 2, 1 << 15), k = small_int(gf[1], "k", 1, 64);
        std::vector<int> mod;
        if (j.contains("modulus_poly"))
            for (const auto& c : need_array(j.at("modulus_poly"), "modulus_poly")) mod.push_back(small_int(c, "modulus coefficient", 0, p - 1));
        try {
            return Field::finite(p, k, mod);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }
    throw ParseError("field must be \"Q\" or {\"GF\": [p, k]}");
}

json matrix_to_json(const Field& f, const QMat& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) out.push_back(field_vector_json(f, m.row(i)));
    return out;
}

QMat matrix_of(const Field& f, const json& j, std::size_t cols) {
    std::vector<std::vector<Q>> rows;
    for (const auto& row : need_array(j, "matrix")) rows.push_back(field_vector(f, row));
    try {
        return QMat::from_rows(rows, cols);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

json paving_to_json(const Simplex& s, const Paving& p) {
    json paves = json::array();
    for (const auto& v : p.paves) paves.push_back(json{{"points", points_json(s, v.points)}});
    return json{{"r", p.r}, {"n", p.n}, {"paves", paves}};
}

Paving paving_of(const json& j) {
    int r = small_int(need(j, "r"), "r", 1, 64), n = small_int(need(j, "n"), "n", 0, 16);
    Simplex s(r, n);
    Paving p;
    p.r = r;
    p.n = n;
    for (const auto& pv : need_array(need(j, "paves"), "paves")) {
        std::vector<Point> pts;
        for (const auto& x : need_array(need(pv, "points"), "points")) {
            Point pt;
            for (const auto& c : need_array(x, "point")) pt.push_back(small_int(c, "coordinate", 0, r));
            if (!s.contains(pt)) throw ParseError("point outside the simplex");
            pts.push_back(pt);
        }
        p.paves.push_back(pave_from_points(s, pts));
    }
    p.canonicalize();
    return p;
}

json cone_to_json(const Cone& c) {
    json rays = json::array(), lin = json::array(), eqs = json::array(), facets = json::array();
    for (const auto& v : c.rays) rays.push_back(integers(v));
    for (const auto& v : c.lineality) lin.push_back(integers(v));
    for (const auto& v : c.equations) eqs.push_back(integers(v));
    for (const auto& v : c.facets) facets.push_back(integers(v));
    return json{{"dim", c.dim}, {"rays", rays}, {"lineality", lin}, {"equations", eqs}, {"inequalities", facets}};
}

Cone cone_of(const json& j) {
    std::size_t dim = static_cast<std::size_t>(small_int(need(j, "dim"), "dim", 0, 64));
    auto vecs = [&](const char* key) {
        std::vector<IVec> out;
        if (j.contains(key))
            for (const auto& v : need_array(j.at(key), key)) {
                out.push_back(integers_of(v));
                if (out.back().size() != dim) throw ParseError(std::string(key) + ": wrong length");
            }
        return out;
    };
    if (j.contains("rays") || j.contains("lineality")) return Cone::from_generators(dim, vecs("rays"), vecs("lineality"));
    return Cone::from_constraints(dim, vecs("equations"), vecs("inequalities"));
}

json fan_to_json(const Fan& f) {
    std::map<IVec, std::size_t> index;
    for (const auto& c : f.cones)
        for (const auto& ray : c.rays) index.emplace(ray, 0);
    json rays = json::array();
    std::size_t k = 0;
    for (auto& [ray, i] : index) {
        i = k++;
        rays.push_back(integers(ray));
    }
    json cones = json::array();
    bool zero = false;
    for (std::size_t i = 0; i < f.cones.size(); ++i) {
        const Cone& c = f.cones[i];
        zero = zero || (c.rays.empty() && c.lineality.empty());
        json idx = json::array(), lin = json::array();
        for (const auto& ray : c.rays) idx.push_back(index.at(ray));
        for (const auto& v : c.lineality) lin.push_back(integers(v));
        json cone{{"rays", idx}, {"lineality", lin}};
        if (i < f.pavings.size()) {
            const Paving& p = f.pavings[i];
            cone["paving"] = paving_to_json(Simplex(p.r, p.n), p);
        } else {
            cone["paving"] = nullptr;
        }
        cones.push_back(cone);
    }
    return json{{"rank", f.rank}, {"rays", rays}, {"cones", cones}, {"zero_included", zero}};
}

Fan fan_of(const json& j) {
    Fan f;
    f.rank = static_cast<std::size_t>(small_int(need(j, "rank"), "rank", 0, 64));
    std::vector<IVec> rays;
    for (const auto& v : need_array(need(j, "rays"), "rays")) {
        rays.push_back(integers_of(v));
        if (rays.back().size() != f.rank) throw ParseError("ray of wrong length");
    }
    bool all_tagged = true;
    std::vector<Paving> tags;
    for (const auto& c : need_array(need(j, "cones"), "cones")) {
        std::vector<IVec> gens, lin;
        for (const auto& i : need_array(need(c, "rays"), "cone rays")) {
            long k = integer_of(i, "ray index");
            if (k < 0 || static_cast<std::size_t>(k) >= rays.size()) throw ParseError("ray index out of range");
            gens.push_back(rays[static_cast<std::size_t>(k)]);
        }
        if (c.contains("lineality"))
            for (const auto& v : need_array(c.at("lineality"), "lineality")) {
                lin.push_back(integers_of(v));
                if (lin.back().size() != f.rank) throw ParseError("lineality vector of wrong length");
            }
        f.cones.push_back(Cone::from_generators(f.rank, gens, lin));
        if (c.contains("paving") && !c.at("paving").is_null())
            tags.push_back(paving_of(c.at("paving")));
        else
            all_tagged = false;
    }
    if (all_tagged) f.pavings = tags;
    // zero_included is informational; verify_fan decides whether the zero cone is present
    return f;
}

json complete_hom_to_json(const CompleteHom& h) {
    json u = json::array();
    for (const auto& m : h.u) u.push_back(matrix_to_json(h.field, m));
    return json{{"field", field_to_json(h.field)}, {"r", h.r}, {"u", u}, {"lambda", field_vector_json(h.field, h.lambda)}};
}

CompleteHom complete_hom_of(const json& j) {
    CompleteHom h;
    h.field = field_of(need(j, "field"));
    h.r = small_int(need(j, "r"), "r", 1, 16);
    for (const auto& m : need_array(need(j, "u"), "u")) h.u.push_back(matrix_of(h.field, m));
    h.lambda = field_vector(h.field, need(j, "lambda"));
    if (static_cast<int>(h.u.size()) != h.r || static_cast<int>(h.lambda.size()) != h.r - 1)
        throw ParseError("a complete homomorphism of rank r has r matrices and r - 1 scalars");
    return h;
}

json stratum_data_to_json(const StratumData& d) {
    json V = json::array(), W = json::array(), v = json::array();
    for (const auto& m : d.V) V.push_back(matrix_to_json(d.field, m));
    for (const auto& m : d.W) W.push_back(matrix_to_json(d.field, m));
    for (const auto& m : d.v) v.push_back(matrix_to_json(d.field, m));
    return json{{"field", field_to_json(d.field)}, {"r", d.r}, {"R", d.R}, {"V", V}, {"W", W}, {"v", v},
                {"lambda", field_vector_json(d.field, d.lambda)}};
}

StratumData stratum_data_of(const json& j) {
    StratumData d;
    d.field = field_of(need(j, "field"));
    d.r = small_int(need(j, "r"), "r", 1, 16);
    for (const auto& k : need_array(need(j, "R"), "R")) d.R.push_back(small_int(k, "R entry", 1, d.r - 1));
    auto cols = static_cast<std::size_t>(d.r);
    for (const auto& m : need_array(need(j, "V"), "V")) d.V.push_back(matrix_of(d.field, m, cols));
    for (const auto& m : need_array(need(j, "W"), "W")) d.W.push_back(matrix_of(d.field, m, cols));
    for (const auto& m : need_array(need(j, "v"), "v")) d.v.push_back(matrix_of(d.field, m));
    d.lambda = field_vector(d.field, need(j, "lambda"));
    return d;
}

json polygon_to_json(const Polygon& p) { return json{{"r", p.r}, {"values", rationals(p.values)}}; }

Polygon polygon_of(const json& j) {
    Polygon p;
    p.r = small_int(need(j, "r"), "r", 0, 1 << 20);
    p.values = rationals_of(need(j, "values"));
    if (static_cast<int>(p.values.size()) != p.r + 1) throw ParseError("a polygon on [0, r] has r + 1 values");
    return p;
}

json lattice_to_json(const SubobjectLattice& lat) {
    json recs = json::array(), rels = json::array();
    for (const auto& s : lat.records)
        recs.push_back(json{{"id", s.id}, {"rank", s.rank}, {"deg0", big_integer(s.deg0)}, {"deg1", big_integer(s.deg1)}});
    for (const auto& [a, b] : lat.relations) rels.push_back(json::array({lat.records[a].id, lat.records[b].id}));
    return json{{"r", lat.r}, {"records", recs}, {"relations", rels}};
}

SubobjectLattice lattice_of(const json& j) {
    SubobjectLattice lat;
    lat.r = small_int(need(j, "r"), "r", 0, 1 << 20);
    std::map<std::string, std::size_t> ids;
    for (const auto& s : need_array(need(j, "records"), "records")) {
        SubobjectRecord rec;
        const auto& id = need(s, "id");
        if (!id.is_string()) throw ParseError("record ids are strings");
        rec.id = id.get<std::string>();
        rec.rank = small_int(need(s, "rank"), "rank", 0, lat.r);
        rec.deg0 = big_integer_of(need(s, "deg0"));
        rec.deg1 = big_integer_of(need(s, "deg1"));
        if (!ids.emplace(rec.id, lat.records.size()).second) throw ParseError("duplicate record id " + rec.id);
        lat.records.push_back(rec);
    }
    auto lookup = [&](const json& x) {
        if (!x.is_string() || !ids.count(x.get<std::string>())) throw ParseError("relation names an unknown record");
        return ids.at(x.get<std::string>());
    };
    for (const auto& rel : need_array(need(j, "relations"), "relations")) {
        if (!rel.is_array() || rel.size() != 2) throw ParseError("relations are [smaller, larger] pairs");
        lat.relations.emplace_back(lookup(rel[0]), lookup(rel[1]));
    }
    return lat;
}

json family_to_json(const GluedGraphFamily& fam) {
    json W = json::object();
    for (std::size_t i = 0; i < fam.W.size(); ++i) W[std::to_string(i)] = matrix_to_json(fam.field, fam.W[i]);
    return json{{"field", field_to_json(fam.field)}, {"r", fam.r}, {"n", fam.n},
                {"paving", paving_to_json(Simplex(fam.paving.r, fam.paving.n), fam.paving)}, {"W", W}};
}

GluedGraphFamily family_of(const json& j) {
    GluedGraphFamily fam;
    fam.field = field_of(need(j, "field"));
    fam.r = small_int(need(j, "r"), "r", 1, 16);
    fam.n = small_int(need(j, "n"), "n", 0, 8);
    fam.paving = paving_of(need(j, "paving"));
    if (fam.paving.r != fam.r || fam.paving.n != fam.n) throw ParseError("paving does not match r and n");
    // pave indices refer to the canonical (sorted) order of the paving
    const auto& W = need(j, "W");
    if (!W.is_object() || W.size() != fam.paving.paves.size()) throw ParseError("W needs one matrix per pave");
    fam.W.resize(fam.paving.paves.size());
    for (std::size_t i = 0; i < fam.W.size(); ++i) {
        auto key = std::to_string(i);
        if (!W.contains(key)) throw ParseError("W is missing pave " + key);
        fam.W[i] = matrix_of(fam.field, W.at(key), static_cast<std::size_t>(fam.r * (fam.n + 1)));
    }
    return fam;
}

json satake_to_json(const SatakeParams& p) { return json{{"coeffs", rationals(p.coeffs)}}; }

SatakeParams satake_of(const json& j) {
    SatakeParams p;
    p.coeffs = rationals_of(need(j, "coeffs"));
    if (p.coeffs.empty()) throw ParseError("coeffs must start with the constant term");
    return p;
}

json place_to_json(const PlaceData& pd) { return json{{"deg", pd.deg}, {"coeffs", rationals(pd.params.coeffs)}}; }

PlaceData place_of(const json& j, int default_deg) {
    PlaceData pd;
    pd.deg = j.is_object() && j.contains("deg") ? small_int(j.at("deg"), "deg", 1, 1 << 20) : default_deg;
    pd.params = satake_of(j);
    return pd;
}

std::vector<PlaceData> places_of(const json& j) {
    const json& arr = j.is_object() ? need(j, "places") : j;
    std::vector<PlaceData> out;
    for (const auto& x : need_array(arr, "places")) {
        if (!x.is_object() || !x.contains("deg")) throw ParseError("each place needs a deg");
        out.push_back(place_of(x));
    }
    return out;
}

}  // namespace chtouca::io
