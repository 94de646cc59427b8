#pragma once

#include "chtouca/complete_homs.hpp"
#include "chtouca/cone.hpp"
#include "chtouca/fan.hpp"
#include "chtouca/gluing.hpp"
#include "chtouca/hn.hpp"
#include "chtouca/l_functions.hpp"
#include "chtouca/pavings.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace chtouca::io {

using json = nlohmann::json;

inline constexpr const char* kVersion = "chtouca-kit/1";

// Every reader throws ParseError on schema violations.
json read_file(const std::string& path);
// Two-space indented, keys sorted, trailing newline.
std::string dump(const json& j);

json rational(const Q& x);
Q rational_of(const json& j);
json rationals(const std::vector<Q>& v);
std::vector<Q> rationals_of(const json& j);
json integers(const std::vector<Z>& v);
IVec integers_of(const json& j);

json field_to_json(const Field& f);
Field field_of(const json& j);
json matrix_to_json(const Field& f, const QMat& m);
// cols is needed for matrices with no rows
QMat matrix_of(const Field& f, const json& j, std::size_t cols = 0);

// {"r", "n", "paves": [{"points": [[i_0, ..., i_n], ...]}, ...]}
json paving_to_json(const Simplex& s, const Paving& p);
Paving paving_of(const json& j);

// {"dim", "rays", "lineality"} or {"dim", "equations", "inequalities"}
json cone_to_json(const Cone& c);
Cone cone_of(const json& j);

// {"rank", "rays", "cones": [{"rays": [indices], "lineality": [...], "paving": ...}], "zero_included"}
json fan_to_json(const Fan& f);
Fan fan_of(const json& j);

json complete_hom_to_json(const CompleteHom& h);
CompleteHom complete_hom_of(const json& j);
json stratum_data_to_json(const StratumData& d);
StratumData stratum_data_of(const json& j);

json polygon_to_json(const Polygon& p);
Polygon polygon_of(const json& j);
// {"r", "records": [{"id", "rank", "deg0", "deg1"}], "relations": [[id, id], ...]}
json lattice_to_json(const SubobjectLattice& lat);
SubobjectLattice lattice_of(const json& j);

// {"field", "r", "n", "paving", "W": {"0": matrix, ...}}
json family_to_json(const GluedGraphFamily& fam);
GluedGraphFamily family_of(const json& j);

json satake_to_json(const SatakeParams& p);
SatakeParams satake_of(const json& j);
json place_to_json(const PlaceData& pd);
PlaceData place_of(const json& j, int default_deg = 1);
// a bare array or {"places": [...]}
std::vector<PlaceData> places_of(const json& j);

}  // namespace chtouca::io
