#pragma once

#include <json.hpp>

#include "mapcones/cones.hpp"
#include "mapcones/family4.hpp"
#include "mapcones/generators.hpp"

namespace mapcones {

// Key-order-preserving documents keep CLI output byte-stable.
using json = nlohmann::ordered_json;

// Wire formats:
//   map:        {"n": 2, "rep": "choi"|"tensor"|"natural"|"kraus"|"family",
//                "data": ...}
//   complex     [re, im] (bare numbers are accepted on input as re)
//   matrix      nested row-major arrays of complex
//   kraus data  list of matrices
//   family data [alpha, beta, gamma, delta]
//   generator   any map document, or {"n":2,"kind":"gksl","H":...,"V":[...]}
//               or {"kind":"dmatrix","n":2,"D":...}
//   pair        {"T0": <map>, "S": <map>}

json complex_to_json(cplx z);
cplx complex_from_json(const json& j);

json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

json superop_to_json(const SuperOp& s, const std::string& rep = "choi");
SuperOp superop_from_json(const json& j);

/// A generator input: either family coordinates (closed forms available) or
/// a general superoperator.
struct GeneratorInput {
    std::optional<FamilyParams> family;
    SuperOp map;
    int n = 0;
};

GeneratorInput generator_from_json(const json& j);
json gksl_to_json(int n, const GKSLData& g);

IdempotentPair pair_from_json(const json& j);

json verdict_to_json(const ConeVerdict& v);
json entry_time_to_json(const EntryTimeResult& r);

} // namespace mapcones
