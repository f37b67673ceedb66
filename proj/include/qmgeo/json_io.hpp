#pragma once

#include <string>

#include "json.hpp"
#include "qmgeo/domain.hpp"

namespace qmgeo {

// Field order in emitted files is fixed, so identical inputs serialize to
// identical bytes.
using Json = nlohmann::ordered_json;

// Domain file layout:
//   { "ambient": {"kind": "euclidean"|"snowflake"|"matrix"|"curve",
//                 "epsilon"?: number, "matrix"?: [[..], ..]},
//     "points": [[x, y], ...] or null,
//     "interior": [ids], "boundary": [ids],
//     "mesh": {"beta": number, "k": int} }
Json domain_to_json(const DomainSpace& dom);

// Rebuilds the domain, re-deriving the mesh from the stored parameters.
// Malformed input raises std::runtime_error with the offending field.
DomainSpace domain_from_json(const Json& j);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace qmgeo
