#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "symrec/generator.hpp"
#include "symrec/matrix.hpp"
#include "symrec/recommender.hpp"
#include "symrec/session.hpp"

namespace symrec::io {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Matrix CSV
//
//   disorder,<sym1>,...,<symM>
//   <label>,<0|1>,...,<0|1>
//
// Comma separator, LF line endings, no quoting. Errors are ParseError with
// 1-based (line, field) locations.

struct MatrixDocument {
  ProfileMatrix matrix;
  std::vector<std::string> warnings;
};

MatrixDocument parse_matrix(std::string_view text);

// Canonical form: header, then rows in catalog order. Disorders without rows
// cannot be represented and are left out.
std::string serialize_matrix(const ProfileMatrix& matrix);

// ---------------------------------------------------------------------------
// Generator spec JSON
//
//   {"name": "...", "generators": [
//     {"type": "G0", "set": [..]}
//     {"type": "G1", "set": [..], "k": n}
//     {"type": "G2", "sets": [[..], ..], "k": n}
//     {"type": "G3", "lists": [[[..], ..], [[..], ..]]}
//     {"type": "G4", "lists": [[[..], ..], [[..], ..]], "mins": [r, s, t]}
//   ]}
//
// Structural problems throw SchemaError, invariant violations SpecValidation;
// both carry the JSON path of the offending value.

DisorderSpec parse_spec(std::string_view text);
DisorderSpec spec_from_json(const Json& doc, const std::string& path = "$");
// Accepts a single spec object or an array of them.
std::vector<DisorderSpec> parse_specs(std::string_view text);

Json spec_to_json(const DisorderSpec& spec);
std::string serialize_spec(const DisorderSpec& spec);
std::string serialize_specs(const std::vector<DisorderSpec>& specs);

// ---------------------------------------------------------------------------
// Recommendation / session JSON (canonical key order, byte-stable)

Json recommendation_to_json(const Recommendation& rec);
std::string serialize_recommendation(const Recommendation& rec);

Json session_to_json(const Session& session);
Session session_from_json(const Json& doc);

}  // namespace symrec::io
