#include <algorithm>

#include "symrec/errors.hpp"
#include "symrec/io.hpp"

namespace symrec::io {

namespace {

constexpr std::size_t kMaxDepth = 64;

// Rejects pathological nesting before handing the text to the JSON parser.
void check_depth(std::string_view text) {
  std::size_t depth = 0;
  bool in_string = false, escaped = false;
  for (char c : text) {
    if (in_string) {
      if (escaped)
        escaped = false;
      else if (c == '\\')
        escaped = true;
      else if (c == '"')
        in_string = false;
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '[' || c == '{') {
      if (++depth > kMaxDepth) throw SchemaError("$", "nesting deeper than " + std::to_string(kMaxDepth));
    } else if ((c == ']' || c == '}') && depth > 0) {
      --depth;
    }
  }
}

Json parse_json(std::string_view text) {
  check_depth(text);
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("$", std::string("invalid JSON at byte ") + std::to_string(e.byte));
  }
}

const Json& member(const Json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "." + key, "missing key");
  return *it;
}

void only_keys(const Json& obj, std::initializer_list<const char*> keys, const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    bool known = std::any_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; });
    if (!known) throw SchemaError(path + "." + key, "unexpected key");
  }
}

std::string as_string(const Json& v, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path, "expected a string");
  return v.get<std::string>();
}

std::size_t as_count(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) throw SchemaError(path, "expected an integer");
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  auto n = v.get<std::int64_t>();
  if (n < 0) throw SchemaError(path, "expected a non-negative integer");
  return static_cast<std::size_t>(n);
}

std::vector<SymptomId> as_set(const Json& v, const std::string& path) {
  if (!v.is_array()) throw SchemaError(path, "expected an array of symptom names");
  std::vector<SymptomId> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_string(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::vector<SymptomId>> as_sets(const Json& v, const std::string& path) {
  if (!v.is_array()) throw SchemaError(path, "expected an array of symptom sets");
  std::vector<std::vector<SymptomId>> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_set(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::pair<std::vector<std::vector<SymptomId>>, std::vector<std::vector<SymptomId>>> as_lists(
    const Json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) throw SchemaError(path, "expected exactly two lists");
  return {as_sets(v[0], path + "[0]"), as_sets(v[1], path + "[1]")};
}

GeneratorSpec generator_from_json(const Json& g, const std::string& path) {
  if (!g.is_object()) throw SchemaError(path, "expected a generator object");
  auto type = as_string(member(g, "type", path), path + ".type");
  if (type == "G0") {
    only_keys(g, {"type", "set"}, path);
    return GeneratorSpec::identity(as_set(member(g, "set", path), path + ".set"));
  }
  if (type == "G1") {
    only_keys(g, {"type", "set", "k"}, path);
    auto set = as_set(member(g, "set", path), path + ".set");
    return GeneratorSpec::subset(std::move(set), as_count(member(g, "k", path), path + ".k"));
  }
  if (type == "G2") {
    only_keys(g, {"type", "sets", "k"}, path);
    auto sets = as_sets(member(g, "sets", path), path + ".sets");
    return GeneratorSpec::multi_set(std::move(sets), as_count(member(g, "k", path), path + ".k"));
  }
  if (type == "G3") {
    only_keys(g, {"type", "lists"}, path);
    auto [a, b] = as_lists(member(g, "lists", path), path + ".lists");
    return GeneratorSpec::disjoint_combination(std::move(a), std::move(b));
  }
  if (type == "G4") {
    only_keys(g, {"type", "lists", "mins"}, path);
    auto [a, b] = as_lists(member(g, "lists", path), path + ".lists");
    const auto& mins = member(g, "mins", path);
    if (!mins.is_array() || mins.size() != 3) throw SchemaError(path + ".mins", "expected [r, s, t]");
    return GeneratorSpec::ex_multi_set(std::move(a), std::move(b), as_count(mins[0], path + ".mins[0]"),
                                       as_count(mins[1], path + ".mins[1]"),
                                       as_count(mins[2], path + ".mins[2]"));
  }
  throw SchemaError(path + ".type", "unknown generator type '" + type + "'");
}

Json set_json(const SymptomSet& set) { return Json(set); }

Json sets_json(const std::vector<SymptomSet>& sets) {
  Json out = Json::array();
  for (const auto& s : sets) out.push_back(set_json(s));
  return out;
}

Json generator_to_json(const GeneratorSpec& g) {
  Json out;
  out["type"] = to_string(g.kind());
  std::visit(
      [&](const auto& gen) {
        using T = std::decay_t<decltype(gen)>;
        if constexpr (std::is_same_v<T, IdentityGen>) {
          out["set"] = set_json(gen.set);
        } else if constexpr (std::is_same_v<T, SubsetGen>) {
          out["set"] = set_json(gen.set);
          out["k"] = gen.k;
        } else if constexpr (std::is_same_v<T, MultiSetGen>) {
          out["sets"] = sets_json(gen.sets);
          out["k"] = gen.k;
        } else if constexpr (std::is_same_v<T, DisjointCombinationGen>) {
          out["lists"] = Json::array({sets_json(gen.list_a), sets_json(gen.list_b)});
        } else {
          out["lists"] = Json::array({sets_json(gen.list_a), sets_json(gen.list_b)});
          out["mins"] = Json::array({gen.min_a, gen.min_b, gen.min_total});
        }
      },
      g.body());
  return out;
}

}  // namespace

DisorderSpec spec_from_json(const Json& doc, const std::string& path) {
  if (!doc.is_object()) throw SchemaError(path, "expected a spec object");
  only_keys(doc, {"name", "generators"}, path);
  auto name = as_string(member(doc, "name", path), path + ".name");
  try {
    check_disorder_label(name);
  } catch (const InvalidArgument& e) {
    throw SchemaError(path + ".name", e.what());
  }
  const auto& gens = member(doc, "generators", path);
  if (!gens.is_array()) throw SchemaError(path + ".generators", "expected an array");
  std::vector<GeneratorSpec> generators;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::string gpath = path + ".generators[" + std::to_string(i) + "]";
    try {
      generators.push_back(generator_from_json(gens[i], gpath));
    } catch (const SpecValidation& e) {
      throw SpecValidation(e.detail(), gpath);
    }
  }
  try {
    return DisorderSpec(std::move(name), std::move(generators));
  } catch (const SpecValidation& e) {
    throw SpecValidation(e.detail(), path);
  }
}

DisorderSpec parse_spec(std::string_view text) { return spec_from_json(parse_json(text)); }

std::vector<DisorderSpec> parse_specs(std::string_view text) {
  auto doc = parse_json(text);
  if (!doc.is_array()) return {spec_from_json(doc)};
  std::vector<DisorderSpec> out;
  for (std::size_t i = 0; i < doc.size(); ++i) out.push_back(spec_from_json(doc[i], "$[" + std::to_string(i) + "]"));
  return out;
}

Json spec_to_json(const DisorderSpec& spec) {
  Json out;
  out["name"] = spec.label();
  Json gens = Json::array();
  for (const auto& g : spec.generators()) gens.push_back(generator_to_json(g));
  out["generators"] = std::move(gens);
  return out;
}

std::string serialize_spec(const DisorderSpec& spec) { return spec_to_json(spec).dump(2) + "\n"; }

std::string serialize_specs(const std::vector<DisorderSpec>& specs) {
  Json out = Json::array();
  for (const auto& s : specs) out.push_back(spec_to_json(s));
  return out.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

Json recommendation_to_json(const Recommendation& rec) {
  Json out;
  out["candidates"] = rec.candidates;
  out["excluded"] = rec.excluded;
  out["columns"] = rec.columns;
  Json freqs = Json::object();
  for (std::size_t g = 0; g < rec.candidates.size(); ++g) {
    Json row = Json::array();
    for (const auto& f : rec.frequencies[g]) row.push_back(f.to_string());
    freqs[rec.candidates[g]] = std::move(row);
  }
  out["frequencies"] = std::move(freqs);
  out["s1"] = rec.informative.s1;
  out["s0"] = rec.informative.s0;
  out["s_inter"] = rec.informative.s_inter;
  Json pairs = Json::object();
  for (const auto& e : rec.pairs.entries) {
    Json list = Json::array();
    for (const auto& [a, b] : e.pairs) list.push_back(Json::array({a, b}));
    pairs[e.symptom] = std::move(list);
  }
  out["pairs"] = std::move(pairs);
  Json sizes = Json::object();
  for (std::size_t g = 0; g < rec.candidates.size(); ++g) sizes[rec.candidates[g]] = rec.group_sizes[g];
  out["group_sizes"] = std::move(sizes);
  out["path"] = to_string(rec.path);
  out["diagnosis_complete"] = rec.diagnosis_complete;
  out["no_candidates"] = rec.no_candidates();
  out["warnings"] = rec.warnings;
  return out;
}

std::string serialize_recommendation(const Recommendation& rec) {
  return recommendation_to_json(rec).dump(2) + "\n";
}

Json session_to_json(const Session& session) {
  Json out;
  out["id"] = session.id;
  out["dataset_id"] = session.dataset_id;
  out["revision"] = session.revision;
  Json obs = Json::array();
  for (const auto& o : session.observations.entries())
    obs.push_back(Json{{"symptom", o.symptom}, {"state", to_string(o.state)}});
  out["observations"] = std::move(obs);
  return out;
}

Session session_from_json(const Json& doc) {
  if (!doc.is_object()) throw SchemaError("$", "expected a session object");
  Session s;
  s.id = as_string(member(doc, "id", "$"), "$.id");
  s.dataset_id = as_string(member(doc, "dataset_id", "$"), "$.dataset_id");
  s.revision = as_count(member(doc, "revision", "$"), "$.revision");
  const auto& obs = member(doc, "observations", "$");
  if (!obs.is_array()) throw SchemaError("$.observations", "expected an array");
  for (std::size_t i = 0; i < obs.size(); ++i) {
    std::string path = "$.observations[" + std::to_string(i) + "]";
    if (!obs[i].is_object()) throw SchemaError(path, "expected an observation object");
    auto symptom = as_string(member(obs[i], "symptom", path), path + ".symptom");
    auto state = parse_observation_state(as_string(member(obs[i], "state", path), path + ".state"));
    if (!state) throw SchemaError(path + ".state", "expected 'present' or 'absent'");
    s.observations.insert({symptom, *state});
  }
  return s;
}

}  // namespace symrec::io
