#pragma once
/// @file io.hpp
/// @brief JSON (de)serialization for group, component, and block-structure
///        specs, plus canonical dumps and content digests.
///
/// Spec file shapes:
///   group spec:   [2, 4]                      or {"group": [2, 4], ...}
///   component:    {"rank": 2,
///                  "unit_class_generators": [[1]],
///                  "prime_classes": [[1], [0]]}
///   block spec:   {"name": "...", "group": [...], "ground_set": [[...]],
///                  "components": [...],
///                  "scan": {"seq_len_cap": 6, "exp_cap": 6},
///                  "expected": {...}}        // passthrough, not parsed here
/// Elements: {"seq": [[[coords], mult], ...], "parts": [null | part, ...]}
/// with part = {"class": [coords], "exp": [k...]}.

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "deltakit/group.hpp"
#include "deltakit/primary.hpp"
#include "deltakit/sequence.hpp"
#include "deltakit/sha256.hpp"
#include "deltakit/tblock.hpp"

namespace deltakit {

using Json = nlohmann::json;

/// Parse failure carrying a 1-based line number.
class SpecParseError : public std::runtime_error {
 public:
  SpecParseError(const std::string& what, int line)
      : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Parses JSON text, rethrowing parse errors with line information.
inline Json parse_json_text(const std::string& text,
                            const std::string& origin = "spec") {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    byte = std::min(byte, text.size());
    int line = 1;
    for (std::size_t i = 0; i < byte; ++i) {
      if (text[i] == '\n') ++line;
    }
    std::ostringstream msg;
    msg << origin << ": parse error at line " << line << ": " << e.what();
    throw SpecParseError(msg.str(), line);
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Argument handling: a readable path loads the file, otherwise the argument
/// itself is treated as inline JSON.
inline Json load_spec_argument(const std::string& arg) {
  std::ifstream probe(arg);
  if (probe.good()) {
    probe.close();
    return parse_json_text(read_text_file(arg), arg);
  }
  return parse_json_text(arg, "inline spec");
}

// ---- group ----------------------------------------------------------------

inline FiniteAbelianGroup group_from_json(const Json& j) {
  const Json* factors = &j;
  if (j.is_object()) {
    if (!j.contains("group")) {
      throw std::invalid_argument("group spec needs a \"group\" field");
    }
    factors = &j.at("group");
  }
  if (!factors->is_array()) {
    throw std::invalid_argument("group must be a list of invariant factors");
  }
  std::vector<Coord> moduli;
  for (const Json& v : *factors) {
    if (!v.is_number_integer()) {
      throw std::invalid_argument("group factors must be integers");
    }
    moduli.push_back(v.get<Coord>());
  }
  return FiniteAbelianGroup(moduli);
}

inline Json group_to_json(const FiniteAbelianGroup& G) {
  return Json(G.invariant_factors());
}

// ---- elements --------------------------------------------------------------

inline GroupElement element_from_json(const FiniteAbelianGroup& G,
                                      const Json& j) {
  if (!j.is_array()) {
    throw std::invalid_argument("group element must be a coordinate list");
  }
  std::vector<Coord> coords;
  for (const Json& v : j) coords.push_back(v.get<Coord>());
  return G.element(coords);
}

inline Json element_to_json(const GroupElement& g) { return Json(g.coords); }

inline Json sequence_to_json(const Sequence& s) {
  Json out = Json::array();
  for (const auto& [g, k] : s.entries()) {
    out.push_back(Json::array({element_to_json(g), k}));
  }
  return out;
}

inline Sequence sequence_from_json(const FiniteAbelianGroup& G,
                                   const Json& j) {
  if (!j.is_array()) {
    throw std::invalid_argument("sequence must be a list of [element, mult]");
  }
  std::vector<Sequence::Entry> entries;
  for (const Json& e : j) {
    if (!e.is_array() || e.size() != 2) {
      throw std::invalid_argument("sequence entry must be [element, mult]");
    }
    entries.emplace_back(element_from_json(G, e.at(0)), e.at(1).get<Coord>());
  }
  return Sequence(std::move(entries));
}

// ---- primary components ----------------------------------------------------

inline PrimaryComponentSpec component_from_json(const FiniteAbelianGroup& G,
                                                const Json& j) {
  if (!j.is_object() || !j.contains("rank") || !j.contains("prime_classes")) {
    throw std::invalid_argument(
        "component needs \"rank\" and \"prime_classes\"");
  }
  int rank = j.at("rank").get<int>();
  std::vector<GroupElement> gens;
  if (j.contains("unit_class_generators")) {
    for (const Json& g : j.at("unit_class_generators")) {
      gens.push_back(element_from_json(G, g));
    }
  }
  std::vector<GroupElement> primes;
  for (const Json& q : j.at("prime_classes")) {
    primes.push_back(element_from_json(G, q));
  }
  return make_primary_component(G, rank, gens, primes);
}

inline Json component_to_json(const PrimaryComponentSpec& c) {
  Json j;
  j["rank"] = c.rank;
  Json gens = Json::array();
  for (const GroupElement& g : c.unit_class_generators) {
    gens.push_back(element_to_json(g));
  }
  j["unit_class_generators"] = std::move(gens);
  Json primes = Json::array();
  for (const GroupElement& q : c.prime_classes) {
    primes.push_back(element_to_json(q));
  }
  j["prime_classes"] = std::move(primes);
  return j;
}

inline Json primary_element_to_json(const PrimaryElement& p) {
  if (p.is_identity()) return Json(nullptr);
  Json j;
  j["class"] = element_to_json(p.unit_class);
  j["exp"] = p.exponents;
  return j;
}

inline PrimaryElement primary_element_from_json(const FiniteAbelianGroup& G,
                                                const Json& j) {
  if (j.is_null()) return primary_identity(G);
  PrimaryElement p;
  p.unit_class = element_from_json(G, j.at("class"));
  for (const Json& v : j.at("exp")) p.exponents.push_back(v.get<Coord>());
  return p;
}

// ---- block structures -------------------------------------------------------

inline TBlockSpec tblock_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("group") || !j.contains("components")) {
    throw std::invalid_argument(
        "block spec needs \"group\" and \"components\"");
  }
  FiniteAbelianGroup G = group_from_json(j.at("group"));
  std::vector<PrimaryComponentSpec> components;
  for (const Json& c : j.at("components")) {
    components.push_back(component_from_json(G, c));
  }
  std::optional<std::vector<GroupElement>> ground;
  if (j.contains("ground_set") && !j.at("ground_set").is_null()) {
    std::vector<GroupElement> gs;
    for (const Json& g : j.at("ground_set")) {
      gs.push_back(element_from_json(G, g));
    }
    ground = std::move(gs);
  }
  std::optional<Coord> seq_cap;
  std::optional<Coord> exp_cap;
  if (j.contains("scan")) {
    const Json& s = j.at("scan");
    if (s.contains("seq_len_cap")) seq_cap = s.at("seq_len_cap").get<Coord>();
    if (s.contains("exp_cap")) exp_cap = s.at("exp_cap").get<Coord>();
  }
  std::string name = j.value("name", std::string{});
  return make_tblock_spec(std::move(G), std::move(components),
                          std::move(ground), seq_cap, exp_cap,
                          std::move(name));
}

inline Json tblock_to_json(const TBlockSpec& spec) {
  Json j;
  if (!spec.name.empty()) j["name"] = spec.name;
  j["group"] = group_to_json(spec.group);
  Json gs = Json::array();
  for (const GroupElement& g : spec.ground_set) gs.push_back(element_to_json(g));
  j["ground_set"] = std::move(gs);
  Json comps = Json::array();
  for (const PrimaryComponentSpec& c : spec.components) {
    comps.push_back(component_to_json(c));
  }
  j["components"] = std::move(comps);
  if (spec.seq_len_cap || spec.exp_cap) {
    Json s;
    if (spec.seq_len_cap) s["seq_len_cap"] = *spec.seq_len_cap;
    if (spec.exp_cap) s["exp_cap"] = *spec.exp_cap;
    j["scan"] = std::move(s);
  }
  return j;
}

inline Json block_element_to_json(const BlockElement& a) {
  Json j;
  j["seq"] = sequence_to_json(a.seq);
  Json parts = Json::array();
  for (const PrimaryElement& p : a.parts) {
    parts.push_back(primary_element_to_json(p));
  }
  j["parts"] = std::move(parts);
  return j;
}

inline BlockElement block_element_from_json(const FiniteAbelianGroup& G,
                                            const Json& j) {
  BlockElement a;
  a.seq = sequence_from_json(G, j.at("seq"));
  for (const Json& p : j.at("parts")) {
    a.parts.push_back(primary_element_from_json(G, p));
  }
  return a;
}

// ---- digests ----------------------------------------------------------------

/// Canonical dump of the semantic spec content (normalized group, sorted
/// ground set, resolved scan caps) so that formatting variations of the same
/// spec share a digest.
inline std::string canonical_spec_dump(const TBlockSpec& spec) {
  Json j = tblock_to_json(spec);
  j.erase("name");  // labels do not affect results
  return j.dump();
}

inline std::string spec_digest(const TBlockSpec& spec) {
  return Sha256::of(canonical_spec_dump(spec));
}

inline std::string spec_digest(const FiniteAbelianGroup& G) {
  return Sha256::of(Json(G.invariant_factors()).dump());
}

}  // namespace deltakit
