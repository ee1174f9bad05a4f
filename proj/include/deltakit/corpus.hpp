#pragma once
/// @file corpus.hpp
/// @brief The bundled spec corpus: length-gap examples over cyclic groups and
///        C_3 x C_3, and one spec per two-element-class-group d-profile
///        (singles -1, 0, 1, 2 and pairwise sums 0..4).  Each spec carries an
///        "expected" block consumed by the verify command.

#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "deltakit/io.hpp"

namespace deltakit {

namespace detail {

inline Json comp_json(int rank, Json gens, Json primes) {
  Json c;
  c["rank"] = rank;
  c["unit_class_generators"] = std::move(gens);
  c["prime_classes"] = std::move(primes);
  return c;
}

// Component profiles over C_2 (e = [1]).
inline Json c2_comp_d2() {
  return comp_json(2, Json::array(), Json::array({{1}, {1}}));
}
inline Json c2_comp_d1_mixed() {  // G_nu = {0}, classes (e, 0)
  return comp_json(2, Json::array(), Json::array({{1}, {0}}));
}
inline Json c2_comp_d1_units() {  // G_nu = G, rank 1
  return comp_json(1, Json::array({{1}}), Json::array({{0}}));
}
inline Json c2_comp_d0() {
  return comp_json(1, Json::array(), Json::array({{1}}));
}
inline Json c2_comp_dm1() {
  return comp_json(2, Json::array(), Json::array({{0}, {0}}));
}

inline Json part_json(Json cls, Json exps) {
  Json p;
  p["class"] = std::move(cls);
  p["exp"] = std::move(exps);
  return p;
}

inline Json block_elem_json(Json seq, Json parts) {
  Json e;
  e["seq"] = std::move(seq);
  e["parts"] = std::move(parts);
  return e;
}

/// Spec for a two-element class group with the given component list and
/// expected values; gap <= 0 means the formula maximum is 0.
inline Json c2_spec(const std::string& name, Json components, int gap) {
  Json j;
  j["name"] = name;
  j["group"] = Json::array({2});
  j["components"] = std::move(components);
  Json expected;
  expected["formula_max_delta"] = gap;
  expected["max_delta"] = gap;
  expected["delta_interval"] = true;
  expected["scan_catenary"] = true;
  if (gap > 0) {
    expected["catenary"] = gap + 2;
    expected["witness_gap"] = gap;
  } else {
    // Half-factorial structures still admit distinct same-length
    // factorizations two atoms apart.
    expected["catenary"] = 2;
  }
  j["expected"] = std::move(expected);
  return j;
}

/// Length-gap spec over C_n: one rank-2 component with prime classes e, -e.
inline Json cyclic_gap_spec(int n) {
  Json j;
  j["name"] = "lengths-gap-n" + std::to_string(n);
  j["group"] = Json::array({n});
  j["components"] =
      Json::array({comp_json(2, Json::array(), Json::array({{1}, {n - 1}}))});
  Json expected;
  expected["max_delta"] = n;
  expected["delta_interval"] = true;
  expected["scan_catenary"] = false;
  Json products = Json::array();
  {
    // p1^{n+2} p2^{n+2} factors as two long atoms or n+2 copies of p1 p2.
    Json e = block_elem_json(
        Json::array(),
        Json::array({part_json(Json::array({0}),
                               Json::array({n + 2, n + 2}))}));
    Json rec;
    rec["element"] = std::move(e);
    rec["lengths"] = Json::array({2, n + 2});
    products.push_back(std::move(rec));
  }
  {
    // e * p1^{n+1} p2^{n+2} has length set {2, n+1}.
    Json e = block_elem_json(
        Json::array({Json::array({Json::array({1}), 1})}),
        Json::array({part_json(Json::array({0}),
                               Json::array({n + 1, n + 2}))}));
    Json rec;
    rec["element"] = std::move(e);
    rec["lengths"] = Json::array({2, n + 1});
    Json atoms = Json::array();
    // The four atoms dividing it: p1p2, p1p2^{n+1}, e*p1p2^2, e*p1^n p2.
    atoms.push_back(block_elem_json(
        Json::array(),
        Json::array({part_json(Json::array({0}), Json::array({1, 1}))})));
    atoms.push_back(block_elem_json(
        Json::array(),
        Json::array({part_json(Json::array({0}), Json::array({1, n + 1}))})));
    atoms.push_back(block_elem_json(
        Json::array({Json::array({Json::array({1}), 1})}),
        Json::array({part_json(Json::array({0}), Json::array({1, 2}))})));
    atoms.push_back(block_elem_json(
        Json::array({Json::array({Json::array({1}), 1})}),
        Json::array({part_json(Json::array({0}), Json::array({n, 1}))})));
    rec["atoms_dividing"] = std::move(atoms);
    products.push_back(std::move(rec));
  }
  expected["products"] = std::move(products);
  j["expected"] = std::move(expected);
  return j;
}

/// Length-gap spec over C_3 x C_3: components 0..2 with prime classes
/// (e_i, -e_i), e_0 = e_1 + e_2.
inline Json rank2_gap_spec() {
  Json j;
  j["name"] = "lengths-gap-rank2";
  j["group"] = Json::array({3, 3});
  Json comps = Json::array();
  const int basis[3][2] = {{1, 1}, {1, 0}, {0, 1}};
  for (const auto& e : basis) {
    Json plus = Json::array({e[0], e[1]});
    Json minus = Json::array({(3 - e[0]) % 3, (3 - e[1]) % 3});
    comps.push_back(comp_json(2, Json::array(),
                              Json::array({std::move(plus), std::move(minus)})));
  }
  j["components"] = std::move(comps);
  Json scan;
  scan["seq_len_cap"] = 2;
  scan["exp_cap"] = 4;
  j["scan"] = std::move(scan);
  Json expected;
  expected["max_delta_at_least"] = 7;
  expected["scan_catenary"] = false;
  Json parts33 = Json::array();
  for (int i = 0; i < 3; ++i) {
    parts33.push_back(part_json(Json::array({0, 0}), Json::array({3, 3})));
  }
  Json product;
  product["element"] = block_elem_json(Json::array(), std::move(parts33));
  product["lengths"] = Json::array({2, 9});
  Json u1_parts = Json::array(
      {part_json(Json::array({0, 0}), Json::array({2, 1})),
       part_json(Json::array({0, 0}), Json::array({1, 2})),
       part_json(Json::array({0, 0}), Json::array({1, 2}))});
  Json u2_parts = Json::array(
      {part_json(Json::array({0, 0}), Json::array({1, 2})),
       part_json(Json::array({0, 0}), Json::array({2, 1})),
       part_json(Json::array({0, 0}), Json::array({2, 1}))});
  Json atoms = Json::array();
  atoms.push_back(block_elem_json(Json::array(), std::move(u1_parts)));
  atoms.push_back(block_elem_json(Json::array(), std::move(u2_parts)));
  product["factor_atoms"] = std::move(atoms);
  expected["products"] = Json::array({std::move(product)});
  j["expected"] = std::move(expected);
  return j;
}

}  // namespace detail

/// All bundled specs, in a stable order.
inline std::vector<std::pair<std::string, Json>> builtin_corpus() {
  using namespace detail;
  std::vector<std::pair<std::string, Json>> out;
  auto add = [&](Json j) {
    std::string name = j.at("name").get<std::string>();
    out.emplace_back(std::move(name), std::move(j));
  };
  // Single-component d-profiles over C_2.
  add(c2_spec("two-single-dm1", Json::array({c2_comp_dm1()}), 1));
  add(c2_spec("two-single-d0", Json::array({c2_comp_d0()}), 0));
  add(c2_spec("two-single-d1", Json::array({c2_comp_d1_mixed()}), 1));
  add(c2_spec("two-single-d2", Json::array({c2_comp_d2()}), 2));
  // Pairs covering all sums 0..4, plus the |d| vs sum interplay case.
  add(c2_spec("two-pair-00", Json::array({c2_comp_d0(), c2_comp_d0()}), 0));
  add(c2_spec("two-pair-01",
              Json::array({c2_comp_d0(), c2_comp_d1_mixed()}), 1));
  add(c2_spec("two-pair-11",
              Json::array({c2_comp_d1_mixed(), c2_comp_d1_units()}), 2));
  add(c2_spec("two-pair-12", Json::array({c2_comp_d1_mixed(), c2_comp_d2()}),
              3));
  add(c2_spec("two-pair-22", Json::array({c2_comp_d2(), c2_comp_d2()}), 4));
  add(c2_spec("two-pair-2m1", Json::array({c2_comp_d2(), c2_comp_dm1()}), 2));
  // Length-gap examples.
  add(cyclic_gap_spec(3));
  add(cyclic_gap_spec(4));
  add(cyclic_gap_spec(5));
  add(rank2_gap_spec());
  return out;
}

/// Writes the corpus as <name>.json files; returns the paths written.
inline std::vector<std::string> write_corpus(const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> paths;
  for (const auto& [name, doc] : builtin_corpus()) {
    std::filesystem::path p = std::filesystem::path(dir) / (name + ".json");
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << doc.dump(2) << '\n';
    paths.push_back(p.string());
  }
  return paths;
}

}  // namespace deltakit
