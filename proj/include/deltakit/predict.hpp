#pragma once
/// @file predict.hpp
/// @brief Closed-form predictions for block structures over the two-element
///        class group: the per-component contribution d, the exact maximum of
///        the distance set, and constructive witness pairs that attain it.
///
/// Over G = {0, e} each component contributes an integer d determined only by
/// its unit-class image and the classes of its height coordinates.  The
/// maximum distance of the whole block structure is
///     max({d_i + d_j : i != j} U {|d_i|}),
/// and for every positive target value there is a pair of atoms U1, U2 whose
/// product has length set {2, 2 + target}.

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "deltakit/factor.hpp"
#include "deltakit/group.hpp"
#include "deltakit/primary.hpp"
#include "deltakit/tblock.hpp"

namespace deltakit {

/// Per-component contribution d for |G| = 2.
inline int order_two_component_delta(const FiniteAbelianGroup& G,
                                     const PrimaryComponentSpec& c) {
  if (G.order() != 2) {
    throw std::invalid_argument(
        "component delta table requires a two-element class group");
  }
  const GroupElement e = G.element({1});
  const bool trivial_units = c.unit_classes.size() == 1;
  int count_e = 0;
  for (const GroupElement& q : c.prime_classes) {
    if (q == e) ++count_e;
  }
  if (!trivial_units) return 1;
  if (c.rank == 1) return 0;
  if (count_e == 0) return -1;
  if (c.rank == 2 && count_e == 2) return 2;
  return 1;
}

/// Exact maximum of the distance set for |G| = 2 and full ground set.
inline int order_two_max_delta(const TBlockSpec& spec) {
  if (spec.group.order() != 2) {
    throw std::invalid_argument(
        "the distance-set formula requires a two-element class group");
  }
  if (spec.ground_set.size() != spec.group.order()) {
    throw std::invalid_argument(
        "the distance-set formula requires the full ground set");
  }
  if (spec.components.empty()) {
    throw std::invalid_argument(
        "the distance-set formula requires at least one component");
  }
  std::vector<int> d;
  d.reserve(spec.components.size());
  for (const PrimaryComponentSpec& c : spec.components) {
    d.push_back(order_two_component_delta(spec.group, c));
  }
  int best = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    best = std::max(best, std::abs(d[i]));
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      best = std::max(best, d[i] + d[j]);
    }
  }
  return best;
}

/// A pair of atoms whose product has length set {2, 2 + gap}.
struct WitnessPair {
  BlockElement u1;
  BlockElement u2;
  LengthSet expected_lengths;  // always {2, 2 + gap}
  int gap = 0;
};

namespace detail {

/// For a component with d = 1: two parts a1, a2 of class e such that the
/// pairings used below produce the advertised length sets.
inline std::pair<PrimaryElement, PrimaryElement> class_e_part_pair(
    const FiniteAbelianGroup& G, const PrimaryComponentSpec& c) {
  const GroupElement e = G.element({1});
  const std::size_t s = static_cast<std::size_t>(c.rank);
  if (c.unit_classes.size() > 1) {
    // Unit classes cover G: a single all-ones part can be steered to class e.
    std::vector<Coord> ones(s, 1);
    GroupElement cls = G.zero();
    for (const GroupElement& q : c.prime_classes) cls = G.add(cls, q);
    GroupElement g = G.sub(e, cls);
    PrimaryElement a{g, ones};
    return {a, a};
  }
  std::vector<std::size_t> e_idx;
  for (std::size_t i = 0; i < s; ++i) {
    if (c.prime_classes[i] == e) e_idx.push_back(i);
  }
  if (e_idx.empty()) {
    throw std::invalid_argument(
        "component does not contribute d = 1: no coordinate of class e");
  }
  std::vector<Coord> k1(s, 1);
  if (e_idx.size() == 1) {
    std::vector<Coord> k2(s, 1);
    k2[e_idx[0]] = 3;
    return {PrimaryElement{G.zero(), k1},
            PrimaryElement{G.zero(), std::move(k2)}};
  }
  // Two or more class-e coordinates: balance the parity of the rest.
  std::size_t p1 = e_idx[0];
  std::size_t p2 = e_idx[1];
  int rest = static_cast<int>(e_idx.size()) - 2;
  Coord delta = (rest % 2 == 0) ? 2 : 1;
  k1[p2] = delta;
  std::vector<Coord> k2 = k1;
  k2[p1] = 3;
  return {PrimaryElement{G.zero(), std::move(k1)},
          PrimaryElement{G.zero(), std::move(k2)}};
}

}  // namespace detail

/// Builds a witness pair attaining the given gap (1..4) for a |G| = 2 spec
/// whose formula maximum equals that gap, and verifies it against the
/// factorization engine.  Throws invalid_argument when the spec does not
/// support the gap, logic_error if verification fails.
inline WitnessPair order_two_witness_pair(const BlockMonoid& m, int gap) {
  const TBlockSpec& spec = m.spec();
  const FiniteAbelianGroup& G = spec.group;
  int formula = order_two_max_delta(spec);
  if (gap < 1 || gap > 4) {
    throw std::invalid_argument("witness gap must be between 1 and 4");
  }
  if (formula != gap) {
    throw std::invalid_argument(
        "spec formula maximum does not match the requested gap");
  }
  const GroupElement e = G.element({1});
  std::vector<int> d;
  for (const PrimaryComponentSpec& c : spec.components) {
    d.push_back(order_two_component_delta(G, c));
  }
  auto find_d = [&](int want, std::size_t skip) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (i != skip && d[i] == want) return i;
    }
    return std::nullopt;
  };
  auto pattern12 = [&](std::size_t ci) {
    (void)ci;
    return PrimaryElement{G.zero(), {1, 2}};
  };
  auto pattern21 = [&](std::size_t ci) {
    (void)ci;
    return PrimaryElement{G.zero(), {2, 1}};
  };

  WitnessPair w;
  w.gap = gap;
  w.expected_lengths = {2, static_cast<Coord>(2 + gap)};
  BlockElement u1 = m.identity();
  BlockElement u2 = m.identity();

  if (gap == 4) {
    auto i = find_d(2, SIZE_MAX);
    auto j = i ? find_d(2, *i) : std::nullopt;
    if (!i || !j) throw std::invalid_argument("gap 4 needs two d=2 components");
    u1.parts[*i] = pattern12(*i);
    u1.parts[*j] = pattern12(*j);
    u2.parts[*i] = pattern21(*i);
    u2.parts[*j] = pattern21(*j);
  } else if (gap == 3) {
    auto i = find_d(2, SIZE_MAX);
    auto j = find_d(1, SIZE_MAX);
    if (!i || !j) {
      throw std::invalid_argument("gap 3 needs a d=2 and a d=1 component");
    }
    auto [a1, a2] = detail::class_e_part_pair(G, spec.components[*j]);
    u1.parts[*i] = pattern12(*i);
    u1.parts[*j] = a1;
    u2.parts[*i] = pattern21(*i);
    u2.parts[*j] = a2;
  } else if (gap == 2) {
    auto i = find_d(1, SIZE_MAX);
    auto j = i ? find_d(1, *i) : std::nullopt;
    if (i && j) {
      auto [a1, a2] = detail::class_e_part_pair(G, spec.components[*i]);
      auto [b1, b2] = detail::class_e_part_pair(G, spec.components[*j]);
      u1.parts[*i] = a1;
      u1.parts[*j] = b1;
      u2.parts[*i] = a2;
      u2.parts[*j] = b2;
    } else {
      auto k = find_d(2, SIZE_MAX);
      if (!k) {
        throw std::invalid_argument(
            "gap 2 needs two d=1 components or one d=2 component");
      }
      u1.seq = Sequence::single(e, 1);
      u1.parts[*k] = pattern12(*k);
      u2.seq = Sequence::single(e, 1);
      u2.parts[*k] = pattern21(*k);
    }
  } else {  // gap == 1
    auto i = find_d(1, SIZE_MAX);
    if (i) {
      auto [a1, a2] = detail::class_e_part_pair(G, spec.components[*i]);
      u1.seq = Sequence::single(e, 1);
      u1.parts[*i] = a1;
      u2.seq = Sequence::single(e, 1);
      u2.parts[*i] = a2;
    } else {
      auto k = find_d(-1, SIZE_MAX);
      if (!k) {
        throw std::invalid_argument(
            "gap 1 needs a d=1 or a d=-1 component");
      }
      const std::size_t s =
          static_cast<std::size_t>(spec.components[*k].rank);
      std::vector<Coord> k1(s, 1);
      k1[0] = 2;
      std::vector<Coord> k2(s, 2);
      k2[0] = 1;
      u1.parts[*k] = PrimaryElement{G.zero(), std::move(k1)};
      u2.parts[*k] = PrimaryElement{G.zero(), std::move(k2)};
    }
  }

  if (!m.is_atom(u1) || !m.is_atom(u2)) {
    throw std::logic_error("witness construction produced a non-atom");
  }
  FactorEngine<BlockMonoid> engine(m);
  LengthSet got = engine.length_set(m.multiply(u1, u2));
  if (got != w.expected_lengths) {
    throw std::logic_error("witness product has an unexpected length set");
  }
  w.u1 = std::move(u1);
  w.u2 = std::move(u2);
  return w;
}

}  // namespace deltakit
