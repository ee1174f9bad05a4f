#pragma once
/// @file primary.hpp
/// @brief Reduced model of a seminormal finitely primary monoid of rank s:
///        elements are either the identity or a pair (unit class, exponent
///        vector >= 1), multiplying componentwise.
///
/// The unit class lives in a designated subgroup of the ambient class group
/// (the image of the unit group); each of the s height-one primes carries a
/// class used when the component is embedded into a block structure.  The
/// atoms are exactly the non-units of minimal layer: min exponent equal to 1.

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "deltakit/group.hpp"
#include "deltakit/zerosum.hpp"

namespace deltakit {

/// Specification of one primary component over an ambient group.
struct PrimaryComponentSpec {
  int rank = 1;                                   // s >= 1
  std::vector<GroupElement> unit_class_generators;
  std::vector<GroupElement> prime_classes;        // one class per prime, size s
  std::vector<GroupElement> unit_classes;         // derived subgroup, sorted
  /// True when the model cannot distinguish the component from a factorial
  /// one (rank 1 with trivial unit-class subgroup); accepted with a warning.
  bool factorial_model = false;
};

inline PrimaryComponentSpec make_primary_component(
    const FiniteAbelianGroup& G, int rank,
    std::vector<GroupElement> unit_class_generators,
    std::vector<GroupElement> prime_classes) {
  if (rank < 1) throw std::invalid_argument("component rank must be >= 1");
  if (prime_classes.size() != static_cast<std::size_t>(rank)) {
    throw std::invalid_argument("component needs one prime class per rank");
  }
  for (const GroupElement& g : unit_class_generators) {
    if (g.coords.size() != G.rank()) {
      throw std::invalid_argument("unit-class generator has wrong rank");
    }
  }
  for (const GroupElement& g : prime_classes) {
    if (g.coords.size() != G.rank()) {
      throw std::invalid_argument("prime class has wrong rank");
    }
  }
  PrimaryComponentSpec spec;
  spec.rank = rank;
  spec.unit_class_generators = std::move(unit_class_generators);
  spec.prime_classes = std::move(prime_classes);
  spec.unit_classes = G.subgroup_generated(spec.unit_class_generators);
  spec.factorial_model = (rank == 1 && spec.unit_classes.size() == 1);
  return spec;
}

/// Element of one primary component.  The identity is the empty exponent
/// vector; every other element has all exponents >= 1.
struct PrimaryElement {
  GroupElement unit_class;       // member of the component's unit-class subgroup
  std::vector<Coord> exponents;  // size = rank, each >= 1; empty = identity

  bool is_identity() const { return exponents.empty(); }

  bool operator==(const PrimaryElement&) const = default;
  auto operator<=>(const PrimaryElement&) const = default;
};

inline PrimaryElement primary_identity(const FiniteAbelianGroup& G) {
  return PrimaryElement{G.zero(), {}};
}

inline PrimaryElement make_primary_element(const FiniteAbelianGroup& G,
                                           const PrimaryComponentSpec& spec,
                                           GroupElement unit_class,
                                           std::vector<Coord> exponents) {
  if (exponents.empty()) {
    throw std::invalid_argument("use primary_identity for the identity");
  }
  if (exponents.size() != static_cast<std::size_t>(spec.rank)) {
    throw std::invalid_argument("exponent count does not match component rank");
  }
  for (Coord k : exponents) {
    if (k < 1) throw std::invalid_argument("exponents must be >= 1");
  }
  unit_class = G.element(std::move(unit_class.coords));
  if (!std::binary_search(spec.unit_classes.begin(), spec.unit_classes.end(),
                          unit_class)) {
    throw std::invalid_argument("unit class outside the unit-class subgroup");
  }
  return PrimaryElement{std::move(unit_class), std::move(exponents)};
}

inline PrimaryElement primary_multiply(const FiniteAbelianGroup& G,
                                       const PrimaryElement& a,
                                       const PrimaryElement& b) {
  if (a.is_identity()) return b;
  if (b.is_identity()) return a;
  if (a.exponents.size() != b.exponents.size()) {
    throw std::invalid_argument("component rank mismatch");
  }
  PrimaryElement r;
  r.unit_class = G.add(a.unit_class, b.unit_class);
  r.exponents = a.exponents;
  for (std::size_t i = 0; i < r.exponents.size(); ++i) {
    r.exponents[i] += b.exponents[i];
  }
  return r;
}

/// Quotient b / a, if a divides b: either a is the identity, or the exponent
/// difference is zero everywhere (requiring equal unit classes), or it is
/// >= 1 everywhere (any unit classes).
inline std::optional<PrimaryElement> primary_divide(const FiniteAbelianGroup& G,
                                                    const PrimaryElement& b,
                                                    const PrimaryElement& a) {
  if (a.is_identity()) return b;
  if (b.is_identity()) return std::nullopt;
  if (a.exponents.size() != b.exponents.size()) return std::nullopt;
  bool all_zero = true;
  bool all_pos = true;
  for (std::size_t i = 0; i < a.exponents.size(); ++i) {
    Coord d = b.exponents[i] - a.exponents[i];
    if (d != 0) all_zero = false;
    if (d < 1) all_pos = false;
  }
  if (all_zero) {
    if (a.unit_class == b.unit_class) return primary_identity(G);
    return std::nullopt;
  }
  if (!all_pos) return std::nullopt;
  PrimaryElement r;
  r.unit_class = G.sub(b.unit_class, a.unit_class);
  r.exponents = b.exponents;
  for (std::size_t i = 0; i < r.exponents.size(); ++i) {
    r.exponents[i] -= a.exponents[i];
  }
  return r;
}

inline bool primary_divides(const FiniteAbelianGroup& G,
                            const PrimaryElement& a, const PrimaryElement& b) {
  return primary_divide(G, b, a).has_value();
}

/// An element is an atom iff its minimal exponent is 1.  Undefined for the
/// identity.
inline bool primary_is_atom(const PrimaryElement& a) {
  if (a.is_identity()) {
    throw std::invalid_argument("atom test is undefined for the identity");
  }
  return *std::min_element(a.exponents.begin(), a.exponents.end()) == 1;
}

/// Largest factorization length inside the component: the minimal exponent
/// (0 for the identity).
inline Coord primary_max_length(const PrimaryElement& a) {
  if (a.is_identity()) return 0;
  return *std::min_element(a.exponents.begin(), a.exponents.end());
}

/// Class of the element in the ambient group: unit class plus the weighted
/// sum of prime classes (0 for the identity).
inline GroupElement primary_class_of(const FiniteAbelianGroup& G,
                                     const PrimaryComponentSpec& spec,
                                     const PrimaryElement& a) {
  GroupElement c = G.zero();
  if (a.is_identity()) return c;
  c = a.unit_class;
  for (std::size_t i = 0; i < a.exponents.size(); ++i) {
    c = G.add(c, G.scale(a.exponents[i], spec.prime_classes[i]));
  }
  return c;
}

/// Standalone atomic-monoid view of one primary component.
class PrimaryMonoid {
 public:
  using Element = PrimaryElement;

  PrimaryMonoid(FiniteAbelianGroup G, PrimaryComponentSpec spec)
      : G_(std::move(G)), spec_(std::move(spec)) {}

  const FiniteAbelianGroup& group() const { return G_; }
  const PrimaryComponentSpec& spec() const { return spec_; }

  bool is_member(const Element& a) const {
    if (a.is_identity()) return a.unit_class == G_.zero();
    if (a.exponents.size() != static_cast<std::size_t>(spec_.rank)) {
      return false;
    }
    for (Coord k : a.exponents) {
      if (k < 1) return false;
    }
    return std::binary_search(spec_.unit_classes.begin(),
                              spec_.unit_classes.end(), a.unit_class);
  }

  bool is_identity(const Element& a) const { return a.is_identity(); }

  std::optional<Element> divide(const Element& a, const Element& u) const {
    return primary_divide(G_, a, u);
  }

  std::vector<Element> atoms_dividing(const Element& a) const {
    std::vector<Element> out;
    if (a.is_identity()) return out;
    const std::size_t s = a.exponents.size();
    // The full element, when it is itself an atom.
    if (primary_is_atom(a)) out.push_back(a);
    // Proper divisors need remainder >= 1 in every coordinate.
    bool proper_possible = true;
    for (Coord k : a.exponents) {
      if (k < 2) proper_possible = false;
    }
    if (proper_possible) {
      std::vector<Coord> k(s, 1);
      auto emit = [&]() {
        bool has_one = std::any_of(k.begin(), k.end(),
                                   [](Coord v) { return v == 1; });
        if (!has_one) return;
        for (const GroupElement& g : spec_.unit_classes) {
          out.push_back(Element{g, k});
        }
      };
      // Odometer over 1 <= k_i <= a_i - 1.
      while (true) {
        emit();
        std::size_t i = 0;
        while (i < s && k[i] == a.exponents[i] - 1) {
          k[i] = 1;
          ++i;
        }
        if (i == s) break;
        k[i] += 1;
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::string canonical_key(const Element& a) const {
    std::string s = "P";
    detail::append_element(s, a.unit_class);
    for (Coord k : a.exponents) detail::append_u16(s, k);
    return s;
  }

  bool less(const Element& a, const Element& b) const { return a < b; }

  std::pair<Coord, Element> strip_primes(const Element& a) const {
    return {0, a};  // no prime elements in a primary component model
  }

  Coord norm(const Element& a) const { return 2 * primary_max_length(a); }

  /// Identity plus all (g, k) with exponents in [1, exp_cap], canonically
  /// sorted.
  std::vector<Element> enumerate_region(Coord exp_cap) const {
    std::vector<Element> out;
    out.push_back(primary_identity(G_));
    const std::size_t s = static_cast<std::size_t>(spec_.rank);
    std::vector<Coord> k(s, 1);
    if (exp_cap >= 1) {
      while (true) {
        for (const GroupElement& g : spec_.unit_classes) {
          out.push_back(Element{g, k});
        }
        std::size_t i = 0;
        while (i < s && k[i] == exp_cap) {
          k[i] = 1;
          ++i;
        }
        if (i == s) break;
        k[i] += 1;
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  FiniteAbelianGroup G_;
  PrimaryComponentSpec spec_;
};

}  // namespace deltakit
