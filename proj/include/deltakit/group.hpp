#pragma once
/// @file group.hpp
/// @brief Finite abelian groups in invariant-factor form and their element
///        arithmetic.
///
/// A group is represented by its invariant factors n_1 | n_2 | ... | n_r
/// (each >= 2); the empty list is the trivial group.  Elements are coordinate
/// vectors reduced modulo the respective factors.  Values are immutable once
/// constructed.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace deltakit {

using Coord = std::int64_t;

/// Element of a finite abelian group: one coordinate per invariant factor.
struct GroupElement {
  std::vector<Coord> coords;

  GroupElement() = default;
  explicit GroupElement(std::vector<Coord> c) : coords(std::move(c)) {}

  bool operator==(const GroupElement&) const = default;
  auto operator<=>(const GroupElement&) const = default;
};

/// Finite abelian group C_{n_1} x ... x C_{n_r} with n_1 | n_2 | ... | n_r.
class FiniteAbelianGroup {
 public:
  /// Builds the group from an arbitrary list of cyclic orders.  The list is
  /// canonicalized to invariant-factor form: factors of 1 are dropped and the
  /// remaining moduli are replaced by gcd/lcm pairs until a divisor chain is
  /// reached (e.g. [4,2,2] -> [2,2,4], [2,3] -> [6]).
  explicit FiniteAbelianGroup(std::vector<Coord> moduli)
      : factors_(canonicalize(std::move(moduli))) {
    order_ = 1;
    for (Coord n : factors_) {
      order_ *= n;
      if (order_ > kMaxOrder) {
        throw std::invalid_argument("group order exceeds supported bound");
      }
    }
  }

  FiniteAbelianGroup() : FiniteAbelianGroup(std::vector<Coord>{}) {}

  static FiniteAbelianGroup trivial() { return FiniteAbelianGroup{}; }

  /// Cyclic group of order n (n >= 1).
  static FiniteAbelianGroup cyclic(Coord n) {
    return FiniteAbelianGroup(std::vector<Coord>{n});
  }

  const std::vector<Coord>& invariant_factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  Coord order() const { return order_; }
  bool is_trivial() const { return factors_.empty(); }

  /// Exponent of the group: the largest invariant factor (1 for the trivial
  /// group).
  Coord exponent() const { return factors_.empty() ? 1 : factors_.back(); }

  /// 1 + sum (n_i - 1): the classical combinatorial lower bound for the
  /// Davenport constant.
  Coord d_star() const {
    Coord v = 1;
    for (Coord n : factors_) v += n - 1;
    return v;
  }

  bool is_cyclic() const { return factors_.size() <= 1; }

  bool is_elementary_2() const {
    return std::all_of(factors_.begin(), factors_.end(),
                       [](Coord n) { return n == 2; });
  }

  GroupElement zero() const {
    return GroupElement(std::vector<Coord>(factors_.size(), 0));
  }

  bool is_zero(const GroupElement& a) const {
    check(a);
    return std::all_of(a.coords.begin(), a.coords.end(),
                       [](Coord c) { return c == 0; });
  }

  GroupElement add(const GroupElement& a, const GroupElement& b) const {
    check(a);
    check(b);
    GroupElement r = a;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      r.coords[i] = (r.coords[i] + b.coords[i]) % factors_[i];
    }
    return r;
  }

  GroupElement neg(const GroupElement& a) const {
    check(a);
    GroupElement r = a;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      r.coords[i] = (factors_[i] - r.coords[i]) % factors_[i];
    }
    return r;
  }

  GroupElement sub(const GroupElement& a, const GroupElement& b) const {
    return add(a, neg(b));
  }

  /// k * a for any integer k (k may be negative).
  GroupElement scale(Coord k, const GroupElement& a) const {
    check(a);
    GroupElement r = a;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      Coord c = (k % factors_[i]) * (a.coords[i] % factors_[i]);
      c %= factors_[i];
      if (c < 0) c += factors_[i];
      r.coords[i] = c;
    }
    return r;
  }

  /// Builds an element from raw coordinates, reducing them into range.
  GroupElement element(std::vector<Coord> coords) const {
    if (coords.size() != factors_.size()) {
      throw std::invalid_argument("coordinate count does not match group rank");
    }
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      coords[i] %= factors_[i];
      if (coords[i] < 0) coords[i] += factors_[i];
    }
    return GroupElement(std::move(coords));
  }

  /// Order of an element: lcm over coordinates of n_i / gcd(c_i, n_i).
  Coord order_of(const GroupElement& a) const {
    check(a);
    Coord ord = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      Coord o = factors_[i] / std::gcd(a.coords[i], factors_[i]);
      ord = std::lcm(ord, o);
    }
    return ord;
  }

  /// Dense index of an element in canonical (lexicographic) order.
  std::size_t index_of(const GroupElement& a) const {
    check(a);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      idx = idx * static_cast<std::size_t>(factors_[i]) +
            static_cast<std::size_t>(a.coords[i]);
    }
    return idx;
  }

  GroupElement element_at(std::size_t idx) const {
    if (idx >= static_cast<std::size_t>(order_)) {
      throw std::out_of_range("element index out of range");
    }
    std::vector<Coord> coords(factors_.size(), 0);
    for (std::size_t i = factors_.size(); i-- > 0;) {
      coords[i] = static_cast<Coord>(idx % static_cast<std::size_t>(factors_[i]));
      idx /= static_cast<std::size_t>(factors_[i]);
    }
    return GroupElement(std::move(coords));
  }

  /// All elements in canonical order.  Intended for small groups.
  std::vector<GroupElement> elements() const {
    std::vector<GroupElement> out;
    out.reserve(static_cast<std::size_t>(order_));
    for (std::size_t i = 0; i < static_cast<std::size_t>(order_); ++i) {
      out.push_back(element_at(i));
    }
    return out;
  }

  /// Subgroup generated by the given elements, as a sorted element list.
  /// BFS closure under addition of generators; the empty list yields {0}.
  std::vector<GroupElement> subgroup_generated(
      std::span<const GroupElement> gens) const {
    for (const GroupElement& g : gens) check(g);
    std::vector<bool> seen(static_cast<std::size_t>(order_), false);
    std::vector<GroupElement> frontier{zero()};
    seen[index_of(zero())] = true;
    std::vector<GroupElement> out{zero()};
    while (!frontier.empty()) {
      std::vector<GroupElement> next;
      for (const GroupElement& a : frontier) {
        for (const GroupElement& g : gens) {
          GroupElement b = add(a, g);
          std::size_t idx = index_of(b);
          if (!seen[idx]) {
            seen[idx] = true;
            out.push_back(b);
            next.push_back(std::move(b));
          }
        }
      }
      frontier = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool operator==(const FiniteAbelianGroup& other) const {
    return factors_ == other.factors_;
  }

  /// Short display form, e.g. "C2 x C4" or "C1".
  std::string name() const {
    if (factors_.empty()) return "C1";
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) s += " x ";
      s += "C" + std::to_string(factors_[i]);
    }
    return s;
  }

  /// Invariant-factor canonicalization (exposed for testing).
  static std::vector<Coord> canonicalize(std::vector<Coord> moduli) {
    for (Coord n : moduli) {
      if (n < 1) throw std::invalid_argument("cyclic order must be positive");
    }
    std::erase(moduli, Coord{1});
    Coord product = 1;
    for (Coord n : moduli) {
      if (product > kMaxOrder / n) {
        throw std::invalid_argument("group order exceeds supported bound");
      }
      product *= n;
    }
    // Repeated gcd/lcm pairing: each pass replaces a non-dividing pair (a, b)
    // by (gcd, lcm), preserving the product and the isomorphism type.
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < moduli.size(); ++i) {
        for (std::size_t j = i + 1; j < moduli.size(); ++j) {
          Coord g = std::gcd(moduli[i], moduli[j]);
          Coord l = moduli[i] / g * moduli[j];
          if (g != moduli[i] || l != moduli[j]) {
            moduli[i] = g;
            moduli[j] = l;
            changed = true;
          }
        }
      }
    }
    std::erase(moduli, Coord{1});
    std::sort(moduli.begin(), moduli.end());
    return moduli;
  }

 private:
  static constexpr Coord kMaxOrder = 100'000'000;

  void check(const GroupElement& a) const {
    if (a.coords.size() != factors_.size()) {
      throw std::invalid_argument(
          "element does not belong to this group (rank mismatch)");
    }
  }

  std::vector<Coord> factors_;
  Coord order_ = 1;
};

}  // namespace deltakit
