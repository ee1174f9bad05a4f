#pragma once
/// @file sequence.hpp
/// @brief Unordered sequences (finite multisets) over a finite abelian group.
///
/// A sequence is stored sparsely as (element, multiplicity) entries sorted by
/// the canonical element order; equal sequences therefore have equal
/// representations, and lexicographic comparison of the entry list is the
/// canonical sequence order.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "deltakit/group.hpp"

namespace deltakit {

/// Multiset of group elements with sparse sorted storage.
class Sequence {
 public:
  using Entry = std::pair<GroupElement, Coord>;

  Sequence() = default;

  /// Builds from (element, multiplicity) pairs; multiplicities must be >= 0,
  /// zero entries are dropped, duplicates are merged.
  explicit Sequence(std::vector<Entry> entries) {
    for (auto& [g, k] : entries) {
      if (k < 0) throw std::invalid_argument("negative multiplicity");
      if (k > 0) push(g, k);
    }
  }

  static Sequence empty() { return Sequence{}; }

  static Sequence single(const GroupElement& g, Coord k = 1) {
    Sequence s;
    s.push(g, k);
    return s;
  }

  const std::vector<Entry>& entries() const { return entries_; }
  bool is_empty() const { return entries_.empty(); }

  /// Total length |S| (with multiplicity).
  Coord length() const {
    Coord n = 0;
    for (const auto& [g, k] : entries_) n += k;
    return n;
  }

  /// Number of distinct elements in the support.
  std::size_t support_size() const { return entries_.size(); }

  Coord multiplicity(const GroupElement& g) const {
    auto it = find(g);
    return it == entries_.end() ? 0 : it->second;
  }

  /// Adds k copies of g (k >= 0).
  void push(const GroupElement& g, Coord k = 1) {
    if (k < 0) throw std::invalid_argument("negative multiplicity");
    if (k == 0) return;
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), g,
        [](const Entry& e, const GroupElement& x) { return e.first < x; });
    if (it != entries_.end() && it->first == g) {
      it->second += k;
    } else {
      entries_.insert(it, Entry{g, k});
    }
  }

  /// Multiset union (product in the free abelian monoid over G).
  Sequence operator*(const Sequence& other) const {
    Sequence r = *this;
    for (const auto& [g, k] : other.entries_) r.push(g, k);
    return r;
  }

  /// True if this is a sub-multiset of other.
  bool divides(const Sequence& other) const {
    for (const auto& [g, k] : entries_) {
      if (other.multiplicity(g) < k) return false;
    }
    return true;
  }

  /// Multiset difference; requires this->divides of the argument's inverse
  /// direction, i.e. other must divide *this.
  Sequence quotient(const Sequence& other) const {
    Sequence r;
    std::size_t j = 0;
    for (const auto& [g, k] : entries_) {
      Coord sub = 0;
      while (j < other.entries_.size() && other.entries_[j].first < g) ++j;
      if (j < other.entries_.size() && other.entries_[j].first == g) {
        sub = other.entries_[j].second;
      }
      if (sub > k) throw std::invalid_argument("sequence does not divide");
      if (k - sub > 0) r.entries_.emplace_back(g, k - sub);
    }
    // Any entry of other that is absent here makes the quotient undefined.
    for (const auto& [g, k] : other.entries_) {
      if (k > multiplicity(g)) {
        throw std::invalid_argument("sequence does not divide");
      }
    }
    return r;
  }

  /// Sum of all letters in the group.
  GroupElement sigma(const FiniteAbelianGroup& G) const {
    GroupElement s = G.zero();
    for (const auto& [g, k] : entries_) {
      s = G.add(s, G.scale(k, g));
    }
    return s;
  }

  bool operator==(const Sequence&) const = default;
  auto operator<=>(const Sequence&) const = default;

  /// Display form like "(1)^2 (0,3)".
  std::string to_string() const {
    if (entries_.empty()) return "1";
    std::string s;
    for (const auto& [g, k] : entries_) {
      if (!s.empty()) s += " ";
      s += "(";
      for (std::size_t i = 0; i < g.coords.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(g.coords[i]);
      }
      s += ")";
      if (k > 1) s += "^" + std::to_string(k);
    }
    return s;
  }

 private:
  std::vector<Entry>::const_iterator find(const GroupElement& g) const {
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), g,
        [](const Entry& e, const GroupElement& x) { return e.first < x; });
    if (it != entries_.end() && it->first == g) return it;
    return entries_.end();
  }

  std::vector<Entry> entries_;
};

}  // namespace deltakit
