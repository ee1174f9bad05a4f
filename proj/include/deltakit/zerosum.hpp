#pragma once
/// @file zerosum.hpp
/// @brief Minimal zero-sum sequences, Davenport constants, and the monoid of
///        zero-sum sequences over a ground set.
///
/// The minimality test and all enumerations share one mechanism: a running
/// bitset R of all sums realized by nonempty *proper* sub-multisets of the
/// prefix built so far.  Appending a letter g updates R in O(|G|) words:
///   R' = R  |  (R + g)  |  {sigma}  |  {g}
/// where sigma is the full prefix sum before appending.  A sequence is a
/// minimal zero-sum sequence iff its total sum is 0 and 0 never enters R;
/// once 0 enters R no extension can be minimal, which prunes the search.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "deltakit/group.hpp"
#include "deltakit/sequence.hpp"

namespace deltakit {

namespace detail {

/// Dense-index arithmetic helper for one group; caches element indexing so
/// inner loops avoid coordinate vectors.
class IndexedGroup {
 public:
  explicit IndexedGroup(const FiniteAbelianGroup& G) : G_(&G) {
    n_ = static_cast<std::size_t>(G.order());
    words_ = (n_ + 63) / 64;
    if (n_ <= kTableLimit) {
      add_.resize(n_ * n_);
      for (std::size_t a = 0; a < n_; ++a) {
        GroupElement ea = G.element_at(a);
        for (std::size_t b = 0; b < n_; ++b) {
          add_[a * n_ + b] = static_cast<std::uint32_t>(
              G.index_of(G.add(ea, G.element_at(b))));
        }
      }
    }
  }

  std::size_t order() const { return n_; }
  std::size_t words() const { return words_; }

  std::size_t add(std::size_t a, std::size_t b) const {
    if (!add_.empty()) return add_[a * n_ + b];
    return G_->index_of(G_->add(G_->element_at(a), G_->element_at(b)));
  }

  /// dst |= (src + g), iterating set bits of src.
  void shift_or(std::vector<std::uint64_t>& dst,
                const std::vector<std::uint64_t>& src, std::size_t g) const {
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = src[w];
      while (bits) {
        std::size_t bit = static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        std::size_t r = add(w * 64 + bit, g);
        dst[r / 64] |= std::uint64_t{1} << (r % 64);
      }
    }
  }

  static void set_bit(std::vector<std::uint64_t>& bs, std::size_t i) {
    bs[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  static bool test_bit(const std::vector<std::uint64_t>& bs, std::size_t i) {
    return (bs[i / 64] >> (i % 64)) & 1;
  }

 private:
  static constexpr std::size_t kTableLimit = 1024;
  const FiniteAbelianGroup* G_;
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint32_t> add_;  // dense addition table for small groups
};

/// Shared DFS over multisets in nondecreasing letter order.  At each node the
/// state tracks (R, sigma, length); `visit` is called for every node and may
/// request that the node's subtree be expanded or not.
struct PrefixState {
  std::vector<std::uint64_t> proper_sums;  // R
  std::size_t sigma = 0;                   // index of prefix sum
  Coord length = 0;
  bool zero_in_proper = false;
};

}  // namespace detail

/// True iff S (nonempty) is a zero-sum sequence none of whose proper nonempty
/// sub-multisets is zero-sum.  Throws on the empty sequence.
inline bool is_minimal_zero_sum(const FiniteAbelianGroup& G,
                                const Sequence& S) {
  if (S.is_empty()) {
    throw std::invalid_argument("minimality is undefined for the empty sequence");
  }
  detail::IndexedGroup ix(G);
  std::vector<std::uint64_t> R(ix.words(), 0);
  std::size_t zero = G.index_of(G.zero());
  std::size_t sigma = zero;
  Coord len = 0;
  std::vector<std::uint64_t> tmp(ix.words(), 0);
  for (const auto& [g, k] : S.entries()) {
    std::size_t gi = G.index_of(g);
    for (Coord c = 0; c < k; ++c) {
      if (len == 0) {
        sigma = gi;
      } else {
        tmp = R;
        ix.shift_or(tmp, R, gi);
        detail::IndexedGroup::set_bit(tmp, sigma);
        detail::IndexedGroup::set_bit(tmp, ix.add(gi, zero));
        R = tmp;
        sigma = ix.add(sigma, gi);
      }
      ++len;
      if (detail::IndexedGroup::test_bit(R, zero)) return false;
    }
  }
  return sigma == zero;
}

/// True iff no nonempty sub-multiset of S sums to zero (the empty sequence is
/// zero-sum free).
inline bool is_zero_sum_free(const FiniteAbelianGroup& G, const Sequence& S) {
  detail::IndexedGroup ix(G);
  std::vector<std::uint64_t> R(ix.words(), 0);
  std::size_t zero = G.index_of(G.zero());
  std::size_t sigma = zero;
  Coord len = 0;
  std::vector<std::uint64_t> tmp(ix.words(), 0);
  for (const auto& [g, k] : S.entries()) {
    std::size_t gi = G.index_of(g);
    for (Coord c = 0; c < k; ++c) {
      if (len == 0) {
        sigma = gi;
      } else {
        tmp = R;
        ix.shift_or(tmp, R, gi);
        detail::IndexedGroup::set_bit(tmp, sigma);
        detail::IndexedGroup::set_bit(tmp, ix.add(gi, zero));
        R = tmp;
        sigma = ix.add(sigma, gi);
      }
      ++len;
      if (detail::IndexedGroup::test_bit(R, zero)) return false;
      if (sigma == zero) return false;
    }
  }
  return true;
}

namespace detail {

/// DFS core shared by atom and zero-sum-free enumeration.
/// letters: sorted distinct candidate letters (indices into G);
/// caps: per-letter multiplicity cap; max_len: total length cap.
/// `emit_atoms` selects minimal-zero-sum emission (leaves) versus
/// zero-sum-free emission (every surviving node, including the root).
inline void prefix_dfs(const FiniteAbelianGroup& G, const IndexedGroup& ix,
                       const std::vector<GroupElement>& letters,
                       const std::vector<Coord>& caps, Coord max_len,
                       bool emit_atoms,
                       std::vector<Sequence>& out) {
  const std::size_t zero = G.index_of(G.zero());
  std::vector<std::size_t> letter_idx(letters.size());
  for (std::size_t i = 0; i < letters.size(); ++i) {
    letter_idx[i] = G.index_of(letters[i]);
  }
  std::vector<Coord> counts(letters.size(), 0);

  struct Frame {
    std::vector<std::uint64_t> R;
    std::size_t sigma;
    Coord length;
  };

  // Recursive lambda over the next letter position to extend.
  auto rec = [&](auto&& self, std::size_t from, const Frame& f) -> void {
    if (emit_atoms) {
      if (f.length > 0 && f.sigma == zero) {
        // Minimal zero-sum: sum is 0 and no proper nonempty zero-sum exists
        // (guaranteed by pruning).  Nothing below this node can be minimal.
        std::vector<Sequence::Entry> entries;
        for (std::size_t i = 0; i < letters.size(); ++i) {
          if (counts[i] > 0) entries.emplace_back(letters[i], counts[i]);
        }
        out.push_back(Sequence(std::move(entries)));
        return;
      }
    } else {
      if (f.length > 0 && (f.sigma == zero ||
                           IndexedGroup::test_bit(f.R, zero))) {
        return;  // not zero-sum free; neither is any extension
      }
      std::vector<Sequence::Entry> entries;
      for (std::size_t i = 0; i < letters.size(); ++i) {
        if (counts[i] > 0) entries.emplace_back(letters[i], counts[i]);
      }
      out.push_back(Sequence(std::move(entries)));
    }
    if (f.length >= max_len) return;
    for (std::size_t i = from; i < letters.size(); ++i) {
      if (counts[i] >= caps[i]) continue;
      Frame next;
      next.R = f.R;
      if (f.length > 0) {
        ix.shift_or(next.R, f.R, letter_idx[i]);
        IndexedGroup::set_bit(next.R, f.sigma);
        IndexedGroup::set_bit(next.R, letter_idx[i]);
        next.sigma = ix.add(f.sigma, letter_idx[i]);
      } else {
        next.sigma = letter_idx[i];
      }
      next.length = f.length + 1;
      if (emit_atoms && IndexedGroup::test_bit(next.R, zero)) continue;
      counts[i] += 1;
      self(self, i, next);
      counts[i] -= 1;
    }
  };

  Frame root;
  root.R.assign(ix.words(), 0);
  root.sigma = zero;
  root.length = 0;
  if (!emit_atoms) {
    // Emit the empty sequence exactly once via the root visit.
  }
  rec(rec, 0, root);
}

}  // namespace detail

/// All minimal zero-sum sequences over the ground set (sorted canonically).
/// Multiplicities are capped by element order and total length by |G|; both
/// caps are implied by minimality, so no atom is lost.
inline std::vector<Sequence> enumerate_atoms(
    const FiniteAbelianGroup& G, const std::vector<GroupElement>& ground_set) {
  std::vector<GroupElement> letters = ground_set;
  std::sort(letters.begin(), letters.end());
  letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
  detail::IndexedGroup ix(G);
  std::vector<Coord> caps(letters.size());
  for (std::size_t i = 0; i < letters.size(); ++i) {
    caps[i] = G.order_of(letters[i]);
  }
  std::vector<Sequence> out;
  detail::prefix_dfs(G, ix, letters, caps, G.order(), /*emit_atoms=*/true, out);
  std::sort(out.begin(), out.end());
  return out;
}

/// Convenience overload over the full group.
inline std::vector<Sequence> enumerate_atoms(const FiniteAbelianGroup& G) {
  return enumerate_atoms(G, G.elements());
}

/// Minimal zero-sum sub-multisets of S (the atoms dividing S in the monoid of
/// zero-sum sequences over any ground set containing supp(S)).
inline std::vector<Sequence> minimal_zero_sum_divisors(
    const FiniteAbelianGroup& G, const Sequence& S) {
  std::vector<GroupElement> letters;
  std::vector<Coord> caps;
  for (const auto& [g, k] : S.entries()) {
    letters.push_back(g);
    caps.push_back(std::min(k, G.order_of(g)));
  }
  detail::IndexedGroup ix(G);
  std::vector<Sequence> out;
  detail::prefix_dfs(G, ix, letters, caps, S.length(), /*emit_atoms=*/true,
                     out);
  std::sort(out.begin(), out.end());
  return out;
}

/// All zero-sum-free sub-multisets of sequences over the ground set with
/// length <= max_len (the empty sequence included), sorted canonically.
inline std::vector<Sequence> enumerate_zero_sum_free(
    const FiniteAbelianGroup& G, const std::vector<GroupElement>& ground_set,
    Coord max_len) {
  std::vector<GroupElement> letters = ground_set;
  std::sort(letters.begin(), letters.end());
  letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
  detail::IndexedGroup ix(G);
  std::vector<Coord> caps(letters.size(), max_len);
  std::vector<Sequence> out;
  detail::prefix_dfs(G, ix, letters, caps, max_len, /*emit_atoms=*/false, out);
  std::sort(out.begin(), out.end());
  return out;
}

/// Davenport constant over a ground set: the maximal length of a minimal
/// zero-sum sequence.  Throws on an empty ground set.
inline Coord davenport(const FiniteAbelianGroup& G,
                       const std::vector<GroupElement>& ground_set) {
  if (ground_set.empty()) {
    throw std::invalid_argument("Davenport constant needs a nonempty ground set");
  }
  Coord best = 0;
  for (const Sequence& u : enumerate_atoms(G, ground_set)) {
    best = std::max(best, u.length());
  }
  return best;
}

inline Coord davenport(const FiniteAbelianGroup& G) {
  return davenport(G, G.elements());
}

namespace detail {

/// Order-preserving fixed-width encoding: lexicographic comparison of encoded
/// keys agrees with the canonical order of the encoded value lists.
inline void append_u16(std::string& s, Coord v) {
  if (v < 0 || v > 0xffff) {
    throw std::overflow_error("canonical key component out of range");
  }
  static const char* hex = "0123456789abcdef";
  s.push_back(hex[(v >> 12) & 0xf]);
  s.push_back(hex[(v >> 8) & 0xf]);
  s.push_back(hex[(v >> 4) & 0xf]);
  s.push_back(hex[v & 0xf]);
}

inline void append_element(std::string& s, const GroupElement& g) {
  for (Coord c : g.coords) append_u16(s, c);
}

inline void append_sequence(std::string& s, const Sequence& seq) {
  for (const auto& [g, k] : seq.entries()) {
    append_element(s, g);
    append_u16(s, k);
  }
}

}  // namespace detail

/// Monoid of zero-sum sequences over a ground set G0 of a finite abelian
/// group.  Satisfies the atomic-monoid interface used by the factorization
/// engine.
class ZeroSumMonoid {
 public:
  using Element = Sequence;

  ZeroSumMonoid(FiniteAbelianGroup G, std::vector<GroupElement> ground_set)
      : G_(std::move(G)), ground_set_(std::move(ground_set)) {
    std::sort(ground_set_.begin(), ground_set_.end());
    ground_set_.erase(std::unique(ground_set_.begin(), ground_set_.end()),
                      ground_set_.end());
    for (const GroupElement& g : ground_set_) {
      if (g.coords.size() != G_.rank()) {
        throw std::invalid_argument("ground-set element has wrong rank");
      }
    }
  }

  explicit ZeroSumMonoid(FiniteAbelianGroup G)
      : ZeroSumMonoid(G, G.elements()) {}

  const FiniteAbelianGroup& group() const { return G_; }
  const std::vector<GroupElement>& ground_set() const { return ground_set_; }

  bool is_member(const Sequence& a) const {
    for (const auto& [g, k] : a.entries()) {
      if (!std::binary_search(ground_set_.begin(), ground_set_.end(), g)) {
        return false;
      }
    }
    return G_.is_zero(a.sigma(G_));
  }

  bool is_identity(const Sequence& a) const { return a.is_empty(); }

  std::optional<Sequence> divide(const Sequence& a, const Sequence& u) const {
    if (!u.divides(a)) return std::nullopt;
    return a.quotient(u);
  }

  std::vector<Sequence> atoms_dividing(const Sequence& a) const {
    return minimal_zero_sum_divisors(G_, a);
  }

  std::string canonical_key(const Sequence& a) const {
    std::string s;
    detail::append_sequence(s, a);
    return s;
  }

  bool less(const Sequence& a, const Sequence& b) const { return a < b; }

  /// The letter 0 is a prime element: it appears in every factorization of
  /// anything it divides, once per copy.  Removing all copies shifts every
  /// factorization length uniformly and preserves distances.
  std::pair<Coord, Sequence> strip_primes(const Sequence& a) const {
    Coord z = a.multiplicity(G_.zero());
    if (z == 0) return {0, a};
    return {z, a.quotient(Sequence::single(G_.zero(), z))};
  }

  Coord norm(const Sequence& a) const { return a.length(); }

  /// Number of multisets of length <= max_len over the ground set (the
  /// pre-membership-filter candidate count, used by scan guardrails).
  double region_candidate_count(Coord max_len) const {
    double count = 1.0;  // empty sequence
    // C(max_len + m, m) where m = |ground set|.
    double c = 1.0;
    std::size_t m = ground_set_.size();
    for (std::size_t i = 1; i <= m; ++i) {
      c *= static_cast<double>(max_len + i) / static_cast<double>(i);
    }
    count = c;
    return count;
  }

  /// All members with length <= max_len, canonically sorted.
  std::vector<Sequence> enumerate_region(Coord max_len) const {
    detail::IndexedGroup ix(G_);
    std::vector<Sequence> out;
    std::vector<Coord> counts(ground_set_.size(), 0);
    GroupElement sigma = G_.zero();
    auto rec = [&](auto&& self, std::size_t from, Coord len) -> void {
      if (G_.is_zero(sigma)) {
        std::vector<Sequence::Entry> entries;
        for (std::size_t i = 0; i < ground_set_.size(); ++i) {
          if (counts[i] > 0) entries.emplace_back(ground_set_[i], counts[i]);
        }
        out.push_back(Sequence(std::move(entries)));
      }
      if (len >= max_len) return;
      for (std::size_t i = from; i < ground_set_.size(); ++i) {
        GroupElement saved = sigma;
        sigma = G_.add(sigma, ground_set_[i]);
        counts[i] += 1;
        self(self, i, len + 1);
        counts[i] -= 1;
        sigma = saved;
      }
    };
    rec(rec, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  FiniteAbelianGroup G_;
  std::vector<GroupElement> ground_set_;
};

}  // namespace deltakit
