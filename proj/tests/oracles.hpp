#pragma once
/// @file oracles.hpp
/// @brief Definition-level reference implementations used only by the tests.
///        Every routine here trades speed for being an unmistakable
///        transcription of the definitions, with no memoization and no
///        shortcuts, so the engine can be checked against it.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "deltakit/factor.hpp"
#include "deltakit/group.hpp"
#include "deltakit/sequence.hpp"

namespace deltakit::oracle {

/// A factorization as the sorted multiset of the atoms' canonical keys.
using KeyFactorization = std::vector<std::string>;

/// All factorizations of `a` into atoms of the monoid, by plain recursive
/// descent over an index-sorted atom pool. No memoization, no pruning beyond
/// the non-decreasing index that makes tuples unordered.
template <typename M>
std::vector<KeyFactorization> factorizations(const M& m,
                                             const typename M::Element& a) {
  using Element = typename M::Element;
  std::vector<Element> pool = m.atoms_dividing(a);
  std::vector<KeyFactorization> out;
  KeyFactorization current;
  auto rec = [&](auto&& self, const Element& rest, std::size_t min_idx) -> void {
    if (m.is_identity(rest)) {
      out.push_back(current);
      return;
    }
    for (std::size_t i = min_idx; i < pool.size(); ++i) {
      if (auto q = m.divide(rest, pool[i])) {
        current.push_back(m.canonical_key(pool[i]));
        self(self, *q, i);
        current.pop_back();
      }
    }
  };
  rec(rec, a, 0);
  for (KeyFactorization& f : out) std::sort(f.begin(), f.end());
  std::sort(out.begin(), out.end());
  return out;
}

/// The set of lengths read off the factorization list.
inline std::vector<Coord> lengths_of(
    const std::vector<KeyFactorization>& zs) {
  std::set<Coord> ls;
  for (const KeyFactorization& z : zs) ls.insert(static_cast<Coord>(z.size()));
  return {ls.begin(), ls.end()};
}

/// Distance between two factorizations: cancel the common part, then take
/// the larger of the leftover lengths.
inline Coord distance(const KeyFactorization& x, const KeyFactorization& y) {
  std::map<std::string, Coord> count;
  for (const std::string& k : x) ++count[k];
  for (const std::string& k : y) --count[k];
  Coord plus = 0;
  Coord minus = 0;
  for (const auto& [k, c] : count) {
    if (c > 0) plus += c;
    if (c < 0) minus -= c;
  }
  return std::max(plus, minus);
}

/// Catenary degree by threshold sweep: the smallest N such that the graph on
/// factorizations with edges of distance <= N is connected (0 when there is
/// at most one factorization). Deliberately not a minimax-tree computation.
inline Coord catenary_by_threshold(const std::vector<KeyFactorization>& zs) {
  const std::size_t n = zs.size();
  if (n <= 1) return 0;
  std::vector<std::vector<Coord>> d(n, std::vector<Coord>(n, 0));
  std::set<Coord> thresholds;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d[i][j] = d[j][i] = distance(zs[i], zs[j]);
      thresholds.insert(d[i][j]);
    }
  }
  for (Coord t : thresholds) {  // ascending
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w = 0; w < n; ++w) {
        if (!seen[w] && d[v][w] <= t) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    if (reached == n) return t;
  }
  return 0;  // unreachable: the largest threshold always connects
}

/// Minimal zero-sum test straight from the definition: the sum is zero and
/// no proper nonempty sub-multiset sums to zero.
inline bool is_minimal_zero_sum(const FiniteAbelianGroup& G,
                                const Sequence& s) {
  if (s.length() == 0) return false;
  if (!(s.sigma(G) == G.zero())) return false;
  const auto& entries = s.entries();
  const std::size_t m = entries.size();
  std::vector<Coord> pick(m, 0);
  while (true) {
    // Advance the odometer over all sub-multisets.
    std::size_t i = 0;
    while (i < m && pick[i] == entries[i].second) {
      pick[i] = 0;
      ++i;
    }
    if (i == m) break;
    ++pick[i];
    Coord total = std::accumulate(pick.begin(), pick.end(), Coord{0});
    if (total == s.length()) continue;  // the full sequence
    GroupElement sum = G.zero();
    for (std::size_t j = 0; j < m; ++j) {
      sum = G.add(sum, G.scale(pick[j], entries[j].first));
    }
    if (sum == G.zero()) return false;  // proper nonempty zero-sum part
  }
  return true;
}

/// Atom test straight from the definition: not the identity, and every
/// divisor taken from `universe` is either trivial or the element itself.
template <typename M>
bool is_atom_in(const M& m, const typename M::Element& a,
                const std::vector<typename M::Element>& universe) {
  if (m.is_identity(a)) return false;
  for (const auto& d : universe) {
    if (m.is_identity(d)) continue;
    auto q = m.divide(a, d);
    if (!q) continue;
    if (!m.is_identity(*q) && !(d == a)) return false;
  }
  return true;
}

}  // namespace deltakit::oracle
