#pragma once
/// @file factor.hpp
/// @brief Generic factorization engine over an abstract atomic monoid:
///        factorization enumeration, length sets, distances, and the
///        catenary degree.
///
/// A monoid adapter M supplies:
///   - M::Element
///   - is_member(a), is_identity(a)
///   - divide(a, u) -> optional<Element>   (quotient a/u, or nullopt)
///   - atoms_dividing(a) -> vector<Element> (exactly the atoms dividing a)
///   - canonical_key(a) -> string           (injective, order-preserving)
///   - less(a, b)                            (canonical total order)
///
/// Factorizations are multisets of atoms.  The engine enumerates each
/// factorization exactly once by always peeling the canonically smallest
/// atom: Z(a) = union over atoms u | a of { u * z : z in Z(a/u),
/// min-atom(z) >= u }.  Results are memoized by canonical key.

#include <algorithm>
#include <bit>
#include <concepts>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "deltakit/group.hpp"

namespace deltakit {

template <typename M>
concept AtomicMonoid = requires(const M& m, const typename M::Element& a,
                                const typename M::Element& u) {
  requires std::copyable<typename M::Element>;
  { m.is_member(a) } -> std::convertible_to<bool>;
  { m.is_identity(a) } -> std::convertible_to<bool>;
  { m.divide(a, u) } -> std::same_as<std::optional<typename M::Element>>;
  { m.atoms_dividing(a) } -> std::same_as<std::vector<typename M::Element>>;
  { m.canonical_key(a) } -> std::convertible_to<std::string>;
  { m.less(a, u) } -> std::convertible_to<bool>;
};

/// Sorted ascending list of factorization lengths.
using LengthSet = std::vector<Coord>;

/// Successive gaps of a length set (the distance between neighbours).
inline std::vector<Coord> delta_of(const LengthSet& L) {
  std::vector<Coord> d;
  for (std::size_t i = 1; i < L.size(); ++i) d.push_back(L[i] - L[i - 1]);
  return d;
}

inline Coord max_gap(const LengthSet& L) {
  Coord m = 0;
  for (std::size_t i = 1; i < L.size(); ++i) m = std::max(m, L[i] - L[i - 1]);
  return m;
}

/// One factorization: a multiset of interned atom ids with total length.
struct Factorization {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> parts;  // (atom id, count), sorted by id
  Coord length = 0;
  std::uint32_t min_atom = 0;  // id of the canonically smallest atom

  Coord count_of(std::uint32_t atom) const {
    auto it = std::lower_bound(
        parts.begin(), parts.end(), atom,
        [](const auto& p, std::uint32_t x) { return p.first < x; });
    return (it != parts.end() && it->first == atom) ? it->second : 0;
  }
};

/// Distance between two factorizations of the same element: cancel the
/// common atom multiset, then take the larger remaining length.
inline Coord factorization_distance(const Factorization& a,
                                    const Factorization& b) {
  Coord common = 0;
  std::size_t i = 0, j = 0;
  while (i < a.parts.size() && j < b.parts.size()) {
    if (a.parts[i].first < b.parts[j].first) {
      ++i;
    } else if (b.parts[j].first < a.parts[i].first) {
      ++j;
    } else {
      common += std::min<Coord>(a.parts[i].second, b.parts[j].second);
      ++i;
      ++j;
    }
  }
  return std::max(a.length - common, b.length - common);
}

/// Complete factorization list of one element.
struct FactorizationList {
  std::vector<Factorization> all;
  LengthSet lengths() const {
    LengthSet L;
    for (const auto& z : all) L.push_back(z.length);
    std::sort(L.begin(), L.end());
    L.erase(std::unique(L.begin(), L.end()), L.end());
    return L;
  }
};

/// Union-find over 0..n-1 with path halving.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), components_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    --components_;
    return true;
  }
  std::size_t components() const { return components_; }

 private:
  std::vector<std::size_t> parent_;
  std::size_t components_;
};

struct EngineOptions {
  /// Re-peel every enumerated factorization through divide() and require it
  /// to exhaust the element (debug verification of the enumerator).
  bool verify_refactor = false;
  /// Soft budget on memoized factorization storage (number of stored
  /// factorizations); the factorization memo is cleared when it is exceeded.
  std::size_t z_part_budget = 2'000'000;
  /// Above this many factorizations the bottleneck-tree computation switches
  /// from bucketed Kruskal to the O(n^2)-time O(n)-memory growth method.
  std::size_t kruskal_limit = 2000;
};

template <AtomicMonoid M>
class FactorEngine {
 public:
  using Element = typename M::Element;

  explicit FactorEngine(const M& m, EngineOptions opt = {})
      : m_(&m), opt_(opt) {}

  const M& monoid() const { return *m_; }

  const Element& atom_by_id(std::uint32_t id) const { return atoms_[id]; }
  const std::string& atom_key(std::uint32_t id) const { return atom_keys_[id]; }

  /// Set of factorization lengths of a member (memoized).  The identity has
  /// length set {0}; an atom has {1}.
  const LengthSet& length_set(const Element& a) {
    require_member(a);
    return length_set_unchecked(a, m_->canonical_key(a));
  }

  /// Complete list of factorizations of a member (memoized with a storage
  /// budget; identical results regardless of cache evictions).
  std::shared_ptr<const FactorizationList> factorizations(const Element& a) {
    require_member(a);
    auto z = factorizations_unchecked(a, m_->canonical_key(a));
    if (opt_.verify_refactor) {
      for (const Factorization& f : z->all) verify_refactor(a, f);
    }
    return z;
  }

  /// Distance between two factorizations of the element a.  Both must occur
  /// in Z(a); a factorization of a different element is rejected.
  Coord distance(const Element& a, const Factorization& z1,
                 const Factorization& z2) {
    auto z = factorizations(a);
    auto occurs = [&](const Factorization& f) {
      for (const Factorization& g : z->all) {
        if (g.length == f.length && g.parts == f.parts) return true;
      }
      return false;
    };
    if (!occurs(z1) || !occurs(z2)) {
      throw std::invalid_argument(
          "distance requires two factorizations of the same element");
    }
    return factorization_distance(z1, z2);
  }

  /// Catenary degree of a member: the bottleneck edge weight of the complete
  /// distance graph on Z(a) (0 when |Z(a)| <= 1).  Computed as the maximum
  /// edge of a minimum-bottleneck spanning tree.
  Coord catenary_degree(const Element& a) {
    auto z = factorizations(a);
    return catenary_of_list(*z);
  }

  /// Bottleneck computation on an explicit factorization list.
  Coord catenary_of_list(const FactorizationList& z) const {
    const std::size_t n = z.all.size();
    if (n <= 1) return 0;
    if (n <= opt_.kruskal_limit) return catenary_kruskal(z);
    return catenary_prim(z);
  }

  /// Canonical exportable form of a factorization: (atom key, multiplicity)
  /// sorted by key.
  std::vector<std::pair<std::string, Coord>> canonical_multiset(
      const Factorization& f) const {
    std::vector<std::pair<std::string, Coord>> out;
    out.reserve(f.parts.size());
    for (const auto& [id, k] : f.parts) out.emplace_back(atom_keys_[id], k);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Number of length-set memo entries (diagnostics).
  std::size_t length_memo_size() const { return len_memo_.size(); }

 private:
  void require_member(const Element& a) const {
    if (!m_->is_member(a)) {
      throw std::invalid_argument("element is not a member of the monoid");
    }
  }

  std::uint32_t intern(const Element& atom, const std::string& key) {
    auto it = atom_ids_.find(key);
    if (it != atom_ids_.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(atoms_.size());
    atom_ids_.emplace(key, id);
    atoms_.push_back(atom);
    atom_keys_.push_back(key);
    return id;
  }

  const LengthSet& length_set_unchecked(const Element& a,
                                        const std::string& key) {
    auto it = len_memo_.find(key);
    if (it != len_memo_.end()) return it->second;
    LengthSet L;
    if (m_->is_identity(a)) {
      L = {0};
    } else {
      std::vector<Coord> acc;
      for (const Element& u : m_->atoms_dividing(a)) {
        auto rem = m_->divide(a, u);
        if (!rem) {
          throw std::logic_error("atoms_dividing returned a non-divisor");
        }
        const LengthSet& sub =
            length_set_unchecked(*rem, m_->canonical_key(*rem));
        for (Coord l : sub) acc.push_back(l + 1);
      }
      std::sort(acc.begin(), acc.end());
      acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
      L = std::move(acc);
      if (L.empty()) {
        // Non-identity member with no dividing atom: not atomic.
        throw std::logic_error("element admits no factorization into atoms");
      }
    }
    return len_memo_.emplace(key, std::move(L)).first->second;
  }

  std::shared_ptr<const FactorizationList> factorizations_unchecked(
      const Element& a, const std::string& key) {
    auto it = z_memo_.find(key);
    if (it != z_memo_.end()) return it->second;

    auto result = std::make_shared<FactorizationList>();
    if (m_->is_identity(a)) {
      result->all.push_back(Factorization{});  // empty factorization, length 0
    } else {
      std::vector<Element> atoms = m_->atoms_dividing(a);
      // Ascending canonical order; every factorization is built exactly once
      // from its smallest atom.
      std::vector<std::pair<std::string, std::size_t>> order;
      order.reserve(atoms.size());
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        order.emplace_back(m_->canonical_key(atoms[i]), i);
      }
      std::sort(order.begin(), order.end());
      for (const auto& [ukey, idx] : order) {
        const Element& u = atoms[idx];
        std::uint32_t uid = intern(u, ukey);
        auto rem = m_->divide(a, u);
        if (!rem) {
          throw std::logic_error("atoms_dividing returned a non-divisor");
        }
        auto sub = factorizations_unchecked(*rem, m_->canonical_key(*rem));
        for (const Factorization& z : sub->all) {
          if (z.length > 0 && atom_keys_[z.min_atom] < ukey) continue;
          Factorization f = z;
          auto pos = std::lower_bound(
              f.parts.begin(), f.parts.end(), uid,
              [](const auto& p, std::uint32_t x) { return p.first < x; });
          if (pos != f.parts.end() && pos->first == uid) {
            pos->second += 1;
          } else {
            f.parts.insert(pos, {uid, 1});
          }
          f.length += 1;
          f.min_atom = uid;  // u is minimal by construction
          parts_stored_ += 1;
          result->all.push_back(std::move(f));
        }
      }
    }
    if (parts_stored_ > opt_.z_part_budget) {
      z_memo_.clear();
      parts_stored_ = 0;
    }
    z_memo_.emplace(key, result);
    return result;
  }

  void verify_refactor(const Element& a, const Factorization& f) {
    Element rem = a;
    for (const auto& [id, k] : f.parts) {
      for (std::uint32_t c = 0; c < k; ++c) {
        auto q = m_->divide(rem, atoms_[id]);
        if (!q) {
          throw std::logic_error("factorization does not re-multiply to its element");
        }
        rem = std::move(*q);
      }
    }
    if (!m_->is_identity(rem)) {
      throw std::logic_error("factorization does not exhaust its element");
    }
  }

  Coord catenary_kruskal(const FactorizationList& z) const {
    const std::size_t n = z.all.size();
    Coord max_len = 0;
    for (const auto& f : z.all) max_len = std::max(max_len, f.length);
    // Bucket edges by weight (weights are bounded by the maximal length),
    // then run the union-find sweep in ascending weight order.
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> buckets(
        static_cast<std::size_t>(max_len) + 1);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        Coord d = factorization_distance(z.all[i], z.all[j]);
        buckets[static_cast<std::size_t>(d)].emplace_back(
            static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
      }
    }
    UnionFind uf(n);
    for (Coord w = 0; w <= max_len; ++w) {
      for (const auto& [i, j] : buckets[static_cast<std::size_t>(w)]) {
        uf.unite(i, j);
        if (uf.components() == 1) return w;
      }
    }
    throw std::logic_error("distance graph failed to connect");
  }

  Coord catenary_prim(const FactorizationList& z) const {
    const std::size_t n = z.all.size();
    std::vector<Coord> best(n, std::numeric_limits<Coord>::max());
    std::vector<bool> done(n, false);
    best[0] = 0;
    Coord bottleneck = 0;
    for (std::size_t step = 0; step < n; ++step) {
      std::size_t u = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (!done[i] && (u == n || best[i] < best[u])) u = i;
      }
      done[u] = true;
      bottleneck = std::max(bottleneck, best[u]);
      for (std::size_t v = 0; v < n; ++v) {
        if (!done[v]) {
          Coord d = factorization_distance(z.all[u], z.all[v]);
          best[v] = std::min(best[v], d);
        }
      }
    }
    return bottleneck;
  }

  const M* m_;
  EngineOptions opt_;
  std::unordered_map<std::string, std::uint32_t> atom_ids_;
  std::vector<Element> atoms_;
  std::vector<std::string> atom_keys_;
  std::unordered_map<std::string, LengthSet> len_memo_;
  std::unordered_map<std::string, std::shared_ptr<const FactorizationList>>
      z_memo_;
  std::size_t parts_stored_ = 0;
};

}  // namespace deltakit
