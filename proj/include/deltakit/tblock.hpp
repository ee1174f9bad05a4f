#pragma once
/// @file tblock.hpp
/// @brief Block structures that couple zero-sum sequences over a ground set
///        with a tuple of primary components: elements are pairs
///        (sequence, component parts), membership is "total class zero",
///        and atoms are the minimal nontrivial members.
///
/// Atom enumeration works from structural facts rather than raw divisor
/// search.  In any atom with at least one nontrivial part,
///   - the sequence part is zero-sum free (a zero-sum sub-multiset would be a
///     proper class-zero divisor), and
///   - every nontrivial part has nonzero class and admits no nontrivial
///     class-zero divisor inside its component (otherwise that divisor,
///     padded with identities, is a proper class-zero divisor).
/// Candidates built from those pools are then checked for minimality by
/// direct divisor enumeration, which is cheap because the pools are small.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "deltakit/group.hpp"
#include "deltakit/primary.hpp"
#include "deltakit/sequence.hpp"
#include "deltakit/zerosum.hpp"

namespace deltakit {

/// Full specification of a block structure.
struct TBlockSpec {
  FiniteAbelianGroup group;
  std::vector<GroupElement> ground_set;        // sorted, distinct
  std::vector<PrimaryComponentSpec> components;
  std::optional<Coord> seq_len_cap;            // scan default overrides
  std::optional<Coord> exp_cap;
  std::string name;
};

inline TBlockSpec make_tblock_spec(
    FiniteAbelianGroup group, std::vector<PrimaryComponentSpec> components,
    std::optional<std::vector<GroupElement>> ground_set = std::nullopt,
    std::optional<Coord> seq_len_cap = std::nullopt,
    std::optional<Coord> exp_cap = std::nullopt, std::string name = {}) {
  TBlockSpec spec;
  spec.ground_set = ground_set ? std::move(*ground_set) : group.elements();
  std::sort(spec.ground_set.begin(), spec.ground_set.end());
  spec.ground_set.erase(
      std::unique(spec.ground_set.begin(), spec.ground_set.end()),
      spec.ground_set.end());
  for (const GroupElement& g : spec.ground_set) {
    if (g.coords.size() != group.rank()) {
      throw std::invalid_argument("ground-set element has wrong rank");
    }
  }
  spec.group = std::move(group);
  spec.components = std::move(components);
  if (seq_len_cap && *seq_len_cap < 0) {
    throw std::invalid_argument("sequence length cap must be >= 0");
  }
  if (exp_cap && *exp_cap < 0) {
    throw std::invalid_argument("exponent cap must be >= 0");
  }
  spec.seq_len_cap = seq_len_cap;
  spec.exp_cap = exp_cap;
  spec.name = std::move(name);
  return spec;
}

/// Element of a block structure: a sequence over the ground set plus one
/// element per primary component.
struct BlockElement {
  Sequence seq;
  std::vector<PrimaryElement> parts;

  bool operator==(const BlockElement&) const = default;
  auto operator<=>(const BlockElement&) const = default;
};

/// Atomic-monoid adapter for a block structure.
class BlockMonoid {
 public:
  using Element = BlockElement;

  explicit BlockMonoid(TBlockSpec spec) : spec_(std::move(spec)) {}

  const TBlockSpec& spec() const { return spec_; }
  const FiniteAbelianGroup& group() const { return spec_.group; }
  std::size_t component_count() const { return spec_.components.size(); }

  BlockElement identity() const {
    BlockElement e;
    e.parts.assign(spec_.components.size(), primary_identity(spec_.group));
    return e;
  }

  /// Total class: sigma of the sequence plus the class of every part.
  GroupElement class_of(const BlockElement& a) const {
    check_shape(a);
    GroupElement c = a.seq.sigma(spec_.group);
    for (std::size_t i = 0; i < a.parts.size(); ++i) {
      c = spec_.group.add(
          c, primary_class_of(spec_.group, spec_.components[i], a.parts[i]));
    }
    return c;
  }

  bool is_member(const BlockElement& a) const {
    if (a.parts.size() != spec_.components.size()) return false;
    for (const auto& [g, k] : a.seq.entries()) {
      if (!std::binary_search(spec_.ground_set.begin(), spec_.ground_set.end(),
                              g)) {
        return false;
      }
    }
    for (std::size_t i = 0; i < a.parts.size(); ++i) {
      PrimaryMonoid comp(spec_.group, spec_.components[i]);
      if (!comp.is_member(a.parts[i])) return false;
    }
    return spec_.group.is_zero(class_of(a));
  }

  bool is_identity(const BlockElement& a) const {
    if (!a.seq.is_empty()) return false;
    for (const PrimaryElement& p : a.parts) {
      if (!p.is_identity()) return false;
    }
    return true;
  }

  BlockElement multiply(const BlockElement& a, const BlockElement& b) const {
    check_shape(a);
    check_shape(b);
    BlockElement r;
    r.seq = a.seq * b.seq;
    r.parts.reserve(a.parts.size());
    for (std::size_t i = 0; i < a.parts.size(); ++i) {
      r.parts.push_back(primary_multiply(spec_.group, a.parts[i], b.parts[i]));
    }
    return r;
  }

  /// Componentwise quotient in the ambient product (sequence sub-multiset and
  /// valid part quotients); nullopt when u does not divide a there.
  std::optional<BlockElement> divide(const BlockElement& a,
                                     const BlockElement& u) const {
    if (a.parts.size() != spec_.components.size() ||
        u.parts.size() != spec_.components.size()) {
      return std::nullopt;
    }
    if (!u.seq.divides(a.seq)) return std::nullopt;
    BlockElement r;
    r.parts.reserve(a.parts.size());
    for (std::size_t i = 0; i < a.parts.size(); ++i) {
      auto q = primary_divide(spec_.group, a.parts[i], u.parts[i]);
      if (!q) return std::nullopt;
      r.parts.push_back(std::move(*q));
    }
    r.seq = a.seq.quotient(u.seq);
    return r;
  }

  /// Divisibility inside the block structure.  Both operands must be
  /// members.
  bool divides_in_b(const BlockElement& u, const BlockElement& a) const {
    if (!is_member(u) || !is_member(a)) {
      throw std::invalid_argument("divisibility test requires members");
    }
    return divide(a, u).has_value();
  }

  std::string canonical_key(const BlockElement& a) const {
    std::string s;
    detail::append_sequence(s, a.seq);
    for (const PrimaryElement& p : a.parts) {
      s.push_back('!');  // sorts below hex digits: prefix order matches
      detail::append_element(s, p.unit_class);
      for (Coord k : p.exponents) detail::append_u16(s, k);
    }
    return s;
  }

  bool less(const BlockElement& a, const BlockElement& b) const {
    return a < b;
  }

  /// Letters of class zero are prime atoms; strip them.
  std::pair<Coord, BlockElement> strip_primes(const BlockElement& a) const {
    GroupElement zero = spec_.group.zero();
    Coord z = a.seq.multiplicity(zero);
    if (z == 0) return {0, a};
    BlockElement r = a;
    r.seq = a.seq.quotient(Sequence::single(zero, z));
    return {z, r};
  }

  /// |seq| plus twice the sum of maximal component factorization lengths.
  Coord norm(const BlockElement& a) const {
    check_shape(a);
    Coord n = a.seq.length();
    for (const PrimaryElement& p : a.parts) n += 2 * primary_max_length(p);
    return n;
  }

  /// Atoms dividing a member, filtered from the cached atom pool.
  std::vector<BlockElement> atoms_dividing(const BlockElement& a) const {
    Coord need_seq = a.seq.length();
    Coord need_exp = 0;
    for (const PrimaryElement& p : a.parts) {
      for (Coord k : p.exponents) need_exp = std::max(need_exp, k);
    }
    auto pool = atom_pool(need_seq, need_exp);
    std::vector<BlockElement> out;
    for (const BlockElement& u : *pool) {
      if (divide(a, u)) out.push_back(u);
    }
    return out;
  }

  /// True when a member is an atom of the block structure.
  bool is_atom(const BlockElement& a) const {
    if (!is_member(a)) {
      throw std::invalid_argument("atom test requires a member");
    }
    if (is_identity(a)) {
      throw std::invalid_argument("atom test is undefined for the identity");
    }
    auto atoms = atoms_dividing(a);
    return atoms.size() == 1 && atoms[0] == a;
  }

  /// Ensures the atom pool covers the given caps (used to pre-warm before
  /// multi-threaded scans).
  void ensure_atoms(Coord seq_cap, Coord exp_cap) const {
    atom_pool(seq_cap, exp_cap);
  }

  /// All atoms with |seq| <= seq_cap and exponents <= exp_cap, sorted.
  std::vector<BlockElement> atoms_upto(Coord seq_cap, Coord exp_cap) const {
    auto pool = atom_pool(seq_cap, exp_cap);
    std::vector<BlockElement> out;
    for (const BlockElement& u : *pool) {
      Coord mx = 0;
      for (const PrimaryElement& p : u.parts) {
        for (Coord k : p.exponents) mx = std::max(mx, k);
      }
      if (u.seq.length() <= seq_cap && mx <= exp_cap) out.push_back(u);
    }
    return out;
  }

  Coord default_seq_cap() const {
    if (spec_.seq_len_cap) return *spec_.seq_len_cap;
    return 3 * davenport_full();
  }

  Coord default_exp_cap() const {
    if (spec_.exp_cap) return *spec_.exp_cap;
    return 2 * spec_.group.exponent() + 2;
  }

  /// Davenport constant of the full class group (cached).
  Coord davenport_full() const {
    std::lock_guard<std::mutex> lock(mu_);
    if (davenport_ < 0) davenport_ = davenport(spec_.group);
    return davenport_;
  }

  /// Pre-membership-filter candidate count for a caps region.
  double region_candidate_count(Coord seq_cap, Coord exp_cap) const {
    double seqs = 1.0;
    std::size_t m = spec_.ground_set.size();
    for (std::size_t i = 1; i <= m; ++i) {
      seqs *= static_cast<double>(seq_cap + i) / static_cast<double>(i);
    }
    double combos = 1.0;
    for (const PrimaryComponentSpec& c : spec_.components) {
      double grid = 1.0;
      for (int i = 0; i < c.rank; ++i) grid *= static_cast<double>(exp_cap);
      combos *= 1.0 + grid * static_cast<double>(c.unit_classes.size());
    }
    return seqs * combos;
  }

  /// All members within the caps, canonically sorted.
  std::vector<BlockElement> enumerate_region(Coord seq_cap,
                                             Coord exp_cap) const {
    // Sequences over the ground set with length <= seq_cap.
    std::vector<std::pair<Sequence, GroupElement>> seqs;
    {
      std::vector<Coord> counts(spec_.ground_set.size(), 0);
      GroupElement sigma = spec_.group.zero();
      auto rec = [&](auto&& self, std::size_t from, Coord len) -> void {
        std::vector<Sequence::Entry> entries;
        for (std::size_t i = 0; i < spec_.ground_set.size(); ++i) {
          if (counts[i] > 0) entries.emplace_back(spec_.ground_set[i], counts[i]);
        }
        seqs.emplace_back(Sequence(std::move(entries)), sigma);
        if (len >= seq_cap) return;
        for (std::size_t i = from; i < spec_.ground_set.size(); ++i) {
          GroupElement saved = sigma;
          sigma = spec_.group.add(sigma, spec_.ground_set[i]);
          counts[i] += 1;
          self(self, i, len + 1);
          counts[i] -= 1;
          sigma = saved;
        }
      };
      rec(rec, 0, 0);
    }
    // Part options per component, with classes.
    std::vector<std::vector<std::pair<PrimaryElement, GroupElement>>> options;
    for (const PrimaryComponentSpec& c : spec_.components) {
      PrimaryMonoid comp(spec_.group, c);
      std::vector<std::pair<PrimaryElement, GroupElement>> opts;
      for (PrimaryElement& p : comp.enumerate_region(exp_cap)) {
        GroupElement cls = primary_class_of(spec_.group, c, p);
        opts.emplace_back(std::move(p), std::move(cls));
      }
      options.push_back(std::move(opts));
    }
    std::vector<BlockElement> out;
    std::vector<PrimaryElement> parts(spec_.components.size());
    for (const auto& [seq, seq_class] : seqs) {
      auto rec = [&](auto&& self, std::size_t ci,
                     const GroupElement& cls) -> void {
        if (ci == options.size()) {
          if (spec_.group.is_zero(cls)) {
            out.push_back(BlockElement{seq, parts});
          }
          return;
        }
        for (const auto& [p, pcls] : options[ci]) {
          parts[ci] = p;
          self(self, ci + 1, spec_.group.add(cls, pcls));
        }
      };
      rec(rec, 0, seq_class);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void check_shape(const BlockElement& a) const {
    if (a.parts.size() != spec_.components.size()) {
      throw std::invalid_argument("element does not match the block structure");
    }
  }

  /// Shared atom pool covering at least the given caps; rebuilt on demand.
  std::shared_ptr<const std::vector<BlockElement>> atom_pool(
      Coord need_seq, Coord need_exp) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (pool_ && pool_seq_ >= need_seq && pool_exp_ >= need_exp) return pool_;
    Coord seq_cap = std::max({need_seq, pool_seq_, Coord{0}});
    Coord exp_cap = std::max({need_exp, pool_exp_, Coord{0}});
    pool_ = std::make_shared<const std::vector<BlockElement>>(
        enumerate_atoms_upto(seq_cap, exp_cap));
    pool_seq_ = seq_cap;
    pool_exp_ = exp_cap;
    return pool_;
  }

  std::vector<BlockElement> enumerate_atoms_upto(Coord seq_cap,
                                                 Coord exp_cap) const {
    const FiniteAbelianGroup& G = spec_.group;
    const std::size_t n = spec_.components.size();
    std::vector<BlockElement> atoms;

    auto with_parts = [&](Sequence seq, std::vector<PrimaryElement> parts) {
      BlockElement b;
      b.seq = std::move(seq);
      b.parts = std::move(parts);
      return b;
    };
    std::vector<PrimaryElement> id_parts(n, primary_identity(G));

    // 1. Atoms with all parts trivial: minimal zero-sum sequences.
    for (Sequence& u : enumerate_atoms(G, spec_.ground_set)) {
      if (u.length() <= seq_cap) {
        atoms.push_back(with_parts(std::move(u), id_parts));
      }
    }

    // Per-component data: class-zero-divisor-free nontrivial parts ("reduced
    // parts") and the class-zero parts without proper class-zero divisors
    // (standalone component atoms).
    struct PartInfo {
      PrimaryElement part;
      GroupElement cls;
    };
    std::vector<std::vector<PartInfo>> reduced(n);
    for (std::size_t ci = 0; ci < n; ++ci) {
      const PrimaryComponentSpec& c = spec_.components[ci];
      PrimaryMonoid comp(G, c);
      for (PrimaryElement& p : comp.enumerate_region(exp_cap)) {
        if (p.is_identity()) continue;
        GroupElement cls = primary_class_of(G, c, p);
        bool cls_zero = G.is_zero(cls);
        // Does p admit a nontrivial class-zero divisor (itself excluded)?
        bool has_cls0_divisor = false;
        for (const PrimaryElement& v : divisors_of_part(c, p)) {
          if (v.is_identity() || v == p) continue;
          if (G.is_zero(primary_class_of(G, c, v))) {
            has_cls0_divisor = true;
            break;
          }
        }
        if (cls_zero) {
          if (!has_cls0_divisor) {
            // Standalone atom: empty sequence, this part alone.
            std::vector<PrimaryElement> parts = id_parts;
            parts[ci] = p;
            atoms.push_back(with_parts(Sequence::empty(), std::move(parts)));
          }
        } else if (!has_cls0_divisor) {
          reduced[ci].push_back(PartInfo{std::move(p), std::move(cls)});
        }
      }
    }

    // 3. Mixed candidates: zero-sum-free sequence (possibly empty) plus parts
    //    drawn from the reduced pools, at least one nontrivial, total class
    //    zero, then an explicit minimality check.
    Coord zsf_cap = std::min<Coord>(seq_cap, G.order() - 1);
    std::vector<Sequence> zsf =
        enumerate_zero_sum_free(G, spec_.ground_set, zsf_cap);
    std::vector<PrimaryElement> parts = id_parts;
    for (const Sequence& S : zsf) {
      GroupElement scls = S.sigma(G);
      auto rec = [&](auto&& self, std::size_t ci, const GroupElement& cls,
                     bool nontrivial) -> void {
        if (ci == n) {
          if (!nontrivial) return;
          if (!G.is_zero(cls)) return;
          BlockElement cand = with_parts(S, parts);
          if (block_candidate_is_atom(cand)) atoms.push_back(std::move(cand));
          return;
        }
        parts[ci] = primary_identity(G);
        self(self, ci + 1, cls, nontrivial);
        for (const PartInfo& info : reduced[ci]) {
          parts[ci] = info.part;
          self(self, ci + 1, G.add(cls, info.cls), true);
        }
        parts[ci] = primary_identity(G);
      };
      rec(rec, 0, scls, false);
    }

    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    return atoms;
  }

  /// All divisors of one component part (identity and the part included).
  std::vector<PrimaryElement> divisors_of_part(const PrimaryComponentSpec& c,
                                               const PrimaryElement& p) const {
    std::vector<PrimaryElement> out;
    out.push_back(primary_identity(spec_.group));
    if (p.is_identity()) return out;
    out.push_back(p);
    bool proper_possible = true;
    for (Coord k : p.exponents) {
      if (k < 2) proper_possible = false;
    }
    if (proper_possible) {
      const std::size_t s = p.exponents.size();
      std::vector<Coord> k(s, 1);
      while (true) {
        for (const GroupElement& g : c.unit_classes) {
          out.push_back(PrimaryElement{g, k});
        }
        std::size_t i = 0;
        while (i < s && k[i] == p.exponents[i] - 1) {
          k[i] = 1;
          ++i;
        }
        if (i == s) break;
        k[i] += 1;
      }
    }
    return out;
  }

  /// Minimality by divisor enumeration: no proper nontrivial class-zero
  /// divisor.  The candidate is known to have class zero.
  bool block_candidate_is_atom(const BlockElement& cand) const {
    const FiniteAbelianGroup& G = spec_.group;
    // Sub-multisets of the (short, zero-sum-free) sequence part.
    const auto& entries = cand.seq.entries();
    std::vector<Coord> take(entries.size(), 0);
    std::vector<std::vector<PrimaryElement>> part_divs(cand.parts.size());
    for (std::size_t i = 0; i < cand.parts.size(); ++i) {
      part_divs[i] = divisors_of_part(spec_.components[i], cand.parts[i]);
    }
    bool bad = false;
    // Sequence sub-multiset odometer outside, part divisors inside.
    while (true) {
      Sequence sub;
      GroupElement scls = G.zero();
      bool seq_full = true;
      bool seq_empty = true;
      for (std::size_t i = 0; i < entries.size(); ++i) {
        if (take[i] > 0) {
          sub.push(entries[i].first, take[i]);
          scls = G.add(scls, G.scale(take[i], entries[i].first));
          seq_empty = false;
        }
        if (take[i] != entries[i].second) seq_full = false;
      }
      // Enumerate part divisor combinations.
      auto rec = [&](auto&& self, std::size_t ci, const GroupElement& cls,
                     bool all_full, bool all_trivial) -> void {
        if (bad) return;
        if (ci == cand.parts.size()) {
          bool is_full = seq_full && all_full;
          bool is_trivial = seq_empty && all_trivial;
          if (!is_full && !is_trivial && G.is_zero(cls)) bad = true;
          return;
        }
        for (const PrimaryElement& v : part_divs[ci]) {
          GroupElement vcls = primary_class_of(G, spec_.components[ci], v);
          self(self, ci + 1, G.add(cls, vcls),
               all_full && v == cand.parts[ci], all_trivial && v.is_identity());
        }
      };
      rec(rec, 0, scls, true, true);
      if (bad) return false;
      // Next sub-multiset.
      std::size_t i = 0;
      while (i < entries.size() && take[i] == entries[i].second) {
        take[i] = 0;
        ++i;
      }
      if (i == entries.size()) break;
      take[i] += 1;
    }
    return true;
  }

  TBlockSpec spec_;
  mutable std::mutex mu_;
  mutable std::shared_ptr<const std::vector<BlockElement>> pool_;
  mutable Coord pool_seq_ = -1;
  mutable Coord pool_exp_ = -1;
  mutable Coord davenport_ = -1;
};

}  // namespace deltakit
