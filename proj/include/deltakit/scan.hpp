#pragma once
/// @file scan.hpp
/// @brief Region scans: distance sets (unions of length-set gaps) and maximal
///        catenary degrees over an enumerated set of monoid elements, with
///        witness tracking and the descent statistics used by the
///        smaller-witness property check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "deltakit/factor.hpp"

namespace deltakit {

/// Hard cap on region cardinality accepted by scans and enumerators.
inline constexpr double kDefaultRegionCap = 1e7;

/// A scannable monoid additionally knows how to strip prime elements (which
/// shift all factorization lengths uniformly and preserve both gaps and
/// distances) and assigns each element a norm used for witness selection.
template <typename M>
concept ScannableMonoid =
    AtomicMonoid<M> && requires(const M& m, const typename M::Element& a) {
      {
        m.strip_primes(a)
      } -> std::same_as<std::pair<Coord, typename M::Element>>;
      { m.norm(a) } -> std::convertible_to<Coord>;
    };

template <typename Element>
struct GapWitness {
  Coord gap = 0;
  Element element;
  LengthSet lengths;
  Coord norm = 0;
  std::string key;
};

struct ScanOptions {
  int workers = 0;       // <= 0: hardware concurrency
  bool catenary = false; // additionally compute the maximal catenary degree
  bool witnesses = true;
  EngineOptions engine;
};

template <typename Element>
struct ScanOutcome {
  std::vector<Coord> delta;  // sorted distinct length-set gaps over the region
  Coord max_catenary = 0;
  bool catenary_computed = false;
  std::size_t element_count = 0;
  std::vector<GapWitness<Element>> witnesses;  // one minimal witness per gap
  std::map<Coord, Coord> min_norm_by_max_gap;  // exact max gap -> minimal norm

  Coord max_delta() const { return delta.empty() ? 0 : delta.back(); }

  /// min of the distance set equals its gcd (vacuously true when empty).
  bool min_equals_gcd() const {
    if (delta.empty()) return true;
    Coord g = 0;
    for (Coord d : delta) g = std::gcd(g, d);
    return g == delta.front();
  }

  /// The distance set is exactly {1, ..., max} (or empty).
  bool delta_is_interval() const {
    for (std::size_t i = 0; i < delta.size(); ++i) {
      if (delta[i] != static_cast<Coord>(i) + 1) return false;
    }
    return true;
  }

  /// Smaller-witness descent: every scanned element whose maximal gap is
  /// v >= threshold admits a scanned element of strictly smaller norm with
  /// maximal gap >= v - 1.
  bool descent_property_holds(Coord threshold = 2) const {
    // suffix_min[v] = min norm over elements with max gap >= v.
    std::map<Coord, Coord> suffix;
    Coord running = std::numeric_limits<Coord>::max();
    for (auto it = min_norm_by_max_gap.rbegin();
         it != min_norm_by_max_gap.rend(); ++it) {
      running = std::min(running, it->second);
      suffix[it->first] = running;
    }
    auto suffix_min_at_least = [&](Coord v) {
      Coord best = std::numeric_limits<Coord>::max();
      for (const auto& [gap, norm] : suffix) {
        if (gap >= v) return norm;  // map iterates ascending; suffix is min over >=
      }
      return best;
    };
    for (const auto& [gap, norm] : min_norm_by_max_gap) {
      if (gap < threshold) continue;
      if (suffix_min_at_least(gap - 1) >= norm) return false;
    }
    return true;
  }
};

namespace detail {

template <ScannableMonoid M>
struct ScanLocal {
  std::set<Coord> delta;
  Coord max_catenary = 0;
  std::map<Coord, GapWitness<typename M::Element>> witnesses;
  std::map<Coord, Coord> min_norm_by_max_gap;

  void note_witness(Coord gap, const typename M::Element& elem,
                    const LengthSet& L, Coord norm, const std::string& key) {
    auto it = witnesses.find(gap);
    if (it == witnesses.end() || norm < it->second.norm ||
        (norm == it->second.norm && key < it->second.key)) {
      witnesses[gap] = GapWitness<typename M::Element>{gap, elem, L, norm, key};
    }
  }
};

}  // namespace detail

/// Scans an explicit element list.  Every element must be a member.  Elements
/// whose prime-stripped reduction differs from themselves are skipped: the
/// reduction has the same gaps, distances, and a strictly smaller norm, and
/// caps-based regions are closed under divisors, so the reduction is scanned
/// in its own right and dominates the skipped element in every reported
/// statistic.
template <ScannableMonoid M>
ScanOutcome<typename M::Element> scan_region(
    const M& m, const std::vector<typename M::Element>& region,
    const ScanOptions& opt = {}) {
  using Element = typename M::Element;
  unsigned workers = opt.workers > 0
                         ? static_cast<unsigned>(opt.workers)
                         : std::max(1u, std::thread::hardware_concurrency());
  if (region.size() < 64) workers = 1;

  std::vector<detail::ScanLocal<M>> locals(workers);
  auto run = [&](unsigned w) {
    FactorEngine<M> engine(m, opt.engine);
    detail::ScanLocal<M>& local = locals[w];
    for (std::size_t i = w; i < region.size(); i += workers) {
      const Element& raw = region[i];
      auto [shift, elem] = m.strip_primes(raw);
      if (shift > 0) continue;  // reduction is scanned separately
      const LengthSet& L = engine.length_set(elem);
      std::vector<Coord> gaps = delta_of(L);
      Coord norm = m.norm(elem);
      Coord maxg = 0;
      std::string key;
      if (opt.witnesses && !gaps.empty()) key = m.canonical_key(elem);
      for (std::size_t gi = 0; gi < gaps.size(); ++gi) {
        Coord d = gaps[gi];
        local.delta.insert(d);
        maxg = std::max(maxg, d);
        if (opt.witnesses) local.note_witness(d, elem, L, norm, key);
      }
      if (maxg > 0) {
        auto it = local.min_norm_by_max_gap.find(maxg);
        if (it == local.min_norm_by_max_gap.end() || norm < it->second) {
          local.min_norm_by_max_gap[maxg] = norm;
        }
      }
      if (opt.catenary) {
        // c(elem) <= max L(elem); elements that cannot raise the running
        // maximum are skipped.
        if (L.back() > local.max_catenary) {
          local.max_catenary =
              std::max(local.max_catenary, engine.catenary_degree(elem));
        }
      }
    }
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }

  ScanOutcome<Element> out;
  out.element_count = region.size();
  out.catenary_computed = opt.catenary;
  std::map<Coord, GapWitness<Element>> merged_witnesses;
  for (const auto& local : locals) {
    for (Coord d : local.delta) {
      if (!std::binary_search(out.delta.begin(), out.delta.end(), d)) {
        out.delta.insert(
            std::upper_bound(out.delta.begin(), out.delta.end(), d), d);
      }
    }
    out.max_catenary = std::max(out.max_catenary, local.max_catenary);
    for (const auto& [gap, w] : local.witnesses) {
      auto it = merged_witnesses.find(gap);
      if (it == merged_witnesses.end() || w.norm < it->second.norm ||
          (w.norm == it->second.norm && w.key < it->second.key)) {
        merged_witnesses[gap] = w;
      }
    }
    for (const auto& [gap, norm] : local.min_norm_by_max_gap) {
      auto it = out.min_norm_by_max_gap.find(gap);
      if (it == out.min_norm_by_max_gap.end() || norm < it->second) {
        out.min_norm_by_max_gap[gap] = norm;
      }
    }
  }
  for (auto& [gap, w] : merged_witnesses) {
    out.witnesses.push_back(std::move(w));
  }
  return out;
}

}  // namespace deltakit
