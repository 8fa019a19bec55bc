#pragma once

#include <cmath>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "stablecut/degeneracy.hpp"
#include "stablecut/graph.hpp"
#include "stablecut/universal.hpp"
#include "stablecut/util.hpp"

namespace stablecut {

/// Black/white coloring used by the independent-cover draw; `black` lists the
/// black vertices, everything else is white.
struct ColorAssignment {
  VertexSet black;
};

/// A list of independent sets claimed to contain every independent set of size
/// at most k as a subset of some member.
struct CoveringFamily {
  std::vector<VertexSet> members;
  int k = 0;
  int degeneracy = 0;
  std::string construction;            // "random" | "lopsided" | "hash" | "modulator"
  std::optional<std::uint64_t> seed;   // recorded for randomized constructions
};

struct FamilyLimits {
  std::int64_t max_members = 1'000'000;
  int max_modulator = 20;
  int max_exhaustive_n = 16;
};

/// The independent set a coloring induces: black vertices all of whose forward
/// neighbors (w.r.t. the peeling order) are white.
inline VertexSet cover_from_coloring(const DegeneracyOrder& order, const ColorAssignment& colors) {
  VertexSet out;
  for (int v : colors.black) {
    bool clean = true;
    for (int w : order.forward_neighbors[v])
      if (set_contains(colors.black, w)) {
        clean = false;
        break;
      }
    if (clean) out.push_back(v);
  }
  return out;
}

/// One randomized cover draw: each vertex black with probability 1/(d+1). For
/// any fixed independent set X with |X| <= k the result contains X with
/// probability at least 1 / (C(k(d+1),k) * k(d+1)).
inline VertexSet draw_random_cover(const UndirectedGraph& g, const DegeneracyOrder& order,
                                   std::mt19937_64& rng) {
  int denom = order.degeneracy + 1;
  ColorAssignment colors;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (one_in(rng, denom)) colors.black.push_back(v);
  return cover_from_coloring(order, colors);
}

/// Member count of the randomized family: C(k(d+1),k) * 2k^2(d+1) * ceil(ln n),
/// with the log factor clamped to 1 so one-vertex graphs still get members.
inline std::int64_t random_family_size(int n, int k, int d) {
  std::int64_t log_n = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(std::log(static_cast<double>(std::max(n, 1))))));
  return sat_mul(sat_mul(binomial(std::int64_t(k) * (d + 1), k), 2ll * k * k * (d + 1)), log_n);
}

inline CoveringFamily build_random_family(const UndirectedGraph& g, int k, std::uint64_t seed,
                                          const FamilyLimits& limits = {}) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  DegeneracyOrder order = degeneracy_order(g);
  std::int64_t count = random_family_size(g.vertex_count(), k, order.degeneracy);
  if (count > limits.max_members)
    throw ResourceLimitError("randomized family would have " + std::to_string(count) + " members");
  CoveringFamily fam;
  fam.k = k;
  fam.degeneracy = order.degeneracy;
  fam.construction = "random";
  fam.seed = seed;
  fam.members.reserve(count);
  for (std::int64_t i = 0; i < count; ++i) {
    std::mt19937_64 rng = seeded_stream(seed, static_cast<std::uint64_t>(i));
    fam.members.push_back(draw_random_cover(g, order, rng));
  }
  return fam;
}

namespace detail {

inline void finish_family(CoveringFamily& fam, std::set<VertexSet>&& members,
                          const FamilyLimits& limits) {
  if (static_cast<std::int64_t>(members.size()) > limits.max_members)
    throw ResourceLimitError("covering family exceeded member cap");
  fam.members.assign(members.begin(), members.end());
  // Large members first: downstream solvers scan until a member contains the
  // candidate solution, and big members subsume small ones more often.
  std::sort(fam.members.begin(), fam.members.end(), [](const VertexSet& a, const VertexSet& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
}

}  // namespace detail

/// Deterministic covering family driven by an (n, k, kd)-lopsided universal
/// family: one cover draw per universal set, colored exactly by that set.
inline CoveringFamily build_lopsided_family(const UndirectedGraph& g, int k,
                                            const FamilyLimits& limits = {}) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  DegeneracyOrder order = degeneracy_order(g);
  int n = g.vertex_count();
  LopsidedUniversalFamily universal =
      lopsided_universal_family(n, k, k * order.degeneracy, limits.max_members);
  std::set<VertexSet> members;
  for (std::uint32_t setbits : universal.sets) {
    ColorAssignment colors{bits_to_set(setbits)};
    members.insert(cover_from_coloring(order, colors));
  }
  CoveringFamily fam;
  fam.k = k;
  fam.degeneracy = order.degeneracy;
  fam.construction = "lopsided";
  detail::finish_family(fam, std::move(members), limits);
  return fam;
}

/// Deterministic covering family from an (n, l, l^2)-perfect hash family with
/// l = k(d+1): for every function, every color class union of size at most k
/// realized on its image yields one cover draw. Enumerating color sets over the
/// image (instead of all of [l^2]) drops only colorings that repeat an already
/// generated black set.
inline CoveringFamily build_hash_family(const UndirectedGraph& g, int k,
                                        const FamilyLimits& limits = {}) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  DegeneracyOrder order = degeneracy_order(g);
  int n = g.vertex_count();
  int ell = k * (order.degeneracy + 1);
  PerfectHashFamily hashes = perfect_hash_family(n, ell, limits.max_members);
  std::set<VertexSet> members;
  for (const std::vector<int>& fn : hashes.functions) {
    std::vector<int> image;
    for (int v = 0; v < n; ++v) image.push_back(fn[v]);
    sort_unique(image);
    int take = std::min<int>(k, static_cast<int>(image.size()));
    for (int size = 0; size <= take; ++size) {
      for_each_combination(static_cast<int>(image.size()), size, [&](const std::vector<int>& idx) {
        ColorAssignment colors;
        for (int v = 0; v < n; ++v) {
          int c = fn[v];
          for (int i : idx)
            if (image[i] == c) {
              colors.black.push_back(v);
              break;
            }
        }
        members.insert(cover_from_coloring(order, colors));
        if (static_cast<std::int64_t>(members.size()) > limits.max_members)
          throw ResourceLimitError("hash covering family exceeded member cap");
      });
    }
  }
  CoveringFamily fam;
  fam.k = k;
  fam.degeneracy = order.degeneracy;
  fam.construction = "hash";
  detail::finish_family(fam, std::move(members), limits);
  return fam;
}

/// Extends a covering family of g - modulator to one of g: members are
/// (A u B) \ N(B) over inner members A and independent subsets B of the
/// modulator. Inner members are given in g's vertex ids.
inline CoveringFamily build_modulator_family(const UndirectedGraph& g, const VertexSet& modulator,
                                             int k, const CoveringFamily& inner,
                                             const FamilyLimits& limits = {}) {
  if (static_cast<int>(modulator.size()) > limits.max_modulator)
    throw ResourceLimitError("modulator larger than configured cap");
  std::vector<VertexSet> independent_subsets;
  int m = static_cast<int>(modulator.size());
  for (std::uint32_t bits = 0; bits < (1u << m); ++bits) {
    VertexSet b;
    for (int i = 0; i < m; ++i)
      if (bits >> i & 1u) b.push_back(modulator[i]);
    if (g.is_independent_set(b)) independent_subsets.push_back(std::move(b));
  }
  std::set<VertexSet> members;
  for (const VertexSet& a : inner.members) {
    for (const VertexSet& b : independent_subsets) {
      VertexSet joined = set_difference(set_union(a, b), g.open_neighborhood(b));
      members.insert(std::move(joined));
      if (static_cast<std::int64_t>(members.size()) > limits.max_members)
        throw ResourceLimitError("modulator family exceeded member cap");
    }
  }
  CoveringFamily fam;
  fam.k = k;
  fam.degeneracy = inner.degeneracy;
  fam.construction = "modulator";
  fam.seed = inner.seed;
  detail::finish_family(fam, std::move(members), limits);
  return fam;
}

/// Exhaustive verification verdict. `uncovered` is an independent set of size
/// at most k contained in no member; `dependent_member` is a member that is not
/// independent. ok means neither witness exists.
struct CoverVerdict {
  bool ok = false;
  std::optional<VertexSet> uncovered;
  std::optional<VertexSet> dependent_member;
};

namespace detail {

template <typename F>
void for_each_independent_set(const UndirectedGraph& g, int max_size, F&& f) {
  VertexSet current;
  auto rec = [&](auto&& self, int next) -> void {
    f(const_cast<const VertexSet&>(current));
    if (static_cast<int>(current.size()) == max_size) return;
    for (int v = next; v < g.vertex_count(); ++v) {
      bool ok = true;
      for (int u : current)
        if (g.has_edge(u, v)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      current.push_back(v);
      self(self, v + 1);
      current.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace detail

inline CoverVerdict verify_covering(const UndirectedGraph& g, int k, const CoveringFamily& family,
                                    const FamilyLimits& limits = {}) {
  if (g.vertex_count() > limits.max_exhaustive_n)
    throw ResourceLimitError("verify_covering capped at n <= " +
                             std::to_string(limits.max_exhaustive_n));
  CoverVerdict verdict;
  for (const VertexSet& member : family.members)
    if (!g.is_independent_set(member)) {
      verdict.dependent_member = member;
      return verdict;
    }
  std::vector<std::uint32_t> masks;
  masks.reserve(family.members.size());
  for (const VertexSet& member : family.members) masks.push_back(set_to_bits(member));
  bool failed = false;
  detail::for_each_independent_set(g, k, [&](const VertexSet& x) {
    if (failed) return;
    std::uint32_t xm = set_to_bits(x);
    for (std::uint32_t m : masks)
      if ((xm & ~m) == 0) return;
    verdict.uncovered = x;
    failed = true;
  });
  verdict.ok = !failed;
  return verdict;
}

/// One member per line as space-separated ids; the header records the
/// construction parameters.
inline std::string format_family(const CoveringFamily& fam) {
  std::ostringstream out;
  out << "k=" << fam.k << " d=" << fam.degeneracy << " construction=" << fam.construction
      << " seed=" << (fam.seed ? std::to_string(*fam.seed) : "-") << '\n';
  for (const VertexSet& member : fam.members) {
    for (size_t i = 0; i < member.size(); ++i) out << (i ? " " : "") << member[i];
    out << '\n';
  }
  return out.str();
}

}  // namespace stablecut
