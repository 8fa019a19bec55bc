#pragma once

#include <optional>
#include <set>
#include <string>

#include "stablecut/flow.hpp"
#include "stablecut/graph.hpp"

namespace stablecut {

/// A vertex separator together with the set of vertices still reachable from
/// the query's source side after deleting it.
struct SeparatorSet {
  VertexSet vertices;
  VertexSet reach;
};

/// An X-Y separator question: delete at most `budget` vertices, all drawn from
/// `deletable`, so that no vertex of X \ S reaches Y \ S.
struct SeparatorQuery {
  const Digraph* digraph = nullptr;
  VertexSet sources;
  VertexSet sinks;
  VertexSet deletable;
  int budget = 0;
};

struct MinSeparatorResult {
  std::optional<SeparatorSet> separator;
  std::string reason;  // set when no separator is returned
};

/// Minimum-size X-Y separator within the deletable set, if its size fits the
/// budget. The returned set is inclusion-minimal (minimum size implies it).
inline MinSeparatorResult min_separator(const SeparatorQuery& q) {
  const Digraph& d = *q.digraph;
  VertexSet clash = set_intersection(q.sources, q.sinks);
  if (!set_difference(clash, q.deletable).empty())
    return {std::nullopt, "sets intersect"};

  VertexFlowNetwork net(d, q.sources, q.sinks, q.deletable, /*unit_arcs=*/false);
  int f = net.max_flow(q.budget);
  if (f > q.budget) {
    if (!clash.empty()) return {std::nullopt, "sets intersect"};
    return {std::nullopt, "budget exceeded"};
  }
  SeparatorSet out;
  out.vertices = net.nearest_min_cut();
  out.reach = reachable_from(d, set_difference(q.sources, out.vertices), out.vertices);
  return {std::move(out), ""};
}

/// s-t convenience form: endpoints are never part of the separator.
inline MinSeparatorResult min_st_separator(const UndirectedGraph& g, int s, int t,
                                           const VertexSet& deletable, int budget) {
  Digraph d = bidirect(g);
  SeparatorQuery q{&d, {s}, {t}, set_difference(deletable, VertexSet{std::min(s, t), std::max(s, t)}),
                   budget};
  return min_separator(q);
}

struct DisjointPaths {
  int count = 0;
  std::vector<std::vector<int>> paths;
};

/// Maximum set of paths from `from` into `to`, pairwise vertex-disjoint except
/// at `to`. By Menger's theorem the count equals the minimum from-to separator
/// size over vertices other than `to`.
inline DisjointPaths max_disjoint_paths(const Digraph& d, const VertexSet& from, int to) {
  if (set_contains(from, to)) throw std::invalid_argument("target must not be a source");
  VertexSet cuttable;
  for (int v = 0; v < d.vertex_count(); ++v)
    if (v != to) cuttable.push_back(v);
  VertexFlowNetwork net(d, from, {to}, cuttable, /*unit_arcs=*/true);
  DisjointPaths out;
  out.count = net.max_flow(d.vertex_count());
  out.paths = net.decompose_paths();
  return out;
}

namespace detail {

inline bool is_separator(const Digraph& d, const VertexSet& X, const VertexSet& Y, const VertexSet& S) {
  VertexSet reach = reachable_from(d, set_difference(X, S), S);
  return set_intersection(reach, set_difference(Y, S)).empty();
}

inline bool is_minimal_separator(const Digraph& d, const VertexSet& X, const VertexSet& Y,
                                 const VertexSet& S) {
  if (!is_separator(d, X, Y, S)) return false;
  for (int v : S) {
    VertexSet smaller = set_difference(S, {v});
    if (is_separator(d, X, Y, smaller)) return false;
  }
  return true;
}

/// Recursion of the standard important-separator enumeration: at each node,
/// compute the minimum X-Y cut pushed farthest towards Y, record it, then
/// branch on the lowest-id cut vertex (forced into the separator / frozen on
/// the source side). Produces a superset of the important separators.
struct ImportantSeparatorSearch {
  const Digraph& d;
  const VertexSet& X;
  const VertexSet& Y;
  int budget;
  std::set<VertexSet> candidates;

  void run(VertexSet in_sep, VertexSet frozen) {
    int remaining = budget - static_cast<int>(in_sep.size());
    if (remaining < 0) return;
    VertexSet cuttable;
    for (int v = 0; v < d.vertex_count(); ++v)
      if (!set_contains(in_sep, v) && !set_contains(frozen, v)) cuttable.push_back(v);
    // The current separator vertices are deleted outright: model them as
    // removed from the network by giving them no capacity path. Simplest is
    // to delete them from the digraph.
    Digraph::Induced sub = d.remove_vertices(in_sep);
    auto map_down = [&](const VertexSet& s) {
      VertexSet out;
      for (int v : s)
        if (sub.new_ids[v] >= 0) out.push_back(sub.new_ids[v]);
      sort_unique(out);
      return out;
    };
    VertexSet sub_sources = map_down(set_union(X, frozen));
    VertexSet sub_sinks = map_down(Y);
    VertexSet sub_cuttable = map_down(cuttable);
    VertexFlowNetwork net(sub.graph, sub_sources, sub_sinks, sub_cuttable, false);
    int f = net.max_flow(remaining);
    if (f > remaining) return;  // includes the "frozen side touches Y" dead branch
    VertexSet far_cut_sub = net.farthest_min_cut();
    VertexSet far_cut;
    for (int v : far_cut_sub) far_cut.push_back(sub.original_ids[v]);
    sort_unique(far_cut);

    candidates.insert(set_union(in_sep, far_cut));
    if (far_cut.empty()) return;

    int pivot = far_cut.front();
    run(set_union(in_sep, {pivot}), frozen);
    // Exclude branch: pivot and everything the sources currently reach move to
    // the frozen side, which forces strictly larger minimum cuts below.
    VertexSet reach_sub = reachable_from(sub.graph, sub_sources, far_cut_sub);
    VertexSet reach;
    for (int v : reach_sub) reach.push_back(sub.original_ids[v]);
    sort_unique(reach);
    run(in_sep, set_union(set_union(frozen, reach), {pivot}));
  }
};

}  // namespace detail

/// All important X-Y separators of size at most k (general form: separators may
/// intersect X and Y). Results are minimal, mutually non-dominating, sorted by
/// size then lexicographically; there are at most 4^k of them.
inline std::vector<SeparatorSet> enumerate_important_separators(const Digraph& d, const VertexSet& X,
                                                                const VertexSet& Y, int k) {
  if (k < 0) throw std::invalid_argument("budget must be non-negative");
  detail::ImportantSeparatorSearch search{d, X, Y, k, {}};
  search.run({}, {});

  std::vector<VertexSet> minimal;
  for (const VertexSet& s : search.candidates)
    if (static_cast<int>(s.size()) <= k && detail::is_minimal_separator(d, X, Y, s))
      minimal.push_back(s);

  std::vector<VertexSet> reaches;
  reaches.reserve(minimal.size());
  for (const VertexSet& s : minimal) reaches.push_back(reachable_from(d, set_difference(X, s), s));

  std::vector<SeparatorSet> out;
  for (size_t i = 0; i < minimal.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < minimal.size() && !dominated; ++j) {
      if (i == j) continue;
      // S_j dominates S_i: no larger, strictly more source-side reach.
      if (minimal[j].size() <= minimal[i].size() && reaches[i] != reaches[j] &&
          is_subset(reaches[i], reaches[j]))
        dominated = true;
    }
    if (!dominated) out.push_back({minimal[i], reaches[i]});
  }
  std::sort(out.begin(), out.end(), [](const SeparatorSet& a, const SeparatorSet& b) {
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return a.vertices < b.vertices;
  });
  return out;
}

namespace detail {

inline std::vector<SeparatorSet> map_separators_up(const std::vector<SeparatorSet>& subs,
                                                   const std::vector<int>& original_ids) {
  std::vector<SeparatorSet> out;
  out.reserve(subs.size());
  for (const SeparatorSet& s : subs) {
    SeparatorSet mapped;
    for (int v : s.vertices) mapped.vertices.push_back(original_ids[v]);
    for (int v : s.reach) mapped.reach.push_back(original_ids[v]);
    sort_unique(mapped.vertices);
    sort_unique(mapped.reach);
    out.push_back(std::move(mapped));
  }
  return out;
}

}  // namespace detail

/// Important s-t separators: important N+(s)-N-(t) separators in d - {s,t}.
inline std::vector<SeparatorSet> important_st_separators(const Digraph& d, int s, int t, int k) {
  VertexSet X = d.out_neighbors(s);
  VertexSet Y = d.in_neighbors(t);
  Digraph::Induced sub = d.remove_vertices(VertexSet{std::min(s, t), std::max(s, t)});
  auto map_down = [&](const VertexSet& set) {
    VertexSet out;
    for (int v : set)
      if (sub.new_ids[v] >= 0) out.push_back(sub.new_ids[v]);
    sort_unique(out);
    return out;
  };
  auto subs = enumerate_important_separators(sub.graph, map_down(X), map_down(Y), k);
  return detail::map_separators_up(subs, sub.original_ids);
}

/// Important r-to-set separators: important N+(r)-Y separators in d - r.
inline std::vector<SeparatorSet> important_root_set_separators(const Digraph& d, int r,
                                                               const VertexSet& Y, int k) {
  VertexSet X = d.out_neighbors(r);
  Digraph::Induced sub = d.remove_vertices({r});
  auto map_down = [&](const VertexSet& set) {
    VertexSet out;
    for (int v : set)
      if (sub.new_ids[v] >= 0) out.push_back(sub.new_ids[v]);
    sort_unique(out);
    return out;
  };
  auto subs = enumerate_important_separators(sub.graph, map_down(X), map_down(Y), k);
  return detail::map_separators_up(subs, sub.original_ids);
}

}  // namespace stablecut
