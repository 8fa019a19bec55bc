#pragma once

#include <optional>

#include "stablecut/flow.hpp"
#include "stablecut/graph.hpp"

namespace stablecut {

/// min(cap, maximum number of internally vertex-disjoint u-v paths).
/// Intermediate vertices carry one path each; a u-v edge contributes one path.
inline int internally_disjoint_path_count(const UndirectedGraph& g, int u, int v, int cap) {
  if (u == v) throw std::invalid_argument("endpoints must differ");
  if (cap <= 0) return 0;
  Digraph d = bidirect(g);
  VertexSet cuttable;
  for (int w = 0; w < g.vertex_count(); ++w)
    if (w != u && w != v) cuttable.push_back(w);
  VertexFlowNetwork net(d, {u}, {v}, cuttable, /*unit_arcs=*/true);
  int f = net.max_flow(cap);
  return std::min(f, cap);
}

namespace detail {

/// Minimum u-v vertex cut size for non-adjacent u,v (all other vertices cuttable).
inline int min_vertex_cut_between(const UndirectedGraph& g, const Digraph& d, int u, int v) {
  VertexSet cuttable;
  for (int w = 0; w < g.vertex_count(); ++w)
    if (w != u && w != v) cuttable.push_back(w);
  VertexFlowNetwork net(d, {u}, {v}, cuttable, /*unit_arcs=*/false);
  return net.max_flow(g.vertex_count());
}

}  // namespace detail

/// A global minimum vertex cut, or nullopt for complete graphs (which have
/// none). Fixes the lowest-id minimum-degree vertex v0 and takes the best cut
/// over (v0, non-neighbor) pairs and non-adjacent pairs inside N(v0).
inline std::optional<VertexSet> global_min_vertex_cut(const UndirectedGraph& g) {
  int n = g.vertex_count();
  if (n < 2) throw std::invalid_argument("vertex connectivity requires at least 2 vertices");
  Digraph d = bidirect(g);

  int v0 = 0;
  for (int v = 1; v < n; ++v)
    if (g.degree(v) < g.degree(v0)) v0 = v;

  int best = VertexFlowNetwork::kInf;
  std::pair<int, int> best_pair{-1, -1};
  auto consider = [&](int a, int b) {
    int cut = detail::min_vertex_cut_between(g, d, a, b);
    if (cut < best) {
      best = cut;
      best_pair = {a, b};
    }
  };
  for (int w = 0; w < n; ++w)
    if (w != v0 && !g.has_edge(v0, w)) consider(v0, w);
  const VertexSet& nb = g.neighbors(v0);
  for (size_t i = 0; i < nb.size(); ++i)
    for (size_t j = i + 1; j < nb.size(); ++j)
      if (!g.has_edge(nb[i], nb[j])) consider(nb[i], nb[j]);

  if (best_pair.first < 0) return std::nullopt;  // no non-adjacent pair anywhere: complete
  auto [a, b] = best_pair;
  VertexSet cuttable;
  for (int w = 0; w < n; ++w)
    if (w != a && w != b) cuttable.push_back(w);
  VertexFlowNetwork net(d, {a}, {b}, cuttable, false);
  net.max_flow(n);
  return net.nearest_min_cut();
}

/// Size of a global minimum vertex cut; n-1 for complete graphs.
inline int vertex_connectivity(const UndirectedGraph& g) {
  auto cut = global_min_vertex_cut(g);
  if (!cut) return g.vertex_count() - 1;
  return static_cast<int>(cut->size());
}

}  // namespace stablecut
