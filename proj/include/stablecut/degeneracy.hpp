#pragma once

#include <set>
#include <vector>

#include "stablecut/graph.hpp"
#include "stablecut/util.hpp"

namespace stablecut {

/// A peeling order witnessing the graph's degeneracy. rank[v] is v's position
/// in the removal sequence; forward_neighbors[v] are v's neighbors with larger
/// rank (at most `degeneracy` of them).
struct DegeneracyOrder {
  std::vector<int> rank;
  std::vector<int> order;  // order[i] = vertex removed i-th
  int degeneracy = 0;
  std::vector<VertexSet> forward_neighbors;
};

/// Repeatedly removes a minimum-degree vertex (lowest id on ties, so the order
/// is deterministic); degeneracy is the largest degree seen at removal time.
inline DegeneracyOrder degeneracy_order(const UndirectedGraph& g) {
  int n = g.vertex_count();
  DegeneracyOrder out;
  out.rank.assign(n, -1);
  out.order.reserve(n);
  out.forward_neighbors.assign(n, {});

  std::vector<int> deg(n);
  std::set<std::pair<int, int>> live;  // (degree, id)
  for (int v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    live.emplace(deg[v], v);
  }
  std::vector<char> removed(n, 0);
  for (int step = 0; step < n; ++step) {
    auto [d, v] = *live.begin();
    live.erase(live.begin());
    out.degeneracy = std::max(out.degeneracy, d);
    removed[v] = 1;
    out.rank[v] = step;
    out.order.push_back(v);
    for (int w : g.neighbors(v)) {
      if (removed[w]) continue;
      live.erase({deg[w], w});
      --deg[w];
      live.emplace(deg[w], w);
    }
  }
  for (auto [u, v] : g.edges()) {
    if (out.rank[u] < out.rank[v])
      out.forward_neighbors[u].push_back(v);
    else
      out.forward_neighbors[v].push_back(u);
  }
  for (auto& f : out.forward_neighbors) std::sort(f.begin(), f.end());
  return out;
}

}  // namespace stablecut
