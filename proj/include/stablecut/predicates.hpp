#pragma once

#include <optional>
#include <queue>

#include "stablecut/graph.hpp"
#include "stablecut/util.hpp"

namespace stablecut {

/// Two-coloring of an undirected graph, if bipartite. color[v] in {0,1};
/// removed vertices keep color -1.
inline std::optional<std::vector<int>> bipartition(const UndirectedGraph& g,
                                                   const VertexSet& removed = {}) {
  std::vector<int> color(g.vertex_count(), -1);
  std::vector<char> gone(g.vertex_count(), 0);
  for (int v : removed) gone[v] = 1;
  for (int start = 0; start < g.vertex_count(); ++start) {
    if (gone[start] || color[start] != -1) continue;
    color[start] = 0;
    std::queue<int> q;
    q.push(start);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : g.neighbors(v)) {
        if (gone[w]) continue;
        if (color[w] == -1) {
          color[w] = 1 - color[v];
          q.push(w);
        } else if (color[w] == color[v]) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

inline bool is_bipartite_without(const UndirectedGraph& g, const VertexSet& removed = {}) {
  return bipartition(g, removed).has_value();
}

inline bool is_odd_cycle_transversal(const UndirectedGraph& g, const VertexSet& s) {
  return is_bipartite_without(g, s);
}

/// Shortest directed cycle avoiding `removed`, as a vertex sequence; nullopt if
/// the remaining digraph is acyclic. Deterministic: BFS from each vertex in id
/// order, first shortest cycle wins.
inline std::optional<std::vector<int>> shortest_cycle(const Digraph& d, const VertexSet& removed = {}) {
  int n = d.vertex_count();
  std::vector<char> gone(n, 0);
  for (int v : removed) gone[v] = 1;
  std::optional<std::vector<int>> best;
  for (int start = 0; start < n; ++start) {
    if (gone[start]) continue;
    std::vector<int> parent(n, -1), dist(n, -1);
    std::queue<int> q;
    dist[start] = 0;
    q.push(start);
    int closing = -1;
    while (!q.empty() && closing == -1) {
      int v = q.front();
      q.pop();
      for (int w : d.out_neighbors(v)) {
        if (gone[w]) continue;
        if (w == start) {
          closing = v;
          break;
        }
        if (dist[w] == -1) {
          dist[w] = dist[v] + 1;
          parent[w] = v;
          q.push(w);
        }
      }
    }
    if (closing == -1) continue;
    std::vector<int> cycle;
    for (int v = closing; v != -1; v = parent[v]) cycle.push_back(v);
    std::reverse(cycle.begin(), cycle.end());  // starts at `start`
    if (!best || cycle.size() < best->size()) best = std::move(cycle);
  }
  return best;
}

inline bool is_acyclic_without(const Digraph& d, const VertexSet& removed = {}) {
  return !shortest_cycle(d, removed).has_value();
}

inline bool is_feedback_vertex_set(const Digraph& d, const VertexSet& s) {
  return is_acyclic_without(d, s);
}

/// Multicut predicate: terminals are deletable (a deleted endpoint trivially
/// has no path).
inline bool is_multicut(const UndirectedGraph& g, const TerminalPairs& t, const VertexSet& s) {
  for (auto [a, b] : t.pairs) {
    if (set_contains(s, a) || set_contains(s, b)) continue;
    if (has_path(g, a, b, s)) return false;
  }
  return true;
}

/// s-t separator predicate for the endpoint-excluding form.
inline bool is_st_separator(const UndirectedGraph& g, int s, int t, const VertexSet& sep) {
  if (set_contains(sep, s) || set_contains(sep, t)) return false;
  return !has_path(g, s, t, sep);
}

/// Digraph pair cut predicate: for every pair, some endpoint cannot reach the
/// root once S is deleted (deleted endpoints count as cut).
inline bool is_pair_cut(const Digraph& d, const TerminalPairs& t, int root, const VertexSet& s) {
  if (set_contains(s, root)) return false;
  for (auto [a, b] : t.pairs) {
    bool a_cut = set_contains(s, a) || !has_path(d, a, root, s);
    bool b_cut = set_contains(s, b) || !has_path(d, b, root, s);
    if (!a_cut && !b_cut) return false;
  }
  return true;
}

/// Greedily shrinks `s` to an inclusion-minimal set still satisfying `keeps`
/// (monotone predicate). Tries vertices in increasing id order.
template <typename Pred>
VertexSet minimalize(VertexSet s, Pred&& keeps) {
  for (size_t i = 0; i < s.size();) {
    VertexSet candidate = s;
    candidate.erase(candidate.begin() + i);
    if (keeps(candidate)) {
      s = std::move(candidate);
    } else {
      ++i;
    }
  }
  return s;
}

}  // namespace stablecut
