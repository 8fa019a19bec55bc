#pragma once

#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "stablecut/util.hpp"

namespace stablecut {

/// Simple undirected graph on vertex ids 0..n-1. Immutable after construction;
/// no self-loops, no parallel edges, adjacency lists kept sorted.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;

  UndirectedGraph(int n, std::vector<std::pair<int, int>> edges) : n_(n), adj_(n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    for (auto& [u, v] : edges) {
      check_vertex(u);
      check_vertex(v);
      if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
      if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);
    for (auto [u, v] : edges_) {
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const VertexSet& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }

  bool has_edge(int u, int v) const {
    if (u == v) return false;
    return set_contains(adj_[u], v);
  }

  bool is_independent_set(const VertexSet& s) const {
    for (size_t i = 0; i < s.size(); ++i)
      for (size_t j = i + 1; j < s.size(); ++j)
        if (has_edge(s[i], s[j])) return false;
    return true;
  }

  VertexSet closed_neighborhood(const VertexSet& s) const {
    VertexSet out = s;
    for (int v : s) out.insert(out.end(), adj_[v].begin(), adj_[v].end());
    sort_unique(out);
    return out;
  }

  VertexSet open_neighborhood(const VertexSet& s) const {
    return set_difference(closed_neighborhood(s), s);
  }

  /// Result of restricting to a vertex subset. Vertices are renumbered; the maps
  /// let callers report answers against the original ids.
  struct Induced {
    UndirectedGraph graph;
    std::vector<int> original_ids;  // per new id
    std::vector<int> new_ids;       // per old id, -1 if dropped
  };

  Induced induced_subgraph(const VertexSet& keep) const {
    Induced out;
    out.new_ids.assign(n_, -1);
    for (int v : keep) {
      check_vertex(v);
      out.new_ids[v] = static_cast<int>(out.original_ids.size());
      out.original_ids.push_back(v);
    }
    std::vector<std::pair<int, int>> es;
    for (auto [u, v] : edges_)
      if (out.new_ids[u] >= 0 && out.new_ids[v] >= 0)
        es.emplace_back(out.new_ids[u], out.new_ids[v]);
    out.graph = UndirectedGraph(static_cast<int>(out.original_ids.size()), std::move(es));
    return out;
  }

  Induced remove_vertices(const VertexSet& drop) const {
    VertexSet keep;
    for (int v = 0; v < n_; ++v)
      if (!set_contains(drop, v)) keep.push_back(v);
    return induced_subgraph(keep);
  }

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("vertex id out of range: " + std::to_string(v));
  }

  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<VertexSet> adj_;
};

/// Simple digraph; 2-cycles allowed, self-loops not.
class Digraph {
 public:
  Digraph() = default;

  Digraph(int n, std::vector<std::pair<int, int>> arcs) : n_(n), out_(n), in_(n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    for (auto [u, v] : arcs) {
      check_vertex(u);
      check_vertex(v);
      if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    arcs_ = std::move(arcs);
    for (auto [u, v] : arcs_) {
      out_[u].push_back(v);
      in_[v].push_back(u);
    }
    for (auto& a : out_) std::sort(a.begin(), a.end());
    for (auto& a : in_) std::sort(a.begin(), a.end());
  }

  int vertex_count() const { return n_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const std::vector<std::pair<int, int>>& arcs() const { return arcs_; }
  const VertexSet& out_neighbors(int v) const { return out_[v]; }
  const VertexSet& in_neighbors(int v) const { return in_[v]; }
  bool has_arc(int u, int v) const { return u != v && set_contains(out_[u], v); }

  struct Induced {
    Digraph graph;
    std::vector<int> original_ids;
    std::vector<int> new_ids;
  };

  Induced induced_subgraph(const VertexSet& keep) const {
    Induced out;
    out.new_ids.assign(n_, -1);
    for (int v : keep) {
      check_vertex(v);
      out.new_ids[v] = static_cast<int>(out.original_ids.size());
      out.original_ids.push_back(v);
    }
    std::vector<std::pair<int, int>> as;
    for (auto [u, v] : arcs_)
      if (out.new_ids[u] >= 0 && out.new_ids[v] >= 0)
        as.emplace_back(out.new_ids[u], out.new_ids[v]);
    out.graph = Digraph(static_cast<int>(out.original_ids.size()), std::move(as));
    return out;
  }

  Induced remove_vertices(const VertexSet& drop) const {
    VertexSet keep;
    for (int v = 0; v < n_; ++v)
      if (!set_contains(drop, v)) keep.push_back(v);
    return induced_subgraph(keep);
  }

  /// Undirected shadow: every arc (and 2-cycle) becomes one edge.
  UndirectedGraph underlying_graph() const {
    std::vector<std::pair<int, int>> es;
    for (auto [u, v] : arcs_) es.emplace_back(std::min(u, v), std::max(u, v));
    return UndirectedGraph(n_, std::move(es));
  }

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("vertex id out of range: " + std::to_string(v));
  }

  int n_ = 0;
  std::vector<std::pair<int, int>> arcs_;
  std::vector<VertexSet> out_, in_;
};

inline Digraph reverse(const Digraph& d) {
  std::vector<std::pair<int, int>> arcs;
  arcs.reserve(d.arc_count());
  for (auto [u, v] : d.arcs()) arcs.emplace_back(v, u);
  return Digraph(d.vertex_count(), std::move(arcs));
}

/// Replaces each edge by two opposite arcs.
inline Digraph bidirect(const UndirectedGraph& g) {
  std::vector<std::pair<int, int>> arcs;
  arcs.reserve(2 * g.edge_count());
  for (auto [u, v] : g.edges()) {
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  return Digraph(g.vertex_count(), std::move(arcs));
}

/// Bidirects g and appends a root vertex r (id = n) with in-arcs from
/// `root_in_neighbors` and no out-arcs.
inline Digraph bidirect_with_root(const UndirectedGraph& g, const VertexSet& root_in_neighbors) {
  int n = g.vertex_count();
  std::vector<std::pair<int, int>> arcs;
  arcs.reserve(2 * g.edge_count() + root_in_neighbors.size());
  for (auto [u, v] : g.edges()) {
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  for (int y : root_in_neighbors) {
    if (y < 0 || y >= n) throw std::invalid_argument("root in-neighbor out of range");
    arcs.emplace_back(y, n);
  }
  return Digraph(n + 1, std::move(arcs));
}

/// Vertices reachable from `sources` \ `blocked` without entering `blocked`.
inline VertexSet reachable_from(const Digraph& d, const VertexSet& sources, const VertexSet& blocked = {}) {
  std::vector<char> seen(d.vertex_count(), 0), bad(d.vertex_count(), 0);
  for (int v : blocked) bad[v] = 1;
  std::queue<int> q;
  for (int v : sources)
    if (!bad[v] && !seen[v]) {
      seen[v] = 1;
      q.push(v);
    }
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : d.out_neighbors(v))
      if (!bad[w] && !seen[w]) {
        seen[w] = 1;
        q.push(w);
      }
  }
  VertexSet out;
  for (int v = 0; v < d.vertex_count(); ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

inline VertexSet reachable_from(const UndirectedGraph& g, const VertexSet& sources, const VertexSet& blocked = {}) {
  std::vector<char> seen(g.vertex_count(), 0), bad(g.vertex_count(), 0);
  for (int v : blocked) bad[v] = 1;
  std::queue<int> q;
  for (int v : sources)
    if (!bad[v] && !seen[v]) {
      seen[v] = 1;
      q.push(v);
    }
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : g.neighbors(v))
      if (!bad[w] && !seen[w]) {
        seen[w] = 1;
        q.push(w);
      }
  }
  VertexSet out;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

template <typename G>
bool has_path(const G& g, int from, int to, const VertexSet& blocked = {}) {
  if (set_contains(blocked, from) || set_contains(blocked, to)) return false;
  return set_contains(reachable_from(g, {from}, blocked), to);
}

/// Unordered terminal pairs {s,t}; s != t, duplicates collapsed, stored with s < t.
struct TerminalPairs {
  std::vector<std::pair<int, int>> pairs;

  static TerminalPairs of(std::vector<std::pair<int, int>> raw) {
    for (auto& [s, t] : raw) {
      if (s == t) throw std::invalid_argument("terminal pair with equal endpoints");
      if (s > t) std::swap(s, t);
    }
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    return TerminalPairs{std::move(raw)};
  }

  VertexSet vertices() const {
    VertexSet out;
    for (auto [s, t] : pairs) {
      out.push_back(s);
      out.push_back(t);
    }
    sort_unique(out);
    return out;
  }

  bool empty() const { return pairs.empty(); }
  size_t size() const { return pairs.size(); }
};

// ---------------------------------------------------------------------------
// File formats. Graph: "n m" or "n m directed" header, then m lines "u v";
// '#' starts a comment line. Terminals: lines "s t".
// ---------------------------------------------------------------------------

using ParsedGraph = std::variant<UndirectedGraph, Digraph>;

namespace detail {

inline bool skippable(const std::string& line) {
  for (char c : line)
    if (!isspace(static_cast<unsigned char>(c))) return c == '#';
  return true;
}

}  // namespace detail

inline ParsedGraph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  long long n = -1, m = -1;
  bool directed = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::skippable(line)) continue;
    std::istringstream hs(line);
    std::string tail;
    if (!(hs >> n >> m)) throw ParseError(lineno, "expected header \"n m [directed]\"");
    if (hs >> tail) {
      if (tail != "directed") throw ParseError(lineno, "unrecognized header token '" + tail + "'");
      directed = true;
      if (hs >> tail) throw ParseError(lineno, "trailing content after header");
    }
    if (n < 0 || m < 0) throw ParseError(lineno, "negative count in header");
    break;
  }
  if (n < 0) throw ParseError(lineno, "missing header");

  std::vector<std::pair<int, int>> links;
  long long read = 0;
  while (read < m && std::getline(in, line)) {
    ++lineno;
    if (detail::skippable(line)) continue;
    std::istringstream es(line);
    long long u, v;
    std::string tail;
    if (!(es >> u >> v)) throw ParseError(lineno, "expected \"u v\"");
    if (es >> tail) throw ParseError(lineno, "trailing content after edge");
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw ParseError(lineno, "vertex id out of range 0.." + std::to_string(n - 1));
    if (u == v) throw ParseError(lineno, "self-loop at vertex " + std::to_string(u));
    links.emplace_back(static_cast<int>(u), static_cast<int>(v));
    ++read;
  }
  if (read < m) throw ParseError(lineno, "expected " + std::to_string(m) + " edges, got " + std::to_string(read));
  if (directed) return Digraph(static_cast<int>(n), std::move(links));
  return UndirectedGraph(static_cast<int>(n), std::move(links));
}

inline TerminalPairs parse_terminals(std::string_view text, int vertex_count) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  std::vector<std::pair<int, int>> pairs;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::skippable(line)) continue;
    std::istringstream ps(line);
    long long s, t;
    std::string tail;
    if (!(ps >> s >> t)) throw ParseError(lineno, "expected \"s t\"");
    if (ps >> tail) throw ParseError(lineno, "trailing content after pair");
    if (s < 0 || s >= vertex_count || t < 0 || t >= vertex_count)
      throw ParseError(lineno, "terminal id out of range");
    if (s == t) throw ParseError(lineno, "terminal pair with equal endpoints");
    pairs.emplace_back(static_cast<int>(s), static_cast<int>(t));
  }
  return TerminalPairs::of(std::move(pairs));
}

inline std::string format_graph(const UndirectedGraph& g) {
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

inline std::string format_graph(const Digraph& d) {
  std::ostringstream out;
  out << d.vertex_count() << ' ' << d.arc_count() << " directed\n";
  for (auto [u, v] : d.arcs()) out << u << ' ' << v << '\n';
  return out.str();
}

inline std::string format_terminals(const TerminalPairs& t) {
  std::ostringstream out;
  for (auto [s, u] : t.pairs) out << s << ' ' << u << '\n';
  return out.str();
}

}  // namespace stablecut
