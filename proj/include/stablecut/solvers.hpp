#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "stablecut/covering.hpp"
#include "stablecut/degeneracy.hpp"
#include "stablecut/graph.hpp"
#include "stablecut/predicates.hpp"
#include "stablecut/separators.hpp"
#include "stablecut/sparsifier.hpp"

namespace stablecut {

struct SolveResult {
  bool feasible = false;
  VertexSet solution;                            // meaningful iff feasible
  std::string certificate;                       // recheck summary
  std::int64_t draws_used = 0;                   // randomized candidate draws
  std::int64_t family_size = 0;                  // deterministic family members tried against
  std::optional<std::vector<int>> two_coloring;  // populated by the bipartite solvers
};

struct SolveMode {
  enum class Kind { Randomized, Deterministic };
  Kind kind = Kind::Deterministic;
  std::string construction = "lopsided";  // lopsided | hash | random
  std::uint64_t seed = 0;

  static SolveMode randomized(std::uint64_t seed) {
    return SolveMode{Kind::Randomized, "", seed};
  }
  static SolveMode deterministic(std::string construction = "lopsided", std::uint64_t seed = 0) {
    return SolveMode{Kind::Deterministic, std::move(construction), seed};
  }
};

// ---------------------------------------------------------------------------
// Annotated s-t separator
// ---------------------------------------------------------------------------

/// Separator constrained to the allowed set: realized as a minimum cut where
/// only allowed vertices have finite capacity.
inline SolveResult annotated_st_separator(const UndirectedGraph& g, int s, int t,
                                          const VertexSet& allowed, int k) {
  if (s == t) throw std::invalid_argument("s and t must differ");
  if (s < 0 || s >= g.vertex_count() || t < 0 || t >= g.vertex_count())
    throw std::invalid_argument("terminal out of range");
  SolveResult out;
  if (k < 0) return out;
  auto res = min_st_separator(g, s, t, allowed, k);
  if (!res.separator) {
    out.certificate = res.reason;
    return out;
  }
  out.feasible = true;
  out.solution = res.separator->vertices;
  out.certificate = "separator recheck: " +
                    std::string(is_st_separator(g, s, t, out.solution) ? "ok" : "FAILED");
  return out;
}

// ---------------------------------------------------------------------------
// Replication: k+1 interchangeable twins for every vertex outside the allowed
// set, so that size-<=k minimal solutions avoid those vertices entirely.
// ---------------------------------------------------------------------------

struct ReplicatedGraph {
  UndirectedGraph graph;
  std::vector<VertexSet> blocks;  // per original vertex: its twin ids
  std::vector<int> origin;        // per new vertex: original id
};

inline ReplicatedGraph replicate_outside(const UndirectedGraph& g, const VertexSet& allowed, int k) {
  ReplicatedGraph out;
  int n = g.vertex_count();
  out.blocks.assign(n, {});
  int next = 0;
  for (int v = 0; v < n; ++v) {
    int copies = set_contains(allowed, v) ? 1 : k + 1;
    for (int c = 0; c < copies; ++c) {
      out.blocks[v].push_back(next++);
      out.origin.push_back(v);
    }
  }
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : g.edges())
    for (int ui : out.blocks[u])
      for (int vi : out.blocks[v]) edges.emplace_back(ui, vi);
  out.graph = UndirectedGraph(next, std::move(edges));
  return out;
}

struct ReplicatedDigraph {
  Digraph graph;
  std::vector<VertexSet> blocks;
  std::vector<int> origin;
};

inline ReplicatedDigraph replicate_outside(const Digraph& d, const VertexSet& allowed, int k) {
  ReplicatedDigraph out;
  int n = d.vertex_count();
  out.blocks.assign(n, {});
  int next = 0;
  for (int v = 0; v < n; ++v) {
    int copies = set_contains(allowed, v) ? 1 : k + 1;
    for (int c = 0; c < copies; ++c) {
      out.blocks[v].push_back(next++);
      out.origin.push_back(v);
    }
  }
  std::vector<std::pair<int, int>> arcs;
  for (auto [u, v] : d.arcs())
    for (int ui : out.blocks[u])
      for (int vi : out.blocks[v]) arcs.emplace_back(ui, vi);
  out.graph = Digraph(next, std::move(arcs));
  return out;
}

namespace detail {

template <typename Rep>
VertexSet map_to_origin(const Rep& rep, const VertexSet& s) {
  VertexSet out;
  for (int v : s) out.push_back(rep.origin[v]);
  sort_unique(out);
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Odd cycle transversal: iterative compression.
// ---------------------------------------------------------------------------

namespace detail {

/// Replaces a size-(k+1) transversal by one of size <= k if possible: branch
/// over removed/black/white assignments of the old solution and reduce each
/// branch to an s-t separator question.
inline std::optional<VertexSet> oct_compress(const UndirectedGraph& g, const VertexSet& old_solution,
                                             int k) {
  auto coloring = bipartition(g, old_solution);
  int m = static_cast<int>(old_solution.size());
  std::vector<int> assign(m, 0);  // 0 removed, 1 black, 2 white
  while (true) {
    VertexSet removed, black0, white0;
    for (int i = 0; i < m; ++i) {
      if (assign[i] == 0) removed.push_back(old_solution[i]);
      if (assign[i] == 1) black0.push_back(old_solution[i]);
      if (assign[i] == 2) white0.push_back(old_solution[i]);
    }
    bool consistent = g.is_independent_set(black0) && g.is_independent_set(white0);
    if (consistent) {
      VertexSet must_black = set_difference(g.open_neighborhood(white0), old_solution);
      VertexSet must_white = set_difference(g.open_neighborhood(black0), old_solution);
      // Forced vertices whose current color matches go to one side of the
      // separation question; mismatched ones to the other.
      VertexSet side_x, side_y;
      for (int v : must_black) ((*coloring)[v] == 0 ? side_x : side_y).push_back(v);
      for (int v : must_white) ((*coloring)[v] == 1 ? side_x : side_y).push_back(v);
      sort_unique(side_x);
      sort_unique(side_y);

      VertexSet fixed_colored = set_union(black0, white0);
      auto sub = g.remove_vertices(fixed_colored);
      int s_node = sub.graph.vertex_count();
      int t_node = s_node + 1;
      std::vector<std::pair<int, int>> edges = sub.graph.edges();
      VertexSet s_side = set_union(side_x, removed);
      VertexSet t_side = set_union(side_y, removed);
      for (int v : s_side) edges.emplace_back(s_node, sub.new_ids[v]);
      for (int v : t_side) edges.emplace_back(t_node, sub.new_ids[v]);
      UndirectedGraph gadget(t_node + 1, std::move(edges));
      VertexSet deletable;
      for (int v = 0; v < s_node; ++v) deletable.push_back(v);
      auto res = min_st_separator(gadget, s_node, t_node, deletable, k);
      if (res.separator) {
        VertexSet solution;
        for (int v : res.separator->vertices) solution.push_back(sub.original_ids[v]);
        sort_unique(solution);
        if (!is_odd_cycle_transversal(g, solution))
          throw std::logic_error("oct compression produced a non-transversal");
        return solution;
      }
    }
    int i = m - 1;
    while (i >= 0 && assign[i] == 2) assign[i--] = 0;
    if (i < 0) break;
    ++assign[i];
  }
  return std::nullopt;
}

}  // namespace detail

/// Exact odd cycle transversal by iterative compression over the vertex order.
inline SolveResult oct_solve(const UndirectedGraph& g, int k) {
  SolveResult out;
  if (k < 0) return out;
  int n = g.vertex_count();
  VertexSet solution;
  std::vector<std::pair<int, int>> prefix_edges;
  for (int i = 0; i < n; ++i) {
    for (auto [u, v] : g.edges())
      if (std::max(u, v) == i) prefix_edges.emplace_back(u, v);
    UndirectedGraph prefix(i + 1, prefix_edges);
    if (is_bipartite_without(prefix, solution)) continue;
    solution = set_union(solution, {i});
    if (static_cast<int>(solution.size()) <= k) continue;
    auto compressed = detail::oct_compress(prefix, solution, k);
    if (!compressed) return out;
    solution = *compressed;
  }
  solution = minimalize(std::move(solution),
                        [&](const VertexSet& s) { return is_bipartite_without(g, s); });
  out.feasible = true;
  out.solution = solution;
  out.two_coloring = bipartition(g, solution);
  out.certificate = "bipartite recheck: ok";
  return out;
}

/// OCT constrained to the allowed set, via twin replication.
inline SolveResult annotated_oct(const UndirectedGraph& g, const VertexSet& allowed, int k) {
  ReplicatedGraph rep = replicate_outside(g, allowed, k);
  SolveResult inner = oct_solve(rep.graph, k);
  SolveResult out;
  if (!inner.feasible) return out;
  VertexSet minimal = minimalize(
      inner.solution, [&](const VertexSet& s) { return is_bipartite_without(rep.graph, s); });
  VertexSet solution = detail::map_to_origin(rep, minimal);
  if (!is_subset(solution, allowed) || !is_odd_cycle_transversal(g, solution))
    throw std::logic_error("annotated oct mapping failed");
  out.feasible = true;
  out.solution = solution;
  out.two_coloring = bipartition(g, solution);
  out.certificate = "bipartite recheck: ok, inside allowed set";
  return out;
}

// ---------------------------------------------------------------------------
// Directed feedback vertex set: branch on a shortest cycle.
// ---------------------------------------------------------------------------

namespace detail {

inline std::optional<VertexSet> dfvs_search(const Digraph& d, VertexSet& removed, int budget) {
  auto cycle = shortest_cycle(d, removed);
  if (!cycle) return VertexSet{};
  if (budget == 0) return std::nullopt;
  VertexSet branch = *cycle;
  std::sort(branch.begin(), branch.end());
  for (int v : branch) {
    removed.insert(std::lower_bound(removed.begin(), removed.end(), v), v);
    auto sub = dfvs_search(d, removed, budget - 1);
    removed.erase(std::lower_bound(removed.begin(), removed.end(), v));
    if (sub) {
      sub->insert(std::lower_bound(sub->begin(), sub->end(), v), v);
      return sub;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Exact directed feedback vertex set: every feedback set hits every cycle, so
/// branching over one cycle's vertices with depth k is complete.
inline SolveResult dfvs_solve(const Digraph& d, int k) {
  SolveResult out;
  if (k < 0) return out;
  VertexSet removed;
  auto found = detail::dfvs_search(d, removed, k);
  if (!found) return out;
  out.feasible = true;
  out.solution = minimalize(std::move(*found),
                            [&](const VertexSet& s) { return is_acyclic_without(d, s); });
  out.certificate = "acyclic recheck: ok";
  return out;
}

inline SolveResult annotated_dfvs(const Digraph& d, const VertexSet& allowed, int k) {
  ReplicatedDigraph rep = replicate_outside(d, allowed, k);
  SolveResult inner = dfvs_solve(rep.graph, k);
  SolveResult out;
  if (!inner.feasible) return out;
  VertexSet minimal = minimalize(
      inner.solution, [&](const VertexSet& s) { return is_acyclic_without(rep.graph, s); });
  VertexSet solution = detail::map_to_origin(rep, minimal);
  if (!is_subset(solution, allowed) || !is_acyclic_without(d, solution))
    throw std::logic_error("annotated dfvs mapping failed");
  out.feasible = true;
  out.solution = solution;
  out.certificate = "acyclic recheck: ok, inside allowed set";
  return out;
}

// ---------------------------------------------------------------------------
// Multicut: branch on a shortest violated terminal path. Terminals are
// deletable.
// ---------------------------------------------------------------------------

namespace detail {

inline std::optional<std::vector<int>> shortest_violated_path(const UndirectedGraph& g,
                                                              const TerminalPairs& t,
                                                              const VertexSet& removed) {
  for (auto [s, u] : t.pairs) {
    if (set_contains(removed, s) || set_contains(removed, u)) continue;
    // BFS shortest path s -> u avoiding removed; neighbors scanned ascending.
    std::vector<int> parent(g.vertex_count(), -2);
    for (int v : removed) parent[v] = -3;
    if (parent[s] == -3 || parent[u] == -3) continue;
    std::queue<int> q;
    parent[s] = -1;
    q.push(s);
    bool reached = false;
    while (!q.empty() && !reached) {
      int v = q.front();
      q.pop();
      for (int w : g.neighbors(v)) {
        if (parent[w] != -2) continue;
        parent[w] = v;
        if (w == u) {
          reached = true;
          break;
        }
        q.push(w);
      }
    }
    if (!reached) continue;
    std::vector<int> path;
    for (int v = u; v != -1; v = parent[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
  }
  return std::nullopt;
}

inline std::optional<VertexSet> multicut_search(const UndirectedGraph& g, const TerminalPairs& t,
                                                VertexSet& removed, int budget) {
  auto path = shortest_violated_path(g, t, removed);
  if (!path) return VertexSet{};
  if (budget == 0) return std::nullopt;
  for (int v : *path) {
    removed.insert(std::lower_bound(removed.begin(), removed.end(), v), v);
    auto sub = multicut_search(g, t, removed, budget - 1);
    removed.erase(std::lower_bound(removed.begin(), removed.end(), v));
    if (sub) {
      sub->insert(std::lower_bound(sub->begin(), sub->end(), v), v);
      return sub;
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline SolveResult multicut_solve(const UndirectedGraph& g, const TerminalPairs& t, int k) {
  SolveResult out;
  if (k < 0) return out;
  VertexSet removed;
  auto found = detail::multicut_search(g, t, removed, k);
  if (!found) return out;
  out.feasible = true;
  out.solution = minimalize(std::move(*found),
                            [&](const VertexSet& s) { return is_multicut(g, t, s); });
  out.certificate = "multicut recheck: ok";
  return out;
}

/// Multicut constrained to the allowed set. Terminal pairs touching replicated
/// vertices expand over the blocks so that cutting one twin never helps.
inline SolveResult annotated_multicut(const UndirectedGraph& g, const TerminalPairs& t,
                                      const VertexSet& allowed, int k) {
  ReplicatedGraph rep = replicate_outside(g, allowed, k);
  std::vector<std::pair<int, int>> expanded;
  for (auto [s, u] : t.pairs)
    for (int si : rep.blocks[s])
      for (int ui : rep.blocks[u]) expanded.emplace_back(std::min(si, ui), std::max(si, ui));
  TerminalPairs inner_pairs = TerminalPairs::of(std::move(expanded));
  SolveResult inner = multicut_solve(rep.graph, inner_pairs, k);
  SolveResult out;
  if (!inner.feasible) return out;
  VertexSet minimal = minimalize(
      inner.solution, [&](const VertexSet& s) { return is_multicut(rep.graph, inner_pairs, s); });
  VertexSet solution = detail::map_to_origin(rep, minimal);
  if (!is_subset(solution, allowed) || !is_multicut(g, t, solution))
    throw std::logic_error("annotated multicut mapping failed");
  out.feasible = true;
  out.solution = solution;
  out.certificate = "multicut recheck: ok, inside allowed set";
  return out;
}

// ---------------------------------------------------------------------------
// Stable wrappers: loop annotated solves over independent candidate supersets,
// either per-draw (randomized) or over a covering family (deterministic).
// ---------------------------------------------------------------------------

namespace detail {

constexpr std::int64_t kMaxDraws = 50'000'000;

/// Keeps only members not contained in another member; containment-closed
/// candidates make the smaller ones redundant.
inline std::vector<VertexSet> maximal_members(std::vector<VertexSet> members) {
  std::vector<VertexSet> out;
  for (size_t i = 0; i < members.size(); ++i) {
    bool covered = false;
    for (size_t j = 0; j < members.size() && !covered; ++j)
      if (j != i && members[j].size() >= members[i].size() && members[i] != members[j] &&
          is_subset(members[i], members[j]))
        covered = true;
    if (!covered) out.push_back(members[i]);
  }
  return out;
}

/// annotated: candidate superset -> optional solution inside it.
inline SolveResult stable_loop(const UndirectedGraph& underlying, int k, const SolveMode& mode,
                               const std::function<std::optional<VertexSet>(const VertexSet&)>& annotated) {
  SolveResult out;
  if (k < 0) return out;
  if (k == 0) {
    auto sol = annotated({});
    if (sol) {
      out.feasible = true;
      out.solution = *sol;
    }
    return out;
  }
  std::map<VertexSet, std::optional<VertexSet>> memo;
  auto try_candidate = [&](const VertexSet& y) -> const std::optional<VertexSet>& {
    auto it = memo.find(y);
    if (it == memo.end()) it = memo.emplace(y, annotated(y)).first;
    return it->second;
  };

  if (mode.kind == SolveMode::Kind::Randomized) {
    DegeneracyOrder order = degeneracy_order(underlying);
    std::int64_t rounds =
        sat_mul(binomial(std::int64_t(k) * (order.degeneracy + 1), k),
                std::int64_t(k) * (order.degeneracy + 1));
    if (rounds > kMaxDraws)
      throw ResourceLimitError("randomized round count too large: " + std::to_string(rounds));
    for (std::int64_t i = 0; i < rounds; ++i) {
      std::mt19937_64 rng = seeded_stream(mode.seed, static_cast<std::uint64_t>(i));
      VertexSet y = draw_random_cover(underlying, order, rng);
      ++out.draws_used;
      const auto& sol = try_candidate(y);
      if (sol) {
        out.feasible = true;
        out.solution = *sol;
        return out;
      }
    }
    return out;
  }

  CoveringFamily family;
  if (mode.construction == "hash")
    family = build_hash_family(underlying, k);
  else if (mode.construction == "random")
    family = build_random_family(underlying, k, mode.seed);
  else
    family = build_lopsided_family(underlying, k);
  out.family_size = static_cast<std::int64_t>(family.members.size());
  for (const VertexSet& y : maximal_members(family.members)) {
    const auto& sol = try_candidate(y);
    if (sol) {
      out.feasible = true;
      out.solution = *sol;
      return out;
    }
  }
  return out;
}

inline std::optional<VertexSet> as_optional(const SolveResult& r) {
  if (!r.feasible) return std::nullopt;
  return r.solution;
}

}  // namespace detail

inline SolveResult stable_st_separator(const UndirectedGraph& g, int s, int t, int k,
                                       const SolveMode& mode) {
  if (s == t) throw std::invalid_argument("s and t must differ");
  SolveResult out = detail::stable_loop(g, k, mode, [&](const VertexSet& y) {
    return detail::as_optional(annotated_st_separator(g, s, t, y, k));
  });
  if (out.feasible)
    out.certificate = std::string("independent: ") +
                      (g.is_independent_set(out.solution) ? "ok" : "FAILED") + ", separator: " +
                      (is_st_separator(g, s, t, out.solution) ? "ok" : "FAILED");
  return out;
}

inline SolveResult stable_oct(const UndirectedGraph& g, int k, const SolveMode& mode) {
  SolveResult out = detail::stable_loop(g, k, mode, [&](const VertexSet& y) {
    return detail::as_optional(annotated_oct(g, y, k));
  });
  if (out.feasible) {
    out.two_coloring = bipartition(g, out.solution);
    out.certificate = std::string("independent: ") +
                      (g.is_independent_set(out.solution) ? "ok" : "FAILED") + ", bipartite: " +
                      (is_odd_cycle_transversal(g, out.solution) ? "ok" : "FAILED");
  }
  return out;
}

/// Stability of a directed solution is read on the underlying undirected
/// graph: any arc between two solution vertices, in either direction, counts
/// as adjacency.
inline SolveResult stable_dfvs(const Digraph& d, int k, const SolveMode& mode) {
  UndirectedGraph underlying = d.underlying_graph();
  SolveResult out = detail::stable_loop(underlying, k, mode, [&](const VertexSet& y) {
    return detail::as_optional(annotated_dfvs(d, y, k));
  });
  if (out.feasible)
    out.certificate = std::string("independent: ") +
                      (underlying.is_independent_set(out.solution) ? "ok" : "FAILED") +
                      ", acyclic: " + (is_acyclic_without(d, out.solution) ? "ok" : "FAILED");
  return out;
}

enum class MulticutScope { Degenerate, General };

/// Stable multicut; the general scope first runs the multicut-preserving
/// reduction, solves on the shrunken instance and maps ids back.
inline SolveResult stable_multicut(const UndirectedGraph& g, const TerminalPairs& t, int k,
                                   MulticutScope scope, const SolveMode& mode) {
  if (scope == MulticutScope::General) {
    SparsifyResult reduced = degeneracy_reduce(g, t, k);
    SolveResult inner = stable_multicut(reduced.graph, reduced.terminals, k,
                                        MulticutScope::Degenerate, mode);
    SolveResult out = inner;
    out.solution.clear();
    if (inner.feasible) {
      for (int v : inner.solution) out.solution.push_back(reduced.original_ids[v]);
      sort_unique(out.solution);
      out.certificate = std::string("independent: ") +
                        (g.is_independent_set(out.solution) ? "ok" : "FAILED") + ", multicut: " +
                        (is_multicut(g, t, out.solution) ? "ok" : "FAILED");
    }
    return out;
  }
  SolveResult out = detail::stable_loop(g, k, mode, [&](const VertexSet& y) {
    return detail::as_optional(annotated_multicut(g, t, y, k));
  });
  if (out.feasible)
    out.certificate = std::string("independent: ") +
                      (g.is_independent_set(out.solution) ? "ok" : "FAILED") + ", multicut: " +
                      (is_multicut(g, t, out.solution) ? "ok" : "FAILED");
  return out;
}

}  // namespace stablecut
