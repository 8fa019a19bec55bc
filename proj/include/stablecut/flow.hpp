#pragma once

#include <deque>
#include <vector>

#include "stablecut/graph.hpp"
#include "stablecut/util.hpp"

namespace stablecut {

/// Vertex-capacitated flow over a digraph via the standard node split:
/// in(v) -> out(v) with capacity 1 for cuttable vertices and "infinity"
/// otherwise. Original arcs run out(u) -> in(v). A supersource feeds every
/// source's in-node, every sink's out-node feeds the supersink. All arc
/// scans run in insertion order (vertices ascending), so augmenting paths,
/// cuts and path decompositions are deterministic.
class VertexFlowNetwork {
 public:
  static constexpr int kInf = 1 << 28;

  /// unit_arcs: cap original arcs at 1 (path-packing mode) instead of
  /// infinity (separator mode). The two differ only on arcs whose endpoints
  /// are both uncapacitated.
  VertexFlowNetwork(const Digraph& d, const VertexSet& sources, const VertexSet& sinks,
                    const VertexSet& cuttable, bool unit_arcs = false)
      : n_(d.vertex_count()) {
    head_.clear();
    first_.assign(2 * n_ + 2, -1);
    std::vector<char> cut(n_, 0);
    for (int v : cuttable) cut[v] = 1;
    for (int v = 0; v < n_; ++v) add_arc(node_in(v), node_out(v), cut[v] ? 1 : kInf);
    for (auto [u, v] : d.arcs()) add_arc(node_out(u), node_in(v), unit_arcs ? 1 : kInf);
    for (int v : sources) add_arc(source(), node_in(v), kInf);
    for (int v : sinks) add_arc(node_out(v), sink(), kInf);
  }

  int node_in(int v) const { return 2 * v; }
  int node_out(int v) const { return 2 * v + 1; }
  int source() const { return 2 * n_; }
  int sink() const { return 2 * n_ + 1; }

  /// Augments by BFS shortest paths until exhaustion or until the flow value
  /// exceeds `budget` (then returns budget+1, meaning "more than budget").
  int max_flow(int budget) {
    while (flow_ <= budget) {
      if (!augment()) break;
      ++flow_;
    }
    return flow_;
  }

  /// Cuttable vertices on the source side boundary of the min cut.
  VertexSet nearest_min_cut() const {
    std::vector<char> seen = residual_reach_from_source();
    VertexSet cut;
    for (int v = 0; v < n_; ++v)
      if (seen[node_in(v)] && !seen[node_out(v)]) cut.push_back(v);
    return cut;
  }

  /// Cuttable vertices on the sink side boundary (the cut pushed farthest
  /// from the sources).
  VertexSet farthest_min_cut() const {
    std::vector<char> seen = residual_reach_to_sink();
    VertexSet cut;
    for (int v = 0; v < n_; ++v)
      if (seen[node_out(v)] && !seen[node_in(v)]) cut.push_back(v);
    return cut;
  }

  /// Splits the current (integral, unit) flow into vertex paths from sources
  /// to sinks; returns original-vertex sequences.
  std::vector<std::vector<int>> decompose_paths() {
    std::vector<std::vector<int>> paths;
    for (int e = first_[source()]; e != -1; e = next_[e]) {
      while (cap_[e ^ 1] > 0) {  // one unit consumed per walk
        --cap_[e ^ 1];
        ++cap_[e];
        std::vector<int> path;
        int node = head_[e];
        while (node != sink()) {
          if (node % 2 == 0 && node < 2 * n_) path.push_back(node / 2);
          int chosen = -1;
          for (int f = first_[node]; f != -1; f = next_[f]) {
            if ((f & 1) == 0 && cap_[f ^ 1] > 0) {  // forward arc carrying flow
              chosen = f;
              break;
            }
          }
          if (chosen == -1) break;  // flow conservation guarantees this is unreachable
          --cap_[chosen ^ 1];
          ++cap_[chosen];
          node = head_[chosen];
        }
        paths.push_back(std::move(path));
      }
    }
    return paths;
  }

  int flow() const { return flow_; }

 private:
  void add_arc(int from, int to, int cap) {
    head_.push_back(to);
    cap_.push_back(cap);
    next_.push_back(first_[from]);
    tail_.push_back(from);
    first_[from] = static_cast<int>(head_.size()) - 1;
    head_.push_back(from);
    cap_.push_back(0);
    next_.push_back(first_[to]);
    tail_.push_back(to);
    first_[to] = static_cast<int>(head_.size()) - 1;
  }

  bool augment() {
    std::vector<int> via(first_.size(), -1);
    std::vector<char> seen(first_.size(), 0);
    std::deque<int> q{source()};
    seen[source()] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      if (v == sink()) break;
      // first_ chains are LIFO; walk arcs in insertion order for determinism.
      std::vector<int> arcs;
      for (int e = first_[v]; e != -1; e = next_[e]) arcs.push_back(e);
      for (auto it = arcs.rbegin(); it != arcs.rend(); ++it) {
        int e = *it;
        if (cap_[e] <= 0 || seen[head_[e]]) continue;
        seen[head_[e]] = 1;
        via[head_[e]] = e;
        q.push_back(head_[e]);
      }
    }
    if (!seen[sink()]) return false;
    for (int v = sink(); v != source();) {
      int e = via[v];
      --cap_[e];
      ++cap_[e ^ 1];
      v = tail_[e];
    }
    return true;
  }

  std::vector<char> residual_reach_from_source() const {
    std::vector<char> seen(first_.size(), 0);
    std::deque<int> q{source()};
    seen[source()] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int e = first_[v]; e != -1; e = next_[e])
        if (cap_[e] > 0 && !seen[head_[e]]) {
          seen[head_[e]] = 1;
          q.push_back(head_[e]);
        }
    }
    return seen;
  }

  std::vector<char> residual_reach_to_sink() const {
    std::vector<char> seen(first_.size(), 0);
    std::deque<int> q{sink()};
    seen[sink()] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      // Arcs leaving v pair up with the arcs entering v: e (v -> u) has mate
      // e^1 (u -> v). u reaches v in the residual graph iff cap_[e^1] > 0.
      for (int e = first_[v]; e != -1; e = next_[e]) {
        int u = head_[e];
        if (cap_[e ^ 1] > 0 && !seen[u]) {
          seen[u] = 1;
          q.push_back(u);
        }
      }
    }
    return seen;
  }

  int n_;
  int flow_ = 0;
  std::vector<int> head_, cap_, next_, tail_, first_;
};

}  // namespace stablecut
