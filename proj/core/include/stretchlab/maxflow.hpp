#pragma once

#include <vector>

namespace stretchlab {

/// Dinic's algorithm on a directed graph with double capacities.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes);

  int node_count() const { return static_cast<int>(adj_.size()); }
  /// Adds u -> v with capacity `cap` and v -> u with capacity `reverse_cap`.
  void add_edge(int u, int v, double cap, double reverse_cap = 0.0);
  double solve(int s, int t);

  /// Nodes reachable from s through arcs with residual capacity above the
  /// tolerance: the smallest minimum-cut source side.
  std::vector<char> source_side() const;

  /// Strongly connected components of the residual graph, numbered in
  /// reverse topological order (a component's residual successors get
  /// smaller numbers).
  std::vector<int> residual_components(int& count) const;

  /// Residual successors of u.
  template <typename F>
  void for_each_residual(int u, F&& f) const {
    for (int a : adj_[u]) {
      if (arcs_[a].cap > tolerance_) f(arcs_[a].to);
    }
  }

 private:
  struct Arc {
    int to;
    double cap;
  };
  bool bfs(int s, int t);
  double dfs(int u, int t, double pushed);

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> level_, next_;
  int source_ = -1;
  double max_cap_ = 0.0;
  double tolerance_ = 0.0;
};

}  // namespace stretchlab
