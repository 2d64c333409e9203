#include "stretchlab/maxflow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "stretchlab/errors.hpp"

namespace stretchlab {

MaxFlow::MaxFlow(int nodes) : adj_(nodes) {
  if (nodes < 2) throw InputError("max-flow graph needs at least two nodes");
}

void MaxFlow::add_edge(int u, int v, double cap, double reverse_cap) {
  if (!(cap >= 0.0) || !(reverse_cap >= 0.0) || !std::isfinite(cap) || !std::isfinite(reverse_cap)) {
    throw InputError("capacities must be finite and non-negative");
  }
  adj_[u].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({v, cap});
  adj_[v].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({u, reverse_cap});
  max_cap_ = std::max({max_cap_, cap, reverse_cap});
}

bool MaxFlow::bfs(int s, int t) {
  level_.assign(adj_.size(), -1);
  std::queue<int> q;
  level_[s] = 0;
  q.push(s);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int a : adj_[u]) {
      const int v = arcs_[a].to;
      if (level_[v] < 0 && arcs_[a].cap > tolerance_) {
        level_[v] = level_[u] + 1;
        q.push(v);
      }
    }
  }
  return level_[t] >= 0;
}

double MaxFlow::dfs(int u, int t, double pushed) {
  if (u == t) return pushed;
  for (int& i = next_[u]; i < static_cast<int>(adj_[u].size()); ++i) {
    const int a = adj_[u][i];
    const int v = arcs_[a].to;
    if (level_[v] != level_[u] + 1 || arcs_[a].cap <= tolerance_) continue;
    const double got = dfs(v, t, std::min(pushed, arcs_[a].cap));
    if (got > 0.0) {
      arcs_[a].cap -= got;
      arcs_[a ^ 1].cap += got;
      return got;
    }
  }
  return 0.0;
}

double MaxFlow::solve(int s, int t) {
  if (s == t) throw InputError("source equals sink");
  source_ = s;
  tolerance_ = 1e-12 * max_cap_;
  double flow = 0.0;
  long rounds = 0;
  while (bfs(s, t)) {
    next_.assign(adj_.size(), 0);
    while (true) {
      const double f = dfs(s, t, std::numeric_limits<double>::infinity());
      if (f <= 0.0) break;
      flow += f;
    }
    if (++rounds > 100000000L) throw InternalError("max-flow did not converge");
  }
  return flow;
}

std::vector<char> MaxFlow::source_side() const {
  std::vector<char> seen(adj_.size(), 0);
  if (source_ < 0) return seen;
  std::vector<int> stack{source_};
  seen[source_] = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for_each_residual(u, [&](int v) {
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
    });
  }
  return seen;
}

std::vector<int> MaxFlow::residual_components(int& count) const {
  // Iterative Tarjan; components come out in reverse topological order.
  const int n = node_count();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  std::vector<std::pair<int, int>> call;  // (node, next arc position)
  int counter = 0;
  count = 0;
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [u, pos] = call.back();
      if (pos < static_cast<int>(adj_[u].size())) {
        const int a = adj_[u][pos++];
        if (arcs_[a].cap <= tolerance_) continue;
        const int v = arcs_[a].to;
        if (index[v] < 0) {
          index[v] = low[v] = counter++;
          stack.push_back(v);
          on_stack[v] = 1;
          call.push_back({v, 0});
        } else if (on_stack[v]) {
          low[u] = std::min(low[u], index[v]);
        }
        continue;
      }
      const int done = u;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        while (true) {
          const int w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = count;
          if (w == done) break;
        }
        ++count;
      }
    }
  }
  return comp;
}

}  // namespace stretchlab
