// Copyright 2026 The ecoorc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ECOORC_MINCOSTFLOW_HPP_
#define ECOORC_MINCOSTFLOW_HPP_

#include <cstdint>
#include <deque>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace ecoorc {

// Min-cost flow via successive shortest paths: Dijkstra on reduced costs
// with node potentials. Arc costs must be non-negative, which holds for
// the assignment instances built by the scheduler, so no Bellman-Ford
// initialization is needed. Arcs are stored in xor-pairs (arc ^ 1 is the
// reverse arc).
//
// Potentials are maintained so that every residual arc keeps a
// non-negative reduced cost even after the last augmentation; this lets
// callers enumerate alternative optima by walking zero-reduced-cost
// residual arcs (a residual cycle has cost zero iff every arc on it has
// reduced cost zero).
class MinCostFlow {
 public:
  using Cost = std::int64_t;
  static constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;

  explicit MinCostFlow(int num_nodes) : adj_(num_nodes), potential_(num_nodes, 0) {}

  int num_nodes() const { return static_cast<int>(adj_.size()); }

  /// Adds from->to with the given capacity and cost; returns the arc id.
  int add_arc(int from, int to, Cost cap, Cost cost) {
    int id = static_cast<int>(arcs_.size());
    arcs_.push_back({from, to, cap, 0, cost});
    arcs_.push_back({to, from, 0, 0, -cost});
    adj_[from].push_back(id);
    adj_[to].push_back(id + 1);
    return id;
  }

  Cost flow(int arc) const { return arcs_[arc].flow; }
  Cost residual(int arc) const { return arcs_[arc].cap - arcs_[arc].flow; }
  int arc_to(int arc) const { return arcs_[arc].to; }
  int arc_from(int arc) const { return arcs_[arc].from; }

  Cost reduced_cost(int arc) const {
    const Arc& a = arcs_[arc];
    return a.cost + potential_[a.from] - potential_[a.to];
  }

  /// Sends up to flow_limit units from source to sink along successive
  /// shortest paths. Returns (flow sent, total cost).
  std::pair<Cost, Cost> solve(int source, int sink, Cost flow_limit = kInf) {
    Cost sent = 0;
    Cost total_cost = 0;
    while (sent < flow_limit) {
      if (!dijkstra(source, sink)) break;
      // Walk the path to find its bottleneck.
      Cost push = flow_limit - sent;
      for (int v = sink; v != source; v = arcs_[parent_arc_[v]].from) {
        push = std::min(push, residual(parent_arc_[v]));
      }
      for (int v = sink; v != source; v = arcs_[parent_arc_[v]].from) {
        int a = parent_arc_[v];
        arcs_[a].flow += push;
        arcs_[a ^ 1].flow -= push;
        total_cost += push * arcs_[a].cost;
      }
      sent += push;
    }
    return {sent, total_cost};
  }

  /// Marks every node in `out` from which `target` is reachable through
  /// residual arcs of zero reduced cost. `out` is indexed by node.
  void zero_cost_coreachable(int target, std::vector<char>& out) const {
    out.assign(adj_.size(), 0);
    out[target] = 1;
    std::deque<int> queue{target};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int a : adj_[v]) {
        // arc a leaves v; its pair enters v from arcs_[a].to
        int rev = a ^ 1;
        int w = arcs_[a].to;
        if (!out[w] && residual(rev) > 0 && reduced_cost(rev) == 0) {
          out[w] = 1;
          queue.push_back(w);
        }
      }
    }
  }

  /// Pushes one unit from `from` to `target` along zero-reduced-cost
  /// residual arcs. Returns false when no such path exists. Optimality of
  /// the current flow is preserved because the rerouting cycle has total
  /// cost zero.
  bool reroute_unit_zero_cost(int from, int target) {
    if (from == target) return true;
    std::vector<int> via(adj_.size(), -1);
    std::vector<char> seen(adj_.size(), 0);
    seen[from] = 1;
    std::deque<int> queue{from};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int a : adj_[v]) {
        int w = arcs_[a].to;
        if (!seen[w] && residual(a) > 0 && reduced_cost(a) == 0) {
          seen[w] = 1;
          via[w] = a;
          if (w == target) {
            for (int u = target; u != from; u = arcs_[via[u]].from) {
              arcs_[via[u]].flow += 1;
              arcs_[via[u] ^ 1].flow -= 1;
            }
            return true;
          }
          queue.push_back(w);
        }
      }
    }
    return false;
  }

  /// Forces one unit onto a specific arc. Callers must ensure node
  /// balances are restored (see solve_round's zero-cost rerouting).
  void push_unit(int arc) {
    arcs_[arc].flow += 1;
    arcs_[arc ^ 1].flow -= 1;
  }

  /// Removes a node from the residual graph (capacities pinned to current
  /// flow on every incident arc) without disturbing the flow through it.
  void freeze_node(int v) {
    for (int a : adj_[v]) {
      arcs_[a].cap = arcs_[a].flow;
      arcs_[a ^ 1].cap = arcs_[a ^ 1].flow;
    }
  }

 private:
  struct Arc {
    int from;
    int to;
    Cost cap;
    Cost flow;
    Cost cost;
  };

  bool dijkstra(int source, int sink) {
    dist_.assign(adj_.size(), kInf);
    parent_arc_.assign(adj_.size(), -1);
    dist_[source] = 0;
    using Item = std::pair<Cost, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.push({0, source});
    while (!heap.empty()) {
      auto [d, v] = heap.top();
      heap.pop();
      if (d > dist_[v]) continue;
      for (int a : adj_[v]) {
        if (residual(a) <= 0) continue;
        Cost nd = d + reduced_cost(a);
        int w = arcs_[a].to;
        if (nd < dist_[w]) {
          dist_[w] = nd;
          parent_arc_[w] = a;
          heap.push({nd, w});
        }
      }
    }
    if (dist_[sink] >= kInf) return false;
    // Clamp unreached nodes at the sink distance; keeps reduced costs of
    // all residual arcs non-negative after the update.
    for (std::size_t i = 0; i < adj_.size(); ++i) {
      potential_[i] += std::min(dist_[i], dist_[sink]);
    }
    return true;
  }

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
  std::vector<Cost> potential_;
  std::vector<Cost> dist_;
  std::vector<int> parent_arc_;
};

}  // namespace ecoorc

#endif  // ECOORC_MINCOSTFLOW_HPP_
