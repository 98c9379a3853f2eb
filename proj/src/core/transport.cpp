#include "core/transport.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "core/errors.hpp"

namespace otgs {

namespace {

constexpr double kResidualEps = 1e-12;
constexpr double kUnlimited = 1e30;

/// Successive shortest paths with potentials over a residual network.
/// Arcs are stored in pairs; arc id^1 is the reverse. All real costs are
/// nonnegative, so Dijkstra with reduced costs applies from the start.
class MinCostFlowSolver {
 public:
  explicit MinCostFlowSolver(int nodes)
      : adj_(nodes), potential_(nodes, 0.0), dist_(nodes), parent_arc_(nodes) {}

  int add_arc(int from, int to, double cap, double cost) {
    int id = static_cast<int>(arcs_.size());
    arcs_.push_back({to, cap, cost});
    arcs_.push_back({from, 0.0, -cost});
    adj_[from].push_back(id);
    adj_[to].push_back(id + 1);
    return id;
  }

  /// Pushes `amount` of flow from `source` to `sink`; returns the amount
  /// actually routed (less than requested when sink becomes unreachable).
  double route(int source, int sink, double amount) {
    double routed = 0.0;
    while (amount - routed > kResidualEps) {
      if (!dijkstra(source, sink)) break;
      double push = amount - routed;
      for (int v = sink; v != source;) {
        int arc = parent_arc_[v];
        push = std::min(push, arcs_[arc].cap);
        v = arcs_[arc ^ 1].to;
      }
      for (int v = sink; v != source;) {
        int arc = parent_arc_[v];
        arcs_[arc].cap -= push;
        arcs_[arc ^ 1].cap += push;
        v = arcs_[arc ^ 1].to;
      }
      routed += push;
    }
    return routed;
  }

  /// Net flow pushed through forward arc `id` (the reverse residual holds it).
  double arc_flow(int id) const { return arcs_[id ^ 1].cap; }

 private:
  struct Arc {
    int to;
    double cap;  // residual capacity
    double cost;
  };

  bool dijkstra(int source, int sink) {
    const double inf = std::numeric_limits<double>::infinity();
    std::fill(dist_.begin(), dist_.end(), inf);
    std::vector<bool> done(adj_.size(), false);
    dist_[source] = 0.0;
    // Keyed by (distance, vertex) so equal-distance pops are ordered by
    // vertex index; shortest-path ties then resolve deterministically.
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (done[u]) continue;
      done[u] = true;
      for (int arc_id : adj_[u]) {
        const Arc& arc = arcs_[arc_id];
        if (arc.cap <= kResidualEps || done[arc.to]) continue;
        double reduced = arc.cost + potential_[u] - potential_[arc.to];
        if (reduced < 0.0) reduced = 0.0;  // floating residue on optimal arcs
        double nd = d + reduced;
        if (nd < dist_[arc.to]) {
          dist_[arc.to] = nd;
          parent_arc_[arc.to] = arc_id;
          heap.emplace(nd, arc.to);
        }
      }
    }
    if (dist_[sink] == inf) return false;
    for (std::size_t v = 0; v < adj_.size(); ++v)
      potential_[v] += std::min(dist_[v], dist_[sink]);
    return true;
  }

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
  std::vector<double> potential_;
  std::vector<double> dist_;
  std::vector<int> parent_arc_;
};

struct EdgeArcs {
  int forward = -1;  // arc id for (u,v)
  int backward = -1;  // arc id for (v,u)
};

/// Adds both orientations of every finite-cost graph edge. Adjacency is added
/// in edge-list order, which is lexicographic, keeping path choice stable.
std::vector<EdgeArcs> add_graph_arcs(MinCostFlowSolver& solver, const Graph& g,
                                     const CostMatrix& cost) {
  std::vector<EdgeArcs> ids(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.edges()[e];
    double c = cost(u, v);
    if (std::isinf(c)) continue;  // forbidden move: absent in the solver graph
    ids[e].forward = solver.add_arc(u, v, kUnlimited, c);
    ids[e].backward = solver.add_arc(v, u, kUnlimited, c);
  }
  return ids;
}

/// Net per-directed-edge flow from the solved arc pairs. Opposite pushes on
/// the same undirected edge cancel; the netted flow has the same cost.
Flow extract_flow(const MinCostFlowSolver& solver, const Graph& g,
                  const std::vector<EdgeArcs>& ids) {
  Flow flow(g);
  for (int e = 0; e < g.num_edges(); ++e) {
    if (ids[e].forward < 0) continue;
    double net = solver.arc_flow(ids[e].forward) - solver.arc_flow(ids[e].backward);
    auto [u, v] = g.edges()[e];
    if (net > 0.0)
      flow.set(g, u, v, net);
    else if (net < 0.0)
      flow.set(g, v, u, -net);
  }
  return flow;
}

void check_common_sizes(const Graph& g, const CostMatrix& cost, const VertexDistribution& rho0) {
  if (cost.size() != g.num_vertices())
    throw ValidationError("transport: cost matrix size does not match graph");
  if (rho0.size() != g.num_vertices())
    throw ValidationError("transport: distribution size does not match graph");
}

}  // namespace

TransportSolution wasserstein(const Graph& g, const CostMatrix& cost,
                              const VertexDistribution& rho0, const VertexDistribution& rho1) {
  check_common_sizes(g, cost, rho0);
  if (rho1.size() != g.num_vertices())
    throw ValidationError("transport: target distribution size does not match graph");

  int n = g.num_vertices();
  int source = n, sink = n + 1;
  MinCostFlowSolver solver(n + 2);
  auto ids = add_graph_arcs(solver, g, cost);
  double supply = 0.0;
  for (int v = 0; v < n; ++v) {
    double excess = rho0[v] - rho1[v];
    if (excess > kResidualEps) {
      solver.add_arc(source, v, excess, 0.0);
      supply += excess;
    } else if (excess < -kResidualEps) {
      solver.add_arc(v, sink, -excess, 0.0);
    }
  }

  double routed = solver.route(source, sink, supply);
  if (supply - routed > kMassTolerance)
    throw InfeasibleError("wasserstein: supports are not connected; " +
                          std::to_string(supply - routed) + " mass cannot be routed");

  TransportSolution sol;
  sol.flow = extract_flow(solver, g, ids);
  sol.cost = flow_cost(g, sol.flow, cost);
  sol.result = flow_result(g, sol.flow, rho0);
  return sol;
}

TransportSolution constrained_transport(const Graph& g, const CostMatrix& cost,
                                        const VertexDistribution& rho0,
                                        const std::vector<int>& support) {
  check_common_sizes(g, cost, rho0);
  if (support.empty()) throw ValidationError("constrained_transport: empty support");
  int n = g.num_vertices();
  std::vector<bool> in_support(n, false);
  for (int s : support) {
    if (s < 0 || s >= n)
      throw ValidationError("constrained_transport: support vertex out of range");
    in_support[s] = true;
  }

  int source = n, sink = n + 1;
  MinCostFlowSolver solver(n + 2);
  auto ids = add_graph_arcs(solver, g, cost);
  double supply = 0.0;
  for (int v = 0; v < n; ++v) {
    if (rho0[v] > 0.0) {
      solver.add_arc(source, v, rho0[v], 0.0);
      supply += rho0[v];
    }
  }
  std::vector<int> absorb_arc(n, -1);
  for (int s = 0; s < n; ++s)
    if (in_support[s]) absorb_arc[s] = solver.add_arc(s, sink, kUnlimited, 0.0);

  double routed = solver.route(source, sink, supply);
  if (supply - routed > kMassTolerance)
    throw InfeasibleError("constrained_transport: support unreachable; " +
                          std::to_string(supply - routed) + " mass cannot reach it");

  TransportSolution sol;
  sol.flow = extract_flow(solver, g, ids);
  sol.cost = flow_cost(g, sol.flow, cost);
  std::vector<double> absorbed(n, 0.0);
  for (int s = 0; s < n; ++s)
    if (absorb_arc[s] >= 0) absorbed[s] = std::max(0.0, solver.arc_flow(absorb_arc[s]));
  sol.result = VertexDistribution(std::move(absorbed));
  return sol;
}

ShortestPathCosts::ShortestPathCosts(const Graph& g, const CostMatrix& cost) {
  if (cost.size() != g.num_vertices())
    throw ValidationError("shortest paths: cost matrix size does not match graph");
  n_ = g.num_vertices();
  const double inf = std::numeric_limits<double>::infinity();
  dist_.assign(static_cast<std::size_t>(n_) * n_, inf);
  using Item = std::pair<double, int>;
  for (int src = 0; src < n_; ++src) {
    double* dist = dist_.data() + static_cast<std::size_t>(src) * n_;
    std::vector<bool> done(n_, false);
    dist[src] = 0.0;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    heap.emplace(0.0, src);
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (done[u]) continue;
      done[u] = true;
      for (auto [v, e] : g.neighbors(u)) {
        if (done[v]) continue;
        double c = cost(u, v);
        if (std::isinf(c)) continue;
        if (d + c < dist[v]) {
          dist[v] = d + c;
          heap.emplace(dist[v], v);
        }
      }
    }
  }
}

double ShortestPathCosts::support_cost(const VertexDistribution& rho0,
                                       const std::vector<int>& support) const {
  if (rho0.size() != n_) throw ValidationError("support_cost: distribution size mismatch");
  if (support.empty()) throw ValidationError("support_cost: empty support");
  double total = 0.0;
  for (int v = 0; v < n_; ++v) {
    double mass = rho0[v];
    if (mass == 0.0) continue;
    double best = std::numeric_limits<double>::infinity();
    for (int s : support) best = std::min(best, distance(v, s));
    if (std::isinf(best)) return best;  // some mass cannot reach the support
    total += mass * best;
  }
  return total;
}

}  // namespace otgs
