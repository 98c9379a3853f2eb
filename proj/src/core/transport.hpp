#pragma once

#include <vector>

#include "core/graph.hpp"

namespace otgs {

/// A certified minimum-cost flow: cost == flow_cost(flow) and
/// result == flow_result(flow, rho0) for the rho0 it was solved from.
struct TransportSolution {
  Flow flow;
  double cost = 0.0;
  VertexDistribution result;
};

/// Minimum cost of any flow transporting rho0 to rho1 over the edges of g,
/// by successive shortest paths with Dijkstra on reduced costs. Exact for
/// rational inputs up to floating tolerance. Costs must be nonnegative;
/// infinite costs act as absent edges.
TransportSolution wasserstein(const Graph& g, const CostMatrix& cost,
                              const VertexDistribution& rho0, const VertexDistribution& rho1);

/// Minimum-cost flow from rho0 over all flows whose result is supported on
/// `support` (free target). Solved with a virtual zero-cost super-sink behind
/// every support vertex; the result is the mass absorbed at each of them.
TransportSolution constrained_transport(const Graph& g, const CostMatrix& cost,
                                        const VertexDistribution& rho0,
                                        const std::vector<int>& support);

/// All-pairs shortest-path distances under the edge costs. Because flows are
/// uncapacitated, the optimal cost onto a free support decomposes per unit of
/// mass: cost(S) = sum_v rho0(v) * dist(v, S). support_cost evaluates that
/// closed form (infinity when some massive vertex cannot reach S); it equals
/// constrained_transport(...).cost and backs the fast greedy support scans.
class ShortestPathCosts {
 public:
  ShortestPathCosts(const Graph& g, const CostMatrix& cost);

  int size() const { return n_; }
  double distance(int u, int v) const { return dist_[static_cast<std::size_t>(u) * n_ + v]; }
  double support_cost(const VertexDistribution& rho0, const std::vector<int>& support) const;

 private:
  int n_ = 0;
  std::vector<double> dist_;
};

}  // namespace otgs
