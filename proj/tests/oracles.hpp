// Test-only oracles, deliberately independent of the library's solver path:
// Floyd-Warshall distances instead of Dijkstra, and brute-force enumeration
// of integer-unit transport plans instead of successive shortest paths.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "core/graph.hpp"

namespace testutil {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline std::vector<double> floyd_warshall(const otgs::Graph& g, const otgs::CostMatrix& cost) {
  const int n = g.num_vertices();
  std::vector<double> dist(static_cast<std::size_t>(n) * n, kInf);
  for (int v = 0; v < n; ++v) dist[static_cast<std::size_t>(v) * n + v] = 0.0;
  for (auto [u, v] : g.edges()) {
    double c = cost(u, v);
    if (std::isinf(c)) continue;
    dist[static_cast<std::size_t>(u) * n + v] = std::min(dist[static_cast<std::size_t>(u) * n + v], c);
    dist[static_cast<std::size_t>(v) * n + u] = dist[static_cast<std::size_t>(u) * n + v];
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double via = dist[static_cast<std::size_t>(i) * n + k] + dist[static_cast<std::size_t>(k) * n + j];
        if (via < dist[static_cast<std::size_t>(i) * n + j])
          dist[static_cast<std::size_t>(i) * n + j] = via;
      }
  return dist;
}

namespace detail {

/// Enumerates every nonnegative integer plan with the given row/column sums
/// (one composition at a time, no permutation duplicates), tracking the
/// cheapest total cost. `cost[i][j]` is the per-unit move cost.
inline void enumerate_plans(std::size_t row, std::size_t sink, int remaining,
                            std::vector<int>& supply, std::vector<int>& demand,
                            const std::vector<std::vector<double>>& cost, double so_far,
                            double& best) {
  if (so_far >= best) return;
  if (row == supply.size()) {
    best = so_far;
    return;
  }
  if (remaining == 0) {
    std::size_t next = row + 1;
    enumerate_plans(next, 0,
                    next < supply.size() ? supply[next] : 0, supply, demand, cost, so_far,
                    best);
    return;
  }
  if (sink == demand.size()) return;  // supply left over but no sinks remain
  int cap = std::isinf(cost[row][sink]) ? 0 : std::min(remaining, demand[sink]);
  for (int units = cap; units >= 0; --units) {
    demand[sink] -= units;
    enumerate_plans(row, sink + 1, remaining - units, supply, demand, cost,
                    so_far + units * cost[row][sink], best);
    demand[sink] += units;
  }
}

}  // namespace detail

/// Exact Wasserstein cost for masses that are integer multiples of `unit`,
/// by enumerating unit-level transport plans over shortest-path distances.
/// Returns infinity when no feasible plan exists.
inline double wasserstein_oracle(const otgs::Graph& g, const otgs::CostMatrix& cost,
                                 const std::vector<double>& rho0,
                                 const std::vector<double>& rho1, double unit) {
  const int n = g.num_vertices();
  auto dist = floyd_warshall(g, cost);
  std::vector<int> supply, demand;
  std::vector<int> sources, sinks;
  for (int v = 0; v < n; ++v) {
    double excess = rho0[v] - rho1[v];
    long units = std::lround(excess / unit);
    if (units > 0) {
      sources.push_back(v);
      supply.push_back(static_cast<int>(units));
    } else if (units < 0) {
      sinks.push_back(v);
      demand.push_back(static_cast<int>(-units));
    }
  }
  if (sources.empty()) return 0.0;
  std::vector<std::vector<double>> pair_cost(sources.size(),
                                             std::vector<double>(sinks.size()));
  for (std::size_t i = 0; i < sources.size(); ++i)
    for (std::size_t j = 0; j < sinks.size(); ++j)
      pair_cost[i][j] = dist[static_cast<std::size_t>(sources[i]) * n + sinks[j]] * unit;
  double best = kInf;
  detail::enumerate_plans(0, 0, supply[0], supply, demand, pair_cost, 0.0, best);
  return best;
}

/// Free-target transport decomposes per unit of mass: each vertex ships its
/// whole mass to the nearest support vertex.
inline double constrained_oracle(const otgs::Graph& g, const otgs::CostMatrix& cost,
                                 const std::vector<double>& rho0,
                                 const std::vector<int>& support) {
  const int n = g.num_vertices();
  auto dist = floyd_warshall(g, cost);
  double total = 0.0;
  for (int v = 0; v < n; ++v) {
    if (rho0[v] == 0.0) continue;
    double best = kInf;
    for (int s : support) best = std::min(best, dist[static_cast<std::size_t>(v) * n + s]);
    if (std::isinf(best)) return kInf;
    total += rho0[v] * best;
  }
  return total;
}

/// Random instance with rational masses in eighths and integer costs <= 10.
struct RandomInstance {
  otgs::Graph graph;
  otgs::CostMatrix cost;
  std::vector<double> rho0, rho1;
};

inline RandomInstance random_instance(std::mt19937_64& rng, int max_n = 6) {
  std::uniform_int_distribution<int> n_dist(2, max_n);
  const int n = n_dist(rng);
  std::vector<std::pair<int, int>> edges;
  std::bernoulli_distribution edge_coin(0.6);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (edge_coin(rng)) edges.emplace_back(u, v);
  otgs::Graph g(n, std::move(edges));
  otgs::CostMatrix cost(n, 0.0);
  std::uniform_int_distribution<int> cost_dist(0, 10);
  for (auto [u, v] : g.edges()) cost.set(u, v, static_cast<double>(cost_dist(rng)));

  auto eighth_masses = [&] {
    std::vector<double> mass(n, 0.0);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int unit = 0; unit < 8; ++unit) mass[pick(rng)] += 0.125;
    return mass;
  };
  return RandomInstance{std::move(g), std::move(cost), eighth_masses(), eighth_masses()};
}

}  // namespace testutil
