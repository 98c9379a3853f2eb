#include "core/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/errors.hpp"

namespace otgs {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
  if (n < 0) throw ValidationError("graph: vertex count must be nonnegative");
  for (auto& [u, v] : edges) {
    if (u == v) throw ValidationError("graph: self-loop at vertex " + std::to_string(u));
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw ValidationError("graph: edge endpoint out of range [0," + std::to_string(n) + ")");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end())
    throw ValidationError("graph: duplicate edge {" + std::to_string(dup->first) + "," +
                          std::to_string(dup->second) + "}");
  edges_ = std::move(edges);
  adjacency_.assign(n_, {});
  for (int e = 0; e < num_edges(); ++e) {
    auto [u, v] = edges_[e];
    adjacency_[u].emplace_back(v, e);
    adjacency_[v].emplace_back(u, e);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

int Graph::edge_position(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(u, v));
  if (it == edges_.end() || *it != std::make_pair(u, v)) return -1;
  return static_cast<int>(it - edges_.begin());
}

Graph Graph::complete(int n) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

bool Graph::has_edge(int u, int v) const { return edge_position(u, v) >= 0; }

std::pair<int, int> Graph::directed_edge(int idx) const {
  auto [u, v] = edges_[idx / 2];
  return (idx % 2 == 0) ? std::make_pair(u, v) : std::make_pair(v, u);
}

int Graph::directed_index(int from, int to) const {
  int e = edge_position(from, to);
  if (e < 0) return -1;
  return 2 * e + (from > to ? 1 : 0);
}

VertexDistribution::VertexDistribution(std::vector<double> mass) : mass_(std::move(mass)) {
  double total = 0.0;
  for (double m : mass_) {
    if (!(m >= 0.0)) throw ValidationError("distribution: negative or NaN mass entry");
    total += m;
  }
  if (std::abs(total - 1.0) > kMassTolerance)
    throw ValidationError("distribution: mass sums to " + std::to_string(total) + ", expected 1");
}

VertexDistribution VertexDistribution::uniform(int n) {
  if (n <= 0) throw ValidationError("distribution: need at least one vertex");
  return VertexDistribution(std::vector<double>(n, 1.0 / n));
}

VertexDistribution VertexDistribution::point(int n, int v) {
  if (v < 0 || v >= n) throw ValidationError("distribution: point mass vertex out of range");
  std::vector<double> mass(n, 0.0);
  mass[v] = 1.0;
  return VertexDistribution(std::move(mass));
}

std::vector<int> VertexDistribution::support() const {
  std::vector<int> sup;
  for (int v = 0; v < size(); ++v)
    if (mass_[v] > 0.0) sup.push_back(v);
  return sup;
}

CostMatrix::CostMatrix(int n, double fill) : n_(n) {
  if (n < 0) throw ValidationError("cost matrix: negative size");
  if (!(fill >= 0.0)) throw ValidationError("cost matrix: negative or NaN fill cost");
  values_.assign(static_cast<std::size_t>(n) * n, fill);
}

void CostMatrix::set(int u, int v, double cost) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_)
    throw ValidationError("cost matrix: index out of range");
  if (!(cost >= 0.0)) throw ValidationError("cost matrix: negative or NaN cost");
  values_[static_cast<std::size_t>(u) * n_ + v] = cost;
  values_[static_cast<std::size_t>(v) * n_ + u] = cost;
}

double Flow::at(const Graph& g, int from, int to) const {
  int idx = g.directed_index(from, to);
  if (idx < 0) throw ValidationError("flow: no such edge in the underlying graph");
  return values_[idx];
}

void Flow::add(const Graph& g, int from, int to, double mass) {
  if (!(mass >= 0.0)) throw ValidationError("flow: mass must be nonnegative");
  int idx = g.directed_index(from, to);
  if (idx < 0) throw ValidationError("flow: no such edge in the underlying graph");
  values_[idx] += mass;
}

void Flow::set(const Graph& g, int from, int to, double mass) {
  if (!(mass >= 0.0)) throw ValidationError("flow: mass must be nonnegative");
  int idx = g.directed_index(from, to);
  if (idx < 0) throw ValidationError("flow: no such edge in the underlying graph");
  values_[idx] = mass;
}

bool Flow::is_zero() const {
  for (double v : values_)
    if (v != 0.0) return false;
  return true;
}

int SignedIncidence::entry(int directed_idx, int vertex) const {
  auto [from, to] = graph_->directed_edge(directed_idx);
  if (vertex == to) return 1;
  if (vertex == from) return -1;
  return 0;
}

std::vector<double> SignedIncidence::apply(const Flow& flow) const {
  std::vector<double> out(graph_->num_vertices(), 0.0);
  for (int idx = 0; idx < graph_->num_directed_edges(); ++idx) {
    double mass = flow.on_directed(idx);
    if (mass == 0.0) continue;
    auto [from, to] = graph_->directed_edge(idx);
    out[from] -= mass;
    out[to] += mass;
  }
  return out;
}

double flow_cost(const Graph& g, const Flow& flow, const CostMatrix& cost) {
  if (cost.size() != g.num_vertices())
    throw ValidationError("flow_cost: cost matrix size does not match graph");
  double total = 0.0;
  for (int idx = 0; idx < g.num_directed_edges(); ++idx) {
    double mass = flow.on_directed(idx);
    if (mass == 0.0) continue;
    auto [from, to] = g.directed_edge(idx);
    double c = cost(from, to);
    if (std::isinf(c))
      throw ValidationError("flow_cost: mass on infinite-cost edge {" + std::to_string(from) +
                            "," + std::to_string(to) + "} overflows");
    total += c * mass;
  }
  return total;
}

VertexDistribution flow_result(const Graph& g, const Flow& flow, const VertexDistribution& rho0) {
  if (rho0.size() != g.num_vertices())
    throw ValidationError("flow_result: distribution size does not match graph");
  std::vector<double> out = rho0.mass();
  for (int idx = 0; idx < g.num_directed_edges(); ++idx) {
    double mass = flow.on_directed(idx);
    if (mass == 0.0) continue;
    auto [from, to] = g.directed_edge(idx);
    out[from] -= mass;
    out[to] += mass;
  }
  for (double& m : out) {
    if (m < -kMassTolerance)
      throw InfeasibleError("flow_result: flow drives a vertex mass negative (" +
                            std::to_string(m) + "); infeasible from rho0");
    if (m < 0.0) m = 0.0;
  }
  return VertexDistribution(std::move(out));
}

}  // namespace otgs
