#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace otgs {

inline constexpr double kInfiniteCost = std::numeric_limits<double>::infinity();

/// Tolerance for distribution validity; chosen for double-precision LP residuals.
inline constexpr double kMassTolerance = 1e-9;

/// Undirected simple graph on vertices 0..n-1. No self-loops, no duplicates.
/// Immutable after construction; safe to share read-only across threads.
class Graph {
 public:
  Graph() = default;
  Graph(int n, std::vector<std::pair<int, int>> edges);
  static Graph complete(int n);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  /// Canonical edge list: each pair has u < v, sorted lexicographically.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool has_edge(int u, int v) const;
  int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
  /// Neighbors of v as (neighbor, undirected edge index), ascending by neighbor.
  const std::vector<std::pair<int, int>>& neighbors(int v) const { return adjacency_[v]; }

  /// Directed edge set: index 2e is (u,v) of edge e (u < v), 2e+1 is (v,w) reversed.
  int num_directed_edges() const { return 2 * num_edges(); }
  std::pair<int, int> directed_edge(int idx) const;
  /// Index of directed edge (from,to), or -1 if the edge is absent.
  int directed_index(int from, int to) const;

 private:
  int edge_position(int u, int v) const;  // index into edges_, or -1

  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;  // sorted: lookups binary-search it
  std::vector<std::vector<std::pair<int, int>>> adjacency_;
};

/// Probability mass over vertices: entries >= 0, summing to 1 within 1e-9.
class VertexDistribution {
 public:
  VertexDistribution() = default;
  explicit VertexDistribution(std::vector<double> mass);
  static VertexDistribution uniform(int n);
  static VertexDistribution point(int n, int v);

  int size() const { return static_cast<int>(mass_.size()); }
  double operator[](int v) const { return mass_[v]; }
  const std::vector<double>& mass() const { return mass_; }
  std::vector<int> support() const;

 private:
  std::vector<double> mass_;
};

/// Symmetric nonnegative pairwise move costs; infinity marks a forbidden move.
/// Diagonal entries are unused.
class CostMatrix {
 public:
  CostMatrix() = default;
  explicit CostMatrix(int n, double fill = 0.0);

  int size() const { return n_; }
  double operator()(int u, int v) const { return values_[static_cast<std::size_t>(u) * n_ + v]; }
  /// Sets both orientations; rejects negative costs (infinity allowed).
  void set(int u, int v, double cost);

 private:
  int n_ = 0;
  std::vector<double> values_;
};

/// Nonnegative mass on the directed edges of a fixed graph, stored aligned
/// with Graph::directed_edge indices.
class Flow {
 public:
  Flow() = default;
  explicit Flow(const Graph& g) : values_(g.num_directed_edges(), 0.0) {}

  double on_directed(int idx) const { return values_[idx]; }
  double at(const Graph& g, int from, int to) const;
  void add(const Graph& g, int from, int to, double mass);
  void set(const Graph& g, int from, int to, double mass);
  bool is_zero() const;
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
};

/// Signed incidence view F: one row per directed edge (v,w) with +1 at column w
/// and -1 at column v. Entries are computed on demand; the matrix is never
/// materialized densely (complete graphs at n=250 have 62k directed edges).
class SignedIncidence {
 public:
  explicit SignedIncidence(const Graph& g) : graph_(&g) {}
  int rows() const { return graph_->num_directed_edges(); }
  int cols() const { return graph_->num_vertices(); }
  int entry(int directed_idx, int vertex) const;
  /// Column action of F on a flow: out[v] = sum_e F(e,v) J(e).
  std::vector<double> apply(const Flow& flow) const;

 private:
  const Graph* graph_;
};

/// Total cost sum_e c(e) J(e). Mass on an infinite-cost edge is a cost overflow.
double flow_cost(const Graph& g, const Flow& flow, const CostMatrix& cost);

/// rho0 + F.J. Entries in [-1e-9, 0) are clamped to 0; anything more negative
/// means the flow is infeasible from rho0. The sum is preserved exactly, so no
/// renormalization is performed.
VertexDistribution flow_result(const Graph& g, const Flow& flow, const VertexDistribution& rho0);

}  // namespace otgs
