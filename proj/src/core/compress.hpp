#pragma once

#include <utility>
#include <vector>

#include "core/transport.hpp"

namespace otgs {

struct CompressionResult {
  std::vector<int> support;  // sorted, exactly k vertices
  VertexDistribution rho1;   // optimal target supported on `support`
  double cost = 0.0;         // constrained transport cost of the final support
  /// Greedy audit trail: (removed vertex, cost after removal). Empty for
  /// exhaustive search and for k = n.
  std::vector<std::pair<int, double>> trace;
};

struct CompressOptions {
  /// Vertices the greedy elimination must never remove.
  std::vector<int> forced;
  /// Per-step candidate cap: only the m lowest-mass vertices are considered
  /// for removal (an approximation). 0 considers every vertex.
  int candidate_limit = 0;
};

/// Greedy support shrinkage: starting from all vertices, repeatedly drop the
/// vertex whose removal leaves the cheapest constrained transport cost (ties
/// to the lowest index), until k vertices remain. Candidate costs come from
/// the exact shortest-path decomposition; the returned flow/rho1/cost come
/// from a final constrained_transport solve. Cost is non-decreasing along the
/// trace and 0 at k = n.
CompressionResult ot_compress(const Graph& g, const VertexDistribution& rho0,
                              const CostMatrix& cost, int k, const CompressOptions& opts = {});

/// Test oracle for the greedy routine: enumerates all size-k supports
/// (guarded at C(n,k) <= 1e6) and returns the global minimum, ties to the
/// lexicographically smallest support.
CompressionResult exhaustive_compress(const Graph& g, const VertexDistribution& rho0,
                                      const CostMatrix& cost, int k);

}  // namespace otgs
