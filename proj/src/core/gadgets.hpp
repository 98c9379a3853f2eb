#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "core/dataset.hpp"
#include "core/graph.hpp"

namespace otgs {

/// Class-conditional edge distribution: C ~ Bernoulli(p_class) and, given
/// C = b, edge {v,w} appears independently with probability q_b(v,w). Node
/// features are the constant 1 and carry no information.
class EdgeBernoulliModel {
 public:
  EdgeBernoulliModel(int n, double p_class);

  int num_vertices() const { return n_; }
  double class_prior() const { return p_class_; }
  void set_edge(int u, int v, double q0, double q1);
  double q0(int u, int v) const { return q0_[index(u, v)]; }
  double q1(int u, int v) const { return q1_[index(u, v)]; }
  /// |q1 - q0|; edges with delta 0 are independent of the class.
  double delta(int u, int v) const;

  /// Cost matrix c(e) = delta_e over the complete graph; a valid strictly
  /// monotone-in-MI cost under the symmetric q = 1/2 -+ delta/2 realization.
  CostMatrix delta_costs() const;

 private:
  std::size_t index(int u, int v) const;
  int n_ = 0;
  double p_class_ = 0.5;
  std::vector<double> q0_, q1_;
};

/// Max-clique reduction gadget: p_class = 1/2; edges of the base graph are
/// Bernoulli(C/2) (absent under C=0, fair coin under C=1); non-edges never
/// appear.
EdgeBernoulliModel make_clique_gadget(const Graph& base);

/// Monotonicity-violation gadget on n >= 4 vertices: delta = strength on the
/// distinguished pair {0,1}, strength/2 on every other pair touching 0 or 1,
/// and 0 elsewhere, realized symmetrically as q = 1/2 -+ delta/2 so that MI is
/// strictly increasing in delta.
EdgeBernoulliModel make_monotonicity_gadget(int n, double strength);

/// Exact joint MI (bits) between the within-subset edge indicators and the
/// class, by enumerating edge patterns. Only class-dependent edges matter;
/// guarded at 20 of them (2^20 patterns). Uses the present-edge-count
/// sufficient statistic when all informative edges share the same (q0,q1).
double subset_mi_exact(const EdgeBernoulliModel& model, const std::vector<int>& subset);

struct OracleResult {
  std::vector<int> best_subset;
  double best_mi = 0.0;
  /// Optional (subset, MI) table for small n.
  std::vector<std::pair<std::vector<int>, double>> table;
};

/// Exhaustive maximizer of subset_mi_exact over size-k subsets, ties to the
/// lexicographically smallest. Guarded at C(n,k) <= 1e5; the problem this
/// solves is NP-hard in general, so the guard is the point.
OracleResult infomax_oracle(const EdgeBernoulliModel& model, int k, bool keep_table = false);

/// m iid draws from the model as a labeled dataset (d = 1, features all 1).
LabeledDataset sample_dataset(const EdgeBernoulliModel& model, int m, std::uint64_t seed);

}  // namespace otgs
