#include "core/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "core/errors.hpp"
#include "core/info.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace otgs {

EdgeBernoulliModel::EdgeBernoulliModel(int n, double p_class) : n_(n), p_class_(p_class) {
  if (n < 1) throw ValidationError("edge model: need at least one vertex");
  if (!(p_class >= 0.0 && p_class <= 1.0))
    throw ValidationError("edge model: class prior must lie in [0,1]");
  q0_.assign(static_cast<std::size_t>(n) * n, 0.0);
  q1_.assign(static_cast<std::size_t>(n) * n, 0.0);
}

std::size_t EdgeBernoulliModel::index(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v)
    throw ValidationError("edge model: vertex pair out of range");
  return static_cast<std::size_t>(u) * n_ + v;
}

void EdgeBernoulliModel::set_edge(int u, int v, double q0, double q1) {
  if (!(q0 >= 0.0 && q0 <= 1.0 && q1 >= 0.0 && q1 <= 1.0))
    throw ValidationError("edge model: probabilities must lie in [0,1]");
  q0_[index(u, v)] = q0_[index(v, u)] = q0;
  q1_[index(u, v)] = q1_[index(v, u)] = q1;
}

double EdgeBernoulliModel::delta(int u, int v) const {
  return std::abs(q1(u, v) - q0(u, v));
}

CostMatrix EdgeBernoulliModel::delta_costs() const {
  CostMatrix cost(n_, 0.0);
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v) cost.set(u, v, delta(u, v));
  return cost;
}

EdgeBernoulliModel make_clique_gadget(const Graph& base) {
  EdgeBernoulliModel model(base.num_vertices(), 0.5);
  for (auto [u, v] : base.edges()) model.set_edge(u, v, 0.0, 0.5);
  return model;
}

EdgeBernoulliModel make_monotonicity_gadget(int n, double strength) {
  if (n < 4) throw ValidationError("monotonicity gadget: need n >= 4");
  if (!(strength > 0.0 && strength < 1.0))
    throw ValidationError("monotonicity gadget: strength must lie in (0,1)");
  EdgeBernoulliModel model(n, 0.5);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      double d = 0.0;
      if (u == 0 && v == 1)
        d = strength;
      else if (u <= 1)
        d = strength / 2.0;
      model.set_edge(u, v, 0.5 - d / 2.0, 0.5 + d / 2.0);
    }
  }
  return model;
}

double subset_mi_exact(const EdgeBernoulliModel& model, const std::vector<int>& subset) {
  for (int v : subset)
    if (v < 0 || v >= model.num_vertices())
      throw ValidationError("subset_mi_exact: vertex out of range");

  // Class-independent edges factor out of the joint MI entirely.
  std::vector<std::pair<double, double>> informative;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    for (std::size_t j = i + 1; j < subset.size(); ++j) {
      double a = model.q0(subset[i], subset[j]);
      double b = model.q1(subset[i], subset[j]);
      if (a != b) informative.emplace_back(a, b);
    }
  }
  const int m = static_cast<int>(informative.size());
  if (m == 0) return 0.0;
  if (m > 20)
    throw LimitError("subset_mi_exact: " + std::to_string(m) +
                     " class-dependent edges exceed the 2^20 enumeration guard");

  const double p = model.class_prior();
  double cond = 0.0;  // H(patterns | C)
  for (auto [a, b] : informative) cond += (1.0 - p) * binary_entropy(a) + p * binary_entropy(b);

  const bool homogeneous =
      std::all_of(informative.begin(), informative.end(),
                  [&](const auto& q) { return q == informative.front(); });

  double mixture_entropy = 0.0;
  if (homogeneous) {
    // All informative edges share (q0,q1): the present-edge count is a
    // sufficient statistic, so m+1 terms replace 2^m patterns.
    auto [a, b] = informative.front();
    double log_binom = 0.0;  // log2 C(m,k), updated incrementally
    for (int k = 0; k <= m; ++k) {
      if (k > 0) log_binom += std::log2(static_cast<double>(m - k + 1) / k);
      double prob = (1.0 - p) * std::pow(a, k) * std::pow(1.0 - a, m - k) +
                    p * std::pow(b, k) * std::pow(1.0 - b, m - k);
      if (prob > 0.0) mixture_entropy -= std::exp2(log_binom) * prob * (std::log2(prob));
    }
  } else {
    for (std::uint32_t pattern = 0; pattern < (1u << m); ++pattern) {
      double p0 = 1.0, p1 = 1.0;
      for (int e = 0; e < m; ++e) {
        auto [a, b] = informative[e];
        if (pattern & (1u << e)) {
          p0 *= a;
          p1 *= b;
        } else {
          p0 *= 1.0 - a;
          p1 *= 1.0 - b;
        }
      }
      double prob = (1.0 - p) * p0 + p * p1;
      if (prob > 0.0) mixture_entropy -= prob * std::log2(prob);
    }
  }
  return std::max(0.0, mixture_entropy - cond);
}

OracleResult infomax_oracle(const EdgeBernoulliModel& model, int k, bool keep_table) {
  const int n = model.num_vertices();
  if (k < 1 || k > n) throw ValidationError("infomax_oracle: subset size outside [1,n]");
  double combos = 1.0;
  for (int i = 0; i < k; ++i) combos = combos * (n - i) / (i + 1);
  if (combos > 1e5)
    throw LimitError("infomax_oracle: C(" + std::to_string(n) + "," + std::to_string(k) +
                     ") exceeds the 1e5 enumeration guard");

  OracleResult out;
  std::vector<int> subset(k);
  for (int i = 0; i < k; ++i) subset[i] = i;
  double best = -1.0;
  for (;;) {
    double mi = subset_mi_exact(model, subset);
    if (keep_table) out.table.emplace_back(subset, mi);
    if (mi > best) {  // lexicographic enumeration: first maximum wins ties
      best = mi;
      out.best_subset = subset;
    }
    int i = k - 1;
    while (i >= 0 && subset[i] == n - k + i) --i;
    if (i < 0) break;
    ++subset[i];
    for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
  out.best_mi = best;
  return out;
}

LabeledDataset sample_dataset(const EdgeBernoulliModel& model, int m, std::uint64_t seed) {
  if (m < 1) throw ValidationError("sample_dataset: need at least one sample");
  const int n = model.num_vertices();
  std::vector<Sample> staged(m);
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t i) {
    auto rng = seeded_stream(seed, i);
    int label = std::bernoulli_distribution(model.class_prior())(rng) ? 1 : 0;
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        double q = label == 0 ? model.q0(u, v) : model.q1(u, v);
        if (q > 0.0 && std::bernoulli_distribution(q)(rng)) edges.emplace_back(u, v);
      }
    }
    staged[i] = Sample{Graph(n, std::move(edges)), std::vector<double>(n, 1.0), label};
  });
  LabeledDataset data(n, 1);
  for (auto& s : staged) data.append(std::move(s));
  return data;
}

}  // namespace otgs
