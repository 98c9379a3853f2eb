#include "core/params.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <numeric>
#include <unordered_map>

#include "core/errors.hpp"
#include "core/info.hpp"
#include "core/parallel.hpp"

namespace otgs {

std::string to_string(ParamSource source) {
  switch (source) {
    case ParamSource::supervised: return "supervised";
    case ParamSource::unsupervised: return "unsupervised";
    case ParamSource::custom: return "custom";
  }
  return "unknown";
}

ParamPair supervised_params(const LabeledDataset& data, const EstimatorOptions& opts) {
  const int n = data.num_vertices();
  const int d = data.feature_dim();
  if (n < 2) throw ValidationError("supervised_params: need at least two vertices");
  if (!data.both_classes_present())
    throw ValidationError("supervised_params: both classes must be present");
  if (data.size() < 10)
    std::cerr << "supervised_params: only " << data.size()
              << " samples; estimates will be noisy\n";

  const std::vector<int> labels = data.labels();

  std::vector<double> node_mi(n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t v) {
    node_mi[v] = mi_continuous(data.node_features(static_cast<int>(v)), d, labels, opts.bins).value;
  });

  double total = std::accumulate(node_mi.begin(), node_mi.end(), 0.0);
  std::vector<double> rho(n);
  if (total < 1e-6) {
    // 0/0 fallback: with features carrying no information, weight uniformly.
    std::fill(rho.begin(), rho.end(), 1.0 / n);
  } else {
    for (int v = 0; v < n; ++v) rho[v] = node_mi[v] / total;
  }

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);

  std::vector<double> pair_cost(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    auto [u, v] = pairs[i];
    double kl = kl_bernoulli_edge(data.edge_indicators(u, v), labels);
    auto xu = data.node_features(u);
    auto xv = data.node_features(v);
    double redundancy = conditional_mi(xu, xv, d, labels, opts.bins).value +
                        conditional_mi(xv, xu, d, labels, opts.bins).value;
    pair_cost[i] = kl + redundancy;
  });

  ParamPair out;
  out.rho0 = VertexDistribution(std::move(rho));
  out.cost = CostMatrix(n, 0.0);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    out.cost.set(pairs[i].first, pairs[i].second, pair_cost[i]);
  out.source = ParamSource::supervised;
  return out;
}

ParamPair unsupervised_params(const Graph& g, std::span<const double> features, int dim) {
  const int n = g.num_vertices();
  if (n < 1) throw ValidationError("unsupervised_params: empty graph");
  if (dim < 1 || features.size() != static_cast<std::size_t>(n) * dim)
    throw ValidationError("unsupervised_params: feature matrix must be n x d");

  double degree_sum = 0.0;
  std::vector<double> rho(n);
  for (int v = 0; v < n; ++v) {
    rho[v] = g.degree(v);
    degree_sum += rho[v];
  }
  if (degree_sum == 0.0)
    throw ValidationError("unsupervised_params: every vertex is isolated");
  for (double& r : rho) r /= degree_sum;

  CostMatrix cost(n, kInfiniteCost);
  for (auto [u, v] : g.edges()) {
    double sq = 0.0;
    for (int j = 0; j < dim; ++j) {
      double diff = features[static_cast<std::size_t>(u) * dim + j] -
                    features[static_cast<std::size_t>(v) * dim + j];
      sq += diff * diff;
    }
    cost.set(u, v, 1.0 + std::sqrt(sq));
  }

  ParamPair out;
  out.rho0 = VertexDistribution(std::move(rho));
  out.cost = std::move(cost);
  out.source = ParamSource::unsupervised;
  return out;
}

std::vector<double> sensitivity_scores(const LabeledDataset& data, const EstimatorOptions& opts) {
  const int n = data.num_vertices();
  const int d = data.feature_dim();
  if (n < 1 || data.size() < 2)
    throw ValidationError("sensitivity_scores: need a nonempty dataset with >= 2 samples");
  if (!data.both_classes_present())
    throw ValidationError("sensitivity_scores: both classes must be present");

  const std::vector<int> labels = data.labels();
  const std::size_t m = data.size();
  std::size_t class_count[2] = {0, 0};
  for (int c : labels) ++class_count[c];

  std::vector<double> scores(n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t v) {
    auto ids = detail::bucketize(data.node_features(static_cast<int>(v)), d, m, opts.bins);
    std::unordered_map<std::int64_t, std::array<std::size_t, 3>> counts;  // [c0, c1, all]
    for (std::size_t i = 0; i < m; ++i) {
      auto& cell = counts[ids[i]];
      ++cell[labels[i]];
      ++cell[2];
    }
    const double buckets = static_cast<double>(counts.size());
    double mean_ratio = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& cell = counts[ids[i]];
      double conditional =
          (cell[labels[i]] + 1.0) / (class_count[labels[i]] + buckets);
      double marginal = (cell[2] + 1.0) / (m + buckets);
      mean_ratio += conditional / marginal;
    }
    scores[v] = mean_ratio / m;
  });
  return scores;
}

SensitivityFilter apply_sensitivity_filter(std::span<const double> scores, double fraction,
                                           int k) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw ValidationError("sensitivity filter: fraction must lie in (0,1]");
  if (k < 1 || k > static_cast<int>(scores.size()))
    throw ValidationError("sensitivity filter: k outside [1,n]");
  int forced_count = static_cast<int>(std::ceil(fraction * k - 1e-12));
  forced_count = std::clamp(forced_count, 0, k);

  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores[a] > scores[b]; });

  SensitivityFilter out;
  out.forced.assign(order.begin(), order.begin() + forced_count);
  std::sort(out.forced.begin(), out.forced.end());
  out.free_budget = k - forced_count;
  return out;
}

}  // namespace otgs
