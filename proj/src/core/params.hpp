#pragma once

#include <span>
#include <string>
#include <vector>

#include "core/dataset.hpp"
#include "core/graph.hpp"

namespace otgs {

enum class ParamSource { supervised, unsupervised, custom };
std::string to_string(ParamSource source);

/// An optimal-transport parameter pair: initial distribution and edge costs.
struct ParamPair {
  VertexDistribution rho0;
  CostMatrix cost;
  ParamSource source = ParamSource::custom;
};

struct EstimatorOptions {
  int bins = 0;  // 0 picks default_bin_count
};

/// Dataset-level supervised parameters:
///   rho0(v) = I(X_v;C) / sum_w I(X_w;C)   (uniform fallback when the total
///             MI is below 1e-6, where the ratio is 0/0),
///   c(v,w)  = D_KL(E_vw|C=0 || E_vw|C=1) + I(X_v;C|X_w) + I(X_w;C|X_v),
/// with E_vw the per-sample presence of edge {v,w}. Requires the common
/// vertex set the dataset type enforces and both classes present.
ParamPair supervised_params(const LabeledDataset& data, const EstimatorOptions& opts = {});

/// Per-graph baseline: rho0 proportional to degree, cost 1 + ||x_v - x_w||_2
/// on existing edges and infinite elsewhere. Never reads labels.
ParamPair unsupervised_params(const Graph& g, std::span<const double> features, int dim);

/// Per-node class sensitivity E[P(X_v|C)/P(X_v)], estimated over the same
/// equal-width buckets as mi_continuous with add-one smoothing. 1 means the
/// feature ignores the class; larger means more class-sensitive.
std::vector<double> sensitivity_scores(const LabeledDataset& data,
                                       const EstimatorOptions& opts = {});

struct SensitivityFilter {
  std::vector<int> forced;  // top ceil(fraction*k) vertices by score, sorted
  int free_budget = 0;      // k - |forced|
};

/// Splits a budget of k vertices into score-forced picks and a free remainder
/// for the compressor (which then never removes the forced vertices).
SensitivityFilter apply_sensitivity_filter(std::span<const double> scores, double fraction,
                                           int k);

}  // namespace otgs
