#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace otgs {

/// A mutual-information estimate in bits. Estimates are clamped at 0 and can
/// never exceed H(C) = 1 bit for binary labels.
struct MiEstimate {
  double value = 0.0;
  std::size_t n_samples = 0;
  int bin_count = 0;        // distinct buckets observed
  bool single_class = false;  // only one label value was present; value is 0
  double clamped = 0.0;       // magnitude removed by the nonnegativity clamp
};

/// Base-2 entropy of a Bernoulli(x); h(0) = h(1) = 0 by continuity.
double binary_entropy(double x);

/// Closed-form D_KL(Bernoulli(p0) || Bernoulli(p1)) in bits; infinite when
/// p1 is degenerate and p0 disagrees.
double kl_bernoulli(double p0, double p1);

/// Exact MI in bits between a class C ~ Bernoulli(p_class) and an edge
/// indicator that is Bernoulli(q0) under C=0 and Bernoulli(q1) under C=1:
/// I = h(p q1 + (1-p) q0) - [(1-p) h(q0) + p h(q1)].
double exact_edge_mi(double p_class, double q0, double q1);

/// Default per-dimension bin count: max(2, min(64, ceil(N^(1/3)))).
int default_bin_count(std::size_t n_samples);

/// Plug-in MI between a discrete variable and binary labels.
MiEstimate mi_discrete(std::span<const int> values, std::span<const int> labels);

/// MI between a d-dimensional real variable and binary labels via equal-width
/// binning of each dimension over its empirical range (bins = 0 picks the
/// default). O(N) for fixed bin count. A constant dimension collapses to a
/// single bucket.
MiEstimate mi_continuous(std::span<const double> values, std::size_t dim,
                         std::span<const int> labels, int bins = 0);

/// Chain-rule conditional MI estimate I(X_v; C | X_w) = I((X_v,X_w); C) - I(X_w; C)
/// under joint binning, clamped at 0. xv and xw are N x dim row-major.
MiEstimate conditional_mi(std::span<const double> xv, std::span<const double> xw,
                          std::size_t dim, std::span<const int> labels, int bins = 0);

/// Add-one-smoothed estimate of D_KL(E|C=0 || E|C=1) in bits from binary edge
/// indicators. Both classes must be present.
double kl_bernoulli_edge(std::span<const int> edge_present, std::span<const int> labels);

namespace detail {
/// Equal-width bucket ids for N x dim row-major values; shared by
/// mi_continuous and the sensitivity measure so their binning agrees.
std::vector<std::int64_t> bucketize(std::span<const double> values, std::size_t dim,
                                    std::size_t n, int bins);
MiEstimate mi_discrete_ids(std::span<const std::int64_t> values, std::span<const int> labels);
}  // namespace detail

}  // namespace otgs
