#include "core/info.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>

#include "core/errors.hpp"

namespace otgs {

namespace {

void check_labels(std::span<const int> labels) {
  if (labels.size() < 2) throw ValidationError("estimator: need at least 2 samples");
  for (int c : labels)
    if (c != 0 && c != 1) throw ValidationError("estimator: labels must be 0 or 1");
}

void check_unit_interval(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0))
    throw ValidationError(std::string(name) + " must lie in [0,1], got " + std::to_string(x));
}

}  // namespace

double binary_entropy(double x) {
  check_unit_interval(x, "binary_entropy: argument");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double kl_bernoulli(double p0, double p1) {
  check_unit_interval(p0, "kl_bernoulli: p0");
  check_unit_interval(p1, "kl_bernoulli: p1");
  double kl = 0.0;
  if (p0 > 0.0) {
    if (p1 == 0.0) return std::numeric_limits<double>::infinity();
    kl += p0 * std::log2(p0 / p1);
  }
  if (p0 < 1.0) {
    if (p1 == 1.0) return std::numeric_limits<double>::infinity();
    kl += (1.0 - p0) * std::log2((1.0 - p0) / (1.0 - p1));
  }
  return std::max(0.0, kl);
}

double exact_edge_mi(double p_class, double q0, double q1) {
  check_unit_interval(p_class, "exact_edge_mi: p_class");
  check_unit_interval(q0, "exact_edge_mi: q0");
  check_unit_interval(q1, "exact_edge_mi: q1");
  double mix = p_class * q1 + (1.0 - p_class) * q0;
  double mi = binary_entropy(mix) -
              ((1.0 - p_class) * binary_entropy(q0) + p_class * binary_entropy(q1));
  return std::max(0.0, mi);
}

int default_bin_count(std::size_t n_samples) {
  int b = static_cast<int>(std::ceil(std::cbrt(static_cast<double>(n_samples))));
  return std::max(2, std::min(64, b));
}

namespace detail {

MiEstimate mi_discrete_ids(std::span<const std::int64_t> values, std::span<const int> labels) {
  if (values.size() != labels.size())
    throw ValidationError("estimator: values and labels must have equal length");
  check_labels(labels);
  const std::size_t n = values.size();

  std::unordered_map<std::int64_t, std::pair<std::size_t, std::size_t>> joint;
  std::size_t class_count[2] = {0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    auto& cell = joint[values[i]];
    if (labels[i] == 0)
      ++cell.first;
    else
      ++cell.second;
    ++class_count[labels[i]];
  }

  MiEstimate est;
  est.n_samples = n;
  est.bin_count = static_cast<int>(joint.size());
  if (class_count[0] == 0 || class_count[1] == 0) {
    est.single_class = true;
    return est;
  }

  const double dn = static_cast<double>(n);
  double mi = 0.0;
  for (const auto& [value, cell] : joint) {
    double nx = static_cast<double>(cell.first + cell.second);
    if (cell.first > 0) {
      double p = cell.first / dn;
      mi += p * std::log2(cell.first * dn / (nx * class_count[0]));
    }
    if (cell.second > 0) {
      double p = cell.second / dn;
      mi += p * std::log2(cell.second * dn / (nx * class_count[1]));
    }
  }
  if (mi < 0.0) {
    est.clamped = -mi;
    mi = 0.0;
  }
  est.value = mi;
  return est;
}

std::vector<std::int64_t> bucketize(std::span<const double> values, std::size_t dim,
                                    std::size_t n, int bins) {
  if (dim < 1) throw ValidationError("estimator: dimension must be >= 1");
  if (values.size() != n * dim)
    throw ValidationError("estimator: values size must be n_samples * dim");
  const int b = bins > 0 ? bins : default_bin_count(n);

  std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
  std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      double x = values[i * dim + j];
      if (!std::isfinite(x)) throw ValidationError("estimator: non-finite feature value");
      lo[j] = std::min(lo[j], x);
      hi[j] = std::max(hi[j], x);
    }
  }

  // Mixed-radix codes when they fit an int64; dictionary otherwise.
  double radix_span = 1.0;
  for (std::size_t j = 0; j < dim; ++j) radix_span *= (hi[j] > lo[j]) ? b : 1;
  const bool use_codes = radix_span < 4e18;

  std::vector<std::int64_t> ids(n);
  std::map<std::vector<std::int32_t>, std::int64_t> dictionary;
  std::vector<std::int32_t> key(dim);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t code = 0;
    for (std::size_t j = 0; j < dim; ++j) {
      double x = values[i * dim + j];
      int idx = 0;
      if (hi[j] > lo[j]) {
        idx = static_cast<int>((x - lo[j]) / (hi[j] - lo[j]) * b);
        idx = std::clamp(idx, 0, b - 1);
      }
      if (use_codes)
        code = code * ((hi[j] > lo[j]) ? b : 1) + idx;
      else
        key[j] = idx;
    }
    if (use_codes) {
      ids[i] = code;
    } else {
      auto [it, inserted] = dictionary.try_emplace(key, static_cast<std::int64_t>(dictionary.size()));
      ids[i] = it->second;
    }
  }
  return ids;
}

}  // namespace detail

MiEstimate mi_discrete(std::span<const int> values, std::span<const int> labels) {
  std::vector<std::int64_t> ids(values.begin(), values.end());
  return detail::mi_discrete_ids(ids, labels);
}

MiEstimate mi_continuous(std::span<const double> values, std::size_t dim,
                         std::span<const int> labels, int bins) {
  check_labels(labels);
  auto ids = detail::bucketize(values, dim, labels.size(), bins);
  return detail::mi_discrete_ids(ids, labels);
}

MiEstimate conditional_mi(std::span<const double> xv, std::span<const double> xw,
                          std::size_t dim, std::span<const int> labels, int bins) {
  check_labels(labels);
  const std::size_t n = labels.size();
  if (xv.size() != n * dim || xw.size() != n * dim)
    throw ValidationError("conditional_mi: sample blocks must be n_samples * dim");

  std::vector<double> joint(n * 2 * dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      joint[i * 2 * dim + j] = xv[i * dim + j];
      joint[i * 2 * dim + dim + j] = xw[i * dim + j];
    }
  }
  MiEstimate joint_est = mi_continuous(joint, 2 * dim, labels, bins);
  MiEstimate w_est = mi_continuous(xw, dim, labels, bins);

  MiEstimate est;
  est.n_samples = n;
  est.bin_count = joint_est.bin_count;
  est.single_class = joint_est.single_class;
  double value = joint_est.value - w_est.value;
  if (value < 0.0) {
    est.clamped = -value;
    value = 0.0;
  }
  est.value = value;
  return est;
}

double kl_bernoulli_edge(std::span<const int> edge_present, std::span<const int> labels) {
  if (edge_present.size() != labels.size())
    throw ValidationError("kl_bernoulli_edge: indicator and label lengths differ");
  check_labels(labels);
  std::size_t ones[2] = {0, 0}, totals[2] = {0, 0};
  for (std::size_t i = 0; i < labels.size(); ++i) {
    int e = edge_present[i];
    if (e != 0 && e != 1) throw ValidationError("kl_bernoulli_edge: indicators must be 0 or 1");
    ones[labels[i]] += e;
    ++totals[labels[i]];
  }
  if (totals[0] == 0 || totals[1] == 0)
    throw ValidationError("kl_bernoulli_edge: both classes required to condition on");
  // Laplace alpha = 1 keeps the divergence finite on degenerate samples.
  double p0 = (ones[0] + 1.0) / (totals[0] + 2.0);
  double p1 = (ones[1] + 1.0) / (totals[1] + 2.0);
  return kl_bernoulli(p0, p1);
}

}  // namespace otgs
