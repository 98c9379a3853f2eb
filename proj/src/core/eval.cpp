#include "core/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "core/compress.hpp"
#include "core/errors.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace otgs {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

int target_size(double kappa, int n) {
  if (!(kappa > 0.0 && kappa <= 1.0))
    throw ValidationError("summarizer: kappa must lie in (0,1]");
  return std::max(1, static_cast<int>(std::floor(kappa * n + 1e-9)));
}

Sample induce(const Sample& s, const std::vector<int>& support, int d) {
  const int k = static_cast<int>(support.size());
  std::vector<int> position(s.graph.num_vertices(), -1);
  for (int i = 0; i < k; ++i) position[support[i]] = i;

  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : s.graph.edges())
    if (position[u] >= 0 && position[v] >= 0) edges.emplace_back(position[u], position[v]);

  std::vector<double> features(static_cast<std::size_t>(k) * d);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < d; ++j)
      features[static_cast<std::size_t>(i) * d + j] =
          s.features[static_cast<std::size_t>(support[i]) * d + j];
  return Sample{Graph(k, std::move(edges)), std::move(features), s.label};
}

/// Graph feature vector for the classifier: node features then the
/// upper-triangular adjacency bits.
std::size_t classifier_dim(int n, int d) {
  return static_cast<std::size_t>(n) * d + static_cast<std::size_t>(n) * (n - 1) / 2;
}

void fill_classifier_row(const Sample& s, int n, int d, double* row) {
  std::copy(s.features.begin(), s.features.end(), row);
  double* bits = row + static_cast<std::size_t>(n) * d;
  std::fill(bits, bits + static_cast<std::size_t>(n) * (n - 1) / 2, 0.0);
  for (auto [u, v] : s.graph.edges()) {
    // index of (u,v), u<v, in row-major upper-triangular order
    std::size_t idx = static_cast<std::size_t>(u) * n - static_cast<std::size_t>(u) * (u + 1) / 2 +
                      (v - u - 1);
    bits[idx] = 1.0;
  }
}

struct FoldAssignment {
  std::vector<std::vector<std::size_t>> fold_members;
};

/// Stratified fold assignment: indices of each class are shuffled and dealt
/// round-robin, so every fold sees both classes.
FoldAssignment make_folds(const std::vector<int>& labels, int folds, std::mt19937_64& rng) {
  FoldAssignment out;
  out.fold_members.assign(folds, {});
  for (int c = 0; c < 2; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == c) members.push_back(i);
    std::shuffle(members.begin(), members.end(), rng);
    for (std::size_t pos = 0; pos < members.size(); ++pos)
      out.fold_members[pos % folds].push_back(members[pos]);
  }
  for (auto& m : out.fold_members) std::sort(m.begin(), m.end());
  return out;
}

/// Deterministic full-batch gradient descent for L2-regularized logistic
/// regression on standardized features. Returns test-fold accuracy.
double fit_and_score(const std::vector<double>& features, const std::vector<int>& labels,
                     std::size_t dim, const std::vector<std::size_t>& train_rows,
                     const std::vector<std::size_t>& test_rows) {
  constexpr int kIterations = 500;
  constexpr double kStep = 0.1;
  constexpr double kLambda = 1e-3;

  const std::size_t n_train = train_rows.size();
  std::vector<double> mean(dim, 0.0), scale(dim, 0.0);
  for (std::size_t r : train_rows) {
    const double* row = features.data() + r * dim;
    for (std::size_t j = 0; j < dim; ++j) mean[j] += row[j];
  }
  for (std::size_t j = 0; j < dim; ++j) mean[j] /= n_train;
  for (std::size_t r : train_rows) {
    const double* row = features.data() + r * dim;
    for (std::size_t j = 0; j < dim; ++j) {
      double c = row[j] - mean[j];
      scale[j] += c * c;
    }
  }
  for (std::size_t j = 0; j < dim; ++j) {
    scale[j] = std::sqrt(scale[j] / n_train);
    if (scale[j] < 1e-12) scale[j] = 0.0;  // constant column: drops out
  }

  std::vector<double> x(n_train * dim);
  std::vector<double> y(n_train);
  for (std::size_t i = 0; i < n_train; ++i) {
    const double* row = features.data() + train_rows[i] * dim;
    double* out = x.data() + i * dim;
    for (std::size_t j = 0; j < dim; ++j)
      out[j] = scale[j] > 0.0 ? (row[j] - mean[j]) / scale[j] : 0.0;
    y[i] = labels[train_rows[i]];
  }

  std::vector<double> w(dim, 0.0), grad(dim), residual(n_train);
  double bias = 0.0;
  for (int it = 0; it < kIterations; ++it) {
    for (std::size_t i = 0; i < n_train; ++i) {
      const double* row = x.data() + i * dim;
      double z = bias;
      for (std::size_t j = 0; j < dim; ++j) z += row[j] * w[j];
      residual[i] = 1.0 / (1.0 + std::exp(-z)) - y[i];
    }
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_bias = 0.0;
    for (std::size_t i = 0; i < n_train; ++i) {
      const double* row = x.data() + i * dim;
      double r = residual[i];
      for (std::size_t j = 0; j < dim; ++j) grad[j] += r * row[j];
      grad_bias += r;
    }
    const double inv_n = 1.0 / static_cast<double>(n_train);
    for (std::size_t j = 0; j < dim; ++j) w[j] -= kStep * (grad[j] * inv_n + kLambda * w[j]);
    bias -= kStep * grad_bias * inv_n;
  }

  std::size_t correct = 0;
  for (std::size_t r : test_rows) {
    const double* row = features.data() + r * dim;
    double z = bias;
    for (std::size_t j = 0; j < dim; ++j)
      if (scale[j] > 0.0) z += (row[j] - mean[j]) / scale[j] * w[j];
    int predicted = z >= 0.0 ? 1 : 0;
    if (predicted == labels[r]) ++correct;
  }
  return test_rows.empty() ? 0.0 : static_cast<double>(correct) / test_rows.size();
}

std::pair<double, double> mean_sd(const std::vector<double>& xs) {
  double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var = xs.size() > 1 ? var / (xs.size() - 1) : 0.0;
  return {mean, std::sqrt(var)};
}

}  // namespace

std::string to_string(SummaryMethod method) {
  switch (method) {
    case SummaryMethod::supervised: return "supervised";
    case SummaryMethod::unsupervised_per_graph: return "unsupervised-per-graph";
    case SummaryMethod::random_subset: return "random-subset";
    case SummaryMethod::none: return "none";
  }
  return "unknown";
}

SummaryMethod summary_method_from_string(const std::string& name) {
  if (name == "supervised") return SummaryMethod::supervised;
  if (name == "unsupervised" || name == "unsupervised-per-graph")
    return SummaryMethod::unsupervised_per_graph;
  if (name == "random-subset" || name == "random") return SummaryMethod::random_subset;
  if (name == "none") return SummaryMethod::none;
  throw ValidationError("unknown summarization method: " + name);
}

SummaryModel fit_summarizer(const LabeledDataset& train, double kappa, SummaryMethod method,
                            const FitOptions& opts) {
  const int n = train.num_vertices();
  if (n < 1) throw ValidationError("fit_summarizer: empty dataset");
  const int k = target_size(kappa, n);

  SummaryModel model;
  model.method = method;
  model.kappa = kappa;
  model.n = n;

  switch (method) {
    case SummaryMethod::none: {
      model.support.resize(n);
      std::iota(model.support.begin(), model.support.end(), 0);
      break;
    }
    case SummaryMethod::random_subset: {
      std::vector<int> order(n);
      std::iota(order.begin(), order.end(), 0);
      auto rng = seeded_stream(opts.seed, 0x7a2d5eedULL);
      std::shuffle(order.begin(), order.end(), rng);
      model.support.assign(order.begin(), order.begin() + k);
      std::sort(model.support.begin(), model.support.end());
      break;
    }
    case SummaryMethod::unsupervised_per_graph:
      break;  // nothing to learn; the ratio is applied per test graph
    case SummaryMethod::supervised: {
      model.params = supervised_params(train, opts.estimator);
      CompressOptions copts;
      if (opts.sensitivity_fraction > 0.0) {
        auto scores = sensitivity_scores(train, opts.estimator);
        copts.forced = apply_sensitivity_filter(scores, opts.sensitivity_fraction, k).forced;
      }
      auto result =
          ot_compress(Graph::complete(n), model.params.rho0, model.params.cost, k, copts);
      model.support = result.support;
      break;
    }
  }
  return model;
}

LabeledDataset summarize_testset(const SummaryModel& model, const LabeledDataset& test) {
  if (test.num_vertices() != model.n)
    throw ValidationError("summarize_testset: test vertex set does not match the model");
  const int d = test.feature_dim();

  if (model.method == SummaryMethod::unsupervised_per_graph) {
    const int k = target_size(model.kappa, model.n);
    std::vector<Sample> staged(test.size());
    parallel_for(test.size(), [&](std::size_t i) {
      const Sample& s = test[i];
      ParamPair params = unsupervised_params(s.graph, s.features, d);
      CompressionResult cr = ot_compress(s.graph, params.rho0, params.cost, k);
      staged[i] = induce(s, cr.support, d);
    });
    LabeledDataset out(k, d);
    for (auto& s : staged) out.append(std::move(s));
    return out;
  }

  LabeledDataset out(static_cast<int>(model.support.size()), d);
  for (std::size_t i = 0; i < test.size(); ++i) out.append(induce(test[i], model.support, d));
  return out;
}

CvResult classify_cv(const LabeledDataset& data, int folds, int trials, std::uint64_t seed) {
  if (folds < 2) throw ValidationError("classify_cv: need at least 2 folds");
  if (trials < 1) throw ValidationError("classify_cv: need at least 1 trial");
  const std::vector<int> labels = data.labels();
  std::size_t per_class[2] = {0, 0};
  for (int c : labels) ++per_class[c];
  if (per_class[0] < static_cast<std::size_t>(folds) ||
      per_class[1] < static_cast<std::size_t>(folds))
    throw ValidationError("classify_cv: need at least `folds` samples of each class");

  const int n = data.num_vertices();
  const int d = data.feature_dim();
  const std::size_t dim = classifier_dim(n, d);
  std::vector<double> features(data.size() * dim);
  for (std::size_t i = 0; i < data.size(); ++i)
    fill_classifier_row(data[i], n, d, features.data() + i * dim);

  struct Unit {
    std::vector<std::size_t> train, test;
  };
  std::vector<Unit> units;
  units.reserve(static_cast<std::size_t>(folds) * trials);
  for (int t = 0; t < trials; ++t) {
    auto rng = seeded_stream(seed, 0xf01d5ULL + t);
    auto assignment = make_folds(labels, folds, rng);
    for (int f = 0; f < folds; ++f) {
      Unit u;
      u.test = assignment.fold_members[f];
      for (int other = 0; other < folds; ++other)
        if (other != f)
          u.train.insert(u.train.end(), assignment.fold_members[other].begin(),
                         assignment.fold_members[other].end());
      std::sort(u.train.begin(), u.train.end());
      units.push_back(std::move(u));
    }
  }

  CvResult result;
  result.fold_accuracies.resize(units.size());
  result.fold_classify_ms.resize(units.size());
  parallel_for(units.size(), [&](std::size_t i) {
    auto start = Clock::now();
    result.fold_accuracies[i] =
        fit_and_score(features, labels, dim, units[i].train, units[i].test);
    result.fold_classify_ms[i] = ms_since(start);
  });
  std::tie(result.mean_accuracy, result.sd_accuracy) = mean_sd(result.fold_accuracies);
  return result;
}

EvalReport run_experiment(const LabeledDataset& train, const LabeledDataset& test,
                          std::span<const double> kappas,
                          std::span<const SummaryMethod> methods, std::uint64_t seed,
                          int folds, int trials) {
  if (kappas.empty() || methods.empty())
    throw ValidationError("run_experiment: need at least one kappa and one method");

  // Warm-up pass so first-touch costs stay out of the timings.
  {
    SummaryModel warm = fit_summarizer(train, 1.0, SummaryMethod::none);
    LabeledDataset slice(test.num_vertices(), test.feature_dim());
    for (std::size_t i = 0; i < std::min<std::size_t>(2, test.size()); ++i) slice.append(test[i]);
    if (!slice.empty()) summarize_testset(warm, slice);
  }

  EvalReport report;
  for (SummaryMethod method : methods) {
    for (double kappa : kappas) {
      auto fit_start = Clock::now();
      FitOptions opts;
      opts.seed = seed;
      SummaryModel model = fit_summarizer(train, kappa, method, opts);
      LabeledDataset summarized = summarize_testset(model, test);
      double compress_ms = ms_since(fit_start);

      CvResult cv = classify_cv(summarized, folds, trials, seed);

      EvalSummary summary;
      summary.method = to_string(method);
      summary.kappa = kappa;
      summary.mean_accuracy = cv.mean_accuracy;
      summary.sd_accuracy = cv.sd_accuracy;
      summary.compress_ms = compress_ms;
      summary.classify_ms =
          std::accumulate(cv.fold_classify_ms.begin(), cv.fold_classify_ms.end(), 0.0);
      report.summaries.push_back(summary);

      for (int t = 0; t < trials; ++t) {
        for (int f = 0; f < folds; ++f) {
          std::size_t idx = static_cast<std::size_t>(t) * folds + f;
          report.rows.push_back(EvalRow{to_string(method), kappa, t, f,
                                        cv.fold_accuracies[idx], compress_ms,
                                        cv.fold_classify_ms[idx]});
        }
      }
    }
  }
  return report;
}

void write_csv(const EvalReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "method,kappa,trial,fold,accuracy,compress_ms,classify_ms\n";
  char buf[64];
  for (const auto& row : report.rows) {
    out << row.method << ',';
    std::snprintf(buf, sizeof(buf), "%g", row.kappa);
    out << buf << ',' << row.trial << ',' << row.fold << ',';
    std::snprintf(buf, sizeof(buf), "%.6f", row.accuracy);
    out << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.3f", row.compress_ms);
    out << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.3f", row.classify_ms);
    out << buf << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

std::string summary_table(const EvalReport& report) {
  std::ostringstream out;
  out << "method                  kappa  accuracy(mean+-sd)  compress_ms  classify_ms\n";
  char buf[128];
  for (const auto& s : report.summaries) {
    std::snprintf(buf, sizeof(buf), "%-22s  %5.2f  %.4f +- %.4f    %10.2f  %11.2f\n",
                  s.method.c_str(), s.kappa, s.mean_accuracy, s.sd_accuracy, s.compress_ms,
                  s.classify_ms);
    out << buf;
  }
  return out.str();
}

std::pair<LabeledDataset, LabeledDataset> split_dataset(const LabeledDataset& data,
                                                        double train_fraction,
                                                        std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ValidationError("split: train fraction must lie in (0,1)");
  std::vector<int> labels = data.labels();
  auto rng = seeded_stream(seed, 0x5911fULL);
  std::vector<std::size_t> train_rows, test_rows;
  for (int c = 0; c < 2; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < data.size(); ++i)
      if (labels[i] == c) members.push_back(i);
    std::shuffle(members.begin(), members.end(), rng);
    std::size_t cut = static_cast<std::size_t>(std::llround(train_fraction * members.size()));
    train_rows.insert(train_rows.end(), members.begin(), members.begin() + cut);
    test_rows.insert(test_rows.end(), members.begin() + cut, members.end());
  }
  std::sort(train_rows.begin(), train_rows.end());
  std::sort(test_rows.begin(), test_rows.end());

  LabeledDataset train(data.num_vertices(), data.feature_dim());
  LabeledDataset test(data.num_vertices(), data.feature_dim());
  for (std::size_t i : train_rows) train.append(data[i]);
  for (std::size_t i : test_rows) test.append(data[i]);
  return {std::move(train), std::move(test)};
}

}  // namespace otgs
