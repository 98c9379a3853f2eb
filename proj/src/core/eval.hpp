#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "core/dataset.hpp"
#include "core/params.hpp"

namespace otgs {

enum class SummaryMethod {
  supervised,             // one support learned from the training set
  unsupervised_per_graph, // degree/attribute OTC run on every test graph
  random_subset,          // seeded uniform size-k subset
  none                    // keep every vertex
};
std::string to_string(SummaryMethod method);
SummaryMethod summary_method_from_string(const std::string& name);

struct FitOptions {
  EstimatorOptions estimator;
  /// > 0 forces the top ceil(fraction*k) sensitivity-scored vertices into the
  /// support before the greedy elimination runs.
  double sensitivity_fraction = 0.0;
  std::uint64_t seed = 0;
};

/// A fitted summarizer: a single support for all test graphs, except for the
/// per-graph baseline which stores only the ratio.
struct SummaryModel {
  SummaryMethod method = SummaryMethod::none;
  double kappa = 1.0;
  int n = 0;
  std::vector<int> support;  // sorted; empty for unsupervised_per_graph
  ParamPair params;          // populated for supervised fits
};

/// k = max(1, floor(kappa*n)). Supervised fits estimate parameters from the
/// training set and compress the complete graph on n vertices.
SummaryModel fit_summarizer(const LabeledDataset& train, double kappa, SummaryMethod method,
                            const FitOptions& opts = {});

/// Induced subgraph + feature-row selection per sample, vertices renumbered
/// by sorted support order. The per-graph baseline recomputes degree/attribute
/// parameters and re-runs the compressor on every sample individually.
LabeledDataset summarize_testset(const SummaryModel& model, const LabeledDataset& test);

/// Cross-validated accuracy of the downstream classifier. The feature vector
/// of a graph is (flattened node features, upper-triangular adjacency bits);
/// the classifier is L2-regularized logistic regression trained by
/// deterministic full-batch gradient descent (500 iterations, step 0.1,
/// lambda 1e-3) on per-fold standardized features. Folds are stratified and
/// reshuffled per trial from the seed.
struct CvResult {
  double mean_accuracy = 0.0;
  double sd_accuracy = 0.0;                 // sample sd over folds x trials
  std::vector<double> fold_accuracies;      // trial-major
  std::vector<double> fold_classify_ms;
};
CvResult classify_cv(const LabeledDataset& data, int folds = 5, int trials = 5,
                     std::uint64_t seed = 0);

struct EvalRow {
  std::string method;
  double kappa = 1.0;
  int trial = 0;
  int fold = 0;
  double accuracy = 0.0;
  double compress_ms = 0.0;  // train fit + test summarization, wall clock
  double classify_ms = 0.0;
};

struct EvalSummary {
  std::string method;
  double kappa = 1.0;
  double mean_accuracy = 0.0;
  double sd_accuracy = 0.0;
  double compress_ms = 0.0;
  double classify_ms = 0.0;  // total over folds and trials
};

struct EvalReport {
  std::vector<EvalRow> rows;
  std::vector<EvalSummary> summaries;
};

/// Full sweep over methods x compression ratios: fit on train, summarize
/// test, cross-validate the classifier on the summarized test set. Wall-clock
/// per phase; a small warm-up pass runs before anything is timed.
EvalReport run_experiment(const LabeledDataset& train, const LabeledDataset& test,
                          std::span<const double> kappas,
                          std::span<const SummaryMethod> methods, std::uint64_t seed,
                          int folds = 5, int trials = 5);

/// CSV with header method,kappa,trial,fold,accuracy,compress_ms,classify_ms.
void write_csv(const EvalReport& report, const std::string& path);
std::string summary_table(const EvalReport& report);

/// Seeded stratified split helper for evaluate workflows.
std::pair<LabeledDataset, LabeledDataset> split_dataset(const LabeledDataset& data,
                                                        double train_fraction,
                                                        std::uint64_t seed);

}  // namespace otgs
