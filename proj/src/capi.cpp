#include "otgs.h"

#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "core/compress.hpp"
#include "core/dataset.hpp"
#include "core/errors.hpp"
#include "core/eval.hpp"
#include "core/gadgets.hpp"
#include "core/info.hpp"
#include "core/parallel.hpp"
#include "core/params.hpp"
#include "core/transport.hpp"

struct otgs_dataset {
  otgs::LabeledDataset data;
};

struct otgs_summary {
  otgs::SummaryModel model;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return OTGS_OK;
  } catch (const otgs::ValidationError& e) {
    g_last_error = e.what();
    return OTGS_ERR_VALIDATION;
  } catch (const otgs::InfeasibleError& e) {
    g_last_error = e.what();
    return OTGS_ERR_INFEASIBLE;
  } catch (const otgs::IoError& e) {
    g_last_error = e.what();
    return OTGS_ERR_IO;
  } catch (const otgs::LimitError& e) {
    g_last_error = e.what();
    return OTGS_ERR_LIMIT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return OTGS_ERR_INTERNAL;
  }
}

void require(bool ok, const char* message) {
  if (!ok) throw otgs::ValidationError(message);
}

otgs::Graph graph_from_arrays(int n, const int32_t* edges, size_t edge_count) {
  require(n >= 0, "vertex count must be nonnegative");
  require(edges != nullptr || edge_count == 0, "edge array is null");
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(edge_count);
  for (size_t e = 0; e < edge_count; ++e)
    pairs.emplace_back(edges[2 * e], edges[2 * e + 1]);
  return otgs::Graph(n, std::move(pairs));
}

otgs::CostMatrix costs_from_arrays(const otgs::Graph& g, const double* edge_costs) {
  require(edge_costs != nullptr || g.num_edges() == 0, "edge cost array is null");
  otgs::CostMatrix cost(g.num_vertices(), otgs::kInfiniteCost);
  for (int e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.edges()[e];
    cost.set(u, v, edge_costs[e]);
  }
  return cost;
}

otgs::VertexDistribution distribution_from_array(int n, const double* rho) {
  require(rho != nullptr, "distribution array is null");
  return otgs::VertexDistribution(std::vector<double>(rho, rho + n));
}

otgs::SummaryMethod method_from_code(int method) {
  switch (method) {
    case OTGS_METHOD_SUPERVISED: return otgs::SummaryMethod::supervised;
    case OTGS_METHOD_UNSUPERVISED: return otgs::SummaryMethod::unsupervised_per_graph;
    case OTGS_METHOD_RANDOM: return otgs::SummaryMethod::random_subset;
    case OTGS_METHOD_NONE: return otgs::SummaryMethod::none;
    default: throw otgs::ValidationError("unknown method code " + std::to_string(method));
  }
}

}  // namespace

extern "C" {

const char* otgs_version(void) { return "0.1.0"; }

const char* otgs_last_error(void) { return g_last_error.c_str(); }

void otgs_set_threads(int threads) { otgs::set_thread_count(threads); }

/* ---- datasets ---- */

int otgs_dataset_read(const char* path, otgs_dataset** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new otgs_dataset{otgs::read_dataset(path)};
  });
}

int otgs_dataset_write(const otgs_dataset* ds, const char* path) {
  return guarded([&] {
    require(ds && path, "null argument");
    otgs::write_dataset(ds->data, path);
  });
}

void otgs_dataset_free(otgs_dataset* ds) { delete ds; }

size_t otgs_dataset_size(const otgs_dataset* ds) { return ds ? ds->data.size() : 0; }

int otgs_dataset_vertices(const otgs_dataset* ds) { return ds ? ds->data.num_vertices() : 0; }

int otgs_dataset_dim(const otgs_dataset* ds) { return ds ? ds->data.feature_dim() : 0; }

int otgs_gen_synthetic(int nodes, int graphs, double edge_prob0, double edge_prob1,
                       uint64_t seed, otgs_dataset** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    otgs::SyntheticSpec spec;
    spec.n_nodes = nodes;
    spec.n_graphs = graphs;
    spec.edge_prob_class0 = edge_prob0;
    spec.edge_prob_class1 = edge_prob1;
    spec.seed = seed;
    *out = new otgs_dataset{otgs::gen_synthetic(spec)};
  });
}

int otgs_gen_monotone_gadget(int n, double strength, int samples, uint64_t seed,
                             otgs_dataset** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    auto model = otgs::make_monotonicity_gadget(n, strength);
    *out = new otgs_dataset{otgs::sample_dataset(model, samples, seed)};
  });
}

int otgs_gen_clique_gadget(int n, const int32_t* edges, size_t edge_count, int samples,
                           uint64_t seed, otgs_dataset** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    auto model = otgs::make_clique_gadget(graph_from_arrays(n, edges, edge_count));
    *out = new otgs_dataset{otgs::sample_dataset(model, samples, seed)};
  });
}

int otgs_dataset_from_images(const double* pixels, const int32_t* labels, size_t count,
                             int rows, int cols, otgs_dataset** out) {
  return guarded([&] {
    require(pixels && labels && out, "null argument");
    require(count > 0, "need at least one image");
    require(rows >= 1 && cols >= 1, "empty image");
    const size_t stride = static_cast<size_t>(rows) * cols;
    otgs::LabeledDataset data(static_cast<int>(stride), 1);
    for (size_t i = 0; i < count; ++i) {
      std::vector<double> image(pixels + i * stride, pixels + (i + 1) * stride);
      auto [graph, features] = otgs::grid_graph_from_image(image, rows, cols);
      data.append(otgs::Sample{std::move(graph), std::move(features), labels[i]});
    }
    *out = new otgs_dataset{std::move(data)};
  });
}

int otgs_dataset_split(const otgs_dataset* ds, double train_fraction, uint64_t seed,
                       otgs_dataset** out_train, otgs_dataset** out_test) {
  return guarded([&] {
    require(ds && out_train && out_test, "null argument");
    auto [train, test] = otgs::split_dataset(ds->data, train_fraction, seed);
    *out_train = new otgs_dataset{std::move(train)};
    *out_test = new otgs_dataset{std::move(test)};
  });
}

/* ---- information measures ---- */

int otgs_binary_entropy(double x, double* out_bits) {
  return guarded([&] {
    require(out_bits != nullptr, "null output");
    *out_bits = otgs::binary_entropy(x);
  });
}

int otgs_kl_bernoulli(double p0, double p1, double* out_bits) {
  return guarded([&] {
    require(out_bits != nullptr, "null output");
    *out_bits = otgs::kl_bernoulli(p0, p1);
  });
}

int otgs_exact_edge_mi(double p_class, double q0, double q1, double* out_bits) {
  return guarded([&] {
    require(out_bits != nullptr, "null output");
    *out_bits = otgs::exact_edge_mi(p_class, q0, q1);
  });
}

int otgs_mi_discrete(const int32_t* values, const int32_t* labels, size_t n, double* out_bits) {
  return guarded([&] {
    require(values && labels && out_bits, "null argument");
    std::vector<int> vals(values, values + n), labs(labels, labels + n);
    *out_bits = otgs::mi_discrete(vals, labs).value;
  });
}

int otgs_mi_continuous(const double* values, size_t n, size_t dim, const int32_t* labels,
                       int bins, double* out_bits) {
  return guarded([&] {
    require(values && labels && out_bits, "null argument");
    std::vector<int> labs(labels, labels + n);
    *out_bits =
        otgs::mi_continuous(std::span<const double>(values, n * dim), dim, labs, bins).value;
  });
}

int otgs_dataset_node_mi(const otgs_dataset* ds, int v, int bins, double* out_bits) {
  return guarded([&] {
    require(ds && out_bits, "null argument");
    auto labels = ds->data.labels();
    *out_bits =
        otgs::mi_continuous(ds->data.node_features(v), ds->data.feature_dim(), labels, bins)
            .value;
  });
}

int otgs_dataset_edge_kl(const otgs_dataset* ds, int u, int v, double* out_bits) {
  return guarded([&] {
    require(ds && out_bits, "null argument");
    auto labels = ds->data.labels();
    *out_bits = otgs::kl_bernoulli_edge(ds->data.edge_indicators(u, v), labels);
  });
}

int otgs_dataset_edge_mi(const otgs_dataset* ds, int u, int v, double* out_bits) {
  return guarded([&] {
    require(ds && out_bits, "null argument");
    auto labels = ds->data.labels();
    *out_bits = otgs::mi_discrete(ds->data.edge_indicators(u, v), labels).value;
  });
}

int otgs_dataset_sensitivity(const otgs_dataset* ds, int bins, double* out_scores) {
  return guarded([&] {
    require(ds && out_scores, "null argument");
    otgs::EstimatorOptions opts;
    opts.bins = bins;
    auto scores = otgs::sensitivity_scores(ds->data, opts);
    std::memcpy(out_scores, scores.data(), scores.size() * sizeof(double));
  });
}

/* ---- transport ---- */

int otgs_wasserstein(int n, const int32_t* edges, size_t edge_count, const double* edge_costs,
                     const double* rho0, const double* rho1, double* out_cost) {
  return guarded([&] {
    require(out_cost != nullptr, "null output");
    auto g = graph_from_arrays(n, edges, edge_count);
    auto cost = costs_from_arrays(g, edge_costs);
    auto sol = otgs::wasserstein(g, cost, distribution_from_array(n, rho0),
                                 distribution_from_array(n, rho1));
    *out_cost = sol.cost;
  });
}

int otgs_constrained_transport(int n, const int32_t* edges, size_t edge_count,
                               const double* edge_costs, const double* rho0,
                               const int32_t* support, size_t support_len, double* out_cost,
                               double* out_rho1) {
  return guarded([&] {
    require(out_cost != nullptr, "null output");
    require(support != nullptr, "null support");
    auto g = graph_from_arrays(n, edges, edge_count);
    auto cost = costs_from_arrays(g, edge_costs);
    std::vector<int> sup(support, support + support_len);
    auto sol = otgs::constrained_transport(g, cost, distribution_from_array(n, rho0), sup);
    *out_cost = sol.cost;
    if (out_rho1)
      std::memcpy(out_rho1, sol.result.mass().data(), static_cast<size_t>(n) * sizeof(double));
  });
}

int otgs_compress(int n, const int32_t* edges, size_t edge_count, const double* edge_costs,
                  const double* rho0, int k, const int32_t* forced, size_t forced_len,
                  int32_t* out_support, double* out_cost) {
  return guarded([&] {
    require(out_support && out_cost, "null output");
    auto g = graph_from_arrays(n, edges, edge_count);
    auto cost = costs_from_arrays(g, edge_costs);
    otgs::CompressOptions opts;
    if (forced_len > 0) {
      require(forced != nullptr, "null forced array");
      opts.forced.assign(forced, forced + forced_len);
    }
    auto result = otgs::ot_compress(g, distribution_from_array(n, rho0), cost, k, opts);
    for (int i = 0; i < k; ++i) out_support[i] = result.support[i];
    *out_cost = result.cost;
  });
}

/* ---- oracles ---- */

int otgs_infomax_clique(int n, const int32_t* base_edges, size_t edge_count, int k,
                        int32_t* out_subset, double* out_mi) {
  return guarded([&] {
    require(out_subset && out_mi, "null output");
    auto model = otgs::make_clique_gadget(graph_from_arrays(n, base_edges, edge_count));
    auto oracle = otgs::infomax_oracle(model, k);
    for (int i = 0; i < k; ++i) out_subset[i] = oracle.best_subset[i];
    *out_mi = oracle.best_mi;
  });
}

int otgs_infomax_monotone(int n, double strength, int k, int32_t* out_subset, double* out_mi) {
  return guarded([&] {
    require(out_subset && out_mi, "null output");
    auto model = otgs::make_monotonicity_gadget(n, strength);
    auto oracle = otgs::infomax_oracle(model, k);
    for (int i = 0; i < k; ++i) out_subset[i] = oracle.best_subset[i];
    *out_mi = oracle.best_mi;
  });
}

int otgs_demo_monotonicity(int n, double strength, otgs_monotonicity_report* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    auto model = otgs::make_monotonicity_gadget(n, strength);
    auto g = otgs::Graph::complete(n);
    auto cost = model.delta_costs();
    auto rho0 = otgs::VertexDistribution::uniform(n);

    auto compressed = otgs::ot_compress(g, rho0, cost, 2);
    auto oracle = otgs::infomax_oracle(model, 2);
    auto onto_oracle = otgs::constrained_transport(g, cost, rho0, oracle.best_subset);

    out->compress_cost = compressed.cost;
    out->compress_mi = otgs::subset_mi_exact(model, compressed.support);
    out->oracle_cost = onto_oracle.cost;
    out->oracle_mi = oracle.best_mi;
    out->compress_support[0] = compressed.support[0];
    out->compress_support[1] = compressed.support[1];
    out->oracle_support[0] = oracle.best_subset[0];
    out->oracle_support[1] = oracle.best_subset[1];
    out->violated = (out->compress_cost < out->oracle_cost - 1e-12 &&
                     out->compress_mi < out->oracle_mi - 1e-12)
                        ? 1
                        : 0;
  });
}

/* ---- summarization and evaluation ---- */

int otgs_fit(const otgs_dataset* train, double kappa, int method, int bins,
             double sensitivity_fraction, uint64_t seed, otgs_summary** out) {
  return guarded([&] {
    require(train && out, "null argument");
    otgs::FitOptions opts;
    opts.estimator.bins = bins;
    opts.sensitivity_fraction = sensitivity_fraction;
    opts.seed = seed;
    *out = new otgs_summary{
        otgs::fit_summarizer(train->data, kappa, method_from_code(method), opts)};
  });
}

void otgs_summary_free(otgs_summary* s) { delete s; }

int otgs_summary_support(const otgs_summary* s, int32_t* out, size_t cap, size_t* out_len) {
  return guarded([&] {
    require(s && out_len, "null argument");
    const auto& support = s->model.support;
    *out_len = support.size();
    require(out != nullptr || cap == 0, "null output buffer");
    for (size_t i = 0; i < std::min(cap, support.size()); ++i)
      out[i] = support[i];
  });
}

int otgs_apply(const otgs_summary* s, const otgs_dataset* test, otgs_dataset** out) {
  return guarded([&] {
    require(s && test && out, "null argument");
    *out = new otgs_dataset{otgs::summarize_testset(s->model, test->data)};
  });
}

int otgs_evaluate(const otgs_dataset* train, const otgs_dataset* test, const double* kappas,
                  size_t n_kappas, const int* methods, size_t n_methods, int folds, int trials,
                  uint64_t seed, const char* csv_path, char** out_summary) {
  return guarded([&] {
    require(train && test && kappas && methods, "null argument");
    std::vector<otgs::SummaryMethod> ms;
    ms.reserve(n_methods);
    for (size_t i = 0; i < n_methods; ++i) ms.push_back(method_from_code(methods[i]));
    auto report = otgs::run_experiment(train->data, test->data,
                                       std::span<const double>(kappas, n_kappas), ms, seed,
                                       folds, trials);
    if (csv_path) otgs::write_csv(report, csv_path);
    if (out_summary) {
      std::string table = otgs::summary_table(report);
      char* copy = new char[table.size() + 1];
      std::memcpy(copy, table.c_str(), table.size() + 1);
      *out_summary = copy;
    }
  });
}

void otgs_string_free(char* s) { delete[] s; }

}  // extern "C"
