// otgs command-line tool: dataset generation, summarization, exact oracles,
// the monotonicity demo, and the evaluation sweep, all through the C API.
//
// Exit codes: 0 success, 2 validation error, 3 infeasible instance, 4 I/O
// error. Every stochastic subcommand requires --seed and is bit-reproducible
// given it (timing columns in evaluate CSVs naturally vary). Each run writes
// a manifest JSON with the resolved option values next to its main output.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "otgs.h"

namespace {

using nlohmann::json;

struct CliFailure {
  int exit_code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) {
  throw CliFailure{code, message};
}

void check(int rc, const std::string& context) {
  if (rc == OTGS_OK) return;
  int exit_code = rc == OTGS_ERR_LIMIT ? 2 : (rc == OTGS_ERR_INTERNAL ? 1 : rc);
  fail(exit_code, context + ": " + otgs_last_error());
}

struct DatasetHandle {
  otgs_dataset* ptr = nullptr;
  DatasetHandle() = default;
  DatasetHandle(DatasetHandle&& other) noexcept : ptr(other.ptr) { other.ptr = nullptr; }
  DatasetHandle& operator=(DatasetHandle&& other) noexcept {
    std::swap(ptr, other.ptr);
    return *this;
  }
  ~DatasetHandle() { otgs_dataset_free(ptr); }
};

struct SummaryHandle {
  otgs_summary* ptr = nullptr;
  ~SummaryHandle() { otgs_summary_free(ptr); }
};

void write_manifest(const std::string& primary_output, const std::string& subcommand,
                    const json& options) {
  json manifest;
  manifest["tool"] = "otgs";
  manifest["version"] = otgs_version();
  manifest["subcommand"] = subcommand;
  manifest["options"] = options;
  std::string path = primary_output + ".manifest.json";
  std::ofstream out(path);
  if (!out) fail(4, "cannot write manifest " + path);
  out << manifest.dump(2) << "\n";
}

std::vector<std::pair<int, int>> parse_edge_list(const std::string& text) {
  std::vector<std::pair<int, int>> edges;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto dash = item.find('-');
    if (dash == std::string::npos) fail(2, "bad edge '" + item + "', expected u-v");
    try {
      edges.emplace_back(std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1)));
    } catch (const std::exception&) {
      fail(2, "bad edge '" + item + "', expected u-v");
    }
  }
  if (edges.empty()) fail(2, "empty edge list");
  return edges;
}

std::vector<int32_t> pack_edges(const std::vector<std::pair<int, int>>& edges) {
  std::vector<int32_t> packed;
  packed.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    packed.push_back(u);
    packed.push_back(v);
  }
  return packed;
}

int method_code(const std::string& name) {
  if (name == "supervised") return OTGS_METHOD_SUPERVISED;
  if (name == "unsupervised" || name == "unsupervised-per-graph") return OTGS_METHOD_UNSUPERVISED;
  if (name == "random-subset" || name == "random") return OTGS_METHOD_RANDOM;
  if (name == "none") return OTGS_METHOD_NONE;
  fail(2, "unknown method '" + name + "'");
}

DatasetHandle load_dataset(const std::string& path) {
  DatasetHandle ds;
  check(otgs_dataset_read(path.c_str(), &ds.ptr), "reading " + path);
  return ds;
}

// ---- gen ----

struct GenSyntheticOpts {
  int nodes = 100;
  int graphs = 1500;
  double edge_prob0 = 0.5;
  double edge_prob1 = 0.9;
  std::uint64_t seed = 0;
  std::string out;
};

void run_gen_synthetic(const GenSyntheticOpts& o) {
  DatasetHandle ds;
  check(otgs_gen_synthetic(o.nodes, o.graphs, o.edge_prob0, o.edge_prob1, o.seed, &ds.ptr),
        "gen synthetic");
  check(otgs_dataset_write(ds.ptr, o.out.c_str()), "writing " + o.out);
  write_manifest(o.out, "gen synthetic",
                 {{"nodes", o.nodes},
                  {"graphs", o.graphs},
                  {"edge-prob0", o.edge_prob0},
                  {"edge-prob1", o.edge_prob1},
                  {"seed", o.seed},
                  {"out", o.out}});
  std::cout << "wrote " << otgs_dataset_size(ds.ptr) << " graphs (n=" << o.nodes << ") to "
            << o.out << "\n";
}

struct GenMonotoneOpts {
  int n = 10;
  double strength = 0.4;
  int samples = 0;
  std::uint64_t seed = 0;
  std::string out;
};

void run_gen_monotone(const GenMonotoneOpts& o) {
  DatasetHandle ds;
  check(otgs_gen_monotone_gadget(o.n, o.strength, o.samples, o.seed, &ds.ptr),
        "gen gadget-monotone");
  check(otgs_dataset_write(ds.ptr, o.out.c_str()), "writing " + o.out);
  write_manifest(o.out, "gen gadget-monotone",
                 {{"n", o.n},
                  {"const", o.strength},
                  {"samples", o.samples},
                  {"seed", o.seed},
                  {"out", o.out}});
  std::cout << "wrote " << otgs_dataset_size(ds.ptr) << " graphs to " << o.out << "\n";
}

struct GenCliqueOpts {
  std::string edges;
  int n = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  std::string out;
};

void run_gen_clique(const GenCliqueOpts& o) {
  auto edges = parse_edge_list(o.edges);
  int n = o.n;
  for (auto [u, v] : edges) n = std::max({n, u + 1, v + 1});
  auto packed = pack_edges(edges);
  DatasetHandle ds;
  check(otgs_gen_clique_gadget(n, packed.data(), edges.size(), o.samples, o.seed, &ds.ptr),
        "gen gadget-clique");
  check(otgs_dataset_write(ds.ptr, o.out.c_str()), "writing " + o.out);
  write_manifest(o.out, "gen gadget-clique",
                 {{"edges", o.edges},
                  {"n", n},
                  {"samples", o.samples},
                  {"seed", o.seed},
                  {"out", o.out}});
  std::cout << "wrote " << otgs_dataset_size(ds.ptr) << " graphs (n=" << n << ") to " << o.out
            << "\n";
}

struct GenGridOpts {
  std::string images;
  std::string out;
};

void run_gen_grid(const GenGridOpts& o) {
  // Input: NDJSON records {"rows":H,"cols":W,"label":0|1,"pixels":[row-major]}.
  std::ifstream in(o.images);
  if (!in) fail(4, "cannot open " + o.images);
  std::vector<double> pixels;
  std::vector<int32_t> labels;
  int rows = -1, cols = -1;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      fail(4, o.images + " line " + std::to_string(line_no) + ": " + e.what());
    }
    int r = rec.value("rows", 0), c = rec.value("cols", 0);
    if (rows < 0) {
      rows = r;
      cols = c;
    } else if (r != rows || c != cols) {
      fail(4, o.images + " line " + std::to_string(line_no) + ": image size mismatch");
    }
    labels.push_back(rec.value("label", 0));
    const auto& px = rec.at("pixels");
    if (static_cast<int>(px.size()) != rows * cols)
      fail(4, o.images + " line " + std::to_string(line_no) + ": expected " +
                  std::to_string(rows * cols) + " pixels, got " + std::to_string(px.size()));
    for (const auto& p : px) pixels.push_back(p.get<double>());
  }
  if (labels.empty()) fail(2, "no images in " + o.images);

  DatasetHandle ds;
  check(otgs_dataset_from_images(pixels.data(), labels.data(), labels.size(), rows, cols,
                                 &ds.ptr),
        "gen grid");
  check(otgs_dataset_write(ds.ptr, o.out.c_str()), "writing " + o.out);
  write_manifest(o.out, "gen grid", {{"images", o.images}, {"out", o.out}});
  std::cout << "wrote " << labels.size() << " pixel-grid graphs (" << rows << "x" << cols
            << ") to " << o.out << "\n";
}

// ---- summarize ----

struct SummarizeOpts {
  std::string train, test, prefix;
  double kappa = 0.5;
  std::string method = "supervised";
  std::uint64_t seed = 0;
  int bins = 0;
  double sensitivity_fraction = 0.0;
};

void run_summarize(const SummarizeOpts& o) {
  auto train = load_dataset(o.train);
  auto test = load_dataset(o.test);

  SummaryHandle model;
  check(otgs_fit(train.ptr, o.kappa, method_code(o.method), o.bins, o.sensitivity_fraction,
                 o.seed, &model.ptr),
        "fitting summarizer");

  DatasetHandle summarized;
  check(otgs_apply(model.ptr, test.ptr, &summarized.ptr), "summarizing test set");
  std::string data_path = o.prefix + ".summarized.ndjson";
  check(otgs_dataset_write(summarized.ptr, data_path.c_str()), "writing " + data_path);

  size_t support_len = 0;
  std::vector<int32_t> support(static_cast<size_t>(otgs_dataset_vertices(train.ptr)));
  check(otgs_summary_support(model.ptr, support.data(), support.size(), &support_len),
        "reading support");
  if (support_len > 0) {
    std::string support_path = o.prefix + ".support.txt";
    std::ofstream out(support_path);
    if (!out) fail(4, "cannot write " + support_path);
    for (size_t i = 0; i < support_len; ++i) out << support[i] << "\n";
    std::cout << "support (" << support_len << " vertices) -> " << support_path << "\n";
  } else {
    std::cout << "per-graph method: no single support set\n";
  }
  write_manifest(o.prefix, "summarize",
                 {{"train", o.train},
                  {"test", o.test},
                  {"kappa", o.kappa},
                  {"method", o.method},
                  {"seed", o.seed},
                  {"bins", o.bins},
                  {"sensitivity-fraction", o.sensitivity_fraction},
                  {"out-prefix", o.prefix}});
  std::cout << "summarized test set -> " << data_path << "\n";
}

// ---- oracle ----

struct OracleOpts {
  std::string gadget = "clique";
  std::string edges;
  int n = 0;
  double strength = 0.4;
  int k = 0;
  double gamma = -1.0;
  bool has_gamma = false;
};

void run_oracle(const OracleOpts& o) {
  if (o.k < 1) fail(2, "oracle: --k must be positive");
  std::vector<int32_t> subset(static_cast<size_t>(o.k));
  double mi = 0.0;
  if (o.gadget == "clique") {
    if (o.edges.empty()) fail(2, "oracle --gadget clique requires --edges");
    auto edges = parse_edge_list(o.edges);
    int n = o.n;
    for (auto [u, v] : edges) n = std::max({n, u + 1, v + 1});
    auto packed = pack_edges(edges);
    check(otgs_infomax_clique(n, packed.data(), edges.size(), o.k, subset.data(), &mi),
          "oracle");
  } else if (o.gadget == "monotone") {
    check(otgs_infomax_monotone(o.n, o.strength, o.k, subset.data(), &mi), "oracle");
  } else {
    fail(2, "unknown gadget '" + o.gadget + "' (expected clique or monotone)");
  }

  std::cout << "best subset:";
  for (int i = 0; i < o.k; ++i) std::cout << " " << subset[i];
  std::printf("\nexact MI: %.7f bits\n", mi);
  // 1e-7 slack so thresholds quoted to 7 decimals compare as intended
  if (o.has_gamma)
    std::cout << "decision (MI >= gamma): " << (mi >= o.gamma - 1e-7 ? 1 : 0) << "\n";
}

// ---- demo-monotonicity ----

void run_demo(int n, double strength) {
  otgs_monotonicity_report report;
  check(otgs_demo_monotonicity(n, strength, &report), "demo-monotonicity");
  std::printf("compressor support: {%d,%d}  cost %.7f  exact MI %.7f bits\n",
              report.compress_support[0], report.compress_support[1], report.compress_cost,
              report.compress_mi);
  std::printf("MI-optimal support: {%d,%d}  flow cost %.7f  exact MI %.7f bits\n",
              report.oracle_support[0], report.oracle_support[1], report.oracle_cost,
              report.oracle_mi);
  std::printf("information monotonicity violated: %s\n", report.violated ? "PASS" : "FAIL");
}

// ---- evaluate ----

struct EvaluateOpts {
  std::string train, test, data, out;
  double train_fraction = 0.5;
  std::vector<double> kappas;
  std::vector<std::string> methods;
  int folds = 5;
  int trials = 5;
  std::uint64_t seed = 0;
};

void run_evaluate(const EvaluateOpts& o) {
  DatasetHandle train, test;
  if (!o.data.empty()) {
    auto whole = load_dataset(o.data);
    check(otgs_dataset_split(whole.ptr, o.train_fraction, o.seed, &train.ptr, &test.ptr),
          "splitting " + o.data);
  } else {
    if (o.train.empty() || o.test.empty())
      fail(2, "evaluate needs --train and --test, or --data with --train-fraction");
    train = load_dataset(o.train);
    test = load_dataset(o.test);
  }

  std::vector<int> methods;
  for (const auto& m : o.methods) methods.push_back(method_code(m));

  char* table = nullptr;
  check(otgs_evaluate(train.ptr, test.ptr, o.kappas.data(), o.kappas.size(), methods.data(),
                      methods.size(), o.folds, o.trials, o.seed, o.out.c_str(), &table),
        "evaluate");
  std::cout << table;
  otgs_string_free(table);
  write_manifest(o.out, "evaluate",
                 {{"train", o.train},
                  {"test", o.test},
                  {"data", o.data},
                  {"train-fraction", o.train_fraction},
                  {"kappas", o.kappas},
                  {"methods", o.methods},
                  {"folds", o.folds},
                  {"trials", o.trials},
                  {"seed", o.seed},
                  {"out", o.out}});
  std::cout << "per-fold rows -> " << o.out << "\n";
}

// ---- mi ----

struct MiOpts {
  std::string input;
  int node = -1;
  std::string edge;
  bool all_nodes = false;
  bool sensitivity = false;
  int bins = 0;
};

void run_mi(const MiOpts& o) {
  auto ds = load_dataset(o.input);
  int n = otgs_dataset_vertices(ds.ptr);
  bool did_something = false;

  if (o.node >= 0) {
    double mi = 0.0;
    check(otgs_dataset_node_mi(ds.ptr, o.node, o.bins, &mi), "node MI");
    std::printf("I(X_%d; C) = %.6f bits\n", o.node, mi);
    did_something = true;
  }
  if (!o.edge.empty()) {
    auto edges = parse_edge_list(o.edge);
    for (auto [u, v] : edges) {
      double kl = 0.0, mi = 0.0;
      check(otgs_dataset_edge_kl(ds.ptr, u, v, &kl), "edge KL");
      check(otgs_dataset_edge_mi(ds.ptr, u, v, &mi), "edge MI");
      std::printf("edge {%d,%d}: KL(E|C=0 || E|C=1) = %.6f bits, I(E;C) = %.6f bits\n", u, v,
                  kl, mi);
    }
    did_something = true;
  }
  if (o.all_nodes) {
    for (int v = 0; v < n; ++v) {
      double mi = 0.0;
      check(otgs_dataset_node_mi(ds.ptr, v, o.bins, &mi), "node MI");
      std::printf("I(X_%d; C) = %.6f bits\n", v, mi);
    }
    did_something = true;
  }
  if (o.sensitivity) {
    std::vector<double> scores(static_cast<size_t>(n));
    check(otgs_dataset_sensitivity(ds.ptr, o.bins, scores.data()), "sensitivity");
    for (int v = 0; v < n; ++v) std::printf("sensitivity(%d) = %.6f\n", v, scores[v]);
    did_something = true;
  }
  if (!did_something) fail(2, "mi: pass --node, --edge, --all-nodes, or --sensitivity");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"otgs — optimal-transport graph summarization toolkit"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads,
                 "worker threads (default: hardware; env OTGS_THREADS as fallback)")
      ->envname("OTGS_THREADS");

  auto* gen = app.add_subcommand("gen", "generate datasets");
  gen->require_subcommand(1);

  GenSyntheticOpts syn;
  auto* gen_syn = gen->add_subcommand("synthetic", "class-conditional Gaussian/edge benchmark");
  gen_syn->add_option("--nodes", syn.nodes, "vertices per graph")->capture_default_str();
  gen_syn->add_option("--graphs", syn.graphs, "graphs to draw (even)")->capture_default_str();
  gen_syn->add_option("--edge-prob0", syn.edge_prob0, "edge probability under class 0")
      ->capture_default_str();
  gen_syn->add_option("--edge-prob1", syn.edge_prob1, "edge probability under class 1")
      ->capture_default_str();
  gen_syn->add_option("--seed", syn.seed, "RNG seed")->required();
  gen_syn->add_option("--out", syn.out, "output .ndjson path")->required();

  GenMonotoneOpts mono;
  auto* gen_mono = gen->add_subcommand("gadget-monotone", "monotonicity-demo edge model");
  gen_mono->add_option("--n", mono.n, "vertices (>= 4)")->capture_default_str();
  gen_mono->add_option("--const", mono.strength, "probability gap on the top pair, in (0,1)")
      ->capture_default_str();
  gen_mono->add_option("--samples", mono.samples, "graphs to draw")->required();
  gen_mono->add_option("--seed", mono.seed, "RNG seed")->required();
  gen_mono->add_option("--out", mono.out, "output .ndjson path")->required();

  GenCliqueOpts clique;
  auto* gen_clique = gen->add_subcommand("gadget-clique", "clique-detection edge model");
  gen_clique->add_option("--edges", clique.edges, "base edges, e.g. 0-1,1-2,0-2")->required();
  gen_clique->add_option("--n", clique.n, "vertices (default: max endpoint + 1)");
  gen_clique->add_option("--samples", clique.samples, "graphs to draw")->required();
  gen_clique->add_option("--seed", clique.seed, "RNG seed")->required();
  gen_clique->add_option("--out", clique.out, "output .ndjson path")->required();

  GenGridOpts grid;
  auto* gen_grid = gen->add_subcommand("grid", "pixel grids from an NDJSON image file");
  gen_grid->add_option("--images", grid.images,
                       "NDJSON of {\"rows\",\"cols\",\"label\",\"pixels\"} records")
      ->required();
  gen_grid->add_option("--out", grid.out, "output .ndjson path")->required();

  SummarizeOpts sum;
  auto* summarize = app.add_subcommand("summarize", "fit on train, compress the test set");
  summarize->add_option("--train", sum.train, "training .ndjson")->required();
  summarize->add_option("--test", sum.test, "test .ndjson")->required();
  summarize->add_option("--kappa", sum.kappa, "compression ratio in (0,1]")->required();
  summarize->add_option("--method", sum.method,
                        "supervised | unsupervised | random-subset | none")
      ->capture_default_str();
  summarize->add_option("--seed", sum.seed, "RNG seed")->required();
  summarize->add_option("--bins", sum.bins, "estimator bins (0 = auto)")->capture_default_str();
  summarize->add_option("--sensitivity-fraction", sum.sensitivity_fraction,
                        "force top class-sensitive vertices into the support, in (0,1]")
      ->capture_default_str();
  summarize->add_option("--out-prefix", sum.prefix, "prefix for output files")->required();

  OracleOpts ora;
  auto* oracle = app.add_subcommand("oracle", "exact MI-optimal subset search");
  oracle->add_option("--gadget", ora.gadget, "clique | monotone")->capture_default_str();
  oracle->add_option("--edges", ora.edges, "clique gadget base edges");
  oracle->add_option("--n", ora.n, "vertex count");
  oracle->add_option("--const", ora.strength, "monotone gadget probability gap")
      ->capture_default_str();
  oracle->add_option("--k", ora.k, "subset size")->required();
  auto* gamma_opt = oracle->add_option("--gamma", ora.gamma, "decision threshold in bits");

  int demo_n = 10;
  double demo_const = 0.4;
  auto* demo = app.add_subcommand("demo-monotonicity",
                                  "compressor vs exact oracle on the monotone gadget");
  demo->add_option("--n", demo_n, "vertices (>= 4)")->capture_default_str();
  demo->add_option("--const", demo_const, "probability gap, in (0,1)")->capture_default_str();

  EvaluateOpts ev;
  auto* evaluate = app.add_subcommand("evaluate", "accuracy/timing sweep to CSV");
  evaluate->add_option("--train", ev.train, "training .ndjson");
  evaluate->add_option("--test", ev.test, "test .ndjson");
  evaluate->add_option("--data", ev.data, "single .ndjson to split instead of --train/--test");
  evaluate->add_option("--train-fraction", ev.train_fraction, "split fraction for --data")
      ->capture_default_str();
  evaluate->add_option("--kappas", ev.kappas, "compression ratios")->required()->delimiter(',');
  evaluate->add_option("--methods", ev.methods, "methods to compare")->required()->delimiter(',');
  evaluate->add_option("--folds", ev.folds, "CV folds")->capture_default_str();
  evaluate->add_option("--trials", ev.trials, "CV trials")->capture_default_str();
  evaluate->add_option("--seed", ev.seed, "RNG seed")->required();
  evaluate->add_option("--out", ev.out, "output CSV path")->required();

  MiOpts mi;
  auto* mi_cmd = app.add_subcommand("mi", "ad-hoc estimator runs on a dataset");
  mi_cmd->add_option("--input", mi.input, "dataset .ndjson")->required();
  mi_cmd->add_option("--node", mi.node, "node feature MI vs label");
  mi_cmd->add_option("--edge", mi.edge, "edge list, e.g. 0-1,2-3");
  mi_cmd->add_flag("--all-nodes", mi.all_nodes, "MI of every node feature");
  mi_cmd->add_flag("--sensitivity", mi.sensitivity, "per-node class sensitivity scores");
  mi_cmd->add_option("--bins", mi.bins, "estimator bins (0 = auto)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // bad flags are validation errors
  }

  otgs_set_threads(threads);
  try {
    if (gen_syn->parsed()) run_gen_synthetic(syn);
    else if (gen_mono->parsed()) run_gen_monotone(mono);
    else if (gen_clique->parsed()) run_gen_clique(clique);
    else if (gen_grid->parsed()) run_gen_grid(grid);
    else if (summarize->parsed()) run_summarize(sum);
    else if (oracle->parsed()) {
      ora.has_gamma = gamma_opt->count() > 0;
      run_oracle(ora);
    } else if (demo->parsed()) run_demo(demo_n, demo_const);
    else if (evaluate->parsed()) run_evaluate(ev);
    else if (mi_cmd->parsed()) run_mi(mi);
  } catch (const CliFailure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.exit_code;
  }
  return 0;
}
