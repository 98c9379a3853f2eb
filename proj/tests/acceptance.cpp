// Acceptance suite. Runs every criterion (or one, by number) and prints one
// PASS/FAIL line each, with sub-check details indented. Exit code = number of
// failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "core/compress.hpp"
#include "core/dataset.hpp"
#include "core/errors.hpp"
#include "core/eval.hpp"
#include "core/gadgets.hpp"
#include "core/info.hpp"
#include "core/params.hpp"
#include "core/rng.hpp"
#include "core/transport.hpp"
#include "oracles.hpp"

using namespace otgs;

namespace {

using Clock = std::chrono::steady_clock;

struct Checker {
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool condition, const std::string& what) {
    notes.push_back(std::string(condition ? "    ok   " : "    FAIL ") + what);
    ok = ok && condition;
  }
  void note(const std::string& what) { notes.push_back("    note " + what); }
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.7f", x);
  return buf;
}

double h2(double x) {
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

// ---------------------------------------------------------------- criterion 1
void criterion_1(Checker& c) {
  auto rng = seeded_stream(0xACC1, 0);
  int checked = 0, infeasible = 0;
  double worst = 0.0;
  bool all_match = true;
  std::uniform_int_distribution<int> support_size(1, 4);

  for (int trial = 0; trial < 200; ++trial) {
    auto inst = testutil::random_instance(rng, 6);
    const int n = inst.graph.num_vertices();

    double expected =
        testutil::wasserstein_oracle(inst.graph, inst.cost, inst.rho0, inst.rho1, 0.125);
    if (std::isinf(expected)) {
      ++infeasible;
      try {
        wasserstein(inst.graph, inst.cost, VertexDistribution(inst.rho0),
                    VertexDistribution(inst.rho1));
        all_match = false;
      } catch (const InfeasibleError&) {
      }
    } else {
      auto sol = wasserstein(inst.graph, inst.cost, VertexDistribution(inst.rho0),
                             VertexDistribution(inst.rho1));
      worst = std::max(worst, std::abs(sol.cost - expected));
      all_match = all_match && std::abs(sol.cost - expected) <= 1e-9;
    }

    std::vector<int> support;
    int want = std::min(support_size(rng), n);
    std::uniform_int_distribution<int> pick(0, n - 1);
    while (static_cast<int>(support.size()) < want) {
      int s = pick(rng);
      if (std::find(support.begin(), support.end(), s) == support.end()) support.push_back(s);
    }
    double expected_sup =
        testutil::constrained_oracle(inst.graph, inst.cost, inst.rho0, support);
    if (std::isinf(expected_sup)) {
      try {
        constrained_transport(inst.graph, inst.cost, VertexDistribution(inst.rho0), support);
        all_match = false;
      } catch (const InfeasibleError&) {
      }
    } else {
      auto sol =
          constrained_transport(inst.graph, inst.cost, VertexDistribution(inst.rho0), support);
      worst = std::max(worst, std::abs(sol.cost - expected_sup));
      all_match = all_match && std::abs(sol.cost - expected_sup) <= 1e-9;
    }
    ++checked;
  }
  c.expect(all_match, "wasserstein + constrained_transport match enumeration on " +
                          std::to_string(checked) + " instances (worst gap " + fmt(worst) +
                          ", " + std::to_string(infeasible) + " infeasible agreed)");
}

// ---------------------------------------------------------------- criterion 2
void criterion_2(Checker& c) {
  double d_value = exact_edge_mi(0.5, 0.0, 0.5);
  c.expect(std::abs(d_value - (h2(0.25) - h2(0.5) / 2)) <= 1e-9,
           "exact_edge_mi(0.5,0,0.5) = " + fmt(d_value) + " equals h(1/4) - h(1/2)/2");
  c.expect(std::abs(d_value - 0.3112781) <= 1e-6, "value prints as 0.3112781 bits");

  // independent 2^3 pattern enumeration: 9/16 on all-absent, 1/16 elsewhere
  double h_mix = -(9.0 / 16) * std::log2(9.0 / 16) - 7.0 / 16 * std::log2(1.0 / 16);
  double expected_triangle = h_mix - 1.5;
  auto triangle = make_clique_gadget(Graph::complete(3));
  double joint = subset_mi_exact(triangle, {0, 1, 2});
  c.expect(std::abs(joint - expected_triangle) <= 1e-9,
           "3-clique joint MI = " + fmt(joint) + " matches the 2^3 enumeration");
  c.expect(std::abs(joint - 0.7169172) <= 1e-6, "value prints as 0.7169172 bits");

  Graph base(6, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
  auto oracle = infomax_oracle(make_clique_gadget(base), 3, /*keep_table=*/true);
  c.expect(oracle.best_subset == std::vector<int>{0, 1, 2},
           "infomax oracle returns exactly the unique 3-clique");
  bool strictly_below = true;
  for (const auto& [subset, mi] : oracle.table)
    if (subset != oracle.best_subset && mi >= oracle.best_mi) strictly_below = false;
  c.expect(strictly_below, "every non-clique size-3 subset scores strictly lower");
}

// ---------------------------------------------------------------- criterion 3
void criterion_3(Checker& c) {
  auto model = make_monotonicity_gadget(10, 0.4);
  Graph g = Graph::complete(10);
  CostMatrix cost = model.delta_costs();
  auto rho0 = VertexDistribution::uniform(10);

  auto compressed = ot_compress(g, rho0, cost, 2);
  double mi = subset_mi_exact(model, compressed.support);
  bool disjoint = compressed.support[0] > 1 && compressed.support[1] > 1;

  c.expect(std::abs(compressed.cost - 0.04) <= 1e-9,
           "ot_compress(k=2) cost = 0.0400000 (actual " + fmt(compressed.cost) + ")");
  c.expect(disjoint, "support disjoint from {0,1} (actual {" +
                         std::to_string(compressed.support[0]) + "," +
                         std::to_string(compressed.support[1]) + "})");
  c.expect(mi == 0.0, "compressed-support exact MI = 0 (actual " + fmt(mi) + ")");
  c.note("the cheapest 2-support keeps one strong-pair endpoint at cost strength/(2n) = " +
         fmt(0.4 / 20) + "; supports avoiding both endpoints cost strength/n = " + fmt(0.04));

  auto onto_strong = constrained_transport(g, cost, rho0, {0, 1});
  c.expect(onto_strong.cost >= 0.16 - 1e-9,
           "any flow concentrating mass on the strong pair costs >= 0.1600000 (min " +
               fmt(onto_strong.cost) + ")");

  auto oracle = infomax_oracle(model, 2);
  c.expect(std::abs(oracle.best_mi - 0.1187089) <= 1e-6,
           "infomax oracle MI = 0.1187089 (actual " + fmt(oracle.best_mi) + ")");
  c.expect(oracle.best_subset == std::vector<int>{0, 1}, "oracle picks the strong pair");

  bool violated = compressed.cost < onto_strong.cost - 1e-12 && mi < oracle.best_mi - 1e-12;
  c.expect(violated,
           "information monotonicity is violated (cheaper support, strictly less MI)");
}

// ---------------------------------------------------------------- criterion 4
void criterion_4(Checker& c) {
  const int n = 20000;
  auto rng = seeded_stream(0xACC4, 0);
  std::bernoulli_distribution coin(0.5);
  std::vector<int> labels(n), same(n), indep(n), edge(n);
  for (int i = 0; i < n; ++i) {
    labels[i] = coin(rng);
    same[i] = labels[i];
    indep[i] = coin(rng);
    edge[i] = labels[i] == 1 && coin(rng) ? 1 : 0;
  }

  double mi_same = mi_discrete(same, labels).value;
  c.expect(std::abs(mi_same - 1.0) <= 0.02,
           "mi_discrete(X==C) = " + fmt(mi_same) + " within 0.02 of 1 bit");
  double mi_indep = mi_discrete(indep, labels).value;
  c.expect(mi_indep <= 0.05, "mi_discrete(independent X) = " + fmt(mi_indep) + " within 0.05 of 0");
  double mi_edge = mi_discrete(edge, labels).value;
  c.expect(std::abs(mi_edge - 0.3112781) <= 0.02,
           "mi_discrete(Bern(C/2) edge) = " + fmt(mi_edge) + " within 0.02 of 0.3112781");
  double kl = kl_bernoulli(0.25, 0.75);
  c.expect(std::abs(kl - 0.5 * std::log2(3.0)) <= 1e-9,
           "kl_bernoulli(0.25,0.75) = " + fmt(kl) + " equals log2(3)/2 = 0.7924813");
}

// ---------------------------------------------------------------- criterion 5
void criterion_5(Checker& c) {
  int recovered = 0;
  const int seeds = 10;
  for (int s = 0; s < seeds; ++s) {
    auto data = sample_dataset(make_monotonicity_gadget(10, 0.4), 20000, 0xE2E0 + s);
    auto params = supervised_params(data);
    bool strong_highest = true;
    double strong = params.cost(0, 1);
    for (int u = 0; u < 10 && strong_highest; ++u)
      for (int v = u + 1; v < 10; ++v) {
        if (u == 0 && v == 1) continue;
        if (params.cost(u, v) >= strong) {
          strong_highest = false;
          break;
        }
      }
    // full pipeline runs end to end at kappa = 0.2
    auto model = fit_summarizer(data, 0.2, SummaryMethod::supervised);
    if (model.support.size() != 2) strong_highest = false;
    if (strong_highest) ++recovered;
  }
  c.expect(recovered == seeds, "learned cost ranks the strong pair strictly highest on " +
                                   std::to_string(recovered) + "/" + std::to_string(seeds) +
                                   " seeds");
}

// ---------------------------------------------------------------- criterion 6
void criterion_6(Checker& c) {
  const int seeds = 5;
  double sup02 = 0, sup04 = 0, sup08 = 0, rand02 = 0, rand04 = 0;
  for (int s = 0; s < seeds; ++s) {
    SyntheticSpec spec;  // defaults: n=100, 1500 graphs, edge probs 0.5/0.9
    spec.seed = 1000 + s;
    auto data = gen_synthetic(spec);
    auto [train, test] = split_dataset(data, 0.5, spec.seed);

    std::vector<double> kappas{0.2, 0.4};
    std::vector<SummaryMethod> both{SummaryMethod::supervised, SummaryMethod::random_subset};
    auto report = run_experiment(train, test, kappas, both, spec.seed);
    for (const auto& summary : report.summaries) {
      if (summary.method == "supervised" && summary.kappa == 0.2) sup02 += summary.mean_accuracy;
      if (summary.method == "supervised" && summary.kappa == 0.4) sup04 += summary.mean_accuracy;
      if (summary.method == "random-subset" && summary.kappa == 0.2)
        rand02 += summary.mean_accuracy;
      if (summary.method == "random-subset" && summary.kappa == 0.4)
        rand04 += summary.mean_accuracy;
    }

    std::vector<double> high{0.8};
    std::vector<SummaryMethod> sup_only{SummaryMethod::supervised};
    auto high_report = run_experiment(train, test, high, sup_only, spec.seed);
    sup08 += high_report.summaries[0].mean_accuracy;
  }
  sup02 /= seeds;
  sup04 /= seeds;
  sup08 /= seeds;
  rand02 /= seeds;
  rand04 /= seeds;

  c.note("seed-averaged accuracies: supervised " + fmt(sup02) + "/" + fmt(sup04) + "/" +
         fmt(sup08) + " at kappa 0.2/0.4/0.8; random-subset " + fmt(rand02) + "/" +
         fmt(rand04) + " at 0.2/0.4");
  c.expect(sup02 >= rand02 + 0.05,
           "kappa 0.2: supervised >= random-subset + 0.05 (margin " + fmt(sup02 - rand02) + ")");
  c.expect(sup04 >= rand04 + 0.05,
           "kappa 0.4: supervised >= random-subset + 0.05 (margin " + fmt(sup04 - rand04) + ")");
  c.expect(sup02 >= 0.75, "kappa 0.2: supervised >= 0.75 absolute");
  c.expect(sup04 >= 0.75, "kappa 0.4: supervised >= 0.75 absolute");
  c.expect(sup08 >= sup02 - 0.05, "accuracy at kappa 0.8 >= accuracy at kappa 0.2 - 0.05");
}

// ---------------------------------------------------------------- criterion 7
void criterion_7(Checker& c) {
  SyntheticSpec spec;
  spec.n_graphs = 300;
  spec.seed = 7;
  auto data = gen_synthetic(spec);
  LabeledDataset train(100, 1), test(100, 1);
  for (std::size_t i = 0; i < 200; ++i) train.append(data[i]);
  for (std::size_t i = 200; i < 300; ++i) test.append(data[i]);

  auto supervised = fit_summarizer(train, 0.4, SummaryMethod::supervised);
  auto per_graph = fit_summarizer(train, 0.4, SummaryMethod::unsupervised_per_graph);

  // warm-up both paths on a 2-sample slice before timing
  LabeledDataset slice(100, 1);
  slice.append(test[0]);
  slice.append(test[1]);
  summarize_testset(supervised, slice);
  summarize_testset(per_graph, slice);

  auto t0 = Clock::now();
  auto fast = summarize_testset(supervised, test);
  double supervised_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();

  t0 = Clock::now();
  auto slow = summarize_testset(per_graph, test);
  double per_graph_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();

  c.note("summarizing 100 test graphs: trained supervised " + fmt(supervised_ms) +
         " ms, per-graph OTC " + fmt(per_graph_ms) + " ms");
  c.expect(fast.size() == 100 && slow.size() == 100, "both methods summarized all graphs");
  c.expect(fast.num_vertices() == 40 && slow.num_vertices() == 40, "both hit the 40-vertex budget");
  c.expect(per_graph_ms >= 10.0 * supervised_ms,
           "trained model is >= 10x faster (ratio " +
               fmt(per_graph_ms / std::max(supervised_ms, 1e-9)) + "x)");
}

// ---------------------------------------------------------------- criterion 8
void criterion_8(Checker& c) {
  auto rng = seeded_stream(0xACC8, 0);

  {  // distribution validity + conservation through the solver
    bool good = true;
    for (int t = 0; t < 30; ++t) {
      auto inst = testutil::random_instance(rng, 6);
      std::vector<int> support{0};
      try {
        auto sol = constrained_transport(inst.graph, inst.cost,
                                         VertexDistribution(inst.rho0), support);
        double total = std::accumulate(sol.result.mass().begin(), sol.result.mass().end(), 0.0);
        good = good && std::abs(total - 1.0) <= 1e-9;
        auto algebra = flow_result(inst.graph, sol.flow, VertexDistribution(inst.rho0));
        for (int v = 0; v < inst.graph.num_vertices(); ++v)
          good = good && std::abs(algebra[v] - sol.result[v]) <= 1e-9;
      } catch (const InfeasibleError&) {
      }
    }
    c.expect(good, "transport results stay valid distributions matching the flow algebra");
  }

  {  // support monotonicity
    bool good = true;
    for (int t = 0; t < 30; ++t) {
      auto inst = testutil::random_instance(rng, 6);
      ShortestPathCosts spc(inst.graph, inst.cost);
      auto rho = VertexDistribution(inst.rho0);
      std::vector<int> small{0}, large{0, inst.graph.num_vertices() - 1};
      if (large[1] == 0) continue;
      good = good && spc.support_cost(rho, large) <= spc.support_cost(rho, small) + 1e-12;
    }
    c.expect(good, "constrained cost is non-increasing in the support");
  }

  {  // exhaustive <= greedy and k-monotonicity
    bool good = true;
    for (int t = 0; t < 12; ++t) {
      auto inst = testutil::random_instance(rng, 6);
      auto rho = VertexDistribution(inst.rho0);
      try {
        auto g2 = ot_compress(inst.graph, rho, inst.cost, 2);
        auto g1 = ot_compress(inst.graph, rho, inst.cost, 1);
        auto e2 = exhaustive_compress(inst.graph, rho, inst.cost, 2);
        good = good && e2.cost <= g2.cost + 1e-9 && g1.cost >= g2.cost - 1e-9;
      } catch (const InfeasibleError&) {
      }
    }
    c.expect(good, "exhaustive <= greedy and cost falls as k grows");
  }

  {  // estimator invariants
    const int n = 4000;
    std::vector<int> labels(n), x(n);
    std::bernoulli_distribution coin(0.5);
    for (int i = 0; i < n; ++i) {
      labels[i] = coin(rng);
      x[i] = coin(rng) ? labels[i] : coin(rng);
    }
    auto forward = mi_discrete(x, labels);
    auto backward = mi_discrete(labels, x);
    bool good = forward.value >= 0.0 && forward.value <= 1.0 &&
                std::abs(forward.value - backward.value) <= 1e-12;
    std::vector<double> xd(x.begin(), x.end()), scaled(n);
    for (int i = 0; i < n; ++i) scaled[i] = 42.0 * xd[i];
    good = good && std::abs(mi_continuous(xd, 1, labels).value -
                            mi_continuous(scaled, 1, labels).value) <= 1e-12;
    good = good && kl_bernoulli(0.37, 0.37) == 0.0;
    c.expect(good, "MI symmetry, range, scaling invariance, KL(q||q)=0");
  }

  {  // permutation equivariance of supervised params
    Graph base(5, {{0, 1}, {0, 2}, {1, 2}});
    auto data = sample_dataset(make_clique_gadget(base), 2000, 51);
    auto params = supervised_params(data);
    LabeledDataset permuted(5, 1);
    std::vector<int> perm{4, 2, 0, 1, 3};
    for (std::size_t i = 0; i < data.size(); ++i) {
      const Sample& s = data[i];
      std::vector<std::pair<int, int>> edges;
      for (auto [u, v] : s.graph.edges()) edges.emplace_back(perm[u], perm[v]);
      std::vector<double> features(5);
      for (int v = 0; v < 5; ++v) features[perm[v]] = s.features[v];
      permuted.append(Sample{Graph(5, std::move(edges)), std::move(features), s.label});
    }
    auto params_perm = supervised_params(permuted);
    bool good = true;
    for (int u = 0; u < 5; ++u)
      for (int v = u + 1; v < 5; ++v)
        good = good &&
               std::abs(params_perm.cost(perm[u], perm[v]) - params.cost(u, v)) <= 1e-12;
    c.expect(good, "vertex relabeling permutes the supervised cost matrix consistently");
  }

  {  // seed reproducibility + serialization round trip
    SyntheticSpec spec;
    spec.n_nodes = 10;
    spec.n_graphs = 30;
    spec.seed = 77;
    auto a = gen_synthetic(spec);
    auto b = gen_synthetic(spec);
    bool good = a.size() == b.size();
    for (std::size_t i = 0; good && i < a.size(); ++i)
      good = a[i].features == b[i].features && a[i].graph.edges() == b[i].graph.edges();

    const char* path = "/tmp/otgs_acceptance_rt.ndjson";
    write_dataset(a, path);
    auto back = read_dataset(path);
    for (std::size_t i = 0; good && i < a.size(); ++i)
      good = back[i].features == a[i].features && back[i].graph.edges() == a[i].graph.edges();
    std::remove(path);
    c.expect(good, "seeded generation is bit-reproducible and serialization round-trips");
  }

  {  // classifier determinism
    SyntheticSpec spec;
    spec.n_nodes = 8;
    spec.n_graphs = 60;
    spec.seed = 78;
    auto data = gen_synthetic(spec);
    auto a = classify_cv(data, 5, 2, 5);
    auto b = classify_cv(data, 5, 2, 5);
    c.expect(a.fold_accuracies == b.fold_accuracies,
             "classify_cv reproduces accuracies to the last digit");
  }
}

struct Criterion {
  int number;
  const char* title;
  double time_limit_s;
  std::function<void(Checker&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> criteria{
      {1, "flow-solver oracle equivalence (200 random instances)", 10.0, criterion_1},
      {2, "exact MI arithmetic and clique-oracle maximization", 1.0, criterion_2},
      {3, "monotonicity-gadget certificate (pinned reference values)", 1.0, criterion_3},
      {4, "estimator consistency at N = 20000", 5.0, criterion_4},
      {5, "end-to-end supervised recovery of the strong pair", 30.0, criterion_5},
      {6, "synthetic benchmark comparison across methods", 600.0, criterion_6},
      {7, "trained-model vs per-graph summarization timing", 60.0, criterion_7},
      {8, "module invariant suites", 120.0, criterion_8},
  };

  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failures = 0;
  for (const auto& criterion : criteria) {
    if (only != 0 && criterion.number != only) continue;
    Checker checker;
    auto start = Clock::now();
    try {
      criterion.run(checker);
    } catch (const std::exception& e) {
      checker.expect(false, std::string("unexpected exception: ") + e.what());
    }
    double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    checker.expect(elapsed < criterion.time_limit_s,
                   "runtime " + fmt(elapsed) + " s within " + fmt(criterion.time_limit_s) +
                       " s");
    std::printf("criterion %d %s (%.2f s): %s\n", criterion.number,
                checker.ok ? "PASS" : "FAIL", elapsed, criterion.title);
    for (const auto& note : checker.notes) std::printf("%s\n", note.c_str());
    std::fflush(stdout);
    if (!checker.ok) ++failures;
  }
  return failures;
}
