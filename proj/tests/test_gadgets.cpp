#include <doctest.h>

#include <cmath>

#include "core/errors.hpp"
#include "core/gadgets.hpp"
#include "core/info.hpp"
#include "core/rng.hpp"

using namespace otgs;

namespace {

double h2(double x) {
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

// 2^3-pattern enumeration for the triangle, written out independently:
// under C=0 every edge is absent; under C=1 each of the 8 patterns has
// probability 1/8, so the mixture puts 9/16 on all-absent and 1/16 elsewhere.
double triangle_joint_mi_reference() {
  double h_mix = -(9.0 / 16) * std::log2(9.0 / 16) - 7.0 * (1.0 / 16) * std::log2(1.0 / 16);
  double h_cond = 0.5 * 0.0 + 0.5 * 3.0;
  return h_mix - h_cond;
}

}  // namespace

TEST_CASE("clique gadget construction") {
  Graph empty(4, {});
  auto nothing = make_clique_gadget(empty);
  CHECK(subset_mi_exact(nothing, {0, 1, 2, 3}) == 0.0);

  Graph single(2, {{0, 1}});
  auto one_edge = make_clique_gadget(single);
  CHECK(one_edge.q0(0, 1) == 0.0);
  CHECK(one_edge.q1(0, 1) == 0.5);
  CHECK(subset_mi_exact(one_edge, {0, 1}) ==
        doctest::Approx(exact_edge_mi(0.5, 0.0, 0.5)).epsilon(1e-12));
  CHECK(subset_mi_exact(one_edge, {0, 1}) == doctest::Approx(0.3112781).epsilon(1e-6));
}

TEST_CASE("triangle joint MI by independent pattern enumeration") {
  auto model = make_clique_gadget(Graph::complete(3));
  double expected = triangle_joint_mi_reference();
  CHECK(subset_mi_exact(model, {0, 1, 2}) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(subset_mi_exact(model, {0, 1, 2}) == doctest::Approx(0.7169172).epsilon(1e-6));
  CHECK(expected == doctest::Approx(2.2169172 - 1.5).epsilon(1e-6));
  // strictly below the per-edge sum: the edges are correlated through C
  CHECK(subset_mi_exact(model, {0, 1, 2}) < 3 * exact_edge_mi(0.5, 0.0, 0.5) - 0.2);
}

TEST_CASE("monotonicity gadget structure") {
  CHECK_THROWS_AS(make_monotonicity_gadget(3, 0.4), ValidationError);
  CHECK_THROWS_AS(make_monotonicity_gadget(10, 0.0), ValidationError);
  CHECK_THROWS_AS(make_monotonicity_gadget(10, 1.0), ValidationError);

  auto small = make_monotonicity_gadget(4, 0.4);
  int full = 0, half = 0, zero = 0;
  for (int u = 0; u < 4; ++u) {
    for (int v = u + 1; v < 4; ++v) {
      double d = small.delta(u, v);
      if (d == doctest::Approx(0.4)) ++full;
      else if (d == doctest::Approx(0.2)) ++half;
      else ++zero;
    }
  }
  CHECK(full == 1);
  CHECK(half == 4);
  CHECK(zero == 1);

  auto model = make_monotonicity_gadget(10, 0.4);
  CHECK(subset_mi_exact(model, {0, 1}) == doctest::Approx(1.0 - h2(0.3)).epsilon(1e-12));
  CHECK(subset_mi_exact(model, {4, 7}) == 0.0);
  // the symmetric realization centers both conditionals on 1/2
  CHECK(model.q0(0, 1) == doctest::Approx(0.3));
  CHECK(model.q1(0, 1) == doctest::Approx(0.7));
}

TEST_CASE("subset MI grows when informative edges join the subset") {
  auto model = make_monotonicity_gadget(6, 0.5);
  double none = subset_mi_exact(model, {2, 3});
  double one = subset_mi_exact(model, {1, 3});
  double more = subset_mi_exact(model, {0, 1, 3});
  CHECK(none == 0.0);
  CHECK(one > none);
  CHECK(more > one);
}

TEST_CASE("enumeration guard") {
  // a 7-clique has 21 informative pairs, one past the guard
  auto model = make_clique_gadget(Graph::complete(7));
  CHECK_THROWS_AS(subset_mi_exact(model, {0, 1, 2, 3, 4, 5, 6}), LimitError);
}

TEST_CASE("infomax oracle") {
  SUBCASE("all-zero model ties break lexicographically") {
    EdgeBernoulliModel flat(5, 0.5);
    auto oracle = infomax_oracle(flat, 3);
    CHECK(oracle.best_mi == 0.0);
    CHECK(oracle.best_subset == std::vector<int>{0, 1, 2});
  }

  SUBCASE("monotone gadget k=2 finds the strong pair") {
    auto model = make_monotonicity_gadget(10, 0.4);
    auto oracle = infomax_oracle(model, 2);
    CHECK(oracle.best_subset == std::vector<int>{0, 1});
    CHECK(oracle.best_mi == doctest::Approx(0.1187089).epsilon(1e-5));
  }

  SUBCASE("unique 3-clique wins over every other subset") {
    Graph base(6, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
    auto model = make_clique_gadget(base);
    auto oracle = infomax_oracle(model, 3, /*keep_table=*/true);
    CHECK(oracle.best_subset == std::vector<int>{0, 1, 2});
    CHECK(oracle.best_mi == doctest::Approx(triangle_joint_mi_reference()).epsilon(1e-12));
    CHECK(oracle.table.size() == 20);  // C(6,3)
    for (const auto& [subset, mi] : oracle.table)
      if (subset != std::vector<int>{0, 1, 2}) CHECK(mi < oracle.best_mi - 0.1);
  }

  SUBCASE("guard rejects huge enumerations") {
    EdgeBernoulliModel flat(40, 0.5);
    CHECK_THROWS_AS(infomax_oracle(flat, 20), LimitError);
  }
}

TEST_CASE("sampling matches the model marginals") {
  SUBCASE("degenerate probabilities") {
    EdgeBernoulliModel always(4, 0.5);
    EdgeBernoulliModel never(4, 0.5);
    for (int u = 0; u < 4; ++u)
      for (int v = u + 1; v < 4; ++v) always.set_edge(u, v, 1.0, 1.0);
    auto complete = sample_dataset(always, 20, 3);
    auto empty = sample_dataset(never, 20, 3);
    for (std::size_t i = 0; i < complete.size(); ++i) {
      CHECK(complete[i].graph.num_edges() == 6);
      CHECK(empty[i].graph.num_edges() == 0);
    }
  }

  SUBCASE("clique-gadget edge frequency concentrates at 1/4") {
    auto model = make_clique_gadget(Graph(2, {{0, 1}}));
    auto data = sample_dataset(model, 20000, 17);
    auto indicators = data.edge_indicators(0, 1);
    double mean = 0.0;
    for (int e : indicators) mean += e;
    mean /= indicators.size();
    CHECK(mean == doctest::Approx(0.25).epsilon(0.04));
  }

  SUBCASE("estimator consistency against the closed form") {
    auto model = make_clique_gadget(Graph(2, {{0, 1}}));
    auto data = sample_dataset(model, 20000, 18);
    auto est = mi_discrete(data.edge_indicators(0, 1), data.labels());
    CHECK(std::abs(est.value - exact_edge_mi(0.5, 0.0, 0.5)) < 0.02);
  }

  SUBCASE("seeded sampling is reproducible") {
    auto model = make_monotonicity_gadget(6, 0.5);
    auto a = sample_dataset(model, 50, 99);
    auto b = sample_dataset(model, 50, 99);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].label == b[i].label);
      CHECK(a[i].graph.edges() == b[i].graph.edges());
    }
  }
}
