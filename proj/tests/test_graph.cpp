#include <doctest.h>

#include <random>
#include <tuple>

#include "core/errors.hpp"
#include "core/graph.hpp"
#include "core/rng.hpp"

using namespace otgs;

namespace {

Graph path3() { return Graph(3, {{0, 1}, {1, 2}}); }

Flow flow_on(const Graph& g, std::initializer_list<std::tuple<int, int, double>> moves) {
  Flow f(g);
  for (auto [u, v, m] : moves) f.add(g, u, v, m);
  return f;
}

}  // namespace

TEST_CASE("graph construction validates and canonicalizes") {
  Graph g(4, {{2, 1}, {0, 1}});
  CHECK(g.num_edges() == 2);
  CHECK(g.edges()[0] == std::pair<int, int>{0, 1});
  CHECK(g.edges()[1] == std::pair<int, int>{1, 2});
  CHECK(g.has_edge(1, 0));
  CHECK(!g.has_edge(0, 3));
  CHECK(g.degree(1) == 2);

  CHECK_THROWS_AS(Graph(3, {{0, 0}}), ValidationError);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), ValidationError);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), ValidationError);
}

TEST_CASE("directed edge set pairs up both orientations") {
  Graph g = path3();
  CHECK(g.num_directed_edges() == 4);
  for (int e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.directed_edge(2 * e);
    auto [w, x] = g.directed_edge(2 * e + 1);
    CHECK(u == x);
    CHECK(v == w);
  }
  CHECK(g.directed_index(0, 1) == 0);
  CHECK(g.directed_index(1, 0) == 1);
  CHECK(g.directed_index(0, 2) == -1);
}

TEST_CASE("signed incidence rows have one +1 and one -1") {
  Graph g = path3();
  SignedIncidence inc(g);
  CHECK(inc.rows() == 4);
  CHECK(inc.cols() == 3);
  for (int row = 0; row < inc.rows(); ++row) {
    int plus = 0, minus = 0, sum = 0;
    for (int v = 0; v < inc.cols(); ++v) {
      int e = inc.entry(row, v);
      sum += e;
      if (e == 1) ++plus;
      if (e == -1) ++minus;
    }
    CHECK(plus == 1);
    CHECK(minus == 1);
    CHECK(sum == 0);
  }
}

TEST_CASE("vertex distribution validity") {
  CHECK_THROWS_AS(VertexDistribution({0.5, 0.6}), ValidationError);
  CHECK_THROWS_AS(VertexDistribution({-0.1, 1.1}), ValidationError);
  VertexDistribution u = VertexDistribution::uniform(4);
  CHECK(u[2] == doctest::Approx(0.25));
  CHECK(VertexDistribution::point(3, 1).support() == std::vector<int>{1});
}

TEST_CASE("cost matrix symmetry and nonnegativity") {
  CostMatrix c(3, 0.0);
  c.set(0, 2, 5.0);
  CHECK(c(2, 0) == 5.0);
  CHECK_THROWS_AS(c.set(0, 1, -1.0), ValidationError);
  c.set(1, 2, kInfiniteCost);
  CHECK(std::isinf(c(2, 1)));
}

TEST_CASE("flow_cost on the examples") {
  Graph g = path3();
  CostMatrix unit(3, 1.0);

  CHECK(flow_cost(g, Flow(g), unit) == 0.0);

  Flow f = flow_on(g, {{0, 1, 1.0}, {1, 2, 1.0}});
  CHECK(flow_cost(g, f, unit) == doctest::Approx(2.0).epsilon(1e-12));

  CostMatrix forbidden(3, 1.0);
  forbidden.set(0, 1, kInfiniteCost);
  CHECK_THROWS_AS(flow_cost(g, f, forbidden), ValidationError);
}

TEST_CASE("flow_result on the examples") {
  Graph g = path3();
  VertexDistribution rho0({1.0, 0.0, 0.0});

  CHECK(flow_result(g, Flow(g), rho0).mass() == rho0.mass());

  Flow f = flow_on(g, {{0, 1, 1.0}, {1, 2, 1.0}});
  auto moved = flow_result(g, f, rho0);
  CHECK(moved[0] == doctest::Approx(0.0));
  CHECK(moved[2] == doctest::Approx(1.0));

  // K3 hand-computed column action
  Graph k3 = Graph::complete(3);
  Flow merge = flow_on(k3, {{1, 0, 1.0 / 3}, {2, 0, 1.0 / 3}});
  auto merged = flow_result(k3, merge, VertexDistribution::uniform(3));
  CHECK(merged[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(merged[1] == doctest::Approx(0.0));
  CHECK(merged[2] == doctest::Approx(0.0));

  Flow overdraw = flow_on(g, {{1, 2, 0.5}});
  CHECK_THROWS_AS(flow_result(g, overdraw, rho0), InfeasibleError);
}

TEST_CASE("flow_result matches the incidence column action") {
  auto rng = seeded_stream(11, 0);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = Graph::complete(4);
    Flow f(g);
    std::uniform_real_distribution<double> mass(0.0, 0.05);
    for (int idx = 0; idx < g.num_directed_edges(); ++idx) {
      auto [u, v] = g.directed_edge(idx);
      f.add(g, u, v, mass(rng));
    }
    auto via_incidence = SignedIncidence(g).apply(f);
    auto direct = flow_result(g, f, VertexDistribution::uniform(4));
    for (int v = 0; v < 4; ++v)
      CHECK(direct[v] == doctest::Approx(0.25 + via_incidence[v]).epsilon(1e-12));
  }
}

TEST_CASE("conservation, linearity, reversibility") {
  auto rng = seeded_stream(12, 0);
  Graph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {1, 3}});
  CostMatrix cost(5, 0.0);
  std::uniform_int_distribution<int> c(0, 9);
  for (auto [u, v] : g.edges()) cost.set(u, v, c(rng));

  std::uniform_real_distribution<double> mass(0.0, 0.03);
  for (int trial = 0; trial < 50; ++trial) {
    Flow f1(g), f2(g);
    for (int idx = 0; idx < g.num_directed_edges(); ++idx) {
      auto [u, v] = g.directed_edge(idx);
      f1.add(g, u, v, mass(rng));
      f2.add(g, u, v, mass(rng));
    }
    auto rho0 = VertexDistribution::uniform(5);

    // conservation
    auto result = flow_result(g, f1, rho0);
    double total = 0.0;
    for (int v = 0; v < 5; ++v) total += result[v];
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    // linearity: cost(a*f1 + b*f2) = a*cost(f1) + b*cost(f2)
    double a = 0.3, b = 1.7;
    Flow combo(g);
    for (int idx = 0; idx < g.num_directed_edges(); ++idx) {
      auto [u, v] = g.directed_edge(idx);
      combo.add(g, u, v, a * f1.on_directed(idx) + b * f2.on_directed(idx));
    }
    CHECK(flow_cost(g, combo, cost) ==
          doctest::Approx(a * flow_cost(g, f1, cost) + b * flow_cost(g, f2, cost))
              .epsilon(1e-9));

    // reversibility: pushing m along (v,w) then (w,v) cancels in the result
    Flow wobble = f1;
    wobble.add(g, 1, 2, 0.01);
    wobble.add(g, 2, 1, 0.01);
    auto before = flow_result(g, f1, rho0);
    auto after = flow_result(g, wobble, rho0);
    for (int v = 0; v < 5; ++v) CHECK(after[v] == doctest::Approx(before[v]).epsilon(1e-12));
  }
}
