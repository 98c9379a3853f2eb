#include "core/compress.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/errors.hpp"
#include "core/parallel.hpp"

namespace otgs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Nearest and second-nearest support vertex per mass-bearing vertex; lets a
/// whole removal-candidate sweep run in O(n) per candidate.
struct NearestSupport {
  std::vector<double> d1, d2;
  std::vector<int> s1;

  void rebuild(const ShortestPathCosts& spc, const std::vector<int>& mass_vertices,
               const std::vector<int>& support) {
    int n = spc.size();
    d1.assign(n, kInf);
    d2.assign(n, kInf);
    s1.assign(n, -1);
    for (int v : mass_vertices) {
      for (int s : support) {
        double d = spc.distance(v, s);
        if (d < d1[v]) {
          d2[v] = d1[v];
          d1[v] = d;
          s1[v] = s;
        } else if (d < d2[v]) {
          d2[v] = d;
        }
      }
    }
  }
};

}  // namespace

CompressionResult ot_compress(const Graph& g, const VertexDistribution& rho0,
                              const CostMatrix& cost, int k, const CompressOptions& opts) {
  int n = g.num_vertices();
  if (rho0.size() != n) throw ValidationError("ot_compress: distribution size mismatch");
  if (k < 1 || k > n)
    throw ValidationError("ot_compress: target size " + std::to_string(k) +
                          " outside [1," + std::to_string(n) + "]");
  std::vector<bool> forced(n, false);
  int forced_count = 0;
  for (int v : opts.forced) {
    if (v < 0 || v >= n) throw ValidationError("ot_compress: forced vertex out of range");
    if (!forced[v]) {
      forced[v] = true;
      ++forced_count;
    }
  }
  if (forced_count > k)
    throw ValidationError("ot_compress: " + std::to_string(forced_count) +
                          " forced vertices exceed target size " + std::to_string(k));

  ShortestPathCosts spc(g, cost);
  std::vector<int> mass_vertices = rho0.support();

  std::vector<bool> alive(n, true);
  std::vector<int> support(n);
  for (int v = 0; v < n; ++v) support[v] = v;

  CompressionResult out;
  NearestSupport nearest;
  for (int step = 1; step <= n - k; ++step) {
    nearest.rebuild(spc, mass_vertices, support);

    std::vector<int> candidates;
    candidates.reserve(support.size());
    for (int v : support)
      if (!forced[v]) candidates.push_back(v);
    if (opts.candidate_limit > 0 && static_cast<int>(candidates.size()) > opts.candidate_limit) {
      std::stable_sort(candidates.begin(), candidates.end(),
                       [&](int a, int b) { return rho0[a] < rho0[b]; });
      candidates.resize(opts.candidate_limit);
      std::sort(candidates.begin(), candidates.end());
    }

    std::vector<double> removal_cost(candidates.size());
    parallel_for(candidates.size(), [&](std::size_t i) {
      int v = candidates[i];
      double total = 0.0;
      for (int u : mass_vertices) {
        double d = (nearest.s1[u] == v) ? nearest.d2[u] : nearest.d1[u];
        if (std::isinf(d)) {
          total = kInf;
          break;
        }
        total += rho0[u] * d;
      }
      removal_cost[i] = total;
    });

    int best = -1;
    double best_cost = kInf;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (removal_cost[i] < best_cost) {
        best_cost = removal_cost[i];
        best = candidates[i];
      }
    }
    if (best < 0)
      throw InfeasibleError("ot_compress: step " + std::to_string(step) +
                            ": every candidate removal disconnects some mass from the support");
    alive[best] = false;
    support.erase(std::find(support.begin(), support.end(), best));
    out.trace.emplace_back(best, best_cost);
  }

  out.support = support;
  TransportSolution final = constrained_transport(g, cost, rho0, out.support);
  out.rho1 = final.result;
  out.cost = final.cost;
  return out;
}

CompressionResult exhaustive_compress(const Graph& g, const VertexDistribution& rho0,
                                      const CostMatrix& cost, int k) {
  int n = g.num_vertices();
  if (rho0.size() != n) throw ValidationError("exhaustive_compress: distribution size mismatch");
  if (k < 1 || k > n) throw ValidationError("exhaustive_compress: target size outside [1,n]");

  double combos = 1.0;
  for (int i = 0; i < k; ++i) combos = combos * (n - i) / (i + 1);
  if (combos > 1e6)
    throw LimitError("exhaustive_compress: C(" + std::to_string(n) + "," + std::to_string(k) +
                     ") exceeds the 1e6 enumeration guard");

  ShortestPathCosts spc(g, cost);
  std::vector<int> subset(k);
  for (int i = 0; i < k; ++i) subset[i] = i;

  std::vector<int> best_subset;
  double best_cost = kInf;
  for (;;) {
    double c = spc.support_cost(rho0, subset);
    if (c < best_cost) {  // lexicographic enumeration: first minimum wins ties
      best_cost = c;
      best_subset = subset;
    }
    int i = k - 1;
    while (i >= 0 && subset[i] == n - k + i) --i;
    if (i < 0) break;
    ++subset[i];
    for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
  if (std::isinf(best_cost))
    throw InfeasibleError("exhaustive_compress: no size-" + std::to_string(k) +
                          " support is reachable from every mass vertex");

  CompressionResult out;
  out.support = best_subset;
  TransportSolution final = constrained_transport(g, cost, rho0, out.support);
  out.rho1 = final.result;
  out.cost = final.cost;
  return out;
}

}  // namespace otgs
