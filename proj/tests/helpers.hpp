#pragma once

// Small self-contained oracles shared by the test binaries.  Everything
// here is deliberately naive: full sorts, O(n^3) closures, Monte Carlo
// sampling through a different route than the library uses.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "swarmsim/graph.hpp"
#include "swarmsim/rng.hpp"

namespace testutil {

inline double mean(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

inline double sample_sd(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

inline double standard_error(const std::vector<double>& xs) {
  return sample_sd(xs) / std::sqrt(static_cast<double>(xs.size()));
}

/// Two-sided Kolmogorov-Smirnov statistic between a sample and a model CDF.
template <typename Cdf>
double ks_statistic(std::vector<double> samples, Cdf cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

/// Draws one transmission cost from the generalized gamma law with
/// parameters (a, d = 3k/2, p = 3/2) without touching the library's CDF or
/// quantile code: (X/a)^(3/2) is Gamma(k, 1), i.e. a sum of k unit
/// exponentials.
inline double sample_cost(swarmsim::SplitMix64& rng, double a, std::size_t k) {
  double y = 0.0;
  for (std::size_t i = 0; i < k; ++i) y += -std::log(1.0 - rng.next_uniform());
  return a * std::pow(y, 2.0 / 3.0);
}

/// Boolean reachability closure (Floyd-Warshall style), reach[u][v] true
/// when a directed path u -> v exists; every vertex reaches itself.
inline std::vector<std::vector<bool>> reach_closure(const swarmsim::DirectedGraph& g) {
  std::vector<std::vector<bool>> reach(g.n, std::vector<bool>(g.n, false));
  for (std::size_t v = 0; v < g.n; ++v) {
    reach[v][v] = true;
    for (const swarmsim::Edge& e : g.out_edges[v]) reach[v][e.target] = true;
  }
  for (std::size_t w = 0; w < g.n; ++w)
    for (std::size_t u = 0; u < g.n; ++u)
      if (reach[u][w])
        for (std::size_t v = 0; v < g.n; ++v)
          if (reach[w][v]) reach[u][v] = true;
  return reach;
}

/// In-component sizes straight from the closure: |{u : u -> v}|.
inline std::vector<std::size_t> closure_in_sizes(const swarmsim::DirectedGraph& g) {
  const auto reach = reach_closure(g);
  std::vector<std::size_t> sizes(g.n, 0);
  for (std::size_t v = 0; v < g.n; ++v)
    for (std::size_t u = 0; u < g.n; ++u)
      if (reach[u][v]) ++sizes[v];
  return sizes;
}

/// Erdos-Renyi style digraph with Bernoulli(edge_prob) edges and arbitrary
/// positive lengths; no self-loops.
inline swarmsim::DirectedGraph random_digraph(swarmsim::SplitMix64& rng, std::size_t n,
                                              double edge_prob) {
  swarmsim::DirectedGraph g;
  g.n = n;
  g.out_edges.resize(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v && rng.next_uniform() < edge_prob)
        g.out_edges[u].push_back({v, rng.next_uniform() + 0.01});
  return g;
}

/// Builds a digraph from an explicit edge list with unit lengths.
inline swarmsim::DirectedGraph make_graph(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  swarmsim::DirectedGraph g;
  g.n = n;
  g.out_edges.resize(n);
  for (const auto& [u, v] : edges) g.out_edges[u].push_back({v, 1.0});
  return g;
}

}  // namespace testutil
