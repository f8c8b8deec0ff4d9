#include "swarmsim/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "swarmsim/energy.hpp"

namespace swarmsim {

EnergyBudget budget_from_quantile(double p_level, std::size_t n, std::size_t k, double beta) {
  if (!(p_level > 0.0) || !(p_level < 1.0))
    throw std::invalid_argument("budget_from_quantile: p_level must be in (0,1)");
  if (!(beta > 0.0) || !(beta <= 1.0))
    throw std::invalid_argument("budget_from_quantile: beta must be in (0,1]");
  if (n < 2) throw std::invalid_argument("budget_from_quantile: n must be >= 2");

  const CostModel model = make_cost_model(n, k, /*corrected=*/true);
  EnergyBudget budget;
  budget.p_level = p_level;
  budget.beta = beta;
  budget.e_max = gg_quantile(p_level, model.params);
  budget.job_cost = 2.0 * beta * budget.e_max / static_cast<double>(n - 1);
  return budget;
}

PrunedNetwork prune(const DirectedGraph& g, double e_max) {
  if (e_max < 0.0) throw std::invalid_argument("prune: e_max must be >= 0");
  PrunedNetwork out;
  out.graph.n = g.n;
  out.graph.out_edges.resize(g.n);
  out.realized_cost.assign(g.n, 0.0);
  out.removed_edges = 0;

  for (std::size_t v = 0; v < g.n; ++v) {
    auto& kept = out.graph.out_edges[v];
    kept.reserve(g.out_edges[v].size());
    // Removing the farthest edge only ever lowers a vertex's broadcast
    // cost, so the fixed point keeps exactly the edges within budget.
    for (const Edge& e : g.out_edges[v]) {
      if (e.length * e.length <= e_max)
        kept.push_back(e);
      else
        ++out.removed_edges;
    }
    double far2 = 0.0;
    for (const Edge& e : kept) far2 = std::max(far2, e.length * e.length);
    out.realized_cost[v] = far2;
  }
  return out;
}

Allocation allocate(const SwarmClassification& cls, const std::vector<double>& residuals,
                    double job_cost) {
  if (!(job_cost > 0.0)) throw std::invalid_argument("allocate: job_cost must be > 0");
  if (residuals.size() != cls.type.size())
    throw std::invalid_argument("allocate: residuals size mismatch");

  Allocation alloc;
  alloc.m = cls.lscc.size();
  alloc.job_pool_size = pair_count(cls.in_comp.size());

  // Worker labels 1..m are the LSCC vertices ascending, m+1..l the rest of
  // the out-component ascending; both source lists are already sorted.
  std::vector<std::size_t> workers = cls.lscc;
  for (std::size_t v : cls.out_comp)
    if (!std::binary_search(cls.lscc.begin(), cls.lscc.end(), v)) workers.push_back(v);

  std::uint64_t cursor = 0;
  alloc.assignments.reserve(workers.size());
  for (std::size_t v : workers) {
    const std::uint64_t remaining = alloc.job_pool_size - cursor;
    const double cap_d = std::floor(residuals[v] / job_cost);
    std::uint64_t cap = remaining;
    if (cap_d < static_cast<double>(remaining)) cap = static_cast<std::uint64_t>(cap_d);
    alloc.assignments.push_back({v, cursor, cursor + cap});
    cursor += cap;
  }
  alloc.total_assigned = cursor;
  return alloc;
}

CoverageMetrics coverage(const SccDecomposition& pre, const SwarmClassification& post,
                         const Allocation& alloc, std::size_t n) {
  if (pre.component_sizes.empty())
    throw std::invalid_argument("coverage: pre-pruning decomposition is empty");

  CoverageMetrics metrics;
  const std::size_t pre_lscc = pre.component_sizes[pre.lscc_id];
  const std::size_t post_lscc = post.lscc.size();
  metrics.rho_L = static_cast<double>(post_lscc) / static_cast<double>(pre_lscc);

  // Assigned jobs are the prefix [0, total_assigned) of the lexicographic
  // pool over the sorted in-component; count the pairs whose endpoints are
  // both inside the post-pruning LSCC.
  std::vector<char> in_lscc(n, 0);
  for (std::size_t v : post.lscc) in_lscc[v] = 1;
  const std::vector<std::size_t>& members = post.in_comp;
  const std::uint64_t assigned = alloc.total_assigned;
  std::uint64_t position = 0;
  std::uint64_t hits = 0;
  for (std::size_t a = 0; a + 1 < members.size() && position < assigned; ++a) {
    for (std::size_t b = a + 1; b < members.size() && position < assigned; ++b) {
      if (in_lscc[members[a]] && in_lscc[members[b]]) ++hits;
      ++position;
    }
  }

  metrics.alpha =
      n < 2 ? 0.0 : static_cast<double>(hits) / static_cast<double>(pair_count(n));
  metrics.alpha_L = post_lscc < 2
                        ? 0.0
                        : static_cast<double>(hits) / static_cast<double>(pair_count(post_lscc));
  return metrics;
}

double alpha_theory(std::size_t n, std::size_t k, double e_max, double eta_plus,
                    double eta_minus, double job_cost) {
  const double expected = expected_residual(e_max, n, k, /*corrected=*/true);
  const double jobs_per_satellite = expected / job_cost;
  const double throughput = eta_plus * 2.0 * jobs_per_satellite / static_cast<double>(n);
  const double value = std::min(throughput, eta_minus * eta_minus);
  return std::clamp(value, 0.0, 1.0);
}

}  // namespace swarmsim
