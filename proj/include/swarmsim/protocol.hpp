#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "swarmsim/graph.hpp"

namespace swarmsim {

/// Per-satellite energy budget derived from a quantile of the corrected
/// cost model, plus the per-job cost implied by reserving a beta-fraction
/// of the total swarm energy for cross-correlation work:
///   job_cost * C(n,2) = n * beta * e_max,  i.e.  job_cost = 2 beta e_max / (n-1).
struct EnergyBudget {
  double e_max = 0.0;
  double p_level = 0.0;
  double beta = 0.0;
  double job_cost = 0.0;
};

/// Result of pruning a graph under a broadcast energy budget.  A vertex's
/// power is the squared distance to its farthest retained out-neighbour,
/// so pruning removes each vertex's longest edges until that cost fits
/// within e_max.  realized_cost is 0 for vertices with no retained edges.
struct PrunedNetwork {
  DirectedGraph graph;
  std::vector<double> realized_cost;
  std::size_t removed_edges = 0;
};

/// One worker's contiguous slice [begin, end) of the lexicographic job
/// list.  Workers appear in label order: LSCC vertices ascending, then
/// out-component-minus-LSCC vertices ascending.
struct WorkerRange {
  std::size_t vertex = 0;
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
};

/// Label-ordered greedy assignment of cross-correlation jobs.  The job
/// pool is every unordered vertex pair within the in-component,
/// lexicographically indexed; total_assigned = min(sum of worker
/// capacities, job_pool_size).
struct Allocation {
  std::vector<WorkerRange> assignments;
  std::uint64_t total_assigned = 0;
  std::size_t m = 0;  // LSCC size (workers 1..m)
  std::uint64_t job_pool_size = 0;
};

/// The protocol's three performance indicators plus the analytic
/// approximation.  coverage() fills the first three; alpha_theory is
/// evaluated separately (it needs the budget, not the allocation) and is
/// stored here by the caller.
struct CoverageMetrics {
  double rho_L = 0.0;
  double alpha_L = 0.0;
  double alpha = 0.0;
  double alpha_theory = 0.0;
};

/// Number of unordered pairs C(count, 2).
inline std::uint64_t pair_count(std::uint64_t count) {
  return count < 2 ? 0 : count * (count - 1) / 2;
}

/// Budget from the corrected-model quantile: e_max = quantile(p_level) of
/// the (n, k) corrected cost model, job_cost per the energy-split rule.
/// Throws std::invalid_argument unless p_level in (0,1), beta in (0,1],
/// and n >= 2 (the per-pair split needs at least one pair).
EnergyBudget budget_from_quantile(double p_level, std::size_t n, std::size_t k, double beta);

/// Drops every vertex's farthest out-edges while the squared length of the
/// farthest retained edge exceeds e_max; equivalently, keeps exactly the
/// edges with length^2 <= e_max.  For sorted k-NN rows the retained list
/// is a prefix of the original neighbour list.  Throws
/// std::invalid_argument when e_max < 0.
PrunedNetwork prune(const DirectedGraph& g, double e_max);

/// Workers take floor(residual / job_cost) jobs each, in label order, from
/// the front of the lexicographic pool until it is exhausted.  `residuals`
/// is indexed by vertex id.  Throws std::invalid_argument when
/// job_cost <= 0 or residuals.size() mismatches the classification.
Allocation allocate(const SwarmClassification& cls, const std::vector<double>& residuals,
                    double job_cost);

/// rho_L   = |post-pruning LSCC| / |pre-pruning LSCC|;
/// alpha   = (assigned jobs with both endpoints in the post-pruning LSCC) / C(n,2);
/// alpha_L = same numerator / C(|post-pruning LSCC|, 2), 0 when the LSCC
///           has fewer than 2 vertices.
/// The assigned jobs are the first `total_assigned` entries of the
/// lexicographic pool over the post-pruning in-component.
CoverageMetrics coverage(const SccDecomposition& pre, const SwarmClassification& post,
                         const Allocation& alloc, std::size_t n);

/// Analytic coverage approximation
///   min(eta_plus * 2 E[E] / n, eta_minus^2) clamped to [0, 1],
/// where E[E] = expected_residual(e_max, n, k, corrected) expressed in job
/// units (divided by job_cost).
double alpha_theory(std::size_t n, std::size_t k, double e_max, double eta_plus,
                    double eta_minus, double job_cost = 1.0);

}  // namespace swarmsim
