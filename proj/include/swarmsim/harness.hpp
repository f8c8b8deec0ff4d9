#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "swarmsim/energy.hpp"
#include "swarmsim/protocol.hpp"

namespace swarmsim {

/// The experiments the campaign runner knows how to drive.  They share the
/// same trial pipeline and differ in their default parameter grids.
enum class Experiment { connectivity, baselines, power_dist, fit_correction, coverage };

/// One cell of the campaign parameter grid.
struct Cell {
  std::size_t n = 0;
  std::size_t k = 0;
  double p_level = 0.0;
  double beta = 0.0;
};

/// Cartesian parameter grid, repetition count, and master seed.
struct CampaignConfig {
  std::vector<std::size_t> n_grid;
  std::vector<std::size_t> k_grid;
  std::vector<double> p_grid;
  std::vector<double> beta_grid;
  std::size_t trials = 50;
  std::uint64_t master_seed = 1;
  Experiment experiment = Experiment::coverage;
};

/// One simulation trial: inputs plus every output the experiments consume.
/// A failed trial keeps its inputs, zeroes the outputs, and records the
/// error text in `status` ("ok" otherwise); it is never silently dropped.
/// `classify_agrees` tracks whether the mode-based classification matched
/// the reference LSCC on the pruned graph (bookkeeping only, not
/// serialized).
struct TrialRecord {
  std::size_t n = 0;
  std::size_t k = 0;
  double p_level = 0.0;
  double beta = 0.0;
  std::size_t trial_index = 0;
  std::uint64_t seed = 0;
  double lscc_fraction_pre = 0.0;
  double lscc_fraction_post = 0.0;
  double rho_L = 0.0;
  double alpha_L = 0.0;
  double alpha = 0.0;
  double alpha_theory = 0.0;
  double max_baseline = 0.0;
  double e_max = 0.0;
  double mean_cost = 0.0;
  std::size_t removed_edges = 0;
  std::string status = "ok";
  bool classify_agrees = true;

  bool ok() const { return status == "ok"; }
};

/// Aggregate campaign bookkeeping reported alongside the records.
struct CampaignStats {
  std::size_t failed_trials = 0;
  // Trials (n >= 100, k >= 4, unique in-size mode) where the mode-based
  // type-1 set differed from the reference LSCC of the pruned graph.
  std::size_t classify_mismatches = 0;
};

/// Mean / sample standard deviation / extrema of one output field over the
/// successful trials of a cell.
struct FieldStats {
  double mean = 0.0;
  double sd = 0.0;
  double min = 0.0;
  double max = 0.0;
};

/// Number of per-trial output fields carried through summaries and plots.
inline constexpr std::size_t kNumSummaryFields = 10;

/// Names of the summarized output fields, in TrialRecord order.
const char* summary_field_name(std::size_t field);

/// Value of summarized output field `field` of a record.
double summary_field_value(const TrialRecord& rec, std::size_t field);

/// Per-cell aggregation of a record list.
struct CellSummary {
  std::size_t n = 0;
  std::size_t k = 0;
  double p_level = 0.0;
  double beta = 0.0;
  std::size_t count = 0;     // successful trials
  std::size_t failures = 0;  // failed trials
  FieldStats stats[kNumSummaryFields];
};

/// Stable 64-bit seed for one trial: a SplitMix64-style avalanche hash over
/// the master seed and the cell coordinates (doubles hashed by bit
/// pattern), then the trial index.  Identical inputs give identical seeds;
/// distinct cells or trials collide with probability ~2^-64.
std::uint64_t derive_seed(std::uint64_t master_seed, const Cell& cell,
                          std::size_t trial_index);

/// Runs the full pipeline for one cell:
///   generate_points -> build_knn_graph -> scc (pre) -> budget_from_quantile
///   -> prune -> classify (post) -> residuals -> allocate -> coverage
///   -> alpha_theory -> max_baseline over the post-pruning LSCC.
/// The max baseline of a degenerate (< 2 vertex) LSCC is recorded as 0.
/// Module errors are captured into `status` rather than thrown.
TrialRecord run_trial(const Cell& cell, std::size_t trial_index, std::uint64_t seed);

/// Runs trials for the Cartesian product of the grids.  Trials execute in
/// parallel (capped by the SWARM_SIM_THREADS environment variable) but the
/// returned list is always sorted by (n, k, p_level, beta, trial_index),
/// so output is a pure function of the config.  Throws
/// std::invalid_argument on an empty grid or trials == 0.
std::vector<TrialRecord> run_campaign(const CampaignConfig& config,
                                      CampaignStats* stats = nullptr);

/// Groups records by cell and reports per-field statistics; cells are
/// ordered by (n, k, p_level, beta).  sd is the sample standard deviation,
/// 0 when fewer than two successful trials.  Throws std::invalid_argument
/// on empty input.
std::vector<CellSummary> summarize(const std::vector<TrialRecord>& records);

/// Scale fit for one (n, k) cell of the finite-size correction experiment.
struct ScaleFit {
  std::size_t n = 0;
  std::size_t k = 0;
  double a_hat = 0.0;
};

/// Result of the finite-size correction experiment: the per-cell MLE
/// scales and the power law fitted over all (n, a_hat) pairs.
struct FitCorrectionResult {
  std::vector<ScaleFit> scale_fits;
  PowerLawFit fit;
};

/// For every (n, k) cell, pools the transmission costs of `trials`
/// independent swarms and fits the scale by closed-form MLE, then fits
/// a_hat(n) as a power law across all cells.  Seeds derive from the same
/// scheme as run_campaign with the cell's (p_level, beta) fixed at 0.
FitCorrectionResult run_fit_correction(const CampaignConfig& config);

/// Worker-thread count for campaigns: OpenMP's limit, capped by the
/// SWARM_SIM_THREADS environment variable when it is set to a positive
/// integer.
int worker_threads();

}  // namespace swarmsim
