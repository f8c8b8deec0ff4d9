#include "swarmsim/harness.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "swarmsim/energy.hpp"
#include "swarmsim/geometry.hpp"
#include "swarmsim/graph.hpp"
#include "swarmsim/io.hpp"
#include "swarmsim/protocol.hpp"
#include "swarmsim/rng.hpp"

using namespace swarmsim;

namespace {

// RAII override of SWARM_SIM_THREADS.
class ThreadEnvGuard {
 public:
  explicit ThreadEnvGuard(const char* value) {
    const char* old = std::getenv("SWARM_SIM_THREADS");
    had_old_ = old != nullptr;
    if (had_old_) old_ = old;
    if (value)
      ::setenv("SWARM_SIM_THREADS", value, 1);
    else
      ::unsetenv("SWARM_SIM_THREADS");
  }
  ~ThreadEnvGuard() {
    if (had_old_)
      ::setenv("SWARM_SIM_THREADS", old_.c_str(), 1);
    else
      ::unsetenv("SWARM_SIM_THREADS");
  }

 private:
  bool had_old_ = false;
  std::string old_;
};

CampaignConfig tiny_config() {
  CampaignConfig config;
  config.n_grid = {50, 60};
  config.k_grid = {3};
  config.p_grid = {0.5};
  config.beta_grid = {0.5};
  config.trials = 3;
  config.master_seed = 11;
  return config;
}

}  // namespace

// ===========================================================================
// derive_seed
// ===========================================================================

TEST(DeriveSeedTest, FrozenReferenceValue) {
  EXPECT_EQ(derive_seed(12345, {600, 5, 0.9, 0.5}, 7), 0x1cebfb1b50ca9930ULL);
}

TEST(DeriveSeedTest, DeterministicAndSensitive) {
  const Cell cell{600, 5, 0.9, 0.5};
  EXPECT_EQ(derive_seed(1, cell, 0), derive_seed(1, cell, 0));
  std::set<std::uint64_t> seen;
  seen.insert(derive_seed(1, cell, 0));
  seen.insert(derive_seed(1, cell, 1));
  seen.insert(derive_seed(2, cell, 0));
  seen.insert(derive_seed(1, {601, 5, 0.9, 0.5}, 0));
  seen.insert(derive_seed(1, {600, 6, 0.9, 0.5}, 0));
  seen.insert(derive_seed(1, {600, 5, 0.91, 0.5}, 0));
  seen.insert(derive_seed(1, {600, 5, 0.9, 0.51}, 0));
  EXPECT_EQ(seen.size(), 7u);
}

TEST(DeriveSeedTest, ManyTrialsNoCollision) {
  std::set<std::uint64_t> seen;
  for (std::size_t t = 0; t < 10000; ++t) seen.insert(derive_seed(1, {500, 5, 0.9, 0.5}, t));
  EXPECT_EQ(seen.size(), 10000u);
}

// ===========================================================================
// run_trial
// ===========================================================================

TEST(RunTrialTest, MatchesManualPipeline) {
  const Cell cell{200, 5, 0.9, 0.5};
  const std::uint64_t seed = derive_seed(3, cell, 0);
  const TrialRecord rec = run_trial(cell, 0, seed);
  ASSERT_TRUE(rec.ok());
  EXPECT_EQ(rec.n, 200u);
  EXPECT_EQ(rec.k, 5u);
  EXPECT_EQ(rec.trial_index, 0u);
  EXPECT_EQ(rec.seed, seed);

  // Re-run every stage by hand.
  const PointSet points = generate_points(cell.n, seed);
  const DirectedGraph graph = build_knn_graph(points, cell.k);
  double cost_sum = 0.0;
  for (double c : transmission_costs(points, cell.k)) cost_sum += c;
  EXPECT_DOUBLE_EQ(rec.mean_cost, cost_sum / 200.0);

  const SccDecomposition pre = scc(graph);
  EXPECT_DOUBLE_EQ(rec.lscc_fraction_pre, pre.component_sizes[pre.lscc_id] / 200.0);

  const EnergyBudget budget = budget_from_quantile(0.9, 200, 5, 0.5);
  EXPECT_DOUBLE_EQ(rec.e_max, budget.e_max);

  const PrunedNetwork pruned = prune(graph, budget.e_max);
  EXPECT_EQ(rec.removed_edges, pruned.removed_edges);

  const SccDecomposition post_scc = scc(pruned.graph);
  EXPECT_DOUBLE_EQ(rec.lscc_fraction_post,
                   post_scc.component_sizes[post_scc.lscc_id] / 200.0);

  const SwarmClassification post = classify(pruned.graph);
  std::vector<double> residuals(200);
  for (std::size_t v = 0; v < 200; ++v)
    residuals[v] = residual_energy(budget.e_max, pruned.realized_cost[v]);
  const Allocation alloc = allocate(post, residuals, budget.job_cost);
  const CoverageMetrics metrics = coverage(pre, post, alloc, 200);
  EXPECT_DOUBLE_EQ(rec.rho_L, metrics.rho_L);
  EXPECT_DOUBLE_EQ(rec.alpha_L, metrics.alpha_L);
  EXPECT_DOUBLE_EQ(rec.alpha, metrics.alpha);
  EXPECT_DOUBLE_EQ(rec.alpha_theory, alpha_theory(200, 5, budget.e_max, post.eta_plus,
                                                  post.eta_minus, budget.job_cost));
  EXPECT_DOUBLE_EQ(rec.max_baseline,
                   post.lscc.size() >= 2 ? max_baseline(points, post.lscc) : 0.0);
}

TEST(RunTrialTest, RecordsSaneRanges) {
  const Cell cell{300, 6, 0.8, 0.4};
  const TrialRecord rec = run_trial(cell, 2, derive_seed(9, cell, 2));
  ASSERT_TRUE(rec.ok());
  EXPECT_GT(rec.lscc_fraction_pre, 0.0);
  EXPECT_LE(rec.lscc_fraction_pre, 1.0);
  EXPECT_GE(rec.lscc_fraction_post, 0.0);
  EXPECT_LE(rec.lscc_fraction_post, rec.lscc_fraction_pre + 1e-12);
  EXPECT_GE(rec.rho_L, 0.0);
  EXPECT_GE(rec.alpha, 0.0);
  EXPECT_LE(rec.alpha, 1.0);
  EXPECT_GE(rec.alpha_L, rec.alpha - 1e-12);  // same numerator, smaller denominator
  EXPECT_GT(rec.e_max, 0.0);
  EXPECT_GT(rec.mean_cost, 0.0);
  EXPECT_LE(rec.max_baseline, std::sqrt(3.0));
}

TEST(RunTrialTest, ImpossibleCellFailsSoftly) {
  const Cell cell{5, 10, 0.9, 0.5};  // k >= n: the k-NN build must reject it
  const TrialRecord rec = run_trial(cell, 0, 42);
  EXPECT_FALSE(rec.ok());
  EXPECT_NE(rec.status, "ok");
  EXPECT_EQ(rec.n, 5u);
  EXPECT_EQ(rec.k, 10u);
  EXPECT_EQ(rec.seed, 42u);
  EXPECT_DOUBLE_EQ(rec.alpha, 0.0);
  EXPECT_DOUBLE_EQ(rec.mean_cost, 0.0);
}

TEST(RunTrialTest, DeterministicGivenSeed) {
  const Cell cell{150, 4, 0.7, 0.6};
  const TrialRecord a = run_trial(cell, 1, 777);
  const TrialRecord b = run_trial(cell, 1, 777);
  EXPECT_EQ(records_to_csv({a}), records_to_csv({b}));
}

// ===========================================================================
// run_campaign
// ===========================================================================

TEST(RunCampaignTest, ProducesSortedFullGrid) {
  CampaignStats stats;
  const std::vector<TrialRecord> records = run_campaign(tiny_config(), &stats);
  ASSERT_EQ(records.size(), 6u);
  EXPECT_EQ(stats.failed_trials, 0u);
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(records[i].n, i < 3 ? 50u : 60u);
    EXPECT_EQ(records[i].trial_index, i % 3);
    EXPECT_TRUE(records[i].ok());
  }
}

TEST(RunCampaignTest, MatchesIndividualTrials) {
  const CampaignConfig config = tiny_config();
  const std::vector<TrialRecord> records = run_campaign(config);
  for (const TrialRecord& rec : records) {
    const Cell cell{rec.n, rec.k, rec.p_level, rec.beta};
    const TrialRecord expected =
        run_trial(cell, rec.trial_index, derive_seed(config.master_seed, cell, rec.trial_index));
    EXPECT_EQ(records_to_csv({rec}), records_to_csv({expected}));
  }
}

TEST(RunCampaignTest, ByteIdenticalAcrossThreadCounts) {
  std::string csv_serial, csv_parallel;
  {
    ThreadEnvGuard guard("1");
    csv_serial = records_to_csv(run_campaign(tiny_config()));
  }
  {
    ThreadEnvGuard guard("4");
    csv_parallel = records_to_csv(run_campaign(tiny_config()));
  }
  EXPECT_EQ(csv_serial, csv_parallel);
}

TEST(RunCampaignTest, CountsFailedCells) {
  CampaignConfig config = tiny_config();
  config.n_grid = {2};  // k = 3 >= n = 2: every trial fails
  CampaignStats stats;
  const std::vector<TrialRecord> records = run_campaign(config, &stats);
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(stats.failed_trials, 3u);
  for (const TrialRecord& rec : records) EXPECT_FALSE(rec.ok());
}

TEST(RunCampaignTest, Validation) {
  CampaignConfig config = tiny_config();
  config.n_grid.clear();
  EXPECT_THROW(run_campaign(config), std::invalid_argument);
  CampaignConfig config2 = tiny_config();
  config2.trials = 0;
  EXPECT_THROW(run_campaign(config2), std::invalid_argument);
}

// ===========================================================================
// summarize
// ===========================================================================

TEST(SummarizeTest, SpreadsheetRecomputation) {
  CampaignConfig config = tiny_config();
  config.trials = 5;
  const std::vector<TrialRecord> records = run_campaign(config);
  const std::vector<CellSummary> cells = summarize(records);
  ASSERT_EQ(cells.size(), 2u);

  for (const CellSummary& cell : cells) {
    EXPECT_EQ(cell.count, 5u);
    EXPECT_EQ(cell.failures, 0u);
    for (std::size_t f = 0; f < kNumSummaryFields; ++f) {
      std::vector<double> values;
      for (const TrialRecord& rec : records)
        if (rec.n == cell.n && rec.k == cell.k && rec.p_level == cell.p_level &&
            rec.beta == cell.beta)
          values.push_back(summary_field_value(rec, f));
      ASSERT_EQ(values.size(), 5u);
      EXPECT_NEAR(cell.stats[f].mean, testutil::mean(values), 1e-12);
      EXPECT_NEAR(cell.stats[f].sd, testutil::sample_sd(values), 1e-12);
      EXPECT_DOUBLE_EQ(cell.stats[f].min, *std::min_element(values.begin(), values.end()));
      EXPECT_DOUBLE_EQ(cell.stats[f].max, *std::max_element(values.begin(), values.end()));
    }
  }
}

TEST(SummarizeTest, SingleTrialHasZeroSd) {
  CampaignConfig config = tiny_config();
  config.trials = 1;
  const std::vector<CellSummary> cells = summarize(run_campaign(config));
  for (const CellSummary& cell : cells) {
    EXPECT_EQ(cell.count, 1u);
    for (std::size_t f = 0; f < kNumSummaryFields; ++f)
      EXPECT_DOUBLE_EQ(cell.stats[f].sd, 0.0);
  }
}

TEST(SummarizeTest, FailuresExcludedFromStats) {
  // Mix one good cell and one impossible cell.
  CampaignConfig config = tiny_config();
  config.n_grid = {2, 50};
  const std::vector<TrialRecord> records = run_campaign(config);
  const std::vector<CellSummary> cells = summarize(records);
  ASSERT_EQ(cells.size(), 2u);
  EXPECT_EQ(cells[0].n, 2u);
  EXPECT_EQ(cells[0].count, 0u);
  EXPECT_EQ(cells[0].failures, 3u);
  EXPECT_EQ(cells[1].n, 50u);
  EXPECT_EQ(cells[1].count, 3u);
  EXPECT_EQ(cells[1].failures, 0u);
}

TEST(SummarizeTest, Validation) {
  EXPECT_THROW(summarize({}), std::invalid_argument);
}

TEST(SummarizeTest, FieldNamesMatchValues) {
  TrialRecord rec;
  rec.lscc_fraction_pre = 0.1;
  rec.lscc_fraction_post = 0.2;
  rec.rho_L = 0.3;
  rec.alpha_L = 0.4;
  rec.alpha = 0.5;
  rec.alpha_theory = 0.6;
  rec.max_baseline = 0.7;
  rec.e_max = 0.8;
  rec.mean_cost = 0.9;
  rec.removed_edges = 10;
  EXPECT_STREQ(summary_field_name(0), "lscc_fraction_pre");
  EXPECT_STREQ(summary_field_name(9), "removed_edges");
  EXPECT_DOUBLE_EQ(summary_field_value(rec, 0), 0.1);
  EXPECT_DOUBLE_EQ(summary_field_value(rec, 4), 0.5);
  EXPECT_DOUBLE_EQ(summary_field_value(rec, 9), 10.0);
}

// ===========================================================================
// run_fit_correction
// ===========================================================================

TEST(FitCorrectionTest, MatchesManualPooledMle) {
  CampaignConfig config;
  config.n_grid = {200, 300};
  config.k_grid = {4};
  config.trials = 6;
  config.master_seed = 21;
  const FitCorrectionResult result = run_fit_correction(config);
  ASSERT_EQ(result.scale_fits.size(), 2u);

  std::vector<std::pair<double, double>> pairs;
  for (const ScaleFit& fit : result.scale_fits) {
    // Mirror the runner: per-trial long-double partial sums of cost^1.5,
    // reduced in trial order, then the closed-form MLE.
    long double acc = 0.0L;
    std::size_t count = 0;
    for (std::size_t t = 0; t < config.trials; ++t) {
      const std::uint64_t seed =
          derive_seed(config.master_seed, {fit.n, fit.k, 0.0, 0.0}, t);
      const PointSet points = generate_points(fit.n, seed);
      long double partial = 0.0L;
      for (double c : transmission_costs(points, fit.k))
        partial += static_cast<long double>(std::pow(c, 1.5));
      acc += partial;
      count += fit.n;
    }
    const double mean = static_cast<double>(acc / static_cast<long double>(count));
    const double expected = std::pow(mean / static_cast<double>(fit.k), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(fit.a_hat, expected);
    pairs.emplace_back(static_cast<double>(fit.n), fit.a_hat);
  }

  const PowerLawFit refit = fit_power_law(pairs);
  EXPECT_DOUBLE_EQ(result.fit.prefactor, refit.prefactor);
  EXPECT_DOUBLE_EQ(result.fit.exponent, refit.exponent);
}

TEST(FitCorrectionTest, ScaleDecreasesWithN) {
  CampaignConfig config;
  config.n_grid = {100, 400, 900};
  config.k_grid = {5};
  config.trials = 8;
  config.master_seed = 5;
  const FitCorrectionResult result = run_fit_correction(config);
  ASSERT_EQ(result.scale_fits.size(), 3u);
  EXPECT_GT(result.scale_fits[0].a_hat, result.scale_fits[1].a_hat);
  EXPECT_GT(result.scale_fits[1].a_hat, result.scale_fits[2].a_hat);
  EXPECT_LT(result.fit.exponent, -0.5);
  EXPECT_GT(result.fit.prefactor, 0.0);
}

TEST(FitCorrectionTest, Validation) {
  CampaignConfig config;
  config.k_grid = {4};
  config.trials = 2;
  EXPECT_THROW(run_fit_correction(config), std::invalid_argument);
}

// ===========================================================================
// worker_threads
// ===========================================================================

TEST(WorkerThreadsTest, EnvironmentCap) {
  {
    ThreadEnvGuard guard("1");
    EXPECT_EQ(worker_threads(), 1);
  }
  {
    ThreadEnvGuard guard(nullptr);
    EXPECT_GE(worker_threads(), 1);
  }
  {
    ThreadEnvGuard guard("not-a-number");
    EXPECT_GE(worker_threads(), 1);  // malformed values are ignored
  }
}
