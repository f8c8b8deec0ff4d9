#include "swarmsim/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "swarmsim/rng.hpp"

namespace swarmsim {

std::uint64_t derive_seed(std::uint64_t master_seed, const Cell& cell,
                          std::size_t trial_index) {
  std::uint64_t h = master_seed;
  h = hash_mix(h, static_cast<std::uint64_t>(cell.n));
  h = hash_mix(h, static_cast<std::uint64_t>(cell.k));
  h = hash_mix(h, double_bits(cell.p_level));
  h = hash_mix(h, double_bits(cell.beta));
  h = hash_mix(h, static_cast<std::uint64_t>(trial_index));
  return h;
}

TrialRecord run_trial(const Cell& cell, std::size_t trial_index, std::uint64_t seed) {
  TrialRecord rec;
  rec.n = cell.n;
  rec.k = cell.k;
  rec.p_level = cell.p_level;
  rec.beta = cell.beta;
  rec.trial_index = trial_index;
  rec.seed = seed;

  try {
    const PointSet points = generate_points(cell.n, seed);
    const DirectedGraph graph = build_knn_graph(points, cell.k);

    // Unpruned broadcast costs fall straight out of the sorted edge lists.
    double cost_sum = 0.0;
    for (std::size_t v = 0; v < graph.n; ++v) {
      const double r = graph.out_edges[v].back().length;
      cost_sum += r * r;
    }
    rec.mean_cost = cost_sum / static_cast<double>(graph.n);

    const SccDecomposition pre = scc(graph);
    rec.lscc_fraction_pre =
        static_cast<double>(pre.component_sizes[pre.lscc_id]) / static_cast<double>(graph.n);

    const EnergyBudget budget = budget_from_quantile(cell.p_level, cell.n, cell.k, cell.beta);
    rec.e_max = budget.e_max;

    const PrunedNetwork pruned = prune(graph, budget.e_max);
    rec.removed_edges = pruned.removed_edges;

    const SccDecomposition post_scc = scc(pruned.graph);
    rec.lscc_fraction_post = static_cast<double>(post_scc.component_sizes[post_scc.lscc_id]) /
                             static_cast<double>(graph.n);

    const SwarmClassification post = classify(pruned.graph);
    if (mode_is_unique(post.in_size))
      rec.classify_agrees = classification_matches_scc(post, post_scc);

    std::vector<double> residuals(graph.n);
    for (std::size_t v = 0; v < graph.n; ++v)
      residuals[v] = residual_energy(budget.e_max, pruned.realized_cost[v]);

    const Allocation alloc = allocate(post, residuals, budget.job_cost);
    CoverageMetrics metrics = coverage(pre, post, alloc, cell.n);
    metrics.alpha_theory = alpha_theory(cell.n, cell.k, budget.e_max, post.eta_plus,
                                        post.eta_minus, budget.job_cost);

    rec.rho_L = metrics.rho_L;
    rec.alpha_L = metrics.alpha_L;
    rec.alpha = metrics.alpha;
    rec.alpha_theory = metrics.alpha_theory;
    rec.max_baseline = post.lscc.size() >= 2 ? max_baseline(points, post.lscc) : 0.0;
  } catch (const std::exception& err) {
    rec = TrialRecord{};
    rec.n = cell.n;
    rec.k = cell.k;
    rec.p_level = cell.p_level;
    rec.beta = cell.beta;
    rec.trial_index = trial_index;
    rec.seed = seed;
    rec.status = err.what();
  }
  return rec;
}

int worker_threads() {
  int limit = omp_get_max_threads();
  if (const char* env = std::getenv("SWARM_SIM_THREADS")) {
    char* end = nullptr;
    const long requested = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && requested > 0)
      limit = std::min<long>(limit, requested);
  }
  return std::max(limit, 1);
}

namespace {

void validate(const CampaignConfig& config) {
  if (config.n_grid.empty() || config.k_grid.empty() || config.p_grid.empty() ||
      config.beta_grid.empty())
    throw std::invalid_argument("run_campaign: all parameter grids must be nonempty");
  if (config.trials == 0) throw std::invalid_argument("run_campaign: trials must be >= 1");
}

std::vector<Cell> expand_cells(const CampaignConfig& config) {
  std::vector<Cell> cells;
  cells.reserve(config.n_grid.size() * config.k_grid.size() * config.p_grid.size() *
                config.beta_grid.size());
  for (std::size_t n : config.n_grid)
    for (std::size_t k : config.k_grid)
      for (double p : config.p_grid)
        for (double beta : config.beta_grid) cells.push_back({n, k, p, beta});
  return cells;
}

}  // namespace

std::vector<TrialRecord> run_campaign(const CampaignConfig& config, CampaignStats* stats) {
  validate(config);
  const std::vector<Cell> cells = expand_cells(config);
  const std::size_t total = cells.size() * config.trials;
  std::vector<TrialRecord> records(total);

  std::size_t failed = 0, mismatched = 0;
  const int threads = worker_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads) \
    reduction(+ : failed, mismatched)
  for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(total); ++idx) {
    const Cell& cell = cells[static_cast<std::size_t>(idx) / config.trials];
    const std::size_t trial = static_cast<std::size_t>(idx) % config.trials;
    TrialRecord rec = run_trial(cell, trial, derive_seed(config.master_seed, cell, trial));
    if (!rec.ok()) ++failed;
    if (rec.ok() && !rec.classify_agrees && cell.n >= 100 && cell.k >= 4) ++mismatched;
    records[static_cast<std::size_t>(idx)] = std::move(rec);
  }

  // Execution order must never leak into the output.
  std::sort(records.begin(), records.end(), [](const TrialRecord& a, const TrialRecord& b) {
    return std::tie(a.n, a.k, a.p_level, a.beta, a.trial_index) <
           std::tie(b.n, b.k, b.p_level, b.beta, b.trial_index);
  });

  if (stats) {
    stats->failed_trials = failed;
    stats->classify_mismatches = mismatched;
  }
  return records;
}

const char* summary_field_name(std::size_t field) {
  static const char* kNames[kNumSummaryFields] = {
      "lscc_fraction_pre", "lscc_fraction_post", "rho_L",  "alpha_L",   "alpha",
      "alpha_theory",      "max_baseline",       "e_max",  "mean_cost", "removed_edges"};
  return kNames[field];
}

double summary_field_value(const TrialRecord& rec, std::size_t field) {
  switch (field) {
    case 0: return rec.lscc_fraction_pre;
    case 1: return rec.lscc_fraction_post;
    case 2: return rec.rho_L;
    case 3: return rec.alpha_L;
    case 4: return rec.alpha;
    case 5: return rec.alpha_theory;
    case 6: return rec.max_baseline;
    case 7: return rec.e_max;
    case 8: return rec.mean_cost;
    case 9: return static_cast<double>(rec.removed_edges);
    default: throw std::invalid_argument("summary_field_value: bad field index");
  }
}

std::vector<CellSummary> summarize(const std::vector<TrialRecord>& records) {
  if (records.empty()) throw std::invalid_argument("summarize: no records");

  std::vector<const TrialRecord*> ordered;
  ordered.reserve(records.size());
  for (const TrialRecord& r : records) ordered.push_back(&r);
  std::sort(ordered.begin(), ordered.end(), [](const TrialRecord* a, const TrialRecord* b) {
    return std::tie(a->n, a->k, a->p_level, a->beta, a->trial_index) <
           std::tie(b->n, b->k, b->p_level, b->beta, b->trial_index);
  });

  std::vector<CellSummary> cells;
  std::size_t begin = 0;
  while (begin < ordered.size()) {
    std::size_t end = begin;
    const TrialRecord& head = *ordered[begin];
    while (end < ordered.size() && ordered[end]->n == head.n && ordered[end]->k == head.k &&
           ordered[end]->p_level == head.p_level && ordered[end]->beta == head.beta)
      ++end;

    CellSummary cell;
    cell.n = head.n;
    cell.k = head.k;
    cell.p_level = head.p_level;
    cell.beta = head.beta;
    for (std::size_t i = begin; i < end; ++i)
      ordered[i]->ok() ? ++cell.count : ++cell.failures;

    for (std::size_t f = 0; f < kNumSummaryFields; ++f) {
      FieldStats& st = cell.stats[f];
      if (cell.count == 0) continue;
      double sum = 0.0;
      st.min = std::numeric_limits<double>::infinity();
      st.max = -std::numeric_limits<double>::infinity();
      for (std::size_t i = begin; i < end; ++i) {
        if (!ordered[i]->ok()) continue;
        const double v = summary_field_value(*ordered[i], f);
        sum += v;
        st.min = std::min(st.min, v);
        st.max = std::max(st.max, v);
      }
      st.mean = sum / static_cast<double>(cell.count);
      double ss = 0.0;
      for (std::size_t i = begin; i < end; ++i) {
        if (!ordered[i]->ok()) continue;
        const double d = summary_field_value(*ordered[i], f) - st.mean;
        ss += d * d;
      }
      st.sd = cell.count < 2 ? 0.0 : std::sqrt(ss / static_cast<double>(cell.count - 1));
    }
    cells.push_back(cell);
    begin = end;
  }
  return cells;
}

FitCorrectionResult run_fit_correction(const CampaignConfig& config) {
  if (config.n_grid.empty() || config.k_grid.empty())
    throw std::invalid_argument("run_fit_correction: n and k grids must be nonempty");
  if (config.trials == 0)
    throw std::invalid_argument("run_fit_correction: trials must be >= 1");

  struct CellTask {
    std::size_t n = 0;
    std::size_t k = 0;
  };
  std::vector<CellTask> cells;
  for (std::size_t n : config.n_grid)
    for (std::size_t k : config.k_grid) cells.push_back({n, k});

  // Per-trial partial sums of cost^(3/2); reduced in a fixed order below so
  // the result is independent of the parallel schedule.
  const std::size_t total = cells.size() * config.trials;
  std::vector<long double> partial(total, 0.0L);
  std::vector<std::size_t> samples(total, 0);

  const int threads = worker_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(total); ++idx) {
    const CellTask& cell = cells[static_cast<std::size_t>(idx) / config.trials];
    const std::size_t trial = static_cast<std::size_t>(idx) % config.trials;
    const std::uint64_t seed =
        derive_seed(config.master_seed, {cell.n, cell.k, 0.0, 0.0}, trial);
    const PointSet points = generate_points(cell.n, seed);
    const std::vector<double> costs = transmission_costs(points, cell.k);
    long double acc = 0.0L;
    for (double c : costs) acc += static_cast<long double>(std::pow(c, 1.5));
    partial[static_cast<std::size_t>(idx)] = acc;
    samples[static_cast<std::size_t>(idx)] = costs.size();
  }

  FitCorrectionResult result;
  std::vector<std::pair<double, double>> pairs;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    long double acc = 0.0L;
    std::size_t count = 0;
    for (std::size_t t = 0; t < config.trials; ++t) {
      acc += partial[c * config.trials + t];
      count += samples[c * config.trials + t];
    }
    // Pooled closed-form MLE: a_hat = (mean(x^(3/2)) / k)^(2/3).
    const double mean = static_cast<double>(acc / static_cast<long double>(count));
    const double a_hat = std::pow(mean / static_cast<double>(cells[c].k), 2.0 / 3.0);
    result.scale_fits.push_back({cells[c].n, cells[c].k, a_hat});
    pairs.emplace_back(static_cast<double>(cells[c].n), a_hat);
  }
  result.fit = fit_power_law(pairs);
  return result;
}

}  // namespace swarmsim
