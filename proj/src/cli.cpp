#include "swarmsim/cli.hpp"

#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "swarmsim/config.hpp"
#include "swarmsim/energy.hpp"
#include "swarmsim/io.hpp"
#include "swarmsim/svg.hpp"

namespace swarmsim {

namespace {

namespace fs = std::filesystem;

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "out";
  std::string formats = "csv";
  std::string n, k, p, beta, trials, seed;  // raw override strings; empty = unset
};

void add_common_options(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path,
                  "Config file: flat key=value lines or a JSON object");
  cmd->add_option("--n", opts.n, "Swarm sizes (comma-separated list)");
  cmd->add_option("--k", opts.k, "Neighbourhood sizes (comma-separated list)");
  cmd->add_option("--p", opts.p, "Quantile levels in (0,1) (comma-separated list)");
  cmd->add_option("--beta", opts.beta, "Computation fractions in (0,1] (comma-separated list)");
  cmd->add_option("--trials", opts.trials, "Trials per grid cell");
  cmd->add_option("--seed", opts.seed, "Master seed (64-bit unsigned)");
  cmd->add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--format", opts.formats, "Output formats, subset of csv,json,svg")
      ->capture_default_str();
}

// Config precedence: experiment defaults < config file < command-line
// overrides.  For the experiment subcommands the subcommand itself pins
// the experiment; only `campaign` lets the file choose it.
CampaignConfig build_config(Experiment experiment, const CommonOpts& opts,
                            bool file_picks_experiment) {
  CampaignConfig config = default_config(experiment);
  if (!opts.config_path.empty()) {
    apply_config_file(config, opts.config_path);
    if (!file_picks_experiment) config.experiment = experiment;
    if (config.experiment != experiment && file_picks_experiment) {
      // `campaign` with a file-selected experiment: restart from that
      // experiment's defaults so unset grids keep sensible values.
      CampaignConfig fresh = default_config(config.experiment);
      apply_config_file(fresh, opts.config_path);
      config = fresh;
    }
  }
  if (!opts.n.empty()) apply_setting(config, "n", opts.n);
  if (!opts.k.empty()) apply_setting(config, "k", opts.k);
  if (!opts.p.empty()) apply_setting(config, "p", opts.p);
  if (!opts.beta.empty()) apply_setting(config, "beta", opts.beta);
  if (!opts.trials.empty()) apply_setting(config, "trials", opts.trials);
  if (!opts.seed.empty()) apply_setting(config, "seed", opts.seed);
  validate_config(config);
  return config;
}

std::set<std::string> parse_formats(const std::string& formats) {
  std::set<std::string> out;
  std::string current;
  const auto flush = [&] {
    if (current.empty()) return;
    if (current != "csv" && current != "json" && current != "svg")
      throw ConfigError("config: unknown format '" + current + "'");
    out.insert(current);
    current.clear();
  };
  for (char c : formats) {
    if (c == ',' || c == ' ')
      flush();
    else
      current += c;
  }
  flush();
  if (out.empty()) throw ConfigError("config: no output format selected");
  return out;
}

int run_records_experiment(const CampaignConfig& config, const CommonOpts& opts) {
  const std::set<std::string> formats = parse_formats(opts.formats);
  const fs::path dir(opts.out_dir);
  fs::create_directories(dir);

  CampaignStats stats;
  const std::vector<TrialRecord> records = run_campaign(config, &stats);
  const std::string stem = experiment_name(config.experiment);

  if (formats.count("csv")) {
    atomic_write_text(dir / (stem + "_records.csv"), records_to_csv(records));
    atomic_write_text(dir / (stem + "_summary.csv"), summaries_to_csv(summarize(records)));
  }
  if (formats.count("json"))
    atomic_write_text(dir / (stem + "_records.json"), records_to_json(records));
  if (formats.count("svg") && stats.failed_trials < records.size())
    atomic_write_text(dir / (stem + ".svg"), render_svg(records, config.experiment));

  if (stats.failed_trials > 0)
    std::cerr << "warning: " << stats.failed_trials << " of " << records.size()
              << " trials failed (see status column)\n";
  if (stats.classify_mismatches > 0)
    std::cerr << "note: classification disagreed with the reference LSCC on "
              << stats.classify_mismatches << " trials\n";
  return stats.failed_trials == records.size() ? 3 : 0;
}

int run_fit_correction_experiment(const CampaignConfig& config, const CommonOpts& opts) {
  const std::set<std::string> formats = parse_formats(opts.formats);
  const fs::path dir(opts.out_dir);
  fs::create_directories(dir);

  const FitCorrectionResult result = run_fit_correction(config);
  if (formats.count("csv"))
    atomic_write_text(dir / "fit_correction_scales.csv", scale_fits_to_csv(result));
  if (formats.count("json"))
    atomic_write_text(dir / "fit_correction.json", fit_result_to_json(result));
  if (formats.count("svg")) {
    std::vector<std::pair<double, double>> pts;
    for (const ScaleFit& s : result.scale_fits)
      pts.emplace_back(static_cast<double>(s.n), s.a_hat);
    atomic_write_text(dir / "fit_correction.svg",
                      render_scatter_svg(pts, "n", "fitted scale a",
                                         "Fitted cost scale vs swarm size"));
  }
  std::cout << "prefactor=" << format_double(result.fit.prefactor)
            << " exponent=" << format_double(result.fit.exponent) << '\n';
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{
      "swarmsim — deterministic Monte Carlo simulator for k-nearest-neighbour\n"
      "satellite-swarm networks: connectivity, baselines, transmission-cost\n"
      "distributions, energy-budgeted pruning and cross-correlation coverage.\n"
      "\n"
      "Parameter-choice workflow: run `connectivity` and pick the smallest k\n"
      "whose LSCC fraction meets your target; then run `coverage` to trade\n"
      "off the budget quantile p against the computation fraction beta.\n"};
  app.require_subcommand(1);

  struct Invocation {
    CommonOpts opts;
    std::function<int()> action;
  };
  auto inv = std::make_shared<Invocation>();

  const auto add_experiment = [&](const std::string& name, Experiment experiment,
                                  const std::string& help) {
    CLI::App* cmd = app.add_subcommand(name, help);
    add_common_options(cmd, inv->opts);
    cmd->callback([inv, experiment] {
      inv->action = [inv, experiment] {
        const CampaignConfig config = build_config(experiment, inv->opts, false);
        if (experiment == Experiment::fit_correction)
          return run_fit_correction_experiment(config, inv->opts);
        return run_records_experiment(config, inv->opts);
      };
    });
  };

  add_experiment("connectivity", Experiment::connectivity,
                 "LSCC fraction across the (n, k) grid");
  add_experiment("baselines", Experiment::baselines,
                 "Maximal baseline lengths across the (n, k) grid");
  add_experiment("power-dist", Experiment::power_dist,
                 "Transmission-cost statistics at fixed (n, k)");
  add_experiment("fit-correction", Experiment::fit_correction,
                 "MLE cost-scale fits and the finite-size power law");
  add_experiment("coverage", Experiment::coverage,
                 "Coverage factors across the (p, beta) grid");

  {
    CLI::App* cmd = app.add_subcommand(
        "campaign", "Run the experiment selected by the config file");
    add_common_options(cmd, inv->opts);
    cmd->callback([inv] {
      inv->action = [inv] {
        const CampaignConfig config = build_config(Experiment::coverage, inv->opts, true);
        if (config.experiment == Experiment::fit_correction)
          return run_fit_correction_experiment(config, inv->opts);
        return run_records_experiment(config, inv->opts);
      };
    });
  }

  {
    CLI::App* cmd = app.add_subcommand(
        "quantile", "Print the corrected-model cost quantile for (n, k, p)");
    auto n = std::make_shared<std::uint64_t>(0);
    auto k = std::make_shared<std::uint64_t>(0);
    auto p = std::make_shared<double>(0.0);
    cmd->add_option("--n", *n, "Swarm size")->required();
    cmd->add_option("--k", *k, "Neighbourhood size")->required();
    cmd->add_option("--p", *p, "Quantile level in (0,1)")->required();
    cmd->callback([inv, n, k, p] {
      inv->action = [n, k, p] {
        if (*n == 0 || *k == 0) throw ConfigError("quantile: n and k must be >= 1");
        if (!(*p > 0.0) || !(*p < 1.0))
          throw ConfigError("quantile: p must be in (0,1)");
        const CostModel model =
            make_cost_model(static_cast<std::size_t>(*n), static_cast<std::size_t>(*k), true);
        std::cout << format_double(gg_quantile(*p, model.params)) << '\n';
        return 0;
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? 0 : 2;
  }

  try {
    return inv->action ? inv->action() : 2;
  } catch (const ConfigError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  }
}

}  // namespace swarmsim
