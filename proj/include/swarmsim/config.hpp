#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "swarmsim/harness.hpp"

namespace swarmsim {

/// Raised for malformed config files, unknown keys, unparseable values and
/// invalid grids; the CLI maps it to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Experiment name <-> enum (names: connectivity, baselines, power_dist,
/// fit_correction, coverage; the CLI also accepts the dashed spellings).
Experiment experiment_from_name(const std::string& name);
std::string experiment_name(Experiment experiment);

/// Default grids per experiment, mirroring the reference campaigns:
/// connectivity sweeps k in {2..12} over n in {100..1000}; baselines and
/// fit_correction sweep n in {100..1000} with k in {4,5,6}; coverage
/// sweeps p in {0.1,...,0.9,0.99} and beta in {0.1,...,1.0} at n=500, k=5.
CampaignConfig default_config(Experiment experiment);

/// Applies one key=value setting.  Keys: experiment, n, k, p, beta,
/// trials, seed.  List values are comma- or whitespace-separated.  Throws
/// ConfigError on unknown keys or unparseable values.
void apply_setting(CampaignConfig& config, const std::string& key, const std::string& value);

/// Loads a config file over `config`.  Two encodings of the same schema
/// are accepted: a flat text format (one `key = value` per line, `#`
/// comments) and a JSON object with the same keys (scalars or arrays).
/// Throws ConfigError on unreadable files, syntax errors or unknown keys.
void apply_config_file(CampaignConfig& config, const std::filesystem::path& path);

/// Structural validation: nonempty grids, positive n and k, p in (0,1),
/// beta in (0,1], trials >= 1.  Throws ConfigError.  (Cells that are
/// internally impossible, e.g. k >= n, fail at trial level and are
/// reported through the status column instead.)
void validate_config(const CampaignConfig& config);

}  // namespace swarmsim
