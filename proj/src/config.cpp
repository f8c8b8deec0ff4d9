#include "swarmsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace swarmsim {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::string current;
  for (char c : value) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!current.empty()) items.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) items.push_back(current);
  return items;
}

std::uint64_t parse_u64(const std::string& key, const std::string& token) {
  try {
    // stoull accepts a leading minus and wraps the value; reject it here.
    if (token.find('-') != std::string::npos) throw std::invalid_argument(token);
    std::size_t used = 0;
    const unsigned long long v = std::stoull(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "': not an unsigned integer: '" + token + "'");
  }
}

double parse_f64(const std::string& key, const std::string& token) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "': not a number: '" + token + "'");
  }
}

std::vector<std::size_t> parse_u64_list(const std::string& key, const std::string& value) {
  std::vector<std::size_t> out;
  for (const std::string& token : split_list(value))
    out.push_back(static_cast<std::size_t>(parse_u64(key, token)));
  if (out.empty()) throw ConfigError("config: key '" + key + "': empty list");
  return out;
}

std::vector<double> parse_f64_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const std::string& token : split_list(value)) out.push_back(parse_f64(key, token));
  if (out.empty()) throw ConfigError("config: key '" + key + "': empty list");
  return out;
}

}  // namespace

Experiment experiment_from_name(const std::string& name) {
  std::string canon = name;
  std::replace(canon.begin(), canon.end(), '-', '_');
  if (canon == "connectivity") return Experiment::connectivity;
  if (canon == "baselines") return Experiment::baselines;
  if (canon == "power_dist") return Experiment::power_dist;
  if (canon == "fit_correction") return Experiment::fit_correction;
  if (canon == "coverage") return Experiment::coverage;
  throw ConfigError("config: unknown experiment '" + name + "'");
}

std::string experiment_name(Experiment experiment) {
  switch (experiment) {
    case Experiment::connectivity: return "connectivity";
    case Experiment::baselines: return "baselines";
    case Experiment::power_dist: return "power_dist";
    case Experiment::fit_correction: return "fit_correction";
    case Experiment::coverage: return "coverage";
  }
  return "unknown";
}

CampaignConfig default_config(Experiment experiment) {
  CampaignConfig config;
  config.experiment = experiment;
  config.trials = 50;
  config.master_seed = 1;

  const auto n_sweep = [] {
    std::vector<std::size_t> n;
    for (std::size_t v = 100; v <= 1000; v += 100) n.push_back(v);
    return n;
  };

  switch (experiment) {
    case Experiment::connectivity:
      config.n_grid = n_sweep();
      config.k_grid = {2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
      config.p_grid = {0.99};
      config.beta_grid = {0.5};
      break;
    case Experiment::baselines:
    case Experiment::fit_correction:
      config.n_grid = n_sweep();
      config.k_grid = {4, 5, 6};
      config.p_grid = {0.99};
      config.beta_grid = {0.5};
      break;
    case Experiment::power_dist:
      config.n_grid = {600};
      config.k_grid = {5};
      config.p_grid = {0.99};
      config.beta_grid = {0.5};
      break;
    case Experiment::coverage:
      config.n_grid = {500};
      config.k_grid = {5};
      config.p_grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99};
      config.beta_grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
      break;
  }
  return config;
}

void apply_setting(CampaignConfig& config, const std::string& key, const std::string& value) {
  if (key == "experiment")
    config.experiment = experiment_from_name(trim(value));
  else if (key == "n")
    config.n_grid = parse_u64_list(key, value);
  else if (key == "k")
    config.k_grid = parse_u64_list(key, value);
  else if (key == "p")
    config.p_grid = parse_f64_list(key, value);
  else if (key == "beta")
    config.beta_grid = parse_f64_list(key, value);
  else if (key == "trials")
    config.trials = static_cast<std::size_t>(parse_u64(key, trim(value)));
  else if (key == "seed")
    config.master_seed = parse_u64(key, trim(value));
  else
    throw ConfigError("config: unknown key '" + key + "'");
}

namespace {

void apply_json(CampaignConfig& config, const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& err) {
    throw ConfigError(std::string("config: JSON parse error: ") + err.what());
  }
  if (!doc.is_object()) throw ConfigError("config: JSON root must be an object");

  // Re-encode each value as the flat text form so both encodings share one
  // interpretation of every key.
  for (const auto& [key, value] : doc.items()) {
    std::string flat;
    if (value.is_array()) {
      for (const auto& item : value) {
        if (!flat.empty()) flat += ',';
        flat += item.is_string() ? item.get<std::string>() : item.dump();
      }
    } else {
      flat = value.is_string() ? value.get<std::string>() : value.dump();
    }
    apply_setting(config, key, flat);
  }
}

}  // namespace

void apply_config_file(CampaignConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot read file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    apply_json(config, text);
    return;
  }

  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    apply_setting(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void validate_config(const CampaignConfig& config) {
  if (config.n_grid.empty() || config.k_grid.empty() || config.p_grid.empty() ||
      config.beta_grid.empty())
    throw ConfigError("config: all parameter grids must be nonempty");
  if (config.trials == 0) throw ConfigError("config: trials must be >= 1");
  for (std::size_t n : config.n_grid)
    if (n == 0) throw ConfigError("config: n must be >= 1");
  for (std::size_t k : config.k_grid)
    if (k == 0) throw ConfigError("config: k must be >= 1");
  for (double p : config.p_grid)
    if (!(p > 0.0) || !(p < 1.0)) throw ConfigError("config: p must be in (0,1)");
  for (double beta : config.beta_grid)
    if (!(beta > 0.0) || !(beta <= 1.0)) throw ConfigError("config: beta must be in (0,1]");
}

}  // namespace swarmsim
