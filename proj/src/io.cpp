#include "swarmsim/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace swarmsim {

namespace {

const char kRecordHeader[] =
    "n,k,p_level,beta,trial_index,seed,lscc_fraction_pre,lscc_fraction_post,"
    "rho_L,alpha_L,alpha,alpha_theory,max_baseline,e_max,mean_cost,removed_edges,status";

// Minimal RFC-4180 quoting: only fields containing a comma, quote or
// newline get wrapped (status is the only free-text column).
std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void atomic_write_text(const std::filesystem::path& path, const std::string& text) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("atomic_write_text: cannot open " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("atomic_write_text: write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string records_to_csv(const std::vector<TrialRecord>& records) {
  std::string out = kRecordHeader;
  out += '\n';
  for (const TrialRecord& r : records) {
    out += std::to_string(r.n) + ',' + std::to_string(r.k) + ',';
    out += format_double(r.p_level) + ',' + format_double(r.beta) + ',';
    out += std::to_string(r.trial_index) + ',' + std::to_string(r.seed) + ',';
    out += format_double(r.lscc_fraction_pre) + ',' + format_double(r.lscc_fraction_post) + ',';
    out += format_double(r.rho_L) + ',' + format_double(r.alpha_L) + ',';
    out += format_double(r.alpha) + ',' + format_double(r.alpha_theory) + ',';
    out += format_double(r.max_baseline) + ',' + format_double(r.e_max) + ',';
    out += format_double(r.mean_cost) + ',' + std::to_string(r.removed_edges) + ',';
    out += csv_escape(r.status);
    out += '\n';
  }
  return out;
}

std::string records_to_json(const std::vector<TrialRecord>& records) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const TrialRecord& r = records[i];
    out += "  {";
    out += "\"n\":" + std::to_string(r.n);
    out += ",\"k\":" + std::to_string(r.k);
    out += ",\"p_level\":" + format_double(r.p_level);
    out += ",\"beta\":" + format_double(r.beta);
    out += ",\"trial_index\":" + std::to_string(r.trial_index);
    out += ",\"seed\":" + std::to_string(r.seed);
    out += ",\"lscc_fraction_pre\":" + format_double(r.lscc_fraction_pre);
    out += ",\"lscc_fraction_post\":" + format_double(r.lscc_fraction_post);
    out += ",\"rho_L\":" + format_double(r.rho_L);
    out += ",\"alpha_L\":" + format_double(r.alpha_L);
    out += ",\"alpha\":" + format_double(r.alpha);
    out += ",\"alpha_theory\":" + format_double(r.alpha_theory);
    out += ",\"max_baseline\":" + format_double(r.max_baseline);
    out += ",\"e_max\":" + format_double(r.e_max);
    out += ",\"mean_cost\":" + format_double(r.mean_cost);
    out += ",\"removed_edges\":" + std::to_string(r.removed_edges);
    out += ",\"status\":\"" + json_escape(r.status) + "\"";
    out += i + 1 < records.size() ? "},\n" : "}\n";
  }
  out += "]\n";
  return out;
}

std::string summaries_to_csv(const std::vector<CellSummary>& cells) {
  std::string out = "n,k,p_level,beta,count,failures";
  for (std::size_t f = 0; f < kNumSummaryFields; ++f) {
    const std::string name = summary_field_name(f);
    out += ',' + name + "_mean," + name + "_sd," + name + "_min," + name + "_max";
  }
  out += '\n';
  for (const CellSummary& c : cells) {
    out += std::to_string(c.n) + ',' + std::to_string(c.k) + ',';
    out += format_double(c.p_level) + ',' + format_double(c.beta) + ',';
    out += std::to_string(c.count) + ',' + std::to_string(c.failures);
    for (std::size_t f = 0; f < kNumSummaryFields; ++f) {
      const FieldStats& st = c.stats[f];
      out += ',' + format_double(st.mean) + ',' + format_double(st.sd) + ',' +
             format_double(st.min) + ',' + format_double(st.max);
    }
    out += '\n';
  }
  return out;
}

std::string scale_fits_to_csv(const FitCorrectionResult& result) {
  std::string out = "n,k,a_hat\n";
  for (const ScaleFit& s : result.scale_fits)
    out += std::to_string(s.n) + ',' + std::to_string(s.k) + ',' + format_double(s.a_hat) + '\n';
  return out;
}

std::string fit_result_to_json(const FitCorrectionResult& result) {
  std::string out = "{\n  \"prefactor\":" + format_double(result.fit.prefactor) +
                    ",\n  \"exponent\":" + format_double(result.fit.exponent) +
                    ",\n  \"scales\":[\n";
  for (std::size_t i = 0; i < result.scale_fits.size(); ++i) {
    const ScaleFit& s = result.scale_fits[i];
    out += "    {\"n\":" + std::to_string(s.n) + ",\"k\":" + std::to_string(s.k) +
           ",\"a_hat\":" + format_double(s.a_hat) + '}';
    out += i + 1 < result.scale_fits.size() ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

}  // namespace swarmsim
