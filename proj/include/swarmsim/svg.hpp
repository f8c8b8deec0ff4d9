#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "swarmsim/harness.hpp"

namespace swarmsim {

/// Fixed-width histogram bin counts over [min, max]; the last bin is
/// closed so the maximum lands inside it.  bins == 0 selects the default
/// ceil(sqrt(N)).  Throws std::invalid_argument on empty input.
std::vector<std::size_t> histogram_counts(const std::vector<double>& values,
                                          std::size_t bins);

/// Self-contained SVG scatter plot (no external assets): axes, tick
/// labels, a title, and one <circle> per point.  Deterministic text for
/// deterministic input.  Throws std::invalid_argument on empty input.
std::string render_scatter_svg(const std::vector<std::pair<double, double>>& points,
                               const std::string& x_label, const std::string& y_label,
                               const std::string& title);

/// Self-contained SVG histogram with one <rect class="bar"> per bin.
/// Same determinism and validation rules as the scatter renderer.
std::string render_histogram_svg(const std::vector<double>& values, std::size_t bins,
                                 const std::string& x_label, const std::string& title);

/// Experiment-specific record plot:
///   connectivity     scatter of lscc_fraction_pre vs n
///   baselines        scatter of max_baseline vs n
///   power_dist       histogram of mean_cost
///   fit_correction   scatter of mean_cost vs n
///   coverage         scatter of alpha vs p_level
/// Only successful records are drawn.  Throws std::invalid_argument when
/// no record is drawable.
std::string render_svg(const std::vector<TrialRecord>& records, Experiment kind,
                       std::size_t bins = 0);

}  // namespace swarmsim
