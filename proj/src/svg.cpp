#include "swarmsim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace swarmsim {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 60.0;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Linear map from data range to pixel range (y flipped); a degenerate
// data range is padded so single-valued plots stay visible.
struct AxisScale {
  double lo, hi, pix_lo, pix_hi;

  AxisScale(double data_lo, double data_hi, double p_lo, double p_hi)
      : lo(data_lo), hi(data_hi), pix_lo(p_lo), pix_hi(p_hi) {
    if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
  double operator()(double v) const {
    return pix_lo + (v - lo) / (hi - lo) * (pix_hi - pix_lo);
  }
};

void append_frame(std::string& svg, const AxisScale& xs, const AxisScale& ys,
                  const std::string& x_label, const std::string& y_label,
                  const std::string& title) {
  svg += "<rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
         "\" fill=\"white\"/>\n";
  // Axis lines.
  svg += "<line x1=\"" + num(kMargin) + "\" y1=\"" + num(kHeight - kMargin) + "\" x2=\"" +
         num(kWidth - kMargin) + "\" y2=\"" + num(kHeight - kMargin) +
         "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + num(kMargin) + "\" y1=\"" + num(kMargin) + "\" x2=\"" + num(kMargin) +
         "\" y2=\"" + num(kHeight - kMargin) + "\" stroke=\"black\"/>\n";
  // Five ticks per axis.
  for (int t = 0; t <= 4; ++t) {
    const double fx = xs.lo + (xs.hi - xs.lo) * t / 4.0;
    const double px = xs(fx);
    svg += "<line x1=\"" + num(px) + "\" y1=\"" + num(kHeight - kMargin) + "\" x2=\"" +
           num(px) + "\" y2=\"" + num(kHeight - kMargin + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num(px) + "\" y=\"" + num(kHeight - kMargin + 20) +
           "\" font-size=\"11\" text-anchor=\"middle\">" + num(fx) + "</text>\n";
    const double fy = ys.lo + (ys.hi - ys.lo) * t / 4.0;
    const double py = ys(fy);
    svg += "<line x1=\"" + num(kMargin - 5) + "\" y1=\"" + num(py) + "\" x2=\"" +
           num(kMargin) + "\" y2=\"" + num(py) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num(kMargin - 8) + "\" y=\"" + num(py + 4) +
           "\" font-size=\"11\" text-anchor=\"end\">" + num(fy) + "</text>\n";
  }
  svg += "<text x=\"" + num(kWidth / 2) + "\" y=\"" + num(kHeight - 15) +
         "\" font-size=\"13\" text-anchor=\"middle\">" + x_label + "</text>\n";
  svg += "<text x=\"15\" y=\"" + num(kHeight / 2) +
         "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 15 " +
         num(kHeight / 2) + ")\">" + y_label + "</text>\n";
  svg += "<text x=\"" + num(kWidth / 2) +
         "\" y=\"25\" font-size=\"15\" text-anchor=\"middle\">" + title + "</text>\n";
}

}  // namespace

std::vector<std::size_t> histogram_counts(const std::vector<double>& values,
                                          std::size_t bins) {
  if (values.empty()) throw std::invalid_argument("histogram_counts: no values");
  if (bins == 0)
    bins = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(values.size()))));
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  double width = (*hi_it - lo) / static_cast<double>(bins);
  if (width == 0.0) width = 1.0;  // all-equal input: everything in bin 0
  std::vector<std::size_t> counts(bins, 0);
  for (double v : values) {
    std::size_t b = static_cast<std::size_t>((v - lo) / width);
    if (b >= bins) b = bins - 1;  // closes the last bin
    ++counts[b];
  }
  return counts;
}

std::string render_scatter_svg(const std::vector<std::pair<double, double>>& points,
                               const std::string& x_label, const std::string& y_label,
                               const std::string& title) {
  if (points.empty()) throw std::invalid_argument("render_scatter_svg: no points");
  double xlo = points[0].first, xhi = xlo, ylo = points[0].second, yhi = ylo;
  for (const auto& [x, y] : points) {
    xlo = std::min(xlo, x);
    xhi = std::max(xhi, x);
    ylo = std::min(ylo, y);
    yhi = std::max(yhi, y);
  }
  const AxisScale xs(xlo, xhi, kMargin, kWidth - kMargin);
  const AxisScale ys(ylo, yhi, kHeight - kMargin, kMargin);

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
                    "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " +
                    num(kHeight) + "\">\n";
  append_frame(svg, xs, ys, x_label, y_label, title);
  for (const auto& [x, y] : points)
    svg += "<circle cx=\"" + num(xs(x)) + "\" cy=\"" + num(ys(y)) +
           "\" r=\"3\" fill=\"steelblue\" fill-opacity=\"0.7\"/>\n";
  svg += "</svg>\n";
  return svg;
}

std::string render_histogram_svg(const std::vector<double>& values, std::size_t bins,
                                 const std::string& x_label, const std::string& title) {
  const std::vector<std::size_t> counts = histogram_counts(values, bins);
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const std::size_t peak = *std::max_element(counts.begin(), counts.end());

  const AxisScale xs(*lo_it, *hi_it, kMargin, kWidth - kMargin);
  const AxisScale ys(0.0, static_cast<double>(peak), kHeight - kMargin, kMargin);

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
                    "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " +
                    num(kHeight) + "\">\n";
  append_frame(svg, xs, ys, x_label, "count", title);
  const double bar = (kWidth - 2.0 * kMargin) / static_cast<double>(counts.size());
  for (std::size_t b = 0; b < counts.size(); ++b) {
    const double x = kMargin + bar * static_cast<double>(b);
    const double top = ys(static_cast<double>(counts[b]));
    svg += "<rect class=\"bar\" data-count=\"" + std::to_string(counts[b]) + "\" x=\"" +
           num(x) + "\" y=\"" + num(top) + "\" width=\"" + num(bar) + "\" height=\"" +
           num(kHeight - kMargin - top) +
           "\" fill=\"steelblue\" stroke=\"white\" stroke-width=\"0.5\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string render_svg(const std::vector<TrialRecord>& records, Experiment kind,
                       std::size_t bins) {
  std::vector<TrialRecord> ok;
  for (const TrialRecord& r : records)
    if (r.ok()) ok.push_back(r);
  if (ok.empty()) throw std::invalid_argument("render_svg: no successful records");

  const auto scatter = [&](auto fx, auto fy, const std::string& xl, const std::string& yl,
                           const std::string& title) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(ok.size());
    for (const TrialRecord& r : ok) pts.emplace_back(fx(r), fy(r));
    return render_scatter_svg(pts, xl, yl, title);
  };
  const auto by_n = [](const TrialRecord& r) { return static_cast<double>(r.n); };

  switch (kind) {
    case Experiment::connectivity:
      return scatter(by_n, [](const TrialRecord& r) { return r.lscc_fraction_pre; }, "n",
                     "LSCC fraction", "LSCC fraction vs swarm size");
    case Experiment::baselines:
      return scatter(by_n, [](const TrialRecord& r) { return r.max_baseline; }, "n",
                     "max baseline", "Maximal baseline vs swarm size");
    case Experiment::power_dist: {
      std::vector<double> costs;
      costs.reserve(ok.size());
      for (const TrialRecord& r : ok) costs.push_back(r.mean_cost);
      return render_histogram_svg(costs, bins, "mean transmission cost",
                                  "Mean transmission cost distribution");
    }
    case Experiment::fit_correction:
      return scatter(by_n, [](const TrialRecord& r) { return r.mean_cost; }, "n",
                     "mean transmission cost", "Mean transmission cost vs swarm size");
    case Experiment::coverage:
      return scatter([](const TrialRecord& r) { return r.p_level; },
                     [](const TrialRecord& r) { return r.alpha; }, "p level", "alpha",
                     "Coverage factor vs quantile level");
  }
  throw std::invalid_argument("render_svg: unknown experiment");
}

}  // namespace swarmsim
