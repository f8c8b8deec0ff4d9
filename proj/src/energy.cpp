#include "swarmsim/energy.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace swarmsim {

namespace {

constexpr double kBallDensityFactor = 4.0 * std::numbers::pi / 3.0;

void check_params(const GenGammaParams& params) {
  if (!(params.a > 0.0) || !(params.d > 0.0) || !(params.p > 0.0))
    throw std::invalid_argument("generalized gamma parameters must be positive");
}

// Regularized lower incomplete gamma P(s, y): series expansion for
// y < s + 1, Lentz continued fraction for the complement otherwise.
double reg_lower_gamma(double s, double y) {
  if (y <= 0.0) return 0.0;
  const double lg = std::lgamma(s);
  if (y < s + 1.0) {
    double term = 1.0 / s;
    double sum = term;
    for (int i = 1; i < 500; ++i) {
      term *= y / (s + i);
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-y + s * std::log(y) - lg);
  }
  // Continued fraction for Q(s, y) = 1 - P(s, y).
  const double tiny = 1e-300;
  double b = y + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  const double q = std::exp(-y + s * std::log(y) - lg) * h;
  return 1.0 - q;
}

// Survival sum exp(-lam) * sum_{j=0}^{k-1} lam^j / j!.  The direct
// recurrence divides by exact integer factorials; for large lam the
// leading factor underflows, so the tail switches to log space.
double poisson_survival(double lam, std::size_t k) {
  if (lam <= 0.0) return 1.0;
  if (lam <= 700.0) {
    double term = std::exp(-lam);
    double sum = term;
    for (std::size_t j = 1; j < k; ++j) {
      term *= lam / static_cast<double>(j);
      sum += term;
    }
    return sum;
  }
  const double log_lam = std::log(lam);
  double max_log = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < k; ++j)
    max_log = std::max(max_log, -lam + static_cast<double>(j) * log_lam -
                                    std::lgamma(static_cast<double>(j) + 1.0));
  if (max_log < -745.0) return 0.0;
  double sum = 0.0;
  for (std::size_t j = 0; j < k; ++j)
    sum += std::exp(-lam + static_cast<double>(j) * log_lam -
                    std::lgamma(static_cast<double>(j) + 1.0) - max_log);
  return std::exp(max_log) * sum;
}

// Nearest integer to x when within tol, 0 otherwise (0 is never a valid
// shape ratio, so it doubles as the "not integral" marker).
std::size_t integral_shape_ratio(double x, double tol = 1e-9) {
  const double r = std::round(x);
  if (r >= 1.0 && std::abs(x - r) <= tol) return static_cast<std::size_t>(r);
  return 0;
}

}  // namespace

CostModel make_cost_model(std::size_t n, std::size_t k, bool corrected) {
  if (n == 0) throw std::invalid_argument("make_cost_model: n must be >= 1");
  if (k == 0) throw std::invalid_argument("make_cost_model: k must be >= 1");
  CostModel model;
  model.n = n;
  model.k = k;
  model.corrected = corrected;
  model.extrapolated = corrected && corrected_scale_extrapolated(n);
  model.params.d = 1.5 * static_cast<double>(k);
  model.params.p = 1.5;
  model.params.a = corrected
                       ? corrected_scale(n)
                       : std::pow(kBallDensityFactor * static_cast<double>(n), -2.0 / 3.0);
  return model;
}

std::vector<double> transmission_costs(const PointSet& ps, std::size_t k, bool parallel) {
  const std::size_t n = ps.n();
  if (k == 0 || k >= n)
    throw std::invalid_argument("transmission_costs: require 1 <= k <= n-1");
  std::vector<double> costs(n);
  const bool run_parallel = parallel && !omp_in_parallel();
#pragma omp parallel if (run_parallel)
  {
    std::vector<Neighbour> scratch, row;
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
      detail::knn_row(ps, static_cast<std::size_t>(i), k, scratch, row);
      const double r = row.back().dist;
      costs[static_cast<std::size_t>(i)] = r * r;
    }
  }
  return costs;
}

double gg_pdf(double x, const GenGammaParams& params) {
  check_params(params);
  if (x < 0.0) throw std::invalid_argument("gg_pdf: x must be >= 0");
  const double s = params.d / params.p;
  if (x == 0.0) {
    if (params.d > 1.0) return 0.0;
    if (params.d == 1.0)
      return params.p / (std::pow(params.a, params.d) * std::tgamma(s));
    return std::numeric_limits<double>::infinity();
  }
  const double log_pdf = std::log(params.p) + (params.d - 1.0) * std::log(x) -
                         std::pow(x / params.a, params.p) -
                         params.d * std::log(params.a) - std::lgamma(s);
  return std::exp(log_pdf);
}

double gg_cdf(double x, const GenGammaParams& params) {
  check_params(params);
  if (x < 0.0) throw std::invalid_argument("gg_cdf: x must be >= 0");
  if (x == 0.0) return 0.0;
  const double s = params.d / params.p;
  const double y = std::pow(x / params.a, params.p);
  // Integer shape ratios take the Poisson-sum route, which is cheaper and
  // uses exact factorials; both branches agree to full precision.
  if (const std::size_t k = integral_shape_ratio(s))
    return 1.0 - poisson_survival(y, k);
  return reg_lower_gamma(s, y);
}

double cost_cdf(double c, std::size_t n, std::size_t k) {
  if (n == 0) throw std::invalid_argument("cost_cdf: n must be >= 1");
  if (k == 0) throw std::invalid_argument("cost_cdf: k must be >= 1");
  if (c < 0.0) throw std::invalid_argument("cost_cdf: c must be >= 0");
  if (c == 0.0) return 0.0;
  const double lam = kBallDensityFactor * static_cast<double>(n) * std::pow(c, 1.5);
  return 1.0 - poisson_survival(lam, k);
}

double gg_quantile(double u, const GenGammaParams& params,
                   std::optional<PoissonForm> poisson_form) {
  check_params(params);
  if (!(u > 0.0) || !(u < 1.0)) throw std::invalid_argument("gg_quantile: u must be in (0,1)");

  const auto cdf = [&](double c) {
    if (poisson_form) return cost_cdf(c, poisson_form->n, poisson_form->k);
    return gg_cdf(c, params);
  };

  // Bracket: double the upper end until the CDF exceeds u.
  double lo = 0.0;
  double hi = params.a;
  for (int i = 0; i < 2000 && cdf(hi) <= u; ++i) hi *= 2.0;

  // Bisection.  The CDF is strictly increasing, so this converges
  // unconditionally; 200 halvings drive the bracket to machine precision,
  // far inside the 1e-12 contract.
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (cdf(mid) < u)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double corrected_scale(std::size_t n) {
  if (n == 0) throw std::invalid_argument("corrected_scale: n must be >= 1");
  return 0.685 * std::pow(static_cast<double>(n), -0.73);
}

bool corrected_scale_extrapolated(std::size_t n) { return n < 100 || n > 1000; }

double fit_scale_mle(const std::vector<double>& samples, std::size_t k) {
  if (samples.empty()) throw std::invalid_argument("fit_scale_mle: empty sample");
  if (k == 0) throw std::invalid_argument("fit_scale_mle: k must be >= 1");
  long double acc = 0.0L;
  for (double x : samples) {
    if (!(x > 0.0)) throw std::invalid_argument("fit_scale_mle: samples must be positive");
    acc += static_cast<long double>(std::pow(x, 1.5));
  }
  const double mean = static_cast<double>(acc / static_cast<long double>(samples.size()));
  return std::pow(mean / static_cast<double>(k), 2.0 / 3.0);
}

PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 2) throw std::invalid_argument("fit_power_law: need >= 2 pairs");
  double sx = 0.0, sy = 0.0;
  for (const auto& [n, a] : pairs) {
    if (!(n > 0.0) || !(a > 0.0))
      throw std::invalid_argument("fit_power_law: pairs must be positive");
    sx += std::log(n);
    sy += std::log(a);
  }
  const double mx = sx / static_cast<double>(pairs.size());
  const double my = sy / static_cast<double>(pairs.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [n, a] : pairs) {
    const double dx = std::log(n) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(a) - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_power_law: degenerate abscissae");
  const double slope = sxy / sxx;
  return {std::exp(my - slope * mx), slope};
}

double residual_energy(double e_max, double cost) { return std::max(e_max - cost, 0.0); }

namespace {

// Adaptive Simpson quadrature with absolute tolerance and a global
// subdivision budget.  The integrands here are smooth densities, so the
// classic |S2 - S1| < 15 tol refinement criterion applies.
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth, std::size_t& budget) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || budget == 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  --budget;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, budget) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, budget);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  std::size_t budget = 1000000;
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 60, budget);
}

}  // namespace

double expected_residual(double e_max, std::size_t n, std::size_t k, bool corrected) {
  if (!(e_max > 0.0)) return 0.0;
  const CostModel model = make_cost_model(n, k, corrected);
  // E[max(e_max - C, 0)] integrated by parts: the CDF ramp is benign for
  // adaptive quadrature even when e_max sits far beyond the density mass.
  const auto integrand = [&](double c) { return gg_cdf(c, model.params); };
  return integrate(integrand, 0.0, e_max, 1e-10);
}

}  // namespace swarmsim
