#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "swarmsim/geometry.hpp"

namespace swarmsim {

/// Generalized gamma parameters for the transmission-cost law
///   f(x; a, d, p) = (p / a^d) x^(d-1) exp(-(x/a)^p) / Gamma(d/p).
/// The scale a carries energy units (squared unit-cube lengths); d and p
/// are dimensionless shapes.  All three must be positive.
struct GenGammaParams {
  double a = 1.0;
  double d = 1.0;
  double p = 1.0;
};

/// Transmission-cost model for a swarm of size n with neighbourhood k:
/// d = 3k/2, p = 3/2, and a is either the asymptotic scale (4*pi*n/3)^(-2/3)
/// or the finite-size corrected scale 0.685 n^(-0.73).  `extrapolated`
/// marks corrected models evaluated outside the calibrated n range
/// [100, 1000].
struct CostModel {
  std::size_t n = 0;
  std::size_t k = 0;
  GenGammaParams params;
  bool corrected = false;
  bool extrapolated = false;
};

/// Identifies the Poisson-sum CDF family: with d/p = k a positive integer
/// the generalized gamma CDF reduces to 1 - exp(-lam) * sum_{j<k} lam^j/j!
/// with lam(c) = (4*pi*n/3) c^(3/2).
struct PoissonForm {
  std::size_t n = 0;
  std::size_t k = 0;
};

/// Least-squares power-law fit a(n) = prefactor * n^exponent.
struct PowerLawFit {
  double prefactor = 0.0;
  double exponent = 0.0;
};

/// Builds the cost model for (n, k); `corrected` selects the finite-size
/// scale.  Throws std::invalid_argument when n == 0 or k == 0.
CostModel make_cost_model(std::size_t n, std::size_t k, bool corrected);

/// Per-vertex transmission cost: the squared Euclidean distance to the
/// k-th nearest neighbour.  Row-parallel under the same rules as
/// build_knn_graph.  Throws std::invalid_argument unless 1 <= k <= n-1.
std::vector<double> transmission_costs(const PointSet& ps, std::size_t k,
                                       bool parallel = true);

/// Generalized gamma density.  Throws std::invalid_argument when x < 0 or
/// any parameter is non-positive.  At x == 0 the density is 0 for d > 1,
/// the exact limit for d == 1, and +infinity for d < 1.
double gg_pdf(double x, const GenGammaParams& params);

/// Generalized gamma CDF via the regularized lower incomplete gamma
/// function P(d/p, (x/a)^p).  Same argument validation as gg_pdf.
double gg_cdf(double x, const GenGammaParams& params);

/// Transmission-cost CDF in the Poisson-sum form:
///   1 - exp(-lam(c)) * sum_{j=0}^{k-1} lam(c)^j / j!,
/// lam(c) = (4*pi*n/3) c^(3/2).  Throws std::invalid_argument when c < 0
/// or n == 0 or k == 0.
double cost_cdf(double c, std::size_t n, std::size_t k);

/// Inverse CDF by bracketed bisection (the CDF is strictly increasing);
/// the result satisfies |CDF(c) - u| well below 1e-12 * max-density.  When
/// `poisson_form` is given the CDF is evaluated through cost_cdf, which
/// must describe the same distribution as `params`; otherwise an integer
/// d/p uses the Poisson sum with the params' own scale and non-integer
/// shapes fall back to the incomplete gamma.  Throws std::invalid_argument
/// unless 0 < u < 1.
double gg_quantile(double u, const GenGammaParams& params,
                   std::optional<PoissonForm> poisson_form = std::nullopt);

/// Finite-size corrected scale 0.685 * n^(-0.73).  Calibrated for
/// n in [100, 1000]; callers outside that range should consult
/// corrected_scale_extrapolated.  Throws std::invalid_argument when n == 0.
double corrected_scale(std::size_t n);

/// True when n lies outside the calibration range of corrected_scale.
bool corrected_scale_extrapolated(std::size_t n);

/// Closed-form maximum-likelihood scale with d = 3k/2, p = 3/2 held fixed:
///   a_hat = (mean(x^(3/2)) / k)^(2/3),
/// the unique stationary point of the log-likelihood in a.  Throws
/// std::invalid_argument on an empty sample or any non-positive value.
double fit_scale_mle(const std::vector<double>& samples, std::size_t k);

/// Ordinary least squares on (log n, log a): returns (e^intercept, slope).
/// Throws std::invalid_argument with fewer than 2 pairs, non-positive
/// values, or all-identical abscissae.
PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& pairs);

/// Surplus energy (e_max - cost) clamped at zero.
double residual_energy(double e_max, double cost);

/// Expected surplus under the (n, k) cost model:
///   E[max(e_max - C, 0)] = integral_0^e_max F(c) dc,
/// by adaptive Simpson quadrature to absolute tolerance 1e-10.  The
/// integrated-by-parts form keeps the integrand a smooth monotone ramp, so
/// the quadrature cannot step over the density mass when e_max is far out
/// in the upper tail.
double expected_residual(double e_max, std::size_t n, std::size_t k, bool corrected);

}  // namespace swarmsim
