#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "padic/ball_model.hpp"
#include "padic/grid_function.hpp"

namespace padic {

/// A point of B_N up to the only thing radial kernels see: |x|_p = p^level, or x = 0.
struct RadialPoint {
  bool is_origin = false;
  int level = 0;

  static constexpr RadialPoint origin() { return {true, 0}; }
  static constexpr RadialPoint at_level(int m) { return {false, m}; }
};

struct KernelParams {
  std::int64_t p;
  int ball_exponent;  // N
  double alpha;

  double lambda() const { return lambda_value(p, alpha, ball_exponent); }
};

inline constexpr double default_eps_tail = 1e-16;
inline constexpr int default_sphere_cutoff = -64;

/// Z(t, x) on Q_p. Level m may be any integer; the origin sums over all spheres.
double heat_kernel_global(std::int64_t p, double alpha, double t, RadialPoint x, double eps_tail = default_eps_tail);

struct SeriesValue {
  double value = 0.0;
  int terms = 0;
  bool converged = false;
  double rounding_bound = 0.0;  // |e^{lambda t}| * sum |term| * unit roundoff of the accumulator
};

/// c(t) from its alternating power series, accumulated in extended precision.
SeriesValue c_series(const KernelParams& k, double t, int max_terms = 5000);

/// Z_N(t, x) by the finite character sum over p^{-N+1} <= |xi| <= p^{-m+1}.
double heat_kernel_ball(const KernelParams& k, double t, RadialPoint x);
/// Z_N(t, x) = e^{lambda t} Z(t, x) + c(t). Throws ConvergenceError if c(t) does not converge.
double heat_kernel_ball_via_global(const KernelParams& k, double t, RadialPoint x);

/// sum_{m = cutoff}^{N} p^m (1 - 1/p) f(m): the Haar integral of a radial function over B_N
/// with the spheres below the cutoff dropped.
double radial_integral(const KernelParams& k, const std::function<double(int)>& f, int cutoff = default_sphere_cutoff);

/// Level-M coset averages of Z_N(t, .), built from Z_N^(t, k) = p^{-N} e^{-t(m[k] - lambda)}.
GridFunction ball_kernel_gridfunction(const BallModel& model, double alpha, double t);
/// The same averages from the pointwise evaluator: nonzero cosets take Z_N at
/// their level, the zero coset takes p^M times the sphere sum over B_{-M}.
GridFunction ball_kernel_pointwise(const BallModel& model, double alpha, double t);

/// K_mu(x) by the finite progression. The origin is accepted only for alpha > 1
/// and is then evaluated by green_kernel_series.
double green_kernel(const KernelParams& k, double mu, RadialPoint x);
/// K_mu(x) as the sum over all |eta| >= p^{-N+1}; alpha > 1 only.
double green_kernel_series(const KernelParams& k, double mu, RadialPoint x);

enum class GreenRegime { subcritical, critical, supercritical };  // alpha < 1, = 1, > 1

struct GreenRow {
  int level;
  double abs_x;
  double value;
  double weight;  // |x|^{alpha-1} (alpha < 1), max(1,|m|) log p (alpha = 1), 1 (alpha > 1)
  double ratio;   // |value| / weight
};

struct GreenReport {
  GreenRegime regime;
  std::vector<GreenRow> rows;  // ordered by decreasing level
  double sup_ratio = 0.0;
  double origin_value = 0.0;        // series value at x = 0, alpha > 1 only
  double extrapolated_limit = 0.0;  // Aitken limit of K(p^m) as m -> -inf, alpha > 1 only
};

GreenReport green_estimates_report(const KernelParams& k, double mu, int level_low, int level_high);

/// Level-M coset averages of K_mu; the zero coset is fixed by the zero-mean property.
GridFunction green_kernel_gridfunction(const BallModel& model, double alpha, double mu);

/// (A_N + mu)^{-1} u = K_mu * u + mu^{-1} p^{-N} integral u.
GridFunction resolvent_apply(const GridFunction& u, double alpha, double mu);
/// inverse(forward(u) / (m[k] - lambda + mu)).
GridFunction resolvent_spectral(const GridFunction& u, double alpha, double mu);
/// integral_0^inf e^{-mu t} T_N(t) u dt by adaptive Gauss-Kronrod quadrature.
GridFunction resolvent_laplace(const GridFunction& u, double alpha, double mu, double tol = 1e-10);

}  // namespace padic
