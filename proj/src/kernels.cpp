#include "padic/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <string>

#include "padic/errors.hpp"
#include "padic/fourier.hpp"
#include "padic/vladimirov.hpp"

namespace padic {

namespace {

void require_positive_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("kernel time must be positive and finite");
}

void require_positive_shift(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("resolvent shift mu must be positive");
}

void require_in_ball(const KernelParams& k, RadialPoint x) {
  if (!x.is_origin && x.level > k.ball_exponent) throw DomainError("|x|_p exceeds the ball radius p^N");
}

double pw(std::int64_t p, double e) { return std::pow(static_cast<double>(p), e); }

}  // namespace

double heat_kernel_global(std::int64_t p, double alpha, double t, RadialPoint x, double eps_tail) {
  require_positive_time(t);
  const double q = 1.0 - 1.0 / static_cast<double>(p);
  if (x.is_origin) {
    // sum over all l of q p^l e^{-t p^{alpha l}}
    double acc = 0.0;
    for (int l = -1;; --l) {
      const double term = q * ipow(p, l);
      acc += term;
      if (term < eps_tail * acc || term == 0.0) break;
    }
    for (int l = 0;; ++l) {
      const double decay = std::exp(-t * pw(p, alpha * l));
      const double term = q * ipow(p, l) * decay;
      acc += term;
      // past the peak once the decay factor drops below p^{-1}
      if ((term < eps_tail * acc && decay < 1.0 / static_cast<double>(p)) || decay == 0.0) break;
    }
    return acc;
  }
  // Subtracting the sphere measures turns the cancelling sum into expm1 terms. Near the
  // origin the leading terms are of size p^{-m} and cancel, hence the long double.
  const int m = x.level;
  const long double pl = static_cast<long double>(p);
  const long double ql = 1.0L - 1.0L / pl;
  const auto level_abs = [&](double e) { return std::pow(pl, static_cast<long double>(e)); };
  long double acc = -level_abs(-m) * std::expm1(-static_cast<long double>(t) * level_abs(alpha * (1 - m)));
  for (int l = -m;; --l) {
    const long double term = ql * level_abs(l) * std::expm1(-static_cast<long double>(t) * level_abs(alpha * l));
    acc += term;
    if (std::fabs(term) <= eps_tail * std::fabs(acc) || term == 0.0L) break;
  }
  return static_cast<double>(acc);
}

SeriesValue c_series(const KernelParams& k, double t, int max_terms) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("c(t) needs t >= 0");
  const long double p = static_cast<long double>(k.p);
  const long double x = static_cast<long double>(t) * std::pow(p, -static_cast<long double>(k.ball_exponent) * k.alpha);
  const long double lambda = k.lambda();
  // Neumaier-compensated sum of (-x)^n / n! / (1 - p^{-alpha n - 1})
  long double sum = 0.0L;
  long double comp = 0.0L;
  long double abs_sum = 0.0L;
  long double a = 1.0L;  // (-x)^n / n!
  SeriesValue out;
  for (int n = 0; n < max_terms; ++n) {
    if (n > 0) a *= -x / static_cast<long double>(n);
    const long double term = a / (1.0L - std::pow(p, -static_cast<long double>(k.alpha) * n - 1.0L));
    const long double next = sum + term;
    comp += std::fabs(sum) >= std::fabs(term) ? (sum - next) + term : (term - next) + sum;
    sum = next;
    abs_sum += std::fabs(term);
    out.terms = n + 1;
    if (n > x && std::fabs(term) < 1e-17L * std::fmax(1.0L, std::fabs(sum + comp))) {
      out.converged = true;
      break;
    }
  }
  const long double pn = std::pow(p, -static_cast<long double>(k.ball_exponent));
  const long double growth = std::exp(lambda * static_cast<long double>(t));
  const long double value = pn - pn * (1.0L - 1.0L / p) * growth * (sum + comp);
  out.value = static_cast<double>(value);
  out.rounding_bound = static_cast<double>(pn * growth * abs_sum * std::numeric_limits<long double>::epsilon());
  return out;
}

double heat_kernel_ball(const KernelParams& k, double t, RadialPoint x) {
  require_positive_time(t);
  require_in_ball(k, x);
  const std::int64_t p = k.p;
  const double q = 1.0 - 1.0 / static_cast<double>(p);
  const double lambda = k.lambda();
  const int big_n = k.ball_exponent;
  double acc = 0.0;
  if (x.is_origin) {
    for (int l = 1 - big_n;; ++l) {
      const double decay = std::exp(-t * (pw(p, k.alpha * l) - lambda));
      const double term = q * ipow(p, l) * decay;
      acc += term;
      if ((term < default_eps_tail * acc && decay < 1.0 / static_cast<double>(p)) || decay == 0.0) break;
    }
    return ipow(p, -big_n) + acc;
  }
  const int m = x.level;
  for (int l = 1 - big_n; l <= -m; ++l) acc += q * ipow(p, l) * std::exp(-t * (pw(p, k.alpha * l) - lambda));
  acc -= ipow(p, -m) * std::exp(-t * (pw(p, k.alpha * (1 - m)) - lambda));
  return ipow(p, -big_n) + acc;
}

double heat_kernel_ball_via_global(const KernelParams& k, double t, RadialPoint x) {
  require_positive_time(t);
  require_in_ball(k, x);
  const SeriesValue c = c_series(k, t);
  if (!c.converged) throw ConvergenceError("c(t) series did not converge", c.rounding_bound);
  return std::exp(k.lambda() * t) * heat_kernel_global(k.p, k.alpha, t, x) + c.value;
}

double radial_integral(const KernelParams& k, const std::function<double(int)>& f, int cutoff) {
  double acc = 0.0;
  // smallest spheres first
  for (int m = cutoff; m <= k.ball_exponent; ++m) acc += sphere_measure(k.p, m) * f(m);
  return acc;
}

GridFunction ball_kernel_gridfunction(const BallModel& model, double alpha, double t) {
  require_positive_time(t);
  const SpectralMultiplier mult = multiplier(model, alpha);
  const double lambda = mult.eigenvalues[0];
  const double pn = ipow(model.prime(), -model.ball_exponent());
  SpectralFunction f{model, std::vector<std::complex<double>>(static_cast<std::size_t>(model.order()))};
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) f.coeffs[i] = pn * std::exp(-t * (mult.eigenvalues[i] - lambda));
  return inverse(f);
}

GridFunction ball_kernel_pointwise(const BallModel& model, double alpha, double t) {
  require_positive_time(t);
  const KernelParams k{model.prime(), model.ball_exponent(), alpha};
  std::vector<double> v(static_cast<std::size_t>(model.order()));
  const int big_m = model.resolution();
  double zero = 0.0;
  for (int m = -big_m + default_sphere_cutoff; m <= -big_m; ++m) {
    zero += sphere_measure(k.p, m) * heat_kernel_ball(k, t, RadialPoint::at_level(m));
  }
  v[0] = zero * ipow(k.p, big_m);
  for (std::int64_t n = 1; n < model.order(); ++n) {
    v[static_cast<std::size_t>(n)] = heat_kernel_ball(k, t, RadialPoint::at_level(model.point_level(n)));
  }
  return {model, std::move(v)};
}

double green_kernel(const KernelParams& k, double mu, RadialPoint x) {
  require_positive_shift(mu);
  require_in_ball(k, x);
  if (x.is_origin) {
    if (k.alpha > 1.0) return green_kernel_series(k, mu, x);
    throw DomainError("K_mu is unbounded at the origin for alpha <= 1");
  }
  const std::int64_t p = k.p;
  const double q = 1.0 - 1.0 / static_cast<double>(p);
  const double shift = mu - k.lambda();
  const int m = x.level;
  double acc = 0.0;
  for (int l = 1 - k.ball_exponent; l <= -m; ++l) acc += q * ipow(p, l) / (pw(p, k.alpha * l) + shift);
  acc -= ipow(p, -m) / (pw(p, k.alpha * (1 - m)) + shift);
  return acc;
}

double green_kernel_series(const KernelParams& k, double mu, RadialPoint x) {
  require_positive_shift(mu);
  require_in_ball(k, x);
  if (!(k.alpha > 1.0)) throw DomainError("the full frequency series for K_mu converges only for alpha > 1");
  const std::int64_t p = k.p;
  const double shift = mu - k.lambda();
  const double ratio = pw(p, 1.0 - k.alpha);  // geometric decay of the sphere terms
  double acc = 0.0;
  constexpr int max_spheres = 200000;
  for (int l = 1 - k.ball_exponent; l < 1 - k.ball_exponent + max_spheres; ++l) {
    const double chi = x.is_origin ? sphere_measure(p, l) : sphere_character_integral(p, l, x.level);
    const double term = chi / (pw(p, k.alpha * l) + shift);
    acc += term;
    const bool past_support = x.is_origin || l > 1 - x.level;
    if (past_support && std::fabs(term) < 1e-18 * std::fabs(acc)) {
      // remaining spheres ~ q p^{l(1-alpha)} ratio^j for j >= 1
      if (x.is_origin) acc += term * ratio / (1.0 - ratio);
      return acc;
    }
    if (!x.is_origin && l > 1 - x.level) return acc;  // characters integrate to zero beyond
  }
  throw ConvergenceError("K_mu series did not reach its tail bound", acc);
}

GreenReport green_estimates_report(const KernelParams& k, double mu, int level_low, int level_high) {
  if (level_low > level_high || level_high > k.ball_exponent) throw DomainError("bad level range for the Green report");
  GreenReport report;
  report.regime = k.alpha < 1.0 ? GreenRegime::subcritical
                  : k.alpha == 1.0 ? GreenRegime::critical
                                   : GreenRegime::supercritical;
  const double logp = std::log(static_cast<double>(k.p));
  for (int m = level_high; m >= level_low; --m) {
    GreenRow row{m, ipow(k.p, m), green_kernel(k, mu, RadialPoint::at_level(m)), 1.0, 0.0};
    switch (report.regime) {
      case GreenRegime::subcritical:
        row.weight = pw(k.p, m * (k.alpha - 1.0));
        break;
      case GreenRegime::critical:
        row.weight = std::max(1, std::abs(m)) * logp;
        break;
      case GreenRegime::supercritical:
        row.weight = 1.0;
        break;
    }
    row.ratio = std::fabs(row.value) / row.weight;
    report.sup_ratio = std::max(report.sup_ratio, row.ratio);
    report.rows.push_back(row);
  }
  if (report.regime == GreenRegime::supercritical) {
    report.origin_value = green_kernel_series(k, mu, RadialPoint::origin());
    const auto n = report.rows.size();
    if (n >= 3) {
      const double s0 = report.rows[n - 3].value;
      const double s1 = report.rows[n - 2].value;
      const double s2 = report.rows[n - 1].value;
      const double denom = (s2 - s1) - (s1 - s0);
      report.extrapolated_limit = denom == 0.0 ? s2 : s2 - (s2 - s1) * (s2 - s1) / denom;
    } else {
      report.extrapolated_limit = report.rows.back().value;
    }
  }
  return report;
}

GridFunction green_kernel_gridfunction(const BallModel& model, double alpha, double mu) {
  const KernelParams k{model.prime(), model.ball_exponent(), alpha};
  std::vector<double> v(static_cast<std::size_t>(model.order()));
  // K_mu has no constant Fourier mode, so its coset averages sum to zero.
  double rest = 0.0;
  for (std::int64_t n = model.order() - 1; n >= 1; --n) {
    const double value = green_kernel(k, mu, RadialPoint::at_level(model.point_level(n)));
    v[static_cast<std::size_t>(n)] = value;
    rest += value;
  }
  v[0] = -rest;
  return {model, std::move(v)};
}

namespace {

// Constants are fixed by the generator; the transform would only add rounding.
std::optional<double> constant_value(const GridFunction& u) {
  const auto v = u.values();
  if (std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) != v.end()) return std::nullopt;
  return v.front();
}

}  // namespace

GridFunction resolvent_apply(const GridFunction& u, double alpha, double mu) {
  require_positive_shift(mu);
  if (const auto c = constant_value(u)) return GridFunction::constant(u.model(), *c / mu);
  const BallModel& model = u.model();
  const GridFunction kernel = green_kernel_gridfunction(model, alpha, mu);
  const GridFunction conv = convolve(kernel, u);
  const double mean_part = integral(u) / (mu * model.ball_measure());
  std::vector<double> out(conv.values().begin(), conv.values().end());
  for (double& x : out) x += mean_part;
  return {model, std::move(out)};
}

GridFunction resolvent_spectral(const GridFunction& u, double alpha, double mu) {
  require_positive_shift(mu);
  if (const auto c = constant_value(u)) return GridFunction::constant(u.model(), *c / mu);
  const SpectralMultiplier mult = multiplier(u.model(), alpha);
  const double lambda = mult.eigenvalues[0];
  auto f = forward(u);
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) f.coeffs[i] /= mult.eigenvalues[i] - lambda + mu;
  return inverse(f);
}

namespace {

// QUADPACK 15-point Kronrod nodes/weights; the 7-point Gauss rule uses the odd entries.
constexpr std::array<double, 8> kronrod_nodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kronrod_weights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> gauss_weights{0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                              0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

using CVec = std::vector<std::complex<double>>;

struct LaplaceIntegrand {
  const CVec& coeffs;
  const std::vector<double>& rates;  // m[k] - lambda + mu

  // e^{-mu t} T(t) u in spectral form, t = tau / (1 - tau), times dt/dtau
  void operator()(double tau, CVec& out) const {
    const double one_minus = 1.0 - tau;
    const double t = tau / one_minus;
    const double jac = 1.0 / (one_minus * one_minus);
    for (std::size_t i = 0; i < coeffs.size(); ++i) out[i] = coeffs[i] * (std::exp(-rates[i] * t) * jac);
  }
};

void integrate_interval(const LaplaceIntegrand& f, double a, double b, double tol, int depth, CVec& total) {
  const std::size_t n = total.size();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  CVec kron(n, 0.0), gauss(n, 0.0), sample(n);
  for (std::size_t j = 0; j < kronrod_nodes.size(); ++j) {
    const double dx = half * kronrod_nodes[j];
    const int copies = j == 7 ? 1 : 2;
    for (int c = 0; c < copies; ++c) {
      f(c == 0 ? mid + dx : mid - dx, sample);
      for (std::size_t i = 0; i < n; ++i) {
        kron[i] += kronrod_weights[j] * sample[i];
        if (j % 2 == 1) gauss[i] += gauss_weights[j / 2] * sample[i];
      }
    }
  }
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(kron[i] - gauss[i]) * half);
  if (err <= tol || depth >= 48) {
    for (std::size_t i = 0; i < n; ++i) total[i] += kron[i] * half;
    return;
  }
  integrate_interval(f, a, mid, 0.5 * tol, depth + 1, total);
  integrate_interval(f, mid, b, 0.5 * tol, depth + 1, total);
}

}  // namespace

GridFunction resolvent_laplace(const GridFunction& u, double alpha, double mu, double tol) {
  require_positive_shift(mu);
  if (!(tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  const SpectralMultiplier mult = multiplier(u.model(), alpha);
  const double lambda = mult.eigenvalues[0];
  const SpectralFunction f = forward(u);
  std::vector<double> rates(mult.eigenvalues.size());
  for (std::size_t i = 0; i < rates.size(); ++i) rates[i] = mult.eigenvalues[i] - lambda + mu;
  const LaplaceIntegrand integrand{f.coeffs, rates};
  CVec total(f.coeffs.size(), 0.0);
  integrate_interval(integrand, 0.0, 1.0, tol, 0, total);
  return inverse(SpectralFunction{u.model(), std::move(total)});
}

}  // namespace padic
