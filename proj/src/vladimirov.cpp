#include "padic/vladimirov.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "padic/errors.hpp"
#include "padic/simd/kernels.hpp"

namespace padic {

double sphere_measure(std::int64_t p, int l) { return ipow(p, l) * (1.0 - 1.0 / static_cast<double>(p)); }

double sphere_character_integral(std::int64_t p, int l, int xi_level) {
  if (l <= -xi_level) return sphere_measure(p, l);
  if (l == 1 - xi_level) return -ipow(p, l - 1);
  return 0.0;
}

double symbol_quadrature(const BallModel& model, double alpha, std::int64_t k) {
  if (k == 0) {
    (void)model.freq_abs(k);  // range check
    return 0.0;
  }
  const int s = model.freq_level(k);
  const std::int64_t p = model.prime();
  const double ap = coefficient_ap(p, alpha);
  // Spheres l <= -s have chi(y xi) = 1 and contribute nothing.
  double acc = 0.0;
  for (int l = 1 - s; l <= model.ball_exponent(); ++l) {
    const double weight = std::pow(static_cast<double>(p), -(alpha + 1.0) * l);
    acc += weight * (sphere_character_integral(p, l, s) - sphere_measure(p, l));
  }
  return ap * acc;
}

SpectralMultiplier multiplier(const BallModel& model, double alpha) {
  const OperatorConstants c = make_constants(model.prime(), alpha, model.ball_exponent());
  const std::int64_t s = model.order();
  std::vector<double> m(static_cast<std::size_t>(s));
  m[0] = c.lambda;
  // one eigenvalue per level; check each against the symbol integral once
  std::vector<double> by_level(static_cast<std::size_t>(model.digits()) + 1, -1.0);
  for (std::int64_t k = 1; k < s; ++k) {
    const int v = model.index_valuation(k);
    double& slot = by_level[static_cast<std::size_t>(v)];
    if (slot < 0.0) {
      slot = std::pow(model.freq_abs(k), alpha);
      const double via_symbol = symbol_quadrature(model, alpha, k) + c.lambda;
      if (std::fabs(via_symbol - slot) > 1e-10 * slot) {
        throw ConsistencyError("symbol quadrature disagrees with |xi|^alpha at level " +
                               std::to_string(model.freq_level(k)));
      }
    }
    m[static_cast<std::size_t>(k)] = slot;
  }
  return {model, alpha, std::move(m)};
}

double riesz_pairing(const RieszDistribution& dist, const GridFunction& phi) {
  if (!(dist.model == phi.model())) throw DomainError("distribution and test function live on different models");
  const BallModel& model = dist.model;
  const std::int64_t p = model.prime();
  const double pd = static_cast<double>(p);
  const double alpha = dist.alpha;
  if (!(alpha > 0.0)) throw DomainError("Riesz order must be positive");
  const double w = model.coset_measure();
  const double phi0 = phi[0];

  double head = 0.0;
  double coeff = 0.0;
  double exponent = 0.0;
  if (dist.order == RieszOrder::minus_alpha) {
    head = lambda_value(p, alpha, model.ball_exponent());
    coeff = coefficient_ap(p, alpha);
    exponent = -alpha - 1.0;
  } else {
    const double denom = 1.0 - std::pow(pd, alpha - 1.0);
    if (std::fabs(denom) < 1e-12) throw DomainError("the +alpha Riesz pairing is undefined at alpha = 1");
    head = (1.0 - 1.0 / pd) / denom * std::pow(pd, alpha * model.ball_exponent());
    coeff = (1.0 - std::pow(pd, -alpha)) / denom;
    exponent = alpha - 1.0;
  }
  // The zero coset contributes nothing: phi(x) - phi(0) vanishes on it.
  double acc = 0.0;
  for (std::int64_t j = 1; j < model.order(); ++j) {
    acc += std::pow(model.point_abs(j), exponent) * (phi[j] - phi0);
  }
  return head * phi0 + coeff * w * acc;
}

VladimirovOperator::VladimirovOperator(BallModel model, double alpha)
    : model_(std::move(model)),
      constants_(make_constants(model_.prime(), alpha, model_.ball_exponent())),
      multiplier_(multiplier(model_, alpha)),
      weights_(static_cast<std::size_t>(model_.order()), 0.0),
      weight_total_(0.0),
      fourier_(fourier_for(model_)) {
  const double w = model_.coset_measure();
  for (std::int64_t j = 1; j < model_.order(); ++j) {
    const double wj = constants_.a_p * w * std::pow(model_.point_abs(j), -alpha - 1.0);
    weights_[static_cast<std::size_t>(j)] = wj;
    weight_total_ += wj;
  }
}

GridFunction VladimirovOperator::apply_spectral(const GridFunction& u) const {
  auto f = fourier_->forward(u);
  simd::scale_complex(f.coeffs, multiplier_.eigenvalues);
  return fourier_->inverse(f);
}

GridFunction VladimirovOperator::apply_hypersingular(const GridFunction& u) const {
  if (!(u.model() == model_)) throw DomainError("grid function model does not match the operator");
  std::vector<double> out(u.size());
  simd::circulant_apply(weights_, u.values(), out);
  const double diag = constants_.lambda - weight_total_;
  simd::axpy(diag, u.values(), out);
  return {model_, std::move(out)};
}

GridFunction VladimirovOperator::apply_global_restriction(const GridFunction& u) const {
  if (!(u.model() == model_)) throw DomainError("grid function model does not match the operator");
  const std::int64_t p = model_.prime();
  const double pd = static_cast<double>(p);
  const int big_n = model_.ball_exponent();
  const double alpha = constants_.alpha;
  const double ap = constants_.a_p;
  const double ball_radius = model_.ball_measure();
  const double w = model_.coset_measure();

  // Zero extension: any argument with |x|_p > p^N lies outside B_N.
  const auto extended = [&](std::int64_t n, double abs_x) { return abs_x > ball_radius ? 0.0 : u[n]; };

  // Tail |y| > p^N: the sphere integrals of |y|^{-alpha-1} summed in closed form.
  const double tail_measure_weight =
      (1.0 - 1.0 / pd) * std::pow(pd, -alpha * (big_n + 1)) / (1.0 - std::pow(pd, -alpha));

  std::vector<double> out(u.size());
  for (std::int64_t n = 0; n < model_.order(); ++n) {
    double inner = 0.0;
    for (std::int64_t j = 1; j < model_.order(); ++j) {
      const double abs_y = model_.point_abs(j);
      inner += std::pow(abs_y, -alpha - 1.0) * (u[model_.sub(n, j)] - u[n]);
    }
    // For |y| > p^N, |x - y| = |y| > p^N, so u(x - y) of the zero extension is 0.
    const double outside_shift = extended(n, 2.0 * ball_radius * pd);
    const double i1 = ap * w * inner;
    const double i2 = ap * tail_measure_weight * outside_shift;
    const double i3 = -ap * u[n] * tail_measure_weight;
    out[static_cast<std::size_t>(n)] = i1 + i2 + i3;
  }
  return {model_, std::move(out)};
}

GridFunction VladimirovOperator::convolve_riesz(const GridFunction& u) const {
  if (!(u.model() == model_)) throw DomainError("grid function model does not match the operator");
  const RieszDistribution dist{model_, constants_.alpha, RieszOrder::minus_alpha};
  std::vector<double> out(u.size());
  std::vector<double> shifted(u.size());
  for (std::int64_t n = 0; n < model_.order(); ++n) {
    for (std::int64_t j = 0; j < model_.order(); ++j) shifted[static_cast<std::size_t>(j)] = u[model_.sub(n, j)];
    out[static_cast<std::size_t>(n)] = riesz_pairing(dist, GridFunction(model_, shifted));
  }
  return {model_, std::move(out)};
}

RowMatrix VladimirovOperator::build_matrix(std::int64_t matrix_cap) const {
  const std::int64_t s = model_.order();
  if (s > matrix_cap) throw DomainError("model order " + std::to_string(s) + " exceeds the dense matrix cap");
  RowMatrix a(s, s);
  const double diag = constants_.lambda - weight_total_;
  for (std::int64_t r = 0; r < s; ++r) {
    for (std::int64_t c = 0; c < s; ++c) {
      a(r, c) = r == c ? diag : weights_[static_cast<std::size_t>(model_.sub(r, c))];
    }
  }
  return a;
}

std::vector<double> VladimirovOperator::expected_spectrum() const {
  const std::int64_t p = model_.prime();
  const int big_n = model_.ball_exponent();
  std::vector<double> out{constants_.lambda};
  for (int level = 1 - big_n; level <= model_.resolution(); ++level) {
    const auto count = static_cast<std::int64_t>(ipow(p, big_n + level - 1) * static_cast<double>(p - 1) + 0.5);
    out.insert(out.end(), static_cast<std::size_t>(count), std::pow(static_cast<double>(p), constants_.alpha * level));
  }
  std::sort(out.begin(), out.end());
  return out;
}

GridFunction apply_spectral(const GridFunction& u, double alpha) {
  return VladimirovOperator(u.model(), alpha).apply_spectral(u);
}
GridFunction apply_hypersingular(const GridFunction& u, double alpha) {
  return VladimirovOperator(u.model(), alpha).apply_hypersingular(u);
}
GridFunction apply_global_restriction(const GridFunction& u, double alpha) {
  return VladimirovOperator(u.model(), alpha).apply_global_restriction(u);
}
GridFunction convolve_riesz(const GridFunction& u, double alpha) {
  return VladimirovOperator(u.model(), alpha).convolve_riesz(u);
}
RowMatrix build_matrix(const BallModel& model, double alpha, std::int64_t matrix_cap) {
  return VladimirovOperator(model, alpha).build_matrix(matrix_cap);
}

std::vector<double> symmetric_eigenvalues(const RowMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceError("symmetric eigensolver failed", 0.0);
  std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

DomainReport summarize(std::vector<int> resolutions, std::vector<double> norms) {
  DomainReport r{std::move(resolutions), std::move(norms), 1.0, true};
  for (std::size_t i = 1; i < r.l1_norms.size(); ++i) {
    if (r.l1_norms[i - 1] > 0.0) r.max_growth_ratio = std::max(r.max_growth_ratio, r.l1_norms[i] / r.l1_norms[i - 1]);
  }
  // bounded if the increments do not grow from one level to the next
  for (std::size_t i = 2; i < r.l1_norms.size(); ++i) {
    const double prev = std::fabs(r.l1_norms[i - 1] - r.l1_norms[i - 2]);
    const double cur = std::fabs(r.l1_norms[i] - r.l1_norms[i - 1]);
    if (cur > prev * (1.0 + 1e-9) + 1e-12 * r.l1_norms[i]) r.appears_bounded = false;
  }
  return r;
}

}  // namespace

DomainReport domain_check(const GridFunction& u, double alpha, int levels) {
  if (levels < 0) throw DomainError("levels must be nonnegative");
  std::vector<int> res;
  std::vector<double> norms;
  for (int l = 0; l <= levels; ++l) {
    const GridFunction fine = refine(u, l);
    res.push_back(fine.model().resolution());
    norms.push_back(lp_norm(VladimirovOperator(fine.model(), alpha).apply_spectral(fine), 1.0));
  }
  return summarize(std::move(res), std::move(norms));
}

DomainReport domain_check(const BallModel& model, double alpha, const std::function<double(double)>& profile,
                          int levels) {
  if (levels < 0) throw DomainError("levels must be nonnegative");
  std::vector<int> res;
  std::vector<double> norms;
  for (int l = 0; l <= levels; ++l) {
    const BallModel fine = model.refined(l);
    std::vector<double> v(static_cast<std::size_t>(fine.order()));
    for (std::int64_t n = 0; n < fine.order(); ++n) v[static_cast<std::size_t>(n)] = profile(fine.point_abs(n));
    const GridFunction u(fine, std::move(v));
    res.push_back(fine.resolution());
    norms.push_back(lp_norm(VladimirovOperator(fine, alpha).apply_spectral(u), 1.0));
  }
  return summarize(std::move(res), std::move(norms));
}

}  // namespace padic
