#include "padic/pme_solver.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>

#include "padic/errors.hpp"
#include "padic/fourier.hpp"
#include "padic/simd/kernels.hpp"

namespace padic {

PmeSolver::PmeSolver(BallModel model, double alpha, Nonlinearity phi, ImplicitStepConfig config)
    : model_(model), op_(std::move(model), alpha), phi_(std::move(phi)), config_(config) {
  if (!(config_.newton_tol > 0.0) || config_.max_newton < 0 || !(config_.damping > 0.0 && config_.damping < 1.0) ||
      config_.max_halvings < 0 || !(config_.cg_tol > 0.0)) {
    throw DomainError("implicit step tolerances must be positive");
  }
  if (model_.order() <= config_.dense_cap) dense_ = op_.build_matrix(config_.dense_cap);
}

std::vector<double> PmeSolver::apply_operator(std::span<const double> w) const {
  std::vector<double> out(w.size());
  if (dense_) {
    simd::matvec(std::span<const double>(dense_->data(), static_cast<std::size_t>(dense_->size())), w, out);
    return out;
  }
  const GridFunction applied = op_.apply_spectral(GridFunction(model_, std::vector<double>(w.begin(), w.end())));
  std::copy(applied.values().begin(), applied.values().end(), out.begin());
  return out;
}

namespace {

std::vector<double> map_phi(const Nonlinearity& phi, std::span<const double> v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = phi.value(v[i]);
  return out;
}

// F(v) = v + h D(Phi(v)) - g, written into f; returns ||F||_inf
template <class Apply>
double residual_into(const Nonlinearity& phi, const Apply& apply, std::span<const double> v, std::span<const double> g,
                     double h, std::vector<double>& f) {
  f = apply(map_phi(phi, v));
  for (std::size_t i = 0; i < v.size(); ++i) f[i] = v[i] + h * f[i] - g[i];
  return simd::max_abs(f);
}

}  // namespace

GridFunction PmeSolver::residual(const GridFunction& v, const GridFunction& g, double h) const {
  std::vector<double> f;
  residual_into(phi_, [this](std::span<const double> w) { return apply_operator(w); }, v.values(), g.values(), h, f);
  return {model_, std::move(f)};
}

RowMatrix PmeSolver::jacobian(const GridFunction& v, double h) const {
  if (!dense_) throw DomainError("dense Jacobian requested above the dense cap");
  const auto s = static_cast<Eigen::Index>(model_.order());
  RowMatrix j(s, s);
  for (Eigen::Index c = 0; c < s; ++c) {
    const double slope = phi_.derivative(v[c]);
    for (Eigen::Index r = 0; r < s; ++r) j(r, c) = (r == c ? 1.0 : 0.0) + h * (*dense_)(r, c) * slope;
  }
  return j;
}

std::vector<double> PmeSolver::solve_linearized(std::span<const double> v, std::span<const double> rhs,
                                                double h) const {
  const std::size_t s = v.size();
  if (dense_) {
    RowMatrix j(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s));
    for (std::size_t c = 0; c < s; ++c) {
      const double slope = phi_.derivative(v[c]);
      for (std::size_t r = 0; r < s; ++r) {
        j(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = (r == c ? 1.0 : 0.0) + h * (*dense_)(r, c) * slope;
      }
    }
    const Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<Eigen::Index>(s));
    const Eigen::VectorXd x = j.partialPivLu().solve(b);
    return {x.data(), x.data() + x.size()};
  }

  // J = (diag(1/Phi') + h D) diag(Phi'): solve the SPD factor by CG, then scale.
  std::vector<double> slope(s);
  double top = 0.0;
  for (std::size_t i = 0; i < s; ++i) top = std::max(top, phi_.derivative(v[i]));
  const double floor = std::max(1e-12 * top, 1e-300);
  double mean_inverse = 0.0;
  for (std::size_t i = 0; i < s; ++i) {
    slope[i] = std::max(phi_.derivative(v[i]), floor);
    mean_inverse += 1.0 / slope[i];
  }
  mean_inverse /= static_cast<double>(s);

  const auto ft = fourier_for(model_);
  const auto& eig = op_.spectral_multiplier().eigenvalues;
  std::vector<double> precond(s);
  for (std::size_t k = 0; k < s; ++k) precond[k] = 1.0 / (mean_inverse + h * eig[k]);
  const auto apply_b = [&](const std::vector<double>& x) {
    std::vector<double> y = apply_operator(x);
    for (std::size_t i = 0; i < s; ++i) y[i] = x[i] / slope[i] + h * y[i];
    return y;
  };
  const auto apply_precond = [&](const std::vector<double>& r) {
    auto f = ft->forward(GridFunction(model_, r));
    simd::scale_complex(f.coeffs, precond);
    const GridFunction z = ft->inverse(f);
    return std::vector<double>(z.values().begin(), z.values().end());
  };

  std::vector<double> x(s, 0.0);
  std::vector<double> r(rhs.begin(), rhs.end());
  std::vector<double> z = apply_precond(r);
  std::vector<double> d = z;
  double rz = simd::dot(r, z);
  const double stop = config_.cg_tol * std::max(simd::max_abs(rhs), 1e-300);
  for (int it = 0; it < config_.cg_max_iterations && simd::max_abs(r) > stop; ++it) {
    const std::vector<double> bd = apply_b(d);
    const double step = rz / simd::dot(d, bd);
    simd::axpy(step, d, x);
    simd::axpy(-step, bd, r);
    z = apply_precond(r);
    const double rz_next = simd::dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < s; ++i) d[i] = z[i] + beta * d[i];
  }
  for (std::size_t i = 0; i < s; ++i) x[i] /= slope[i];
  return x;
}

bool PmeSolver::newton(const GridFunction& g, double h, std::vector<double>& v, StepReport& rep) const {
  const auto apply = [this](std::span<const double> w) { return apply_operator(w); };
  const double scale = 1.0 + simd::max_abs(g.values());
  std::vector<double> f;
  std::vector<double> f_try;
  std::vector<double> v_try(v.size());
  std::vector<double> rhs(v.size());
  double r = residual_into(phi_, apply, v, g.values(), h, f) / scale;
  rep.residual = r;
  for (int it = 0; it <= config_.max_newton; ++it) {
    // Once converged, take one more full step if it lowers the residual.
    const bool polishing = r <= config_.newton_tol;
    if (it == config_.max_newton && !polishing) break;
    for (std::size_t i = 0; i < f.size(); ++i) rhs[i] = -f[i];
    const std::vector<double> delta = solve_linearized(v, rhs, h);
    double step = 1.0;
    bool accepted = false;
    const int halvings = polishing ? 0 : config_.max_halvings;
    for (int k = 0; k <= halvings; ++k, step *= config_.damping) {
      for (std::size_t i = 0; i < v.size(); ++i) v_try[i] = v[i] + step * delta[i];
      const double r_try = residual_into(phi_, apply, v_try, g.values(), h, f_try) / scale;
      if (polishing ? r_try < r : r_try < (1.0 - 1e-4 * step) * r) {
        v.swap(v_try);
        f.swap(f_try);
        r = r_try;
        accepted = true;
        break;
      }
    }
    rep.newton_iterations = it + (accepted ? 1 : 0);
    rep.residual = r;
    if (polishing) return true;
    if (!accepted) return r <= config_.newton_tol;
  }
  return r <= config_.newton_tol;
}

bool PmeSolver::fixed_point(const GridFunction& g, double h, std::vector<double>& v, StepReport& rep) const {
  const auto apply = [this](std::span<const double> w) { return apply_operator(w); };
  const double scale = 1.0 + simd::max_abs(g.values());
  const double bound = std::max(simd::max_abs(g.values()), simd::max_abs(v));
  const double top_eigen = *std::max_element(op_.spectral_multiplier().eigenvalues.begin(),
                                             op_.spectral_multiplier().eigenvalues.end());
  const double omega = 1.0 / (1.0 + h * top_eigen * phi_.max_slope(bound));
  std::vector<double> f;
  rep.used_fallback = true;
  for (int it = 0; it < config_.max_fallback_iterations; ++it) {
    const double r = residual_into(phi_, apply, v, g.values(), h, f) / scale;
    rep.fallback_iterations = it;
    rep.residual = r;
    if (r <= config_.newton_tol) return true;
    simd::axpy(-omega, f, v);
  }
  return false;
}

GridFunction PmeSolver::implicit_step(const GridFunction& g, double h, StepReport* report) const {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("implicit step size must be positive");
  if (!(g.model() == model_)) throw DomainError("data model does not match the solver");
  StepReport rep;
  std::vector<double> v(g.values().begin(), g.values().end());
  // Tables get Newton with one-sided slopes too; the relaxed iteration is the backstop.
  bool ok = newton(g, h, v, rep);
  if (!ok && config_.fallback) {
    v.assign(g.values().begin(), g.values().end());
    ok = fixed_point(g, h, v, rep);
  }
  if (report != nullptr) *report = rep;
  if (!ok) throw ConvergenceError("implicit step did not converge", rep.residual);
  return {model_, std::move(v)};
}

PmeEvolution PmeSolver::evolve(const GridFunction& u0, double t, int steps) const {
  if (steps < 1) throw DomainError("step count must be at least 1");
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("evolution time must be positive");
  const double h = t / steps;
  const double lambda = op_.constants().lambda;
  PmeEvolution out{u0, {}, {integral(u0)}, {}};
  out.steps.reserve(static_cast<std::size_t>(steps));
  for (int j = 0; j < steps; ++j) {
    StepReport rep;
    GridFunction next = implicit_step(out.u, h, &rep);
    const double mass = integral(next);
    const GridFunction phi_next(model_, map_phi(phi_, next.values()));
    out.mass_defects.push_back(mass - out.masses.back() + h * lambda * integral(phi_next));
    out.masses.push_back(mass);
    out.steps.push_back(rep);
    out.u = std::move(next);
  }
  return out;
}

CrandallLiggettReport PmeSolver::crandall_liggett(const GridFunction& u0, double t, double tol, int k_start,
                                                  int k_cap) const {
  if (!(tol > 0.0)) throw DomainError("Crandall-Liggett tolerance must be positive");
  if (k_start < 1 || k_cap < k_start) throw DomainError("bad step-count range");
  CrandallLiggettReport rep;
  GridFunction coarse = evolve(u0, t, k_start).u;
  for (int k = k_start; k < k_cap; k *= 2) {
    GridFunction fine = evolve(u0, t, 2 * k).u;
    const double diff = lp_norm(fine - coarse, 1.0);
    rep.step_counts.push_back(k);
    if (!rep.l1_differences.empty()) rep.ratios.push_back(diff / rep.l1_differences.back());
    rep.l1_differences.push_back(diff);
    coarse = std::move(fine);
    if (diff < tol) {
      rep.converged = true;
      break;
    }
  }
  rep.solution = std::move(coarse);
  return rep;
}

DecayReport PmeSolver::lgamma_decay_suite(const GridFunction& u0, std::span<const double> times,
                                          std::span<const double> gammas, double max_step, double slack) const {
  if (!(max_step > 0.0)) throw DomainError("max step must be positive");
  if (*std::min_element(u0.values().begin(), u0.values().end()) <= 0.0) {
    throw DomainError("the L^gamma decay suite needs strictly positive data");
  }
  DecayReport rep;
  rep.gammas.assign(gammas.begin(), gammas.end());
  const auto norms_of = [&](const GridFunction& u) {
    std::vector<double> row;
    for (double gamma : gammas) row.push_back(lp_norm(u, gamma));
    return row;
  };
  rep.times.push_back(0.0);
  rep.norms.push_back(norms_of(u0));
  GridFunction u = u0;
  double last = 0.0;
  for (double t : times) {
    if (!(t > last)) throw DomainError("output times must be strictly increasing and positive");
    const int k = static_cast<int>(std::ceil((t - last) / max_step - 1e-12));
    u = evolve(u, t - last, std::max(k, 1)).u;
    auto row = norms_of(u);
    for (std::size_t g = 0; g < gammas.size(); ++g) {
      const double excess = row[g] - rep.norms.back()[g];
      if (excess > slack) rep.violations.push_back({gammas[g], t, excess});
    }
    rep.times.push_back(t);
    rep.norms.push_back(std::move(row));
    last = t;
  }
  return rep;
}

GridFunction implicit_step(const GridFunction& g, double h, double alpha, const Nonlinearity& phi) {
  return PmeSolver(g.model(), alpha, phi).implicit_step(g, h);
}

GridFunction evolve_pme(const GridFunction& u0, double t, int steps, double alpha, const Nonlinearity& phi) {
  return PmeSolver(u0.model(), alpha, phi).evolve(u0, t, steps).u;
}

}  // namespace padic
