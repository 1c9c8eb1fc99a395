#include "padic/linear_solver.hpp"

#include <cmath>

#include "padic/errors.hpp"
#include "padic/fourier.hpp"
#include "padic/kernels.hpp"
#include "padic/vladimirov.hpp"

namespace padic {

GridFunction evolve(const GridFunction& u0, double alpha, double t, EvolutionPath path) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("evolution time must be nonnegative");
  if (t == 0.0) return u0;
  if (path == EvolutionPath::kernel) return convolve(ball_kernel_pointwise(u0.model(), alpha, t), u0);

  const SpectralMultiplier mult = multiplier(u0.model(), alpha);
  const double lambda = mult.eigenvalues[0];
  std::vector<double> decay(mult.eigenvalues.size());
  for (std::size_t i = 0; i < decay.size(); ++i) decay[i] = std::exp(-t * (mult.eigenvalues[i] - lambda));
  decay[0] = 1.0;
  const auto ft = fourier_for(u0.model());
  auto f = ft->forward(u0);
  for (std::size_t i = 0; i < decay.size(); ++i) f.coeffs[i] *= decay[i];
  return ft->inverse(f);
}

std::vector<GridFunction> evolve_series(const GridFunction& u0, double alpha, std::span<const double> times,
                                        EvolutionPath path) {
  std::vector<GridFunction> out;
  out.reserve(times.size());
  double last = 0.0;
  const GridFunction* current = &u0;
  for (double t : times) {
    if (!(t > last) && !(out.empty() && t == 0.0)) throw DomainError("evolution times must be strictly increasing");
    out.push_back(evolve(*current, alpha, t - last, path));
    current = &out.back();
    last = t;
  }
  return out;
}

double classical_residual(const GridFunction& u0, double alpha, double t) {
  const double h = 1e-5 * std::fmax(t, 1.0);
  if (t - h < 0.0) throw DomainError("classical residual needs t >= the difference step");
  const GridFunction ahead = evolve(u0, alpha, t + h);
  const GridFunction behind = evolve(u0, alpha, t - h);
  const GridFunction now = evolve(u0, alpha, t);
  const VladimirovOperator op(u0.model(), alpha);
  const GridFunction generator = op.apply_spectral(now) - op.constants().lambda * now;
  const GridFunction residual = (1.0 / (2.0 * h)) * (ahead - behind) + generator;
  const double scale = lp_norm(now, infinity_norm);
  return lp_norm(residual, infinity_norm) / (scale > 0.0 ? scale : 1.0);
}

}  // namespace padic
