#pragma once

#include <span>
#include <vector>

#include "padic/grid_function.hpp"

namespace padic {

/// How T_N(t) = exp(-t (D^alpha_N - lambda)) is applied.
enum class EvolutionPath {
  spectral,  // multiply Fourier coefficients by e^{-t(m[k] - lambda)}
  kernel,    // dx-convolution with the pointwise heat kernel Z_N(t, .)
};

/// Solution of du/dt + (D^alpha_N - lambda) u = 0 at time t >= 0.
GridFunction evolve(const GridFunction& u0, double alpha, double t, EvolutionPath path = EvolutionPath::spectral);

/// Solutions at strictly increasing times, each obtained from the previous output.
std::vector<GridFunction> evolve_series(const GridFunction& u0, double alpha, std::span<const double> times,
                                        EvolutionPath path = EvolutionPath::spectral);

/// ||du/dt + (D - lambda) u||_inf / ||u||_inf at time t, with du/dt from a
/// centered difference of step 1e-5 * max(t, 1).
double classical_residual(const GridFunction& u0, double alpha, double t);

}  // namespace padic
