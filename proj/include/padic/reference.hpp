#pragma once

// Brute-force references that share no code path with the fast implementations:
// O(S^2) character sums and double loops. Used by the test suites and by
// `padic_cli verify`.

#include <complex>
#include <vector>

#include "padic/fourier.hpp"
#include "padic/grid_function.hpp"

namespace padic::reference {

/// coeffs[k] = p^{-N-M} sum_n character(n, k) u[n].
std::vector<std::complex<double>> dft_direct(const GridFunction& u);

/// u[n] = sum_k conj(character(n, k)) coeffs[k].
std::vector<std::complex<double>> idft_direct(const SpectralFunction& f);

/// p^{-M} sum_m u[(n - m) mod S] v[m] with a plain double loop.
GridFunction convolve_direct(const GridFunction& u, const GridFunction& v);

/// P_{N,alpha}(xi_k) as a character sum over the nonzero cosets of the model.
/// Exact at resolution >= the frequency's level, since chi(y xi) = 1 on B_{-M}.
double symbol_by_coset_sum(const BallModel& model, double alpha, std::int64_t k);

/// Dense matrix of the hypersingular form with every entry from point_abs.
std::vector<double> hypersingular_matrix(const BallModel& model, double alpha);

}  // namespace padic::reference
