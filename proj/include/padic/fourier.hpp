#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "padic/ball_model.hpp"
#include "padic/grid_function.hpp"

namespace padic {

/// Coefficients of F_N u indexed by frequency k (xi = p^{-M} k).
struct SpectralFunction {
  BallModel model;
  std::vector<std::complex<double>> coeffs;
};

/// Fourier transform on B_N at resolution M.
///
/// Sign convention: the forward transform uses chi(x xi) with no minus sign,
///   coeffs[k] = p^{-N-M} sum_n exp(+2 pi i n k / S) u[n],
/// and the inverse uses exp(-2 pi i n k / S) with unit weight on each
/// frequency. This is the opposite of the usual FFT library convention.
///
/// The transform is an iterative radix-p Cooley-Tukey FFT over the cyclic
/// group of order S = p^{N+M}. The twiddle table is built once and is
/// read-only afterwards, so one instance may be shared across threads.
class FourierTransform {
 public:
  explicit FourierTransform(BallModel model);

  const BallModel& model() const noexcept { return model_; }

  SpectralFunction forward(const GridFunction& u) const;
  SpectralFunction forward(std::span<const std::complex<double>> values) const;
  /// Real part of the inverse transform.
  GridFunction inverse(const SpectralFunction& f) const;
  std::vector<std::complex<double>> inverse_complex(const SpectralFunction& f) const;

  /// Unscaled in-place transform X[k] = sum_n x[n] exp(sign 2 pi i n k / S).
  void transform(std::span<std::complex<double>> data, int sign) const;

 private:
  BallModel model_;
  std::vector<std::complex<double>> roots_;      // exp(+2 pi i j / S)
  std::vector<std::int64_t> digit_reversal_;
};

/// Shared, lazily built transform for a model.
std::shared_ptr<const FourierTransform> fourier_for(const BallModel& model);

SpectralFunction forward(const GridFunction& u);
GridFunction inverse(const SpectralFunction& f);

/// Convolution under dx through the transform: F(u * v) = p^N F(u) F(v).
GridFunction convolve_spectral(const GridFunction& u, const GridFunction& v);

}  // namespace padic
