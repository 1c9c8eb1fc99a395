#include <cmath>
#include <complex>

#include "doctest.h"
#include "padic/errors.hpp"
#include "padic/fourier.hpp"
#include "padic/reference.hpp"

using namespace padic;

namespace {

double max_diff(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_CASE("FFT agrees with the direct DFT for every small model") {
  for (std::int64_t p : {2, 3, 5, 7, 11}) {
    for (int n : {-1, 0, 2}) {
      for (int m = 1; m <= 4; ++m) {
        if (n + m < 0 || std::pow(static_cast<double>(p), n + m) > 400) continue;
        const BallModel model(p, n, m);
        CAPTURE(p);
        CAPTURE(n);
        CAPTURE(m);
        const GridFunction u = make_initial(model, initial::Random{static_cast<std::uint64_t>(p * 100 + m), -1.0, 1.0});
        const SpectralFunction f = forward(u);
        CHECK(max_diff(f.coeffs, reference::dft_direct(u)) < 1e-14);
        const auto back = reference::idft_direct(f);
        for (std::int64_t i = 0; i < model.order(); ++i) CHECK(std::fabs(back[i].real() - u[i]) < 1e-13);
      }
    }
  }
}

TEST_CASE("round trip and Plancherel on larger sizes") {
  for (auto [p, m] : std::vector<std::pair<std::int64_t, int>>{{2, 14}, {3, 9}, {5, 6}, {7, 4}, {13, 3}}) {
    const BallModel model(p, 0, m);
    const GridFunction u = make_initial(model, initial::Random{5, -1.0, 1.0});
    const SpectralFunction f = forward(u);
    CHECK(max_abs_difference(inverse(f), u) < 1e-12);
    double energy = 0.0;
    for (const auto& z : f.coeffs) energy += std::norm(z);
    const double l2 = lp_norm(u, 2.0);
    CHECK(energy * model.ball_measure() == doctest::Approx(l2 * l2).epsilon(1e-12));
  }
}

TEST_CASE("transform of a constant and of a sub-ball indicator") {
  const BallModel model(3, 1, 2);
  const SpectralFunction c = forward(GridFunction::constant(model, 2.0));
  CHECK(std::abs(c.coeffs[0] - 2.0) < 1e-15);
  for (std::size_t k = 1; k < c.coeffs.size(); ++k) CHECK(std::abs(c.coeffs[k]) < 1e-15);

  // indicator of B_r has coefficients p^{r-N} on frequencies with |xi| <= p^{-r}
  const int r = -1;
  const SpectralFunction f = forward(make_initial(model, initial::SubBallIndicator{0, r}));
  for (std::int64_t k = 0; k < model.order(); ++k) {
    const double want = model.freq_abs(k) <= std::pow(3.0, -r) ? std::pow(3.0, r - 1) : 0.0;
    CHECK(std::abs(f.coeffs[static_cast<std::size_t>(k)] - want) < 1e-14);
  }
}

TEST_CASE("convolution theorem") {
  const BallModel model(2, 1, 4);
  const GridFunction u = make_initial(model, initial::Random{1, -1.0, 1.0});
  const GridFunction v = make_initial(model, initial::Random{2, -1.0, 1.0});
  const SpectralFunction fu = forward(u);
  const SpectralFunction fv = forward(v);
  const SpectralFunction fc = forward(reference::convolve_direct(u, v));
  for (std::size_t k = 0; k < fc.coeffs.size(); ++k) {
    CHECK(std::abs(fc.coeffs[k] - model.ball_measure() * fu.coeffs[k] * fv.coeffs[k]) < 1e-14);
  }
  CHECK(max_abs_difference(convolve_spectral(u, v), reference::convolve_direct(u, v)) < 1e-13);
}

TEST_CASE("real input gives Hermitian coefficients") {
  const BallModel model(5, 0, 3);
  const SpectralFunction f = forward(make_initial(model, initial::Random{8, -1.0, 1.0}));
  const auto s = static_cast<std::size_t>(model.order());
  for (std::size_t k = 1; k < s; ++k) CHECK(std::abs(f.coeffs[k] - std::conj(f.coeffs[s - k])) < 1e-15);
}

TEST_CASE("forward uses the +2 pi i sign") {
  const BallModel model(2, 0, 2);
  std::vector<double> v(4, 0.0);
  v[1] = 1.0;
  const SpectralFunction f = forward(GridFunction(model, v));
  // coeffs[1] = p^{-N-M} exp(+2 pi i * 1 * 1 / 4) = i / 4
  CHECK(std::abs(f.coeffs[1] - std::complex<double>(0.0, 0.25)) < 1e-16);
}

TEST_CASE("cached transforms are shared and linear") {
  const BallModel model(3, 0, 4);
  CHECK(fourier_for(model).get() == fourier_for(model).get());
  const GridFunction a = make_initial(model, initial::Random{1, -1.0, 1.0});
  const GridFunction b = make_initial(model, initial::Random{2, -1.0, 1.0});
  const auto fa = forward(a), fb = forward(b), fs = forward(a + 3.0 * b);
  for (std::size_t k = 0; k < fs.coeffs.size(); ++k) CHECK(std::abs(fs.coeffs[k] - fa.coeffs[k] - 3.0 * fb.coeffs[k]) < 1e-14);
  CHECK_THROWS_AS(fourier_for(model)->inverse(forward(GridFunction::constant(BallModel(3, 1, 3), 1.0))), DomainError);
}
