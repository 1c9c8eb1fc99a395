#include "padic/fourier.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "padic/errors.hpp"

namespace padic {

FourierTransform::FourierTransform(BallModel model) : model_(std::move(model)) {
  const std::int64_t s = model_.order();
  roots_.resize(static_cast<std::size_t>(s));
  for (std::int64_t j = 0; j < s; ++j) {
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(s);
    roots_[static_cast<std::size_t>(j)] = {std::cos(phase), std::sin(phase)};
  }
  const std::int64_t p = model_.prime();
  const int digits = model_.digits();
  digit_reversal_.resize(static_cast<std::size_t>(s));
  for (std::int64_t n = 0; n < s; ++n) {
    std::int64_t x = n;
    std::int64_t r = 0;
    for (int d = 0; d < digits; ++d) {
      r = r * p + x % p;
      x /= p;
    }
    digit_reversal_[static_cast<std::size_t>(n)] = r;
  }
}

void FourierTransform::transform(std::span<std::complex<double>> data, int sign) const {
  const std::int64_t s = model_.order();
  if (static_cast<std::int64_t>(data.size()) != s) throw DomainError("transform length does not match the model");
  if (s == 1) return;
  const std::int64_t p = model_.prime();
  const auto root = [&](std::int64_t j) {
    const auto& w = roots_[static_cast<std::size_t>(j % s)];
    return sign > 0 ? w : std::conj(w);
  };

  for (std::int64_t n = 0; n < s; ++n) {
    const std::int64_t r = digit_reversal_[static_cast<std::size_t>(n)];
    if (r > n) std::swap(data[static_cast<std::size_t>(n)], data[static_cast<std::size_t>(r)]);
  }

  std::vector<std::complex<double>> scratch(static_cast<std::size_t>(p));
  const std::int64_t p_stride = s / p;  // root index of the primitive p-th root
  for (std::int64_t len = p; len <= s; len *= p) {
    const std::int64_t sub = len / p;
    const std::int64_t stride = s / len;  // root index step for the length-len transform
    for (std::int64_t base = 0; base < s; base += len) {
      for (std::int64_t k1 = 0; k1 < sub; ++k1) {
        for (std::int64_t r = 0; r < p; ++r) {
          scratch[static_cast<std::size_t>(r)] =
              root(stride * r * k1) * data[static_cast<std::size_t>(base + r * sub + k1)];
        }
        if (p == 2) {
          const auto a = scratch[0];
          const auto b = scratch[1];
          data[static_cast<std::size_t>(base + k1)] = a + b;
          data[static_cast<std::size_t>(base + k1 + sub)] = a - b;
          continue;
        }
        for (std::int64_t k2 = 0; k2 < p; ++k2) {
          std::complex<double> acc = scratch[0];
          for (std::int64_t r = 1; r < p; ++r) acc += root(p_stride * ((r * k2) % p)) * scratch[static_cast<std::size_t>(r)];
          data[static_cast<std::size_t>(base + k1 + k2 * sub)] = acc;
        }
      }
    }
  }
}

SpectralFunction FourierTransform::forward(std::span<const std::complex<double>> values) const {
  std::vector<std::complex<double>> data(values.begin(), values.end());
  transform(data, +1);
  const double scale = 1.0 / static_cast<double>(model_.order());  // p^{-N-M}
  for (auto& c : data) c *= scale;
  return {model_, std::move(data)};
}

SpectralFunction FourierTransform::forward(const GridFunction& u) const {
  if (!(u.model() == model_)) throw DomainError("grid function model does not match the transform");
  std::vector<std::complex<double>> data(u.values().begin(), u.values().end());
  transform(data, +1);
  const double scale = 1.0 / static_cast<double>(model_.order());
  for (auto& c : data) c *= scale;
  return {model_, std::move(data)};
}

std::vector<std::complex<double>> FourierTransform::inverse_complex(const SpectralFunction& f) const {
  if (!(f.model == model_)) throw DomainError("spectral function model does not match the transform");
  std::vector<std::complex<double>> data = f.coeffs;
  transform(data, -1);
  return data;
}

GridFunction FourierTransform::inverse(const SpectralFunction& f) const {
  const auto data = inverse_complex(f);
  std::vector<double> out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = data[i].real();
  return {model_, std::move(out)};
}

std::shared_ptr<const FourierTransform> fourier_for(const BallModel& model) {
  static std::mutex mu;
  static std::map<std::tuple<std::int64_t, int, int>, std::shared_ptr<const FourierTransform>> cache;
  const auto key = std::make_tuple(model.prime(), model.ball_exponent(), model.resolution());
  std::lock_guard lock(mu);
  auto& slot = cache[key];
  if (!slot) slot = std::make_shared<const FourierTransform>(model);
  return slot;
}

SpectralFunction forward(const GridFunction& u) { return fourier_for(u.model())->forward(u); }
GridFunction inverse(const SpectralFunction& f) { return fourier_for(f.model)->inverse(f); }

GridFunction convolve_spectral(const GridFunction& u, const GridFunction& v) {
  if (!(u.model() == v.model())) throw DomainError("grid functions live on different models");
  const auto ft = fourier_for(u.model());
  auto fu = ft->forward(u);
  const auto fv = ft->forward(v);
  const double scale = u.model().ball_measure();
  for (std::size_t k = 0; k < fu.coeffs.size(); ++k) fu.coeffs[k] *= scale * fv.coeffs[k];
  return ft->inverse(fu);
}

}  // namespace padic
