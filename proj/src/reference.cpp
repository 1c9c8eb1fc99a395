#include "padic/reference.hpp"

#include <cmath>

#include "padic/errors.hpp"

namespace padic::reference {

std::vector<std::complex<double>> dft_direct(const GridFunction& u) {
  const BallModel& m = u.model();
  const std::int64_t s = m.order();
  std::vector<std::complex<double>> out(static_cast<std::size_t>(s));
  for (std::int64_t k = 0; k < s; ++k) {
    std::complex<double> acc = 0.0;
    for (std::int64_t n = 0; n < s; ++n) acc += m.character(n, k) * u[n];
    out[static_cast<std::size_t>(k)] = acc / static_cast<double>(s);
  }
  return out;
}

std::vector<std::complex<double>> idft_direct(const SpectralFunction& f) {
  const BallModel& m = f.model;
  const std::int64_t s = m.order();
  std::vector<std::complex<double>> out(static_cast<std::size_t>(s));
  for (std::int64_t n = 0; n < s; ++n) {
    std::complex<double> acc = 0.0;
    for (std::int64_t k = 0; k < s; ++k) acc += std::conj(m.character(n, k)) * f.coeffs[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(n)] = acc;
  }
  return out;
}

GridFunction convolve_direct(const GridFunction& u, const GridFunction& v) {
  if (!(u.model() == v.model())) throw DomainError("models differ");
  const BallModel& m = u.model();
  std::vector<double> out(u.size(), 0.0);
  for (std::int64_t n = 0; n < m.order(); ++n) {
    double acc = 0.0;
    for (std::int64_t j = 0; j < m.order(); ++j) acc += u[m.sub(n, j)] * v[j];
    out[static_cast<std::size_t>(n)] = acc * m.coset_measure();
  }
  return {m, std::move(out)};
}

double symbol_by_coset_sum(const BallModel& model, double alpha, std::int64_t k) {
  const double ap = coefficient_ap(model.prime(), alpha);
  double acc = 0.0;
  for (std::int64_t j = 1; j < model.order(); ++j) {
    acc += std::pow(model.point_abs(j), -alpha - 1.0) * (model.character(j, k).real() - 1.0);
  }
  return ap * model.coset_measure() * acc;
}

std::vector<double> hypersingular_matrix(const BallModel& model, double alpha) {
  const std::int64_t s = model.order();
  const double lambda = lambda_value(model.prime(), alpha, model.ball_exponent());
  const double ap = coefficient_ap(model.prime(), alpha);
  const double w = model.coset_measure();
  std::vector<double> a(static_cast<std::size_t>(s * s), 0.0);
  for (std::int64_t r = 0; r < s; ++r) {
    double diag = lambda;
    for (std::int64_t c = 0; c < s; ++c) {
      if (c == r) continue;
      const double entry = ap * w * std::pow(model.point_abs(model.sub(r, c)), -alpha - 1.0);
      a[static_cast<std::size_t>(r * s + c)] = entry;
      diag -= entry;
    }
    a[static_cast<std::size_t>(r * s + r)] = diag;
  }
  return a;
}

}  // namespace padic::reference
