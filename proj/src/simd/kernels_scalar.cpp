#include "padic/simd/kernels.hpp"

#include <cmath>

namespace padic::simd::detail {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_scalar(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i];
  return s;
}

double abs_sum_scalar(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::fabs(a[i]);
  return s;
}

double sum_sq_scalar(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
  return s;
}

double max_abs_scalar(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, std::fabs(a[i]));
  return m;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_complex_scalar(double* z, const double* m, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    z[2 * k] *= m[k];
    z[2 * k + 1] *= m[k];
  }
}

void matvec_scalar(const double* a, const double* x, double* y, std::size_t rows, std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot_scalar(a + r * cols, x, cols);
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar",      dot_scalar,  sum_scalar,           abs_sum_scalar,
                                 sum_sq_scalar, max_abs_scalar, axpy_scalar, scale_complex_scalar,
                                 matvec_scalar};
  return table;
}

}  // namespace padic::simd::detail
