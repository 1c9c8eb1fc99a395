#pragma once

// Data-parallel inner loops used by the operator, transform and solver code.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2/FMA variant. The variant is chosen once at first use from the CPU
// feature bits; setting PADIC_SIMD=scalar in the environment pins the scalar
// path. Reductions use a fixed lane/accumulator order for a given ISA, so a
// run is bit-reproducible on the same machine.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace padic::simd {

enum class Isa { scalar, avx2 };

/// Raw kernel entry points. Pointers are unaligned-safe; sizes are element counts.
struct KernelTable {
  std::string_view name;
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum)(const double* a, std::size_t n);
  double (*abs_sum)(const double* a, std::size_t n);
  double (*sum_sq)(const double* a, std::size_t n);
  double (*max_abs)(const double* a, std::size_t n);
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // z[k] *= m[k] for interleaved complex z (re, im, re, im, ...)
  void (*scale_complex)(double* z, const double* m, std::size_t n);
  // y = A x with A row-major rows x cols
  void (*matvec)(const double* a, const double* x, double* y, std::size_t rows, std::size_t cols);
};

bool isa_available(Isa isa) noexcept;
const KernelTable& kernels(Isa isa);
const KernelTable& kernels();  // active table
Isa active_isa() noexcept;

double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
double abs_sum(std::span<const double> a);
double sum_sq(std::span<const double> a);
double max_abs(std::span<const double> a);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale_complex(std::span<std::complex<double>> z, std::span<const double> m);
void matvec(std::span<const double> a, std::span<const double> x, std::span<double> y);

/// out[n] = sum_m w[(n - m) mod S] * u[m], S = u.size(). Two contiguous dot
/// products per output against the reflected weight vector.
void circulant_apply(std::span<const double> w, std::span<const double> u, std::span<double> out,
                     const KernelTable& table = kernels());

namespace detail {
const KernelTable& scalar_table();
#ifdef PADIC_HAVE_AVX2
const KernelTable& avx2_table();
#endif
}  // namespace detail

}  // namespace padic::simd
