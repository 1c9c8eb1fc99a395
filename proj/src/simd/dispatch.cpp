#include <cstdlib>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "padic/simd/kernels.hpp"

namespace padic::simd {

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(PADIC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernels(Isa isa) {
  if (!isa_available(isa)) throw std::invalid_argument("requested SIMD variant is not available on this CPU");
#ifdef PADIC_HAVE_AVX2
  if (isa == Isa::avx2) return detail::avx2_table();
#endif
  return detail::scalar_table();
}

Isa active_isa() noexcept {
  static const Isa chosen = [] {
    if (const char* env = std::getenv("PADIC_SIMD"); env != nullptr && std::string_view(env) == "scalar") {
      return Isa::scalar;
    }
    return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
  }();
  return chosen;
}

const KernelTable& kernels() { return kernels(active_isa()); }

namespace {
void require_same(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("kernel operands differ in length");
}
}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  require_same(a.size(), b.size());
  return kernels().dot(a.data(), b.data(), a.size());
}
double sum(std::span<const double> a) { return kernels().sum(a.data(), a.size()); }
double abs_sum(std::span<const double> a) { return kernels().abs_sum(a.data(), a.size()); }
double sum_sq(std::span<const double> a) { return kernels().sum_sq(a.data(), a.size()); }
double max_abs(std::span<const double> a) { return kernels().max_abs(a.data(), a.size()); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  require_same(x.size(), y.size());
  kernels().axpy(alpha, x.data(), y.data(), x.size());
}

void scale_complex(std::span<std::complex<double>> z, std::span<const double> m) {
  require_same(z.size(), m.size());
  // std::complex<double> is layout-compatible with double[2]
  kernels().scale_complex(reinterpret_cast<double*>(z.data()), m.data(), z.size());
}

void matvec(std::span<const double> a, std::span<const double> x, std::span<double> y) {
  require_same(a.size(), x.size() * y.size());
  kernels().matvec(a.data(), x.data(), y.data(), y.size(), x.size());
}

void circulant_apply(std::span<const double> w, std::span<const double> u, std::span<double> out,
                     const KernelTable& table) {
  const std::size_t s = u.size();
  require_same(w.size(), s);
  require_same(out.size(), s);
  if (s == 0) return;
  // reflected[i] = w[-i mod S], so w[(n - m) mod S] = reflected[(m - n) mod S]
  std::vector<double> reflected(s);
  reflected[0] = w[0];
  for (std::size_t i = 1; i < s; ++i) reflected[i] = w[s - i];
  for (std::size_t n = 0; n < s; ++n) {
    double acc = table.dot(reflected.data() + (s - n) % s, u.data(), n);
    acc += table.dot(reflected.data(), u.data() + n, s - n);
    out[n] = acc;
  }
}

}  // namespace padic::simd
