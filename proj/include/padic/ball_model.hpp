#pragma once

#include <complex>
#include <cstdint>

namespace padic {

/// The finite quotient B_N / B_{-M} of the p-adic ball of radius p^N.
///
/// Points are the canonical integers n in [0, S) standing for x = p^{-N} n,
/// S = p^{N+M}; index addition mod S is coset addition. Dual frequencies are
/// the integers k in [0, S) standing for xi = p^{-M} k, and the pairing
/// chi(x xi) reduces to exp(2 pi i n k / S).
class BallModel {
 public:
  static constexpr std::int64_t default_order_cap = std::int64_t{1} << 20;

  BallModel(std::int64_t prime, int ball_exponent, int resolution,
            std::int64_t order_cap = default_order_cap);

  std::int64_t prime() const noexcept { return p_; }
  int ball_exponent() const noexcept { return n_; }  // N
  int resolution() const noexcept { return m_; }     // M
  std::int64_t order() const noexcept { return s_; } // S = p^(N+M)
  std::int64_t order_cap() const noexcept { return cap_; }
  int digits() const noexcept { return n_ + m_; }

  /// Haar measure of one coset x + B_{-M}.
  double coset_measure() const;
  /// Haar measure of B_N.
  double ball_measure() const;

  /// p-adic valuation of the integer n, 0 < n < S.
  int index_valuation(std::int64_t n) const;

  /// |x|_p for x = p^{-N} n; 0 for the zero coset.
  double point_abs(std::int64_t n) const;
  /// Exponent m with |x|_p = p^m for a nonzero coset.
  int point_level(std::int64_t n) const;

  /// |xi|_p for xi = p^{-M} k; 0 for the trivial character.
  double freq_abs(std::int64_t k) const;
  int freq_level(std::int64_t k) const;

  /// exp(2 pi i n k / S), with n k reduced mod S in integer arithmetic.
  std::complex<double> character(std::int64_t n, std::int64_t k) const;

  /// (a - b) mod S and (a + b) mod S on indices.
  std::int64_t sub(std::int64_t a, std::int64_t b) const noexcept { return ((a - b) % s_ + s_) % s_; }
  std::int64_t add(std::int64_t a, std::int64_t b) const noexcept { return (a + b) % s_; }

  BallModel refined(int levels) const;
  BallModel coarsened(int levels) const;

  friend bool operator==(const BallModel& a, const BallModel& b) noexcept {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.m_ == b.m_;
  }

 private:
  void check_index(std::int64_t i, const char* what) const;

  std::int64_t p_;
  int n_;
  int m_;
  std::int64_t s_;
  std::int64_t cap_;
};

bool is_prime(std::int64_t n) noexcept;

/// p^e as a double; exact for the integer powers used by the model.
double ipow(std::int64_t p, int e);

/// Scalar constants attached to D^alpha_N.
struct OperatorConstants {
  std::int64_t p;
  int ball_exponent;
  double alpha;
  double lambda;  // smallest eigenvalue of D^alpha_N
  double a_p;     // (1 - p^alpha) / (1 - p^{-alpha-1})
};

/// lambda = (p-1)/(p^{alpha+1}-1) p^{alpha(1-N)}.
double lambda_value(std::int64_t p, double alpha, int ball_exponent);
/// The same constant written as (1-p^{-1})/(1-p^{-alpha-1}) p^{-alpha N}.
double lambda_value_dual(std::int64_t p, double alpha, int ball_exponent);
double coefficient_ap(std::int64_t p, double alpha);

OperatorConstants make_constants(std::int64_t p, double alpha, int ball_exponent);

}  // namespace padic
