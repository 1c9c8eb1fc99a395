#include "padic/ball_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "padic/errors.hpp"

namespace padic {

bool is_prime(std::int64_t n) noexcept {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

double ipow(std::int64_t p, int e) { return std::pow(static_cast<double>(p), e); }

BallModel::BallModel(std::int64_t prime, int ball_exponent, int resolution, std::int64_t order_cap)
    : p_(prime), n_(ball_exponent), m_(resolution), s_(1), cap_(order_cap) {
  if (!is_prime(p_)) throw DomainError("p = " + std::to_string(p_) + " is not prime");
  if (n_ + m_ < 0) throw DomainError("resolution M must satisfy N + M >= 0");
  if (cap_ < 1) throw DomainError("group-order cap must be positive");
  for (int i = 0; i < n_ + m_; ++i) {
    if (s_ > cap_ / p_) {
      throw DomainError("group order p^(N+M) exceeds the cap " + std::to_string(cap_));
    }
    s_ *= p_;
  }
}

double BallModel::coset_measure() const { return ipow(p_, -m_); }
double BallModel::ball_measure() const { return ipow(p_, n_); }

void BallModel::check_index(std::int64_t i, const char* what) const {
  if (i < 0 || i >= s_) {
    throw DomainError(std::string(what) + " index " + std::to_string(i) + " outside [0, " +
                      std::to_string(s_) + ")");
  }
}

int BallModel::index_valuation(std::int64_t n) const {
  check_index(n, "point");
  if (n == 0) throw DomainError("valuation of the zero index is infinite");
  int v = 0;
  while (n % p_ == 0) {
    n /= p_;
    ++v;
  }
  return v;
}

int BallModel::point_level(std::int64_t n) const { return n_ - index_valuation(n); }

double BallModel::point_abs(std::int64_t n) const {
  check_index(n, "point");
  if (n == 0) return 0.0;
  return ipow(p_, point_level(n));
}

int BallModel::freq_level(std::int64_t k) const {
  check_index(k, "frequency");
  if (k == 0) throw DomainError("the trivial character has no level");
  return m_ - index_valuation(k);
}

double BallModel::freq_abs(std::int64_t k) const {
  check_index(k, "frequency");
  if (k == 0) return 0.0;
  return ipow(p_, freq_level(k));
}

std::complex<double> BallModel::character(std::int64_t n, std::int64_t k) const {
  check_index(n, "point");
  check_index(k, "frequency");
  const auto j = static_cast<std::int64_t>((static_cast<__int128>(n) * k) % s_);
  const double phase = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(s_);
  return {std::cos(phase), std::sin(phase)};
}

BallModel BallModel::refined(int levels) const {
  if (levels < 0) throw DomainError("refinement levels must be nonnegative");
  return BallModel(p_, n_, m_ + levels, cap_);
}

BallModel BallModel::coarsened(int levels) const {
  if (levels < 0) throw DomainError("coarsening levels must be nonnegative");
  if (n_ + m_ - levels < 0) throw DomainError("coarsening below M = -N");
  return BallModel(p_, n_, m_ - levels, cap_);
}

namespace {

void check_operator_args(std::int64_t p, double alpha) {
  if (!is_prime(p)) throw DomainError("p must be prime");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be a positive real");
}

}  // namespace

double lambda_value(std::int64_t p, double alpha, int ball_exponent) {
  check_operator_args(p, alpha);
  const double pd = static_cast<double>(p);
  return (pd - 1.0) / (std::pow(pd, alpha + 1.0) - 1.0) * std::pow(pd, alpha * (1.0 - ball_exponent));
}

double lambda_value_dual(std::int64_t p, double alpha, int ball_exponent) {
  check_operator_args(p, alpha);
  const double pd = static_cast<double>(p);
  return (1.0 - 1.0 / pd) / (1.0 - std::pow(pd, -alpha - 1.0)) * std::pow(pd, -alpha * ball_exponent);
}

double coefficient_ap(std::int64_t p, double alpha) {
  check_operator_args(p, alpha);
  const double pd = static_cast<double>(p);
  return (1.0 - std::pow(pd, alpha)) / (1.0 - std::pow(pd, -alpha - 1.0));
}

OperatorConstants make_constants(std::int64_t p, double alpha, int ball_exponent) {
  check_operator_args(p, alpha);
  return {p, ball_exponent, alpha, lambda_value(p, alpha, ball_exponent), coefficient_ap(p, alpha)};
}

}  // namespace padic
