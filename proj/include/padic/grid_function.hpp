#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <variant>
#include <vector>

#include "padic/ball_model.hpp"

namespace padic {

/// A locally constant function on B_N at resolution M: values[n] = u(p^{-N} n).
///
/// Storage uses the unnormalized Haar measure dx, so each coset carries mass
/// p^{-M} and B_N carries p^N. Instances are immutable.
class GridFunction {
 public:
  GridFunction(BallModel model, std::vector<double> values);
  static GridFunction constant(const BallModel& model, double c);

  const BallModel& model() const noexcept { return model_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::int64_t n) const { return values_[static_cast<std::size_t>(n)]; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  BallModel model_;
  std::vector<double> values_;
};

inline constexpr double infinity_norm = std::numeric_limits<double>::infinity();

/// Haar integral over B_N: p^{-M} sum_n u[n].
double integral(const GridFunction& u);

/// (p^{-M} sum |u_n|^gamma)^{1/gamma}; gamma = infinity_norm gives max |u_n|.
double lp_norm(const GridFunction& u, double gamma);

/// (u * v)[n] = p^{-M} sum_m u[n - m] v[m], computed directly.
GridFunction convolve(const GridFunction& u, const GridFunction& v);

/// Replicates values onto the p^levels sub-cosets of every coset.
GridFunction refine(const GridFunction& u, int levels);
/// Averages over sub-cosets; the left inverse of refine.
GridFunction coarsen(const GridFunction& u, int levels);

// Pointwise helpers used by the solvers.
GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(double c, const GridFunction& a);
double max_abs_difference(const GridFunction& a, const GridFunction& b);

namespace initial {

struct Constant {
  double value = 0.0;
};

/// Indicator of x0 + B_r, x0 given by its point index; requires -M <= r <= N.
struct SubBallIndicator {
  std::int64_t center = 0;
  int radius_exponent = 0;
};

/// Independent uniform values in [low, high) per coset.
struct Random {
  std::uint64_t seed = 0;
  double low = 0.0;
  double high = 1.0;
};

/// 1 + indicator of x0 + B_r.
struct PositiveBump {
  std::int64_t center = 0;
  int radius_exponent = 0;
};

}  // namespace initial

using InitialSpec = std::variant<initial::Constant, initial::SubBallIndicator, initial::Random, initial::PositiveBump>;

GridFunction make_initial(const BallModel& model, const InitialSpec& spec);

/// True when point index n lies in center + B_r.
bool in_sub_ball(const BallModel& model, std::int64_t n, std::int64_t center, int radius_exponent);

}  // namespace padic
