#pragma once

#include <string>
#include <vector>

namespace padic {

/// A strictly increasing continuous Phi with Phi(0) = 0.
class Nonlinearity {
 public:
  enum class Kind { identity, power, piecewise_linear };

  static Nonlinearity identity();
  /// sign(u) |u|^m, m >= 1.
  static Nonlinearity power(double exponent);
  /// Linear interpolation through strictly increasing knots (x_i, y_i), extended
  /// linearly past the ends. The table must pass through the origin.
  static Nonlinearity piecewise_linear(std::vector<double> xs, std::vector<double> ys);

  Kind kind() const noexcept { return kind_; }
  double exponent() const noexcept { return exponent_; }
  bool differentiable() const noexcept { return kind_ != Kind::piecewise_linear; }

  double value(double u) const;
  /// Derivative; the right derivative at kinks of a table.
  double derivative(double u) const;
  double inverse(double y) const;
  /// Largest slope on [-bound, bound].
  double max_slope(double bound) const;

  std::string describe() const;

 private:
  Nonlinearity(Kind kind, double exponent, std::vector<double> xs, std::vector<double> ys);
  std::size_t segment(double u) const;  // index i with the segment [x_i, x_{i+1}] used for u

  Kind kind_;
  double exponent_;
  std::vector<double> xs_;
  std::vector<double> ys_;
};

}  // namespace padic
