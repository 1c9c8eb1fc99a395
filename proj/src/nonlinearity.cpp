#include "padic/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "padic/errors.hpp"

namespace padic {

Nonlinearity::Nonlinearity(Kind kind, double exponent, std::vector<double> xs, std::vector<double> ys)
    : kind_(kind), exponent_(exponent), xs_(std::move(xs)), ys_(std::move(ys)) {}

Nonlinearity Nonlinearity::identity() { return {Kind::identity, 1.0, {}, {}}; }

Nonlinearity Nonlinearity::power(double exponent) {
  if (!(exponent >= 1.0) || !std::isfinite(exponent)) throw DomainError("power nonlinearity needs exponent >= 1");
  return {Kind::power, exponent, {}, {}};
}

Nonlinearity Nonlinearity::piecewise_linear(std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw DomainError("a piecewise-linear table needs at least two knots");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) throw DomainError("table abscissae must be strictly increasing");
    if (!(ys[i] > ys[i - 1])) throw DomainError("table values must be strictly increasing");
  }
  Nonlinearity phi(Kind::piecewise_linear, 1.0, std::move(xs), std::move(ys));
  if (std::fabs(phi.value(0.0)) > 1e-14) throw DomainError("table must satisfy Phi(0) = 0");
  return phi;
}

std::size_t Nonlinearity::segment(double u) const {
  // last knot <= u, clamped so that [i, i+1] is a valid segment
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), u);
  const auto i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - xs_.begin() - 1, 0));
  return std::min(i, xs_.size() - 2);
}

double Nonlinearity::value(double u) const {
  switch (kind_) {
    case Kind::identity:
      return u;
    case Kind::power:
      return std::copysign(std::pow(std::fabs(u), exponent_), u);
    case Kind::piecewise_linear: {
      const std::size_t i = segment(u);
      const double slope = (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
      return ys_[i] + slope * (u - xs_[i]);
    }
  }
  return 0.0;
}

double Nonlinearity::derivative(double u) const {
  switch (kind_) {
    case Kind::identity:
      return 1.0;
    case Kind::power:
      return exponent_ == 1.0 ? 1.0 : exponent_ * std::pow(std::fabs(u), exponent_ - 1.0);
    case Kind::piecewise_linear: {
      const std::size_t i = segment(u);
      return (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
    }
  }
  return 0.0;
}

double Nonlinearity::inverse(double y) const {
  switch (kind_) {
    case Kind::identity:
      return y;
    case Kind::power:
      return std::copysign(std::pow(std::fabs(y), 1.0 / exponent_), y);
    case Kind::piecewise_linear: {
      const auto it = std::upper_bound(ys_.begin(), ys_.end(), y);
      auto i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - ys_.begin() - 1, 0));
      i = std::min(i, ys_.size() - 2);
      const double slope = (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
      return xs_[i] + (y - ys_[i]) / slope;
    }
  }
  return 0.0;
}

double Nonlinearity::max_slope(double bound) const {
  switch (kind_) {
    case Kind::identity:
      return 1.0;
    case Kind::power:
      return derivative(bound);
    case Kind::piecewise_linear: {
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
        if (xs_[i + 1] < -bound && i + 2 < xs_.size()) continue;
        if (xs_[i] > bound && i > 0) continue;
        s = std::max(s, (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]));
      }
      return s;
    }
  }
  return 1.0;
}

std::string Nonlinearity::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::identity:
      os << "identity";
      break;
    case Kind::power:
      os << "power(" << exponent_ << ")";
      break;
    case Kind::piecewise_linear:
      os << "table(" << xs_.size() << " knots)";
      break;
  }
  return os.str();
}

}  // namespace padic
