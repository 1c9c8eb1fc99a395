#include "padic/grid_function.hpp"

#include <cmath>
#include <random>
#include <string>

#include "padic/errors.hpp"
#include "padic/simd/kernels.hpp"

namespace padic {

GridFunction::GridFunction(BallModel model, std::vector<double> values)
    : model_(std::move(model)), values_(std::move(values)) {
  if (static_cast<std::int64_t>(values_.size()) != model_.order()) {
    throw DomainError("grid function has " + std::to_string(values_.size()) + " values, model order is " +
                      std::to_string(model_.order()));
  }
}

GridFunction GridFunction::constant(const BallModel& model, double c) {
  return {model, std::vector<double>(static_cast<std::size_t>(model.order()), c)};
}

namespace {
void require_same_model(const GridFunction& a, const GridFunction& b) {
  if (!(a.model() == b.model())) throw DomainError("grid functions live on different models");
}
}  // namespace

double integral(const GridFunction& u) { return u.model().coset_measure() * simd::sum(u.values()); }

double lp_norm(const GridFunction& u, double gamma) {
  if (std::isnan(gamma) || gamma < 1.0) throw DomainError("L^gamma norm needs gamma >= 1");
  const auto v = u.values();
  if (std::isinf(gamma)) return simd::max_abs(v);
  const double w = u.model().coset_measure();
  if (gamma == 1.0) return w * simd::abs_sum(v);
  if (gamma == 2.0) return std::sqrt(w * simd::sum_sq(v));
  // Scale by the max so |u|^gamma cannot overflow for large gamma.
  const double scale = simd::max_abs(v);
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (double x : v) acc += std::pow(std::fabs(x) / scale, gamma);
  return scale * std::pow(w * acc, 1.0 / gamma);
}

GridFunction convolve(const GridFunction& u, const GridFunction& v) {
  require_same_model(u, v);
  std::vector<double> out(u.size());
  simd::circulant_apply(u.values(), v.values(), out);
  const double w = u.model().coset_measure();
  for (double& x : out) x *= w;
  return {u.model(), std::move(out)};
}

GridFunction refine(const GridFunction& u, int levels) {
  const BallModel fine = u.model().refined(levels);
  const auto coarse_order = static_cast<std::size_t>(u.model().order());
  std::vector<double> out(static_cast<std::size_t>(fine.order()));
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = u.values()[n % coarse_order];
  return {fine, std::move(out)};
}

GridFunction coarsen(const GridFunction& u, int levels) {
  const BallModel coarse = u.model().coarsened(levels);
  const auto order = static_cast<std::size_t>(coarse.order());
  const std::size_t copies = u.size() / order;
  std::vector<double> out(order, 0.0);
  for (std::size_t n = 0; n < u.size(); ++n) out[n % order] += u.values()[n];
  for (double& x : out) x /= static_cast<double>(copies);
  return {coarse, std::move(out)};
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  require_same_model(a, b);
  std::vector<double> out(a.values().begin(), a.values().end());
  simd::axpy(1.0, b.values(), out);
  return {a.model(), std::move(out)};
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  require_same_model(a, b);
  std::vector<double> out(a.values().begin(), a.values().end());
  simd::axpy(-1.0, b.values(), out);
  return {a.model(), std::move(out)};
}

GridFunction operator*(double c, const GridFunction& a) {
  std::vector<double> out(a.values().begin(), a.values().end());
  for (double& x : out) x *= c;
  return {a.model(), std::move(out)};
}

double max_abs_difference(const GridFunction& a, const GridFunction& b) {
  require_same_model(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::fmax(m, std::fabs(a.values()[i] - b.values()[i]));
  return m;
}

bool in_sub_ball(const BallModel& model, std::int64_t n, std::int64_t center, int radius_exponent) {
  const std::int64_t d = model.sub(n, center);
  if (d == 0) return true;
  return model.point_level(d) <= radius_exponent;
}

namespace {

std::vector<double> indicator_values(const BallModel& model, std::int64_t center, int r) {
  if (center < 0 || center >= model.order()) throw DomainError("sub-ball center outside the model");
  if (r < -model.resolution() || r > model.ball_exponent()) {
    throw DomainError("sub-ball radius exponent must lie in [-M, N]");
  }
  std::vector<double> out(static_cast<std::size_t>(model.order()));
  for (std::int64_t n = 0; n < model.order(); ++n) out[static_cast<std::size_t>(n)] = in_sub_ball(model, n, center, r);
  return out;
}

}  // namespace

GridFunction make_initial(const BallModel& model, const InitialSpec& spec) {
  const auto size = static_cast<std::size_t>(model.order());
  return std::visit(
      [&](const auto& s) -> GridFunction {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, initial::Constant>) {
          return GridFunction::constant(model, s.value);
        } else if constexpr (std::is_same_v<T, initial::SubBallIndicator>) {
          return {model, indicator_values(model, s.center, s.radius_exponent)};
        } else if constexpr (std::is_same_v<T, initial::PositiveBump>) {
          auto v = indicator_values(model, s.center, s.radius_exponent);
          for (double& x : v) x += 1.0;
          return {model, std::move(v)};
        } else {
          if (!(s.low < s.high)) throw DomainError("random initial data needs low < high");
          std::mt19937_64 rng(s.seed);
          std::uniform_real_distribution<double> dist(s.low, s.high);
          std::vector<double> v(size);
          for (double& x : v) x = dist(rng);
          return {model, std::move(v)};
        }
      },
      spec);
}

}  // namespace padic
