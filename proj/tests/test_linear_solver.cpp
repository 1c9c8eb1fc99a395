#include <cmath>

#include "doctest.h"
#include "padic/errors.hpp"
#include "padic/linear_solver.hpp"
#include "padic/vladimirov.hpp"

using namespace padic;

namespace {

GridFunction cosine(const BallModel& m, std::int64_t k0) {
  std::vector<double> v(static_cast<std::size_t>(m.order()));
  for (std::int64_t n = 0; n < m.order(); ++n) v[static_cast<std::size_t>(n)] = m.character(n, k0).real();
  return {m, v};
}

}  // namespace

TEST_CASE("trivial evolutions") {
  const BallModel m(2, 0, 5);
  const GridFunction u = make_initial(m, initial::Random{1, -1.0, 1.0});
  CHECK(max_abs_difference(evolve(u, 1.0, 0.0), u) == 0.0);
  const GridFunction c = GridFunction::constant(m, 4.0);
  CHECK(max_abs_difference(evolve(c, 1.0, 3.0), c) < 1e-14);
  CHECK_THROWS_AS(evolve(u, 1.0, -1.0), DomainError);
}

TEST_CASE("characters decay at their own rate") {
  const BallModel m(3, 0, 3);
  const auto mult = multiplier(m, 1.2).eigenvalues;
  for (std::int64_t k0 : {1, 3, 9}) {
    const GridFunction u = cosine(m, k0);
    const double rate = mult[static_cast<std::size_t>(k0)] - mult[0];
    for (auto path : {EvolutionPath::spectral, EvolutionPath::kernel}) {
      CHECK(max_abs_difference(evolve(u, 1.2, 0.3, path), std::exp(-0.3 * rate) * u) < 1e-13);
    }
  }
}

TEST_CASE("long-time limit is the mean") {
  const BallModel m(2, 1, 4);
  const double alpha = 1.0;
  const GridFunction u = make_initial(m, initial::Random{2, 0.0, 1.0});
  const auto mult = multiplier(m, alpha).eigenvalues;
  const double gap = std::pow(2.0, alpha * (1 - 1)) - mult[0];
  const GridFunction limit = GridFunction::constant(m, integral(u) / m.ball_measure());
  CHECK(max_abs_difference(evolve(u, alpha, 200.0 / gap), limit) < 1e-9);
  // slowest mode sets the rate
  const double e1 = max_abs_difference(evolve(u, alpha, 20.0), limit);
  const double e2 = max_abs_difference(evolve(u, alpha, 21.0), limit);
  CHECK(e2 / e1 == doctest::Approx(std::exp(-gap)).epsilon(1e-6));
}

TEST_CASE("mass, contraction, positivity, energy") {
  for (auto [p, n, mm, a] : std::vector<std::tuple<std::int64_t, int, int, double>>{{2, 0, 6, 1.0}, {3, 1, 3, 0.5}, {5, -1, 3, 2.0}}) {
    const BallModel m(p, n, mm);
    const GridFunction signed_u = make_initial(m, initial::Random{5, -1.0, 1.0});
    const GridFunction pos_u = make_initial(m, initial::SubBallIndicator{1, n - 2});
    const std::vector<double> times{0.05, 0.1, 0.5, 1.0, 3.0};
    const auto s = evolve_series(signed_u, a, times);
    const auto q = evolve_series(pos_u, a, times);
    double l2 = lp_norm(signed_u, 2.0);
    for (std::size_t i = 0; i < times.size(); ++i) {
      CHECK(std::fabs(integral(s[i]) - integral(signed_u)) < 1e-13);
      CHECK(lp_norm(s[i], 1.0) <= lp_norm(signed_u, 1.0) + 1e-13);
      CHECK(lp_norm(s[i], 2.0) <= l2 + 1e-14);
      l2 = lp_norm(s[i], 2.0);
      CHECK(*std::min_element(q[i].values().begin(), q[i].values().end()) >= -1e-12);
    }
  }
}

TEST_CASE("series outputs chain and paths agree") {
  const BallModel m(3, 0, 4);
  const GridFunction u = make_initial(m, initial::Random{6, -1.0, 1.0});
  const std::vector<double> times{0.2, 0.7, 1.5};
  const auto s = evolve_series(u, 0.7, times);
  CHECK(max_abs_difference(evolve(s[0], 0.7, 0.5), s[1]) < 1e-10);
  CHECK(max_abs_difference(evolve(u, 0.7, 1.5), s[2]) < 1e-10);
  const auto k = evolve_series(u, 0.7, times, EvolutionPath::kernel);
  for (std::size_t i = 0; i < times.size(); ++i) CHECK(max_abs_difference(s[i], k[i]) < 1e-9);
  const std::vector<double> bad{0.5, 0.2};
  CHECK_THROWS_AS(evolve_series(u, 0.7, bad), DomainError);
}

TEST_CASE("classical residual is small") {
  const BallModel m(2, 0, 5);
  const GridFunction u = make_initial(m, initial::Random{7, 0.0, 1.0});
  for (double t : {0.5, 1.0, 4.0}) CHECK(classical_residual(u, 1.0, t) < 1e-6);
}
