#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "padic/errors.hpp"
#include "padic/grid_function.hpp"
#include "padic/reference.hpp"
#include "padic/serialization.hpp"

using namespace padic;

TEST_CASE("construction checks the length") {
  const BallModel m(2, 0, 3);
  CHECK_THROWS_AS(GridFunction(m, std::vector<double>(7)), DomainError);
  CHECK(GridFunction::constant(m, 2.0).size() == 8);
}

TEST_CASE("integral and norms") {
  const BallModel m(3, 1, 1);  // ball measure 3, coset measure 1/3
  const GridFunction one = GridFunction::constant(m, 1.0);
  CHECK(integral(one) == doctest::Approx(3.0));
  CHECK(lp_norm(one, 1.0) == doctest::Approx(3.0));
  CHECK(lp_norm(one, 2.0) == doctest::Approx(std::sqrt(3.0)));
  CHECK(lp_norm(one, 4.0) == doctest::Approx(std::pow(3.0, 0.25)));
  CHECK(lp_norm(one, infinity_norm) == 1.0);

  std::vector<double> v(9, 0.0);
  v[4] = -2.0;
  const GridFunction spike(m, v);
  CHECK(lp_norm(spike, 1.0) == doctest::Approx(2.0 / 3.0));
  CHECK(lp_norm(spike, 3.0) == doctest::Approx(std::cbrt(8.0 / 3.0)));
  CHECK(lp_norm(spike, infinity_norm) == 2.0);
  CHECK_THROWS_AS(lp_norm(spike, 0.5), DomainError);
}

TEST_CASE("L^gamma norms are nondecreasing in gamma on a unit-measure ball") {
  const BallModel m(2, 0, 6);
  const GridFunction u = make_initial(m, initial::Random{9, -3.0, 3.0});
  double last = 0.0;
  for (double g : {1.0, 1.5, 2.0, 3.0, 8.0, infinity_norm}) {
    const double n = lp_norm(u, g);
    CHECK(n >= last * (1.0 - 1e-14));
    last = n;
  }
}

TEST_CASE("convolution matches the brute-force double loop") {
  const BallModel m(3, 0, 3);
  const GridFunction u = make_initial(m, initial::Random{1, -1.0, 1.0});
  const GridFunction v = make_initial(m, initial::Random{2, -1.0, 1.0});
  CHECK(max_abs_difference(convolve(u, v), reference::convolve_direct(u, v)) < 1e-14);
  // commutative, and convolving with the normalized indicator of the unit ball averages
  CHECK(max_abs_difference(convolve(u, v), convolve(v, u)) < 1e-14);
  const GridFunction avg = convolve(GridFunction::constant(m, 1.0 / m.ball_measure()), u);
  CHECK(avg[5] == doctest::Approx(integral(u) / m.ball_measure()));
}

TEST_CASE("refine then coarsen is the identity") {
  const BallModel m(2, 1, 3);
  const GridFunction u = make_initial(m, initial::Random{3, 0.0, 1.0});
  const GridFunction fine = refine(u, 2);
  CHECK(fine.model() == m.refined(2));
  CHECK(integral(fine) == doctest::Approx(integral(u)).epsilon(1e-14));
  CHECK(max_abs_difference(coarsen(fine, 2), u) < 1e-15);
}

TEST_CASE("initial data") {
  const BallModel m(2, 0, 4);
  const GridFunction ind = make_initial(m, initial::SubBallIndicator{0, -2});
  CHECK(integral(ind) == doctest::Approx(0.25));
  for (std::int64_t n = 0; n < m.order(); ++n) CHECK(ind[n] == (m.point_abs(n) <= 0.25 ? 1.0 : 0.0));
  const GridFunction bump = make_initial(m, initial::PositiveBump{3, -1});
  CHECK(*std::min_element(bump.values().begin(), bump.values().end()) == 1.0);
  CHECK(integral(bump) == doctest::Approx(1.5));
  const GridFunction r1 = make_initial(m, initial::Random{7, 0.0, 1.0});
  const GridFunction r2 = make_initial(m, initial::Random{7, 0.0, 1.0});
  CHECK(max_abs_difference(r1, r2) == 0.0);
  CHECK_THROWS_AS(make_initial(m, initial::SubBallIndicator{0, 1}), DomainError);
  CHECK_THROWS_AS(make_initial(m, initial::Random{1, 1.0, 1.0}), DomainError);
}

TEST_CASE("arithmetic requires matching models") {
  const GridFunction a = GridFunction::constant(BallModel(2, 0, 3), 1.0);
  const GridFunction b = GridFunction::constant(BallModel(2, 1, 2), 1.0);
  CHECK_THROWS_AS(a + b, DomainError);
  CHECK((2.0 * a)[3] == 2.0);
  CHECK((a - a)[0] == 0.0);
}

TEST_CASE("CSV round trip is bit exact") {
  const BallModel m(3, 0, 3);
  const GridFunction r = make_initial(m, initial::Random{11, -1e3, 1e3});
  std::vector<double> v(r.values().begin(), r.values().end());
  v[1] = 1e-310;
  v[2] = -0.0;
  v[3] = 1.0 / 3.0;
  const GridFunction u(m, v);
  std::stringstream ss;
  write_csv(ss, u);
  const GridFunction back = read_csv(ss);
  CHECK(back.model() == m);
  for (std::int64_t n = 0; n < m.order(); ++n) CHECK(std::signbit(back[n]) == std::signbit(u[n]));
  CHECK(std::equal(back.values().begin(), back.values().end(), u.values().begin()));
}

TEST_CASE("CSV layout") {
  const GridFunction u = GridFunction::constant(BallModel(2, 0, 1), 0.5);
  std::stringstream ss;
  write_csv(ss, u);
  CHECK(ss.str() == "# padic-grid p=2 N=0 M=1\nn,valuation,value\n0,inf,0.5\n1,0,0.5\n");
}

TEST_CASE("malformed CSV is rejected") {
  std::stringstream missing("# padic-grid p=2 N=0 M=1\nn,valuation,value\n0,inf,0.5\n");
  CHECK_THROWS_AS(read_csv(missing), DomainError);
  std::stringstream bad("# padic-grid p=2 N=0 M=1\nn,valuation,value\n0,inf,0.5\n1,0,abc\n");
  CHECK_THROWS_AS(read_csv(bad), DomainError);
  std::stringstream header("hello\n");
  CHECK_THROWS_AS(read_csv(header), DomainError);
}

TEST_CASE("JSON round trip is bit exact") {
  const GridFunction u = make_initial(BallModel(5, -1, 3), initial::Random{4, -1.0, 1.0});
  const GridFunction back = grid_from_json(nlohmann::json::parse(to_json(u).dump()));
  CHECK(back.model() == u.model());
  CHECK(std::equal(back.values().begin(), back.values().end(), u.values().begin()));
  CHECK_THROWS_AS(grid_from_json(nlohmann::json{{"p", 2}}), DomainError);
}
