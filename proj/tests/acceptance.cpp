// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "padic/ball_model.hpp"
#include "padic/fourier.hpp"
#include "padic/grid_function.hpp"
#include "padic/kernels.hpp"
#include "padic/linear_solver.hpp"
#include "padic/nonlinearity.hpp"
#include "padic/pme_solver.hpp"
#include "padic/reference.hpp"
#include "padic/vladimirov.hpp"

using namespace padic;

namespace {

struct Case {
  std::int64_t p;
  int n;
  int m;
  double alpha;
};

const std::vector<Case> spectral_cases{{2, 0, 6, 1.0}, {2, 1, 5, 0.5}, {3, 0, 4, 2.0}, {5, -1, 3, 1.5}};

// The series form carries e^{lambda t}; these keep lambda * 10 small enough for doubles.
const std::vector<Case> kernel_cases{{2, 0, 6, 1.0}, {2, 1, 5, 0.5}, {3, 0, 4, 2.0}, {5, 0, 3, 1.5}};

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += " [failed: " + what + "]";
    }
  }
  void note(const char* fmt, double x) {
    char buf[96];
    std::snprintf(buf, sizeof buf, fmt, x);
    detail += " ";
    detail += buf;
  }
};

double rel_inf(const GridFunction& a, const GridFunction& b) {
  const double scale = std::max(lp_norm(b, infinity_norm), 1e-300);
  return max_abs_difference(a, b) / scale;
}

// Closed-form multiset, built here from the level counts alone.
std::vector<double> spectrum_oracle(const Case& c) {
  const double p = static_cast<double>(c.p);
  std::vector<double> out{(p - 1.0) / (std::pow(p, c.alpha + 1.0) - 1.0) * std::pow(p, c.alpha * (1 - c.n))};
  for (int k = 1 - c.n; k <= c.m; ++k) {
    const long count = std::lround(std::pow(p, c.n + k - 1) * (p - 1.0));
    for (long i = 0; i < count; ++i) out.push_back(std::pow(p, c.alpha * k));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Outcome exact_spectrum() {
  Outcome o;
  double worst = 0.0;
  for (const Case& c : spectral_cases) {
    const BallModel model(c.p, c.n, c.m);
    const RowMatrix a = build_matrix(model, c.alpha);
    const std::vector<double> flat = reference::hypersingular_matrix(model, c.alpha);
    double entry = 0.0;
    const double big = a.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      for (Eigen::Index j = 0; j < a.cols(); ++j) {
        entry = std::max(entry, std::fabs(a(i, j) - flat[static_cast<std::size_t>(i * a.cols() + j)]));
      }
    }
    o.require(entry < 1e-13 * big, "matrix vs brute-force entries");
    const std::vector<double> got = symmetric_eigenvalues(a);
    const std::vector<double> want = spectrum_oracle(c);
    o.require(got.size() == want.size(), "spectrum size");
    for (std::size_t i = 0; i < std::min(got.size(), want.size()); ++i) worst = std::max(worst, std::fabs(got[i] - want[i]));
  }
  o.require(worst < 1e-9, "eigenvalue error");
  o.note("max|eig err|=%.3g", worst);

  const RowMatrix tiny = build_matrix(BallModel(2, 0, 1), 1.0);
  const double pin = std::max({std::fabs(tiny(0, 0) - 4.0 / 3.0), std::fabs(tiny(0, 1) + 2.0 / 3.0),
                               std::fabs(tiny(1, 0) + 2.0 / 3.0), std::fabs(tiny(1, 1) - 4.0 / 3.0)});
  const auto ev = symmetric_eigenvalues(tiny);
  o.require(pin < 1e-14, "(2,0,1,1) matrix pin");
  o.require(std::fabs(ev[0] - 2.0 / 3.0) < 1e-14 && std::fabs(ev[1] - 2.0) < 1e-14, "(2,0,1,1) eigenvalue pin");
  o.note("pin err=%.3g", pin);
  return o;
}

Outcome four_representations() {
  Outcome o;
  double worst = 0.0;
  for (const Case& c : spectral_cases) {
    const BallModel model(c.p, c.n, c.m);
    const VladimirovOperator op(model, c.alpha);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const GridFunction u = make_initial(model, initial::Random{seed * 7919 + 1, -1.0, 1.0});
      const GridFunction s = op.apply_spectral(u);
      const GridFunction h = op.apply_hypersingular(u);
      const GridFunction r = op.convolve_riesz(u);
      const GridFunction g = op.apply_global_restriction(u);
      for (const GridFunction* a : {&s, &h, &r, &g}) {
        for (const GridFunction* b : {&s, &h, &r, &g}) worst = std::max(worst, rel_inf(*a, *b));
      }
    }
  }
  o.require(worst < 1e-10, "pairwise disagreement");
  o.note("max rel disagreement=%.3g", worst);
  return o;
}

Outcome symbol_identity() {
  Outcome o;
  double worst = 0.0;
  double oracle = 0.0;
  bool zero_exact = true;
  for (const Case& c : spectral_cases) {
    const BallModel model(c.p, c.n, c.m);
    const double lambda = lambda_value(c.p, c.alpha, c.n);
    zero_exact = zero_exact && symbol_quadrature(model, c.alpha, 0) == 0.0;
    for (std::int64_t k = 1; k < model.order(); ++k) {
      const double target = std::pow(model.freq_abs(k), c.alpha);
      const double got = symbol_quadrature(model, c.alpha, k);
      worst = std::max(worst, std::fabs(got + lambda - target) / target);
      oracle = std::max(oracle, std::fabs(got - reference::symbol_by_coset_sum(model, c.alpha, k)) / target);
    }
  }
  o.require(worst < 1e-11, "P + lambda = |xi|^alpha");
  o.require(oracle < 1e-11, "coset character sum");
  o.require(zero_exact, "P(0) == 0");
  o.note("max rel err=%.3g", worst);
  o.note("vs coset sum=%.3g", oracle);
  return o;
}

Outcome kernel_consistency() {
  Outcome o;
  double series = 0.0;
  double mass = 0.0;
  double grid = 0.0;
  for (const Case& c : kernel_cases) {
    const KernelParams k{c.p, c.n, c.alpha};
    const BallModel model(c.p, c.n, c.m);
    for (double t : {0.1, 1.0, 10.0}) {
      for (int m = c.n; m >= c.n - 6; --m) {
        const RadialPoint x = RadialPoint::at_level(m);
        series = std::max(series, std::fabs(heat_kernel_ball(k, t, x) - heat_kernel_ball_via_global(k, t, x)));
      }
      const double total = radial_integral(k, [&](int m) { return heat_kernel_ball(k, t, RadialPoint::at_level(m)); });
      mass = std::max(mass, std::fabs(total - 1.0));
      const GridFunction spectral = ball_kernel_gridfunction(model, c.alpha, t);
      const GridFunction pointwise = ball_kernel_pointwise(model, c.alpha, t);
      grid = std::max(grid, rel_inf(spectral, pointwise));
    }
  }
  const double pin = heat_kernel_ball({2, 0, 1.0}, 1.0, RadialPoint::at_level(0));
  const double pin_err = std::fabs(pin - (1.0 - std::exp(2.0 / 3.0 - 2.0)));
  o.require(series < 1e-10, "c-series vs finite sum");
  o.require(mass < 1e-10, "unit mass");
  o.require(grid < 1e-10, "grid kernel spectral vs pointwise");
  o.require(pin_err < 1e-9 && std::fabs(pin - 0.7364) < 1e-4, "Z_N(1,|x|=1) pin");
  o.note("series=%.3g", series);
  o.note("mass=%.3g", mass);
  o.note("pin=%.9f", pin);
  return o;
}

Outcome semigroup_resolvent() {
  Outcome o;
  double ck = 0.0;
  double paths = 0.0;
  double laplace = 0.0;
  double constants = 0.0;
  double kmass = 0.0;
  for (const Case& c : spectral_cases) {
    const BallModel model(c.p, c.n, c.m);
    const GridFunction u = make_initial(model, initial::Random{42, 0.0, 1.0});
    for (auto path : {EvolutionPath::spectral, EvolutionPath::kernel}) {
      const GridFunction whole = evolve(u, c.alpha, 0.9, path);
      const GridFunction split = evolve(evolve(u, c.alpha, 0.4, path), c.alpha, 0.5, path);
      ck = std::max(ck, max_abs_difference(whole, split));
    }
    ck = std::max(ck, max_abs_difference(evolve(u, c.alpha, 0.9, EvolutionPath::kernel), evolve(u, c.alpha, 0.9)));
    for (double mu : {0.5, 1.0, 3.0}) {
      const GridFunction spectral = resolvent_spectral(u, c.alpha, mu);
      paths = std::max(paths, rel_inf(resolvent_apply(u, c.alpha, mu), spectral));
      const double cval = 1.7;
      const GridFunction one = GridFunction::constant(model, cval);
      constants = std::max(constants, max_abs_difference(resolvent_spectral(one, c.alpha, mu), GridFunction::constant(model, cval / mu)));
      const KernelParams k{c.p, c.n, c.alpha};
      kmass = std::max(kmass, std::fabs(radial_integral(k, [&](int m) { return green_kernel(k, mu, RadialPoint::at_level(m)); }, -80)));
    }
    laplace = std::max(laplace, rel_inf(resolvent_laplace(u, c.alpha, 1.0), resolvent_spectral(u, c.alpha, 1.0)));
  }
  const double pin = green_kernel({2, 0, 1.0}, 1.0, RadialPoint::at_level(0));
  o.require(ck < 1e-9, "Chapman-Kolmogorov");
  o.require(paths < 1e-10, "kernel vs spectral resolvent");
  o.require(laplace < 1e-6, "Laplace transform");
  o.require(constants == 0.0, "resolvent of constants");
  o.require(kmass < 1e-10, "integral of K_mu");
  o.require(std::fabs(pin + 3.0 / 7.0) < 1e-12, "K_1(|x|=1) pin");
  o.note("CK=%.3g", ck);
  o.note("paths=%.3g", paths);
  o.note("laplace=%.3g", laplace);
  o.note("intK=%.3g", kmass);
  o.note("K_1(1)=%.15f", pin);
  return o;
}

Outcome green_regimes() {
  Outcome o;
  // alpha = 2: continuity at the origin.
  {
    const KernelParams k{2, 0, 2.0};
    const GreenReport r = green_estimates_report(k, 1.0, -25, 0);
    const double series = green_kernel_series(k, 1.0, RadialPoint::origin());
    const double gap = std::fabs(r.extrapolated_limit - series);
    const double raw = std::fabs(r.rows.back().value - series);
    o.require(gap < 1e-8, "alpha=2 limit");
    o.note("a=2 |lim-K(0)|=%.3g", gap);
    o.note("raw gap at m=-25=%.3g", raw);
  }
  // alpha = 1: |K(p^m)| / max(1,|m|) bounded and settling.
  {
    const KernelParams k{2, 0, 1.0};
    std::vector<double> ratio;
    for (int m = 0; m >= -25; --m) ratio.push_back(std::fabs(green_kernel(k, 1.0, RadialPoint::at_level(m))) / std::max(1, -m));
    const double sup = *std::max_element(ratio.begin(), ratio.end());
    const double step = std::fabs(ratio.back() - ratio[ratio.size() - 2]);
    o.require(std::isfinite(sup) && sup < 10.0, "alpha=1 sup");
    o.require(step < 1e-2, "alpha=1 ratio stabilizes");
    o.note("a=1 sup=%.4g", sup);
    o.note("last step=%.3g", step);
  }
  // alpha = 0.5: |K(p^m)| p^{m(1-alpha)} bounded, successive ratios -> 1.
  {
    const KernelParams k{2, 0, 0.5};
    std::vector<double> w;
    for (int m = 0; m >= -25; --m) w.push_back(std::fabs(green_kernel(k, 1.0, RadialPoint::at_level(m))) * std::pow(2.0, m * 0.5));
    const double sup = *std::max_element(w.begin(), w.end());
    const double last = std::fabs(w.back() / w[w.size() - 2] - 1.0);
    o.require(std::isfinite(sup) && sup < 10.0, "alpha=0.5 sup");
    o.require(last < 1e-3, "alpha=0.5 ratio -> 1");
    o.note("a=0.5 sup=%.4g", sup);
    o.note("|ratio-1|=%.3g", last);
  }
  return o;
}

Outcome pme_properties() {
  Outcome o;
  const BallModel model(2, 0, 6);
  const double alpha = 1.0;
  const PmeSolver solver(model, alpha, Nonlinearity::power(2.0));
  const GridFunction bump = make_initial(model, initial::PositiveBump{0, -2});

  std::vector<double> times;
  for (int i = 1; i <= 20; ++i) times.push_back(0.05 * i);
  const std::vector<double> gammas{1.0, 2.0, 4.0, infinity_norm};
  const DecayReport decay = solver.lgamma_decay_suite(bump, times, gammas, 1.0 / 64.0, 1e-12);
  o.require(decay.violations.empty() && decay.norms.size() == 21, "L^gamma decay");

  // Pairs: one ordered (comparison), two arbitrary (contraction).
  const int steps = 64;
  double contraction = -HUGE_VAL;  // worst of ||u(t)-v(t)||_1 - ||u0-v0||_1
  double comparison = -HUGE_VAL;   // worst of u(t) - v(t) for u0 <= v0
  const GridFunction above = bump + make_initial(model, initial::Random{3, 0.0, 0.5});
  const std::vector<std::pair<GridFunction, GridFunction>> pairs{
      {bump, above},
      {make_initial(model, initial::Random{5, 0.1, 2.0}), make_initial(model, initial::Random{6, 0.1, 2.0})},
      {make_initial(model, initial::SubBallIndicator{1, -3}), make_initial(model, initial::Random{8, -1.0, 1.0})}};
  for (const auto& [a, b] : pairs) {
    const PmeEvolution ea = solver.evolve(a, 1.0, steps);
    const PmeEvolution eb = solver.evolve(b, 1.0, steps);
    contraction = std::max(contraction, lp_norm(ea.u - eb.u, 1.0) - lp_norm(a - b, 1.0));
  }
  {
    const PmeEvolution lo = solver.evolve(bump, 1.0, steps);
    const PmeEvolution hi = solver.evolve(above, 1.0, steps);
    for (std::size_t i = 0; i < lo.u.size(); ++i) comparison = std::max(comparison, lo.u[static_cast<std::int64_t>(i)] - hi.u[static_cast<std::int64_t>(i)]);
  }
  o.require(contraction <= 1e-10, "L1 contraction");
  o.require(comparison <= 1e-10, "comparison principle");

  // Mass identity, checked from the returned states independently of the solver's own defects.
  double defect = 0.0;
  {
    const double h = 1.0 / steps;
    const double lambda = lambda_value(2, alpha, 0);
    GridFunction u = bump;
    for (int j = 0; j < steps; ++j) {
      const GridFunction next = solver.implicit_step(u, h);
      std::vector<double> phi(next.size());
      for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = next[static_cast<std::int64_t>(i)] * next[static_cast<std::int64_t>(i)];
      defect = std::max(defect, std::fabs(integral(next) - integral(u) + h * lambda * integral(GridFunction(model, phi))));
      u = next;
    }
  }
  o.require(defect < 1e-12, "mass identity");

  const double lambda = lambda_value(2, alpha, 0);
  const GridFunction one = GridFunction::constant(model, 1.0);
  const GridFunction end = solver.evolve(one, 1.0, 2048).u;
  const double exact = 1.0 / (1.0 + lambda);
  const double ode = max_abs_difference(end, GridFunction::constant(model, exact)) / exact;
  o.require(ode < 1e-4, "scalar ODE");
  o.note("contraction=%.3g", contraction);
  o.note("comparison=%.3g", comparison);
  o.note("mass=%.3g", defect);
  o.note("ode rel err=%.3g", ode);
  return o;
}

Outcome crandall_liggett() {
  Outcome o;
  const BallModel model(2, 0, 6);
  const GridFunction bump = make_initial(model, initial::PositiveBump{0, -2});
  {
    const PmeSolver solver(model, 1.0, Nonlinearity::power(2.0));
    const CrandallLiggettReport r = solver.crandall_liggett(bump, 1.0, 1e-4, 8, 1024);
    bool monotone = r.l1_differences.size() >= 3;
    double worst = 0.0;
    for (double q : r.ratios) {
      monotone = monotone && q < 1.0;
      worst = std::max(worst, q);
    }
    o.require(monotone && worst <= 0.75, "doubling ratios");
    o.note("max ratio=%.4f", worst);
  }
  {
    const PmeSolver solver(model, 1.0, Nonlinearity::identity());
    const double t = 1.0;
    const double lambda = lambda_value(2, 1.0, 0);
    const GridFunction exact = std::exp(-lambda * t) * evolve(bump, 1.0, t);
    std::vector<double> err;
    for (int k = 16; k <= 512; k *= 2) err.push_back(lp_norm(solver.evolve(bump, t, k).u - exact, 1.0));
    double lo = 1e9;
    double hi = -1e9;
    for (std::size_t i = 1; i < err.size(); ++i) {
      const double order = std::log2(err[i - 1] / err[i]);
      lo = std::min(lo, order);
      hi = std::max(hi, order);
    }
    o.require(lo >= 0.8 && hi <= 1.2, "identity order");
    o.note("order in [%.4f,", lo);
    o.note("%.4f]", hi);
  }
  return o;
}

Outcome transform_layer() {
  Outcome o;
  double trip = 0.0;
  double plancherel = 0.0;
  double oracle = 0.0;
  const std::vector<std::tuple<std::int64_t, int, int>> big{{2, 0, 12}, {3, 2, 6}, {3, 0, 8}, {5, 1, 4}, {7, 0, 4}};
  for (const auto& [p, n, m] : big) {
    const BallModel model(p, n, m);
    const GridFunction u = make_initial(model, initial::Random{11, -1.0, 1.0});
    const SpectralFunction f = forward(u);
    trip = std::max(trip, max_abs_difference(u, inverse(f)));
    double energy = 0.0;
    for (const auto& z : f.coeffs) energy += std::norm(z);
    const double l2 = lp_norm(u, 2.0);
    plancherel = std::max(plancherel, std::fabs(energy * model.ball_measure() - l2 * l2) / (l2 * l2));
  }
  const std::vector<std::tuple<std::int64_t, int, int>> small{{2, 0, 8}, {2, 3, 5}, {3, 0, 5}, {5, -1, 4}, {7, 1, 1}, {13, 0, 2}};
  for (const auto& [p, n, m] : small) {
    const BallModel model(p, n, m);
    const GridFunction u = make_initial(model, initial::Random{12, -1.0, 1.0});
    const SpectralFunction f = forward(u);
    const auto direct = reference::dft_direct(u);
    double scale = 0.0;
    double diff = 0.0;
    for (std::size_t k = 0; k < direct.size(); ++k) {
      scale = std::max(scale, std::abs(direct[k]));
      diff = std::max(diff, std::abs(direct[k] - f.coeffs[k]));
    }
    oracle = std::max(oracle, diff / scale);
    const auto back = reference::idft_direct(f);
    for (std::size_t i = 0; i < back.size(); ++i) oracle = std::max(oracle, std::fabs(back[i].real() - u[static_cast<std::int64_t>(i)]));
  }
  o.require(trip < 1e-12, "round trip");
  o.require(plancherel < 1e-12, "Plancherel");
  o.require(oracle < 1e-12, "direct DFT");
  o.note("round trip=%.3g", trip);
  o.note("plancherel=%.3g", plancherel);
  o.note("vs direct=%.3g", oracle);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"exact spectrum", exact_spectrum},
      {"four-representation equivalence", four_representations},
      {"symbol identity", symbol_identity},
      {"heat kernel consistency", kernel_consistency},
      {"semigroup and resolvent", semigroup_resolvent},
      {"Green function regimes", green_regimes},
      {"porous medium properties", pme_properties},
      {"Crandall-Liggett convergence", crandall_liggett},
      {"transform layer", transform_layer},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string(" [exception: ") + e.what() + "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu %-34s %s %.2fs%s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
