#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "padic/errors.hpp"
#include "padic/fourier.hpp"
#include "padic/kernels.hpp"
#include "padic/linear_solver.hpp"
#include "padic/pme_solver.hpp"
#include "padic/serialization.hpp"
#include "padic/vladimirov.hpp"
#include "params.hpp"

namespace padic::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open " + path.string() + " for writing");
  return out;
}

// NaN and infinities are written as bare tokens in CSV and as strings in JSON.
json json_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return format_double(x);
}

void write_table(const ExperimentConfig& c, const std::string& stem, const Table& t) {
  if (c.format == OutputFormat::csv) {
    auto out = open_out(fs::path(c.out_dir) / (stem + ".csv"));
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_number(row[i]);
      out << '\n';
    }
  } else {
    json rows = json::array();
    for (const auto& row : t.rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = json_number(row[i]);
      rows.push_back(std::move(obj));
    }
    auto out = open_out(fs::path(c.out_dir) / (stem + ".json"));
    out << json{{"columns", t.columns}, {"rows", rows}}.dump(2) << '\n';
  }
}

void write_json(const ExperimentConfig& c, const std::string& name, const json& doc) {
  auto out = open_out(fs::path(c.out_dir) / name);
  out << doc.dump(2) << '\n';
}

void write_grid(const ExperimentConfig& c, const std::string& stem, const GridFunction& u) {
  if (c.format == OutputFormat::csv) {
    auto out = open_out(fs::path(c.out_dir) / (stem + ".csv"));
    write_csv(out, u);
  } else {
    write_json(c, stem + ".json", to_json(u));
  }
}

BallModel model_of(const ExperimentConfig& c) { return BallModel(c.p, c.ball_exponent, c.resolution); }

double tol_or(const ExperimentConfig& c, double fallback) { return c.tol.value_or(fallback); }

double level_abs(std::int64_t p, int m) { return std::pow(static_cast<double>(p), m); }

void run_spectrum(const ExperimentConfig& c, std::ostream& log) {
  const SpectrumParams s = parse_spectrum(c);
  const VladimirovOperator op(model_of(c), c.alpha);
  const RowMatrix a = op.build_matrix(s.matrix_cap);
  const std::vector<double> computed = symmetric_eigenvalues(a);
  const std::vector<double> expected = op.expected_spectrum();
  Table t{{"index", "eigenvalue", "expected", "abs_error"}, {}};
  double worst = 0.0;
  for (std::size_t i = 0; i < computed.size(); ++i) {
    const double err = std::fabs(computed[i] - expected[i]);
    worst = std::max(worst, err);
    t.rows.push_back({static_cast<double>(i), computed[i], expected[i], err});
  }
  write_table(c, "spectrum", t);
  if (s.dump_matrix) {
    Table m{{"row", "col", "value"}, {}};
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      for (Eigen::Index j = 0; j < a.cols(); ++j) m.rows.push_back({double(i), double(j), a(i, j)});
    }
    write_table(c, "matrix", m);
  }
  log << "spectrum: " << computed.size() << " eigenvalues, max abs error " << worst << '\n';
  if (worst > tol_or(c, 1e-9)) throw ConsistencyError("matrix spectrum disagrees with the closed form");
}

void run_heat_kernel(const ExperimentConfig& c, std::ostream& log) {
  const HeatKernelParams h = parse_heat_kernel(c);
  const KernelParams k{c.p, c.ball_exponent, c.alpha};
  const double tol = tol_or(c, 1e-10);
  Table t{{"t", "m", "abs_x", "z_ball", "z_series", "abs_diff"}, {}};
  Table mass{{"t", "integral", "abs_error"}, {}};
  double worst = 0.0;
  for (double time : h.times) {
    for (int m = c.ball_exponent; m >= h.level_min; --m) {
      const RadialPoint x = RadialPoint::at_level(m);
      const double direct = heat_kernel_ball(k, time, x);
      const double series = heat_kernel_ball_via_global(k, time, x);
      const double d = std::fabs(direct - series);
      worst = std::max(worst, d);
      t.rows.push_back({time, double(m), level_abs(c.p, m), direct, series, d});
    }
    const double total = radial_integral(k, [&](int m) { return heat_kernel_ball(k, time, RadialPoint::at_level(m)); });
    mass.rows.push_back({time, total, std::fabs(total - 1.0)});
    worst = std::max(worst, std::fabs(total - 1.0));
  }
  write_table(c, "heat_kernel", t);
  write_table(c, "heat_kernel_mass", mass);
  log << "heat-kernel: " << t.rows.size() << " points, max discrepancy " << worst << '\n';
  if (worst > tol) throw ConsistencyError("heat kernel representations disagree");
}

std::string regime_name(GreenRegime r) {
  switch (r) {
    case GreenRegime::subcritical:
      return "subcritical";
    case GreenRegime::critical:
      return "critical";
    case GreenRegime::supercritical:
      return "supercritical";
  }
  return "?";
}

void run_green(const ExperimentConfig& c, std::ostream& log) {
  const GreenParams g = parse_green(c);
  const KernelParams k{c.p, c.ball_exponent, c.alpha};
  Table t{{"mu", "m", "abs_x", "value", "weight", "ratio"}, {}};
  json summary = json::array();
  for (double mu : g.mu) {
    const GreenReport r = green_estimates_report(k, mu, g.level_min, c.ball_exponent);
    for (const auto& row : r.rows) t.rows.push_back({mu, double(row.level), row.abs_x, row.value, row.weight, row.ratio});
    json s{{"mu", mu}, {"regime", regime_name(r.regime)}, {"sup_ratio", json_number(r.sup_ratio)}};
    if (r.regime == GreenRegime::supercritical) {
      s["origin_value"] = json_number(r.origin_value);
      s["extrapolated_limit"] = json_number(r.extrapolated_limit);
    }
    summary.push_back(std::move(s));
    log << "green: mu=" << mu << " regime " << regime_name(r.regime) << " sup ratio " << r.sup_ratio << '\n';
  }
  write_table(c, "green", t);
  write_json(c, "green_summary.json", json{{"alpha", c.alpha}, {"p", c.p}, {"N", c.ball_exponent}, {"reports", summary}});
}

void run_linear(const ExperimentConfig& c, std::ostream& log) {
  const LinearParams l = parse_linear(c);
  const GridFunction u0 = make_initial(model_of(c), l.initial);
  const auto states = evolve_series(u0, c.alpha, l.times, l.path);
  Table t{{"t", "mass", "l1", "l2", "linf", "residual"}, {}};
  const auto row = [&](double time, const GridFunction& u, double res) {
    t.rows.push_back({time, integral(u), lp_norm(u, 1.0), lp_norm(u, 2.0), lp_norm(u, infinity_norm), res});
  };
  row(0.0, u0, std::nan(""));
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double time = l.times[i];
    row(time, states[i], time >= 1e-5 * std::fmax(time, 1.0) ? classical_residual(u0, c.alpha, time) : std::nan(""));
    if (l.dump_state) write_grid(c, "state_" + std::to_string(i + 1), states[i]);
  }
  write_table(c, "linear", t);
  const double drift = std::fabs(integral(states.back()) - integral(u0));
  log << "solve-linear: " << states.size() << " output times, mass drift " << drift << '\n';
  if (drift > tol_or(c, 1e-10) * std::fmax(1.0, std::fabs(integral(u0)))) {
    throw ConsistencyError("linear semigroup failed to conserve mass");
  }
}

void run_pme(const ExperimentConfig& c, std::ostream& log) {
  const PmeParams s = parse_pme(c);
  const BallModel model = model_of(c);
  const GridFunction u0 = make_initial(model, s.initial);
  const PmeSolver solver(model, c.alpha, s.phi);
  GridFunction final_state = u0;

  if (s.steps > 0) {
    const PmeEvolution ev = solver.evolve(u0, s.t, s.steps);
    Table t{{"step", "t", "mass", "mass_defect"}, {}};
    const double h = s.t / s.steps;
    for (std::size_t j = 0; j < ev.masses.size(); ++j) {
      t.rows.push_back({double(j), h * double(j), ev.masses[j], j == 0 ? 0.0 : ev.mass_defects[j - 1]});
    }
    write_table(c, "pme_mass", t);
    final_state = ev.u;
    log << "solve-pme: " << s.steps << " backward Euler steps of size " << h << '\n';
  } else {
    const CrandallLiggettReport r = solver.crandall_liggett(u0, s.t, s.cl_tol, s.k_start, s.k_cap);
    json diffs = json::array();
    for (std::size_t i = 0; i < r.step_counts.size(); ++i) {
      json d{{"k", r.step_counts[i]}, {"l1_difference", json_number(r.l1_differences[i])}};
      if (i > 0) d["ratio"] = json_number(r.ratios[i - 1]);
      diffs.push_back(std::move(d));
    }
    write_json(c, "convergence.json",
               json{{"t", s.t}, {"tol", s.cl_tol}, {"phi", s.phi.describe()}, {"converged", r.converged}, {"differences", diffs}});
    if (r.solution) final_state = *r.solution;
    log << "solve-pme: Crandall-Liggett doubling, " << r.step_counts.size() << " differences\n";
    if (!r.converged) {
      throw ConvergenceError("Crandall-Liggett differences did not reach the tolerance",
                             r.l1_differences.empty() ? 0.0 : r.l1_differences.back());
    }
  }
  write_grid(c, "pme_final", final_state);

  const auto mn = *std::min_element(u0.values().begin(), u0.values().end());
  if (mn > 0.0) {
    const DecayReport d = solver.lgamma_decay_suite(u0, s.times, s.gammas, s.max_step);
    Table t{{"t"}, {}};
    for (double g : d.gammas) t.columns.push_back(std::isinf(g) ? "norm_inf" : "norm_" + format_double(g));
    for (std::size_t i = 0; i < d.times.size(); ++i) {
      std::vector<double> row{d.times[i]};
      row.insert(row.end(), d.norms[i].begin(), d.norms[i].end());
      t.rows.push_back(std::move(row));
    }
    write_table(c, "pme_norms", t);
    if (!d.violations.empty()) throw ConsistencyError("an L^gamma norm increased along the evolution");
  } else {
    log << "solve-pme: initial data not strictly positive, norm table skipped\n";
  }
}

struct Check {
  std::string name;
  double value;
  double tolerance;
};

std::vector<Check> verify_checks(const ExperimentConfig& c, std::ostream& log) {
  const BallModel model = model_of(c);
  const VladimirovOperator op(model, c.alpha);
  const double lambda = op.constants().lambda;
  std::vector<Check> checks;
  const auto add = [&](std::string name, double value, double tol) {
    log << "verify: " << name << " = " << value << '\n';
    checks.push_back({std::move(name), value, tol});
  };

  if (model.order() <= 1024) {
    const std::vector<double> computed = symmetric_eigenvalues(op.build_matrix());
    const std::vector<double> expected = op.expected_spectrum();
    double worst = 0.0;
    for (std::size_t i = 0; i < computed.size(); ++i) worst = std::max(worst, std::fabs(computed[i] - expected[i]));
    add("spectrum_max_abs_error", worst, 1e-9);
  }

  double rep = 0.0;
  for (std::uint64_t i = 0; i < 8; ++i) {
    const GridFunction u = make_initial(model, initial::Random{c.seed + i, -1.0, 1.0});
    const GridFunction ref = op.apply_spectral(u);
    const double scale = std::max(lp_norm(ref, infinity_norm), 1e-300);
    rep = std::max(rep, max_abs_difference(ref, op.apply_hypersingular(u)) / scale);
    rep = std::max(rep, max_abs_difference(ref, op.apply_global_restriction(u)) / scale);
    if (model.order() <= 1024) rep = std::max(rep, max_abs_difference(ref, op.convolve_riesz(u)) / scale);
  }
  add("representation_rel_disagreement", rep, 1e-10);

  double sym = 0.0;
  for (std::int64_t k = 1; k < model.order(); ++k) {
    const double target = std::pow(model.freq_abs(k), c.alpha);
    sym = std::max(sym, std::fabs(symbol_quadrature(model, c.alpha, k) + lambda - target) / target);
  }
  add("symbol_rel_error", sym, 1e-11);

  {
    const GridFunction u = make_initial(model, initial::Random{c.seed, -1.0, 1.0});
    const auto ft = fourier_for(model);
    const SpectralFunction f = ft->forward(u);
    double energy = 0.0;
    for (const auto& z : f.coeffs) energy += std::norm(z);
    const double l2 = lp_norm(u, 2.0);
    const double plancherel = std::fabs(energy * model.ball_measure() - l2 * l2) / std::max(l2 * l2, 1e-300);
    add("fft_round_trip", max_abs_difference(u, ft->inverse(f)), 1e-12);
    add("plancherel_rel_error", plancherel, 1e-12);
  }

  const KernelParams k{c.p, c.ball_exponent, c.alpha};
  double zdiff = 0.0;
  double zmass = 0.0;
  for (double t : {0.1, 1.0, 10.0}) {
    for (int m = c.ball_exponent; m >= c.ball_exponent - 6; --m) {
      const RadialPoint x = RadialPoint::at_level(m);
      zdiff = std::max(zdiff, std::fabs(heat_kernel_ball(k, t, x) - heat_kernel_ball_via_global(k, t, x)));
    }
    zmass = std::max(zmass, std::fabs(radial_integral(k, [&](int m) {
                                        return heat_kernel_ball(k, t, RadialPoint::at_level(m));
                                      }) - 1.0));
  }
  add("heat_kernel_series_disagreement", zdiff, 1e-10);
  add("heat_kernel_mass_error", zmass, 1e-10);

  const double kmass = std::fabs(radial_integral(k, [&](int m) { return green_kernel(k, 1.0, RadialPoint::at_level(m)); }, -80));
  add("green_integral", kmass, 1e-10);

  {
    const GridFunction u = make_initial(model, initial::Random{c.seed + 100, 0.0, 1.0});
    const double scale = lp_norm(u, infinity_norm);
    add("resolvent_kernel_vs_spectral",
        max_abs_difference(resolvent_apply(u, c.alpha, 1.0), resolvent_spectral(u, c.alpha, 1.0)) / scale, 1e-10);
    const GridFunction one = GridFunction::constant(model, 2.5);
    add("resolvent_of_constant", max_abs_difference(resolvent_spectral(one, c.alpha, 2.0), GridFunction::constant(model, 1.25)),
        1e-14);
    const GridFunction a = evolve(u, c.alpha, 0.7);
    const GridFunction b = evolve(evolve(u, c.alpha, 0.3), c.alpha, 0.4);
    add("chapman_kolmogorov", max_abs_difference(a, b), 1e-9);
  }

  for (auto& ch : checks) {
    if (c.tol) ch.tolerance = std::max(ch.tolerance, *c.tol);
  }
  return checks;
}

void run_verify(const ExperimentConfig& c, std::ostream& log) {
  const std::vector<Check> checks = verify_checks(c, log);
  json rows = json::array();
  std::string failed;
  for (const auto& ch : checks) {
    const bool pass = ch.value <= ch.tolerance;
    rows.push_back({{"check", ch.name}, {"value", json_number(ch.value)}, {"tolerance", ch.tolerance}, {"pass", pass}});
    if (!pass) failed += (failed.empty() ? "" : ", ") + ch.name;
  }
  if (c.format == OutputFormat::csv) {
    auto out = open_out(fs::path(c.out_dir) / "verify.csv");
    out << "check,value,tolerance,pass\n";
    for (const auto& ch : checks) {
      out << ch.name << ',' << csv_number(ch.value) << ',' << csv_number(ch.tolerance) << ','
          << (ch.value <= ch.tolerance ? 1 : 0) << '\n';
    }
  } else {
    write_json(c, "verify.json", json{{"checks", rows}});
  }
  if (!failed.empty()) throw ConsistencyError("verification failed: " + failed);
}

void report(std::ostream& err, const std::string& kind, const std::string& message, int code,
            std::optional<double> residual = std::nullopt) {
  json j{{"error", kind}, {"message", message}, {"exit_code", code}};
  if (residual) j["residual"] = json_number(*residual);
  err << j.dump() << '\n';
}

}  // namespace

int run(const ExperimentConfig& config, std::ostream& log, std::ostream& err) {
  try {
    validate(config);
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec) throw DomainError("cannot create output directory " + config.out_dir + ": " + ec.message());
    switch (config.task) {
      case Task::spectrum:
        run_spectrum(config, log);
        break;
      case Task::heat_kernel:
        run_heat_kernel(config, log);
        break;
      case Task::green:
        run_green(config, log);
        break;
      case Task::solve_linear:
        run_linear(config, log);
        break;
      case Task::solve_pme:
        run_pme(config, log);
        break;
      case Task::verify:
        run_verify(config, log);
        break;
    }
    return exit_ok;
  } catch (const DomainError& e) {
    report(err, "validation", e.what(), exit_validation);
    return exit_validation;
  } catch (const ConsistencyError& e) {
    report(err, "consistency", e.what(), exit_consistency);
    return exit_consistency;
  } catch (const ConvergenceError& e) {
    report(err, "nonconvergence", e.what(), exit_nonconvergence, e.residual());
    return exit_nonconvergence;
  } catch (const nlohmann::json::exception& e) {
    report(err, "validation", e.what(), exit_validation);
    return exit_validation;
  }
}

}  // namespace padic::cli
