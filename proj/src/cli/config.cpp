#include <cmath>
#include <set>
#include <string>

#include "padic/ball_model.hpp"
#include "padic/errors.hpp"
#include "params.hpp"

namespace padic::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw DomainError(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key)) throw DomainError("unknown key '" + key + "' in " + where);
  }
}

template <class T>
T get_or(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw DomainError(std::string("key '") + key + "' has the wrong type");
  }
}

double number_or_inf(const json& v) {
  if (v.is_string() && (v.get<std::string>() == "inf" || v.get<std::string>() == "infinity")) return infinity_norm;
  if (!v.is_number()) throw DomainError("expected a number or \"inf\"");
  return v.get<double>();
}

void require_increasing_positive(const std::vector<double>& xs, const char* what) {
  double last = 0.0;
  for (double x : xs) {
    if (!(x > last) || !std::isfinite(x)) {
      throw DomainError(std::string(what) + " must be positive and strictly increasing");
    }
    last = x;
  }
}

}  // namespace

Task parse_task(const std::string& name) {
  if (name == "spectrum") return Task::spectrum;
  if (name == "heat-kernel") return Task::heat_kernel;
  if (name == "green") return Task::green;
  if (name == "solve-linear") return Task::solve_linear;
  if (name == "solve-pme") return Task::solve_pme;
  if (name == "verify") return Task::verify;
  throw DomainError("unknown task '" + name + "'");
}

std::string task_name(Task task) {
  switch (task) {
    case Task::spectrum:
      return "spectrum";
    case Task::heat_kernel:
      return "heat-kernel";
    case Task::green:
      return "green";
    case Task::solve_linear:
      return "solve-linear";
    case Task::solve_pme:
      return "solve-pme";
    case Task::verify:
      return "verify";
  }
  return "?";
}

ExperimentConfig parse_config(const json& doc) {
  reject_unknown(doc, {"task", "model", "operator", "params", "output", "seed", "tol"}, "config");
  ExperimentConfig c;
  if (doc.contains("task")) c.task = parse_task(get_or<std::string>(doc, "task", ""));
  if (doc.contains("model")) {
    const json& m = doc.at("model");
    reject_unknown(m, {"p", "N", "M"}, "model");
    c.p = get_or<std::int64_t>(m, "p", c.p);
    c.ball_exponent = get_or<int>(m, "N", c.ball_exponent);
    c.resolution = get_or<int>(m, "M", c.resolution);
  }
  if (doc.contains("operator")) {
    const json& o = doc.at("operator");
    reject_unknown(o, {"alpha"}, "operator");
    c.alpha = get_or<double>(o, "alpha", c.alpha);
  }
  if (doc.contains("params")) {
    c.params = doc.at("params");
    if (!c.params.is_object()) throw DomainError("params must be a JSON object");
  }
  if (doc.contains("output")) {
    const json& o = doc.at("output");
    reject_unknown(o, {"directory", "format"}, "output");
    c.out_dir = get_or<std::string>(o, "directory", c.out_dir);
    const std::string fmt = get_or<std::string>(o, "format", "csv");
    if (fmt == "csv") {
      c.format = OutputFormat::csv;
    } else if (fmt == "json") {
      c.format = OutputFormat::json;
    } else {
      throw DomainError("output format must be csv or json");
    }
  }
  c.seed = get_or<std::uint64_t>(doc, "seed", c.seed);
  if (doc.contains("tol")) c.tol = get_or<double>(doc, "tol", 0.0);
  validate(c);
  return c;
}

SpectrumParams parse_spectrum(const ExperimentConfig& c) {
  reject_unknown(c.params, {"matrix_cap", "dump_matrix"}, "spectrum params");
  SpectrumParams s;
  s.matrix_cap = get_or<std::int64_t>(c.params, "matrix_cap", s.matrix_cap);
  s.dump_matrix = get_or<bool>(c.params, "dump_matrix", s.dump_matrix);
  return s;
}

HeatKernelParams parse_heat_kernel(const ExperimentConfig& c) {
  reject_unknown(c.params, {"times", "level_min"}, "heat-kernel params");
  HeatKernelParams h;
  h.times = get_or<std::vector<double>>(c.params, "times", h.times);
  h.level_min = get_or<int>(c.params, "level_min", c.ball_exponent - 6);
  require_increasing_positive(h.times, "times");
  if (h.level_min > c.ball_exponent) throw DomainError("level_min must not exceed N");
  return h;
}

GreenParams parse_green(const ExperimentConfig& c) {
  reject_unknown(c.params, {"mu", "level_min"}, "green params");
  GreenParams g;
  g.mu = get_or<std::vector<double>>(c.params, "mu", g.mu);
  g.level_min = get_or<int>(c.params, "level_min", g.level_min);
  for (double mu : g.mu) {
    if (!(mu > 0.0)) throw DomainError("every mu must be positive");
  }
  if (g.level_min > c.ball_exponent) throw DomainError("level_min must not exceed N");
  return g;
}

InitialSpec parse_initial(const json& j, std::uint64_t default_seed) {
  reject_unknown(j, {"kind", "value", "center", "radius", "seed", "low", "high"}, "initial");
  const std::string kind = get_or<std::string>(j, "kind", "");
  if (kind == "constant") {
    reject_unknown(j, {"kind", "value"}, "constant initial data");
    return initial::Constant{get_or<double>(j, "value", 1.0)};
  }
  if (kind == "indicator" || kind == "bump") {
    reject_unknown(j, {"kind", "center", "radius"}, kind + " initial data");
    const auto center = get_or<std::int64_t>(j, "center", 0);
    const int radius = get_or<int>(j, "radius", 0);
    if (kind == "indicator") return initial::SubBallIndicator{center, radius};
    return initial::PositiveBump{center, radius};
  }
  if (kind == "random") {
    reject_unknown(j, {"kind", "seed", "low", "high"}, "random initial data");
    return initial::Random{get_or<std::uint64_t>(j, "seed", default_seed), get_or<double>(j, "low", 0.0),
                           get_or<double>(j, "high", 1.0)};
  }
  throw DomainError("initial kind must be constant, indicator, bump or random");
}

Nonlinearity parse_phi(const json& j) {
  reject_unknown(j, {"kind", "exponent", "x", "y"}, "phi");
  const std::string kind = get_or<std::string>(j, "kind", "");
  if (kind == "identity") return Nonlinearity::identity();
  if (kind == "power") return Nonlinearity::power(get_or<double>(j, "exponent", 2.0));
  if (kind == "table") {
    return Nonlinearity::piecewise_linear(get_or<std::vector<double>>(j, "x", {}), get_or<std::vector<double>>(j, "y", {}));
  }
  throw DomainError("phi kind must be identity, power or table");
}

LinearParams parse_linear(const ExperimentConfig& c) {
  reject_unknown(c.params, {"times", "initial", "path", "dump_state"}, "solve-linear params");
  LinearParams l;
  l.initial = initial::Random{c.seed, 0.0, 1.0};
  l.times = get_or<std::vector<double>>(c.params, "times", l.times);
  require_increasing_positive(l.times, "times");
  if (c.params.contains("initial")) l.initial = parse_initial(c.params.at("initial"), c.seed);
  const std::string path = get_or<std::string>(c.params, "path", "spectral");
  if (path == "spectral") {
    l.path = EvolutionPath::spectral;
  } else if (path == "kernel") {
    l.path = EvolutionPath::kernel;
  } else {
    throw DomainError("path must be spectral or kernel");
  }
  l.dump_state = get_or<bool>(c.params, "dump_state", l.dump_state);
  return l;
}

PmeParams parse_pme(const ExperimentConfig& c) {
  reject_unknown(c.params, {"t", "steps", "cl_tol", "k_start", "k_cap", "times", "gammas", "max_step", "phi", "initial"},
                 "solve-pme params");
  PmeParams s;
  s.t = get_or<double>(c.params, "t", s.t);
  s.steps = get_or<int>(c.params, "steps", s.steps);
  s.cl_tol = get_or<double>(c.params, "cl_tol", c.tol.value_or(s.cl_tol));
  s.k_start = get_or<int>(c.params, "k_start", s.k_start);
  s.k_cap = get_or<int>(c.params, "k_cap", s.k_cap);
  s.max_step = get_or<double>(c.params, "max_step", s.max_step);
  if (!(s.t > 0.0)) throw DomainError("t must be positive");
  if (s.steps < 0) throw DomainError("steps must be nonnegative");
  if (!(s.cl_tol > 0.0) || !(s.max_step > 0.0)) throw DomainError("cl_tol and max_step must be positive");
  if (s.k_start < 1 || s.k_cap < s.k_start) throw DomainError("need 1 <= k_start <= k_cap");
  if (c.params.contains("times")) {
    s.times = c.params.at("times").get<std::vector<double>>();
  } else {
    for (int i = 1; i <= 20; ++i) s.times.push_back(s.t * i / 20.0);
  }
  require_increasing_positive(s.times, "times");
  if (c.params.contains("gammas")) {
    s.gammas.clear();
    for (const auto& g : c.params.at("gammas")) s.gammas.push_back(number_or_inf(g));
  }
  for (double g : s.gammas) {
    if (!(g >= 1.0)) throw DomainError("every gamma must be >= 1");
  }
  if (c.params.contains("phi")) s.phi = parse_phi(c.params.at("phi"));
  if (c.params.contains("initial")) s.initial = parse_initial(c.params.at("initial"), c.seed);
  return s;
}

void validate(const ExperimentConfig& c) {
  const BallModel model(c.p, c.ball_exponent, c.resolution);  // throws on a bad model
  if (!(c.alpha > 0.0) || !std::isfinite(c.alpha)) throw DomainError("alpha must be a positive real");
  if (c.tol && !(*c.tol > 0.0)) throw DomainError("tol must be positive");
  switch (c.task) {
    case Task::spectrum:
      if (model.order() > parse_spectrum(c).matrix_cap) throw DomainError("model order exceeds matrix_cap");
      break;
    case Task::heat_kernel:
      parse_heat_kernel(c);
      break;
    case Task::green:
      parse_green(c);
      break;
    case Task::solve_linear: {
      const LinearParams l = parse_linear(c);
      (void)make_initial(model, l.initial);
      break;
    }
    case Task::solve_pme: {
      const PmeParams s = parse_pme(c);
      (void)make_initial(model, s.initial);
      break;
    }
    case Task::verify:
      reject_unknown(c.params, {}, "verify params");
      break;
  }
}

}  // namespace padic::cli
