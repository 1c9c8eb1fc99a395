#pragma once

// Typed task parameters, parsed from the "params" block of an experiment config.

#include <vector>

#include "json.hpp"
#include "padic/cli.hpp"
#include "padic/grid_function.hpp"
#include "padic/linear_solver.hpp"
#include "padic/nonlinearity.hpp"

namespace padic::cli {

struct SpectrumParams {
  std::int64_t matrix_cap = 4096;
  bool dump_matrix = false;
};

struct HeatKernelParams {
  std::vector<double> times{0.1, 1.0, 10.0};
  int level_min = 0;  // defaults to N - 6
};

struct GreenParams {
  std::vector<double> mu{1.0};
  int level_min = -25;
};

struct LinearParams {
  std::vector<double> times{0.1, 0.5, 1.0, 2.0};
  InitialSpec initial = initial::Random{};
  EvolutionPath path = EvolutionPath::spectral;
  bool dump_state = false;
};

struct PmeParams {
  double t = 1.0;
  int steps = 0;  // 0: run the Crandall-Liggett doubling instead of a fixed k
  double cl_tol = 1e-4;
  int k_start = 8;
  int k_cap = 1 << 12;
  std::vector<double> times;  // output times for the norm table; default 20 evenly spaced
  std::vector<double> gammas{1.0, 2.0, 4.0, infinity_norm};
  double max_step = 1.0 / 64.0;
  Nonlinearity phi = Nonlinearity::power(2.0);
  InitialSpec initial = initial::PositiveBump{0, -1};
};

SpectrumParams parse_spectrum(const ExperimentConfig& c);
HeatKernelParams parse_heat_kernel(const ExperimentConfig& c);
GreenParams parse_green(const ExperimentConfig& c);
LinearParams parse_linear(const ExperimentConfig& c);
PmeParams parse_pme(const ExperimentConfig& c);

InitialSpec parse_initial(const nlohmann::json& j, std::uint64_t default_seed);
Nonlinearity parse_phi(const nlohmann::json& j);

}  // namespace padic::cli
