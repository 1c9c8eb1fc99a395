#pragma once

#include <optional>
#include <span>
#include <vector>

#include "padic/grid_function.hpp"
#include "padic/nonlinearity.hpp"
#include "padic/vladimirov.hpp"

namespace padic {

struct ImplicitStepConfig {
  double newton_tol = 1e-12;  // on ||F||_inf / (1 + ||g||_inf)
  int max_newton = 50;
  double damping = 0.5;       // backtracking factor
  int max_halvings = 30;
  bool fallback = true;       // relaxed fixed-point iteration when Newton fails
  int max_fallback_iterations = 200000;
  std::int64_t dense_cap = 4096;  // dense LU up to this order, preconditioned CG above
  int cg_max_iterations = 2000;
  double cg_tol = 1e-14;
};

struct StepReport {
  int newton_iterations = 0;
  int fallback_iterations = 0;
  bool used_fallback = false;
  double residual = 0.0;  // ||F||_inf / (1 + ||g||_inf)
};

struct PmeEvolution {
  GridFunction u;
  std::vector<StepReport> steps;
  std::vector<double> masses;         // integral of u_j, j = 0..k
  std::vector<double> mass_defects;   // int u_{j+1} - int u_j + h lambda int Phi(u_{j+1})
};

struct CrandallLiggettReport {
  std::vector<int> step_counts;      // k for each difference
  std::vector<double> l1_differences;  // ||u^{(2k)} - u^{(k)}||_1
  std::vector<double> ratios;        // successive difference ratios
  bool converged = false;
  std::optional<GridFunction> solution;
};

struct DecayReport {
  std::vector<double> times;
  std::vector<double> gammas;
  std::vector<std::vector<double>> norms;  // norms[i][g] at times[i]; row 0 is t = 0
  struct Violation {
    double gamma;
    double time;
    double excess;
  };
  std::vector<Violation> violations;
};

/// du/dt + D^alpha_N(Phi(u)) = 0 by backward-Euler resolvent steps.
class PmeSolver {
 public:
  PmeSolver(BallModel model, double alpha, Nonlinearity phi, ImplicitStepConfig config = {});

  const VladimirovOperator& op() const noexcept { return op_; }
  const Nonlinearity& phi() const noexcept { return phi_; }
  const ImplicitStepConfig& config() const noexcept { return config_; }

  /// F(v) = v + h D(Phi(v)) - g.
  GridFunction residual(const GridFunction& v, const GridFunction& g, double h) const;
  /// I + h D diag(Phi'(v)); needs the dense matrix.
  RowMatrix jacobian(const GridFunction& v, double h) const;

  /// Solves v + h D(Phi(v)) = g. Throws ConvergenceError when Newton and the fallback both fail.
  GridFunction implicit_step(const GridFunction& g, double h, StepReport* report = nullptr) const;

  /// k implicit steps of size t / k.
  PmeEvolution evolve(const GridFunction& u0, double t, int steps) const;

  /// Doubles k from k_start until ||u^{(2k)} - u^{(k)}||_1 < tol or k passes k_cap.
  CrandallLiggettReport crandall_liggett(const GridFunction& u0, double t, double tol, int k_start = 8,
                                         int k_cap = 1 << 16) const;

  /// L^gamma norms of the discrete solution at each output time; u0 must be positive.
  DecayReport lgamma_decay_suite(const GridFunction& u0, std::span<const double> times, std::span<const double> gammas,
                                 double max_step, double slack = 1e-12) const;

 private:
  std::vector<double> apply_operator(std::span<const double> w) const;
  bool newton(const GridFunction& g, double h, std::vector<double>& v, StepReport& rep) const;
  bool fixed_point(const GridFunction& g, double h, std::vector<double>& v, StepReport& rep) const;
  std::vector<double> solve_linearized(std::span<const double> v, std::span<const double> rhs, double h) const;

  BallModel model_;
  VladimirovOperator op_;
  Nonlinearity phi_;
  ImplicitStepConfig config_;
  std::optional<RowMatrix> dense_;
};

/// Convenience wrappers matching the solver methods.
GridFunction implicit_step(const GridFunction& g, double h, double alpha, const Nonlinearity& phi);
GridFunction evolve_pme(const GridFunction& u0, double t, int steps, double alpha, const Nonlinearity& phi);

}  // namespace padic
