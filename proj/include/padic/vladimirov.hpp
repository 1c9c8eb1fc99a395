#pragma once

#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Core>

#include "padic/ball_model.hpp"
#include "padic/fourier.hpp"
#include "padic/grid_function.hpp"

namespace padic {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Eigenvalues of D^alpha_N over the dual-group frequencies: lambda at k = 0,
/// |xi_k|_p^alpha elsewhere.
struct SpectralMultiplier {
  BallModel model;
  double alpha;
  std::vector<double> eigenvalues;
};

/// integral over the sphere |y|_p = p^l of chi(y xi), where |xi|_p = p^{xi_level}.
double sphere_character_integral(std::int64_t p, int l, int xi_level);
/// integral over |y|_p = p^l of chi(y xi) for xi = 0, i.e. the sphere measure.
double sphere_measure(std::int64_t p, int l);

/// P_{N,alpha}(xi_k) evaluated by exact sphere-wise sums.
double symbol_quadrature(const BallModel& model, double alpha, std::int64_t k);

/// Builds the multiplier from |xi|^alpha and checks every level against
/// symbol_quadrature + lambda; throws ConsistencyError past 1e-10 relative.
SpectralMultiplier multiplier(const BallModel& model, double alpha);

enum class RieszOrder { plus_alpha, minus_alpha };

struct RieszDistribution {
  BallModel model;
  double alpha;
  RieszOrder order;
};

/// <f^{(N)}_{+-alpha}, phi> by finite sums over cosets. The +alpha branch is
/// undefined where 1 - p^{alpha-1} vanishes (alpha = 1) and throws there.
double riesz_pairing(const RieszDistribution& dist, const GridFunction& phi);

/// L^1 norms of D^alpha_N applied to successive refinements.
struct DomainReport {
  std::vector<int> resolutions;
  std::vector<double> l1_norms;
  double max_growth_ratio = 1.0;
  bool appears_bounded = true;
};

/// D^alpha_N on one model, in every representation.
class VladimirovOperator {
 public:
  VladimirovOperator(BallModel model, double alpha);

  const BallModel& model() const noexcept { return model_; }
  double alpha() const noexcept { return constants_.alpha; }
  const OperatorConstants& constants() const noexcept { return constants_; }
  const SpectralMultiplier& spectral_multiplier() const noexcept { return multiplier_; }
  /// Circulant weights w[j] = a_p p^{-M} |y_j|^{-alpha-1}, w[0] = 0.
  const std::vector<double>& coset_weights() const noexcept { return weights_; }

  /// inverse(m * forward(u)).
  GridFunction apply_spectral(const GridFunction& u) const;
  /// lambda u(x) + a_p integral_{B_N} |y|^{-alpha-1} [u(x-y) - u(x)] dy, as a circulant.
  GridFunction apply_hypersingular(const GridFunction& u) const;
  /// Hypersingular integral over all of Q_p applied to the zero extension of u,
  /// split into the |y| <= p^N part and the |y| > p^N tail.
  GridFunction apply_global_restriction(const GridFunction& u) const;
  /// x -> <f^{(N)}_{-alpha}, u(x - .)>.
  GridFunction convolve_riesz(const GridFunction& u) const;

  /// Dense S x S matrix of the hypersingular form.
  RowMatrix build_matrix(std::int64_t matrix_cap = 4096) const;

  /// The closed-form spectrum {lambda} U {p^{alpha k}} with multiplicities, sorted.
  std::vector<double> expected_spectrum() const;

 private:
  BallModel model_;
  OperatorConstants constants_;
  SpectralMultiplier multiplier_;
  std::vector<double> weights_;
  double weight_total_;
  std::shared_ptr<const FourierTransform> fourier_;
};

GridFunction apply_spectral(const GridFunction& u, double alpha);
GridFunction apply_hypersingular(const GridFunction& u, double alpha);
GridFunction apply_global_restriction(const GridFunction& u, double alpha);
GridFunction convolve_riesz(const GridFunction& u, double alpha);
RowMatrix build_matrix(const BallModel& model, double alpha, std::int64_t matrix_cap = 4096);

/// Sorted eigenvalues of a symmetric matrix.
std::vector<double> symmetric_eigenvalues(const RowMatrix& a);

/// Applies D^alpha_N to refine(u, l), l = 0..levels.
DomainReport domain_check(const GridFunction& u, double alpha, int levels);
/// Same for a radial profile u(x) = f(|x|_p) sampled afresh at each resolution;
/// the zero coset takes f(0).
DomainReport domain_check(const BallModel& model, double alpha, const std::function<double(double)>& profile, int levels);

}  // namespace padic
