#pragma once

#include <functional>
#include <iosfwd>

#include <Eigen/Core>

#include "wsl/sphere_measures.hpp"

namespace wsl {

enum class CostKind { ChordPower, CAlpha, AmbientSquared, Custom };

/// Nonnegative finite cost matrix, rows indexed by atoms of the source measure.
class CostMatrix {
 public:
  CostMatrix(Eigen::MatrixXd entries, CostKind kind);

  const Eigen::MatrixXd& entries() const noexcept { return entries_; }
  CostKind kind() const noexcept { return kind_; }
  Eigen::Index rows() const noexcept { return entries_.rows(); }
  Eigen::Index cols() const noexcept { return entries_.cols(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

 private:
  Eigen::MatrixXd entries_;
  CostKind kind_;
};

struct TransportPlan {
  Eigen::MatrixXd matrix;
  Vector row_marginal;
  Vector col_marginal;
  double cost = 0.0;
  /// False when some nonbasic cell has reduced cost <= 1e-10, i.e. the optimum may not be unique.
  bool is_unique_hint = true;
  /// Number of simplex pivots performed.
  int pivots = 0;
};

/// entries(i, j) = |p_i - q_j|^p. Points off the sphere are accepted.
CostMatrix chord_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p);

/// Squared Euclidean cost in the ambient space R^{n+1}.
CostMatrix ambient_squared_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// c_alpha(x, y) = 2 (1 - |(1 - alpha) x + alpha y|); both measures must lie on S^n.
CostMatrix c_alpha_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double alpha);

CostMatrix custom_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                       const std::function<double(const Vector&, const Vector&)>& cost);

struct SolverOptions {
  double pivot_tolerance = 1e-12;
  double uniqueness_threshold = 1e-10;
  /// Consecutive non-improving pivots before switching to Bland's entering rule.
  int bland_after = 50;
  /// 0 selects an automatic cap from the problem size.
  long max_pivots = 0;
};

/// Exact transportation simplex on supply/demand vectors (both summing to the same total).
TransportPlan solve_transport(const Vector& supply, const Vector& demand, const CostMatrix& cost,
                              const SolverOptions& options = {});

TransportPlan solve_transport(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                              const CostMatrix& cost, const SolverOptions& options = {});

/// (min_pi <C_p, pi>)^(1/p) for the chord cost.
double wasserstein_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p);

/// Squared 2-Wasserstein distance in R^{n+1}; accepts off-sphere measures.
double ambient_w2_squared(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Dense CSV export: header `row,col,mass`, one line per positive cell.
void write_plan_csv(std::ostream& out, const TransportPlan& plan);

}  // namespace wsl
