#pragma once

#include <optional>
#include <vector>

#include "wsl/exact_transport.hpp"
#include "wsl/sphere_measures.hpp"

namespace wsl {

/// Plan mass on pairs with |x + y| <= this counts as antipodal.
inline constexpr double kAntipodalTolerance = 1e-9;

/// Minimizer of the alpha-weighted mean squared error rho -> Q_alpha(rho).
struct InterpolationResult {
  /// Absent when the problem is degenerate.
  std::optional<DiscreteMeasure> measure;
  /// Optimal plan of mu and nu for the c_alpha cost.
  TransportPlan plan;
  /// Minimum value of Q_alpha, equal to the optimal c_alpha transport cost.
  double q_value = 0.0;
  /// alpha = 1/2 and the optimal plan puts mass on antipodal pairs.
  bool degenerate = false;
  double antipodal_mass = 0.0;
  bool unique_hint = true;
};

/// Normalized (1 - alpha) x + alpha y; DegenerateVector when that vector vanishes.
SpherePoint p_alpha(const SpherePoint& x, const SpherePoint& y, double alpha);

/// Push-forward of the plan by (x, y) -> p_alpha(x, y); atoms merged.
/// Throws AntipodalMass at alpha = 1/2 when the plan charges pairs (z, -z).
DiscreteMeasure displacement_projection(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                        const TransportPlan& plan, double alpha);

/// Product coupling mu (x) nu, the only coupling when either side is a Dirac mass.
TransportPlan product_plan(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// (1 - alpha) d^2(mu, rho) + alpha d^2(nu, rho) with the quadratic chord cost.
double q_alpha(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const DiscreteMeasure& rho,
               double alpha);

InterpolationResult minimize_q(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double alpha);

/// u = 2 <w, N> w - N, the unique u != -N with p_{1/2}(N, u) = w. Needs <w, N> > 0.
SpherePoint invert_half_projection(const SpherePoint& w, const SpherePoint& north);

/// All u with p_alpha(N, u) = w (0, 1 or 2 points), alpha in (0, 1].
std::vector<SpherePoint> preimages_under_p_alpha(const SpherePoint& w, const SpherePoint& north,
                                                 double alpha);

}  // namespace wsl
