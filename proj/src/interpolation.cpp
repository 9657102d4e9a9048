#include "wsl/interpolation.hpp"

#include <cmath>
#include <string>

namespace wsl {

namespace {

void require_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in [0, 1]");
}

bool antipodal(const Vector& x, const Vector& y) { return (x + y).norm() <= kAntipodalTolerance; }

double antipodal_plan_mass(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                           const TransportPlan& plan) {
  double mass = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (std::size_t j = 0; j < nu.size(); ++j) {
      const double pij = plan.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (pij > 0.0 && antipodal(mu.point(i), nu.point(j))) mass += pij;
    }
  }
  return mass;
}

}  // namespace

SpherePoint p_alpha(const SpherePoint& x, const SpherePoint& y, double alpha) {
  require_alpha(alpha);
  if (x.ambient_dim() != y.ambient_dim()) throw DimensionMismatch("p_alpha arguments");
  return project_to_sphere((1.0 - alpha) * x.coords() + alpha * y.coords());
}

DiscreteMeasure displacement_projection(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                        const TransportPlan& plan, double alpha) {
  require_alpha(alpha);
  if (!mu.on_sphere() || !nu.on_sphere()) throw NotOnSphere("interpolation needs measures on S^n");
  if (plan.matrix.rows() != static_cast<Eigen::Index>(mu.size()) ||
      plan.matrix.cols() != static_cast<Eigen::Index>(nu.size())) {
    throw DimensionMismatch("plan does not match the measures");
  }
  if (alpha == 0.5) {
    const double mass = antipodal_plan_mass(mu, nu, plan);
    if (mass > 0.0) throw AntipodalMass(mass);
  }

  std::vector<Vector> points;
  std::vector<double> weights;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (std::size_t j = 0; j < nu.size(); ++j) {
      const double pij = plan.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (pij <= 0.0) continue;
      points.push_back(
          project_to_sphere((1.0 - alpha) * mu.point(i) + alpha * nu.point(j)).coords());
      weights.push_back(pij);
    }
  }
  return DiscreteMeasure::normalized(std::move(points), std::move(weights));
}

TransportPlan product_plan(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  TransportPlan plan;
  plan.row_marginal = mu.weight_vector();
  plan.col_marginal = nu.weight_vector();
  plan.matrix = plan.row_marginal * plan.col_marginal.transpose();
  plan.cost = 0.0;
  return plan;
}

double q_alpha(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const DiscreteMeasure& rho,
               double alpha) {
  require_alpha(alpha);
  if (!mu.on_sphere() || !nu.on_sphere() || !rho.on_sphere()) {
    throw NotOnSphere("Q_alpha is defined for measures on S^n");
  }
  const double to_mu = solve_transport(mu, rho, chord_cost(mu, rho, 2.0)).cost;
  const double to_nu = solve_transport(nu, rho, chord_cost(nu, rho, 2.0)).cost;
  return (1.0 - alpha) * to_mu + alpha * to_nu;
}

InterpolationResult minimize_q(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double alpha) {
  require_alpha(alpha);
  InterpolationResult out;
  out.plan = solve_transport(mu, nu, c_alpha_cost(mu, nu, alpha));
  out.q_value = out.plan.cost;
  out.unique_hint = out.plan.is_unique_hint;
  if (alpha == 0.5) {
    out.antipodal_mass = antipodal_plan_mass(mu, nu, out.plan);
    out.degenerate = out.antipodal_mass > 0.0;
  }
  if (!out.degenerate) out.measure = displacement_projection(mu, nu, out.plan, alpha);
  return out;
}

SpherePoint invert_half_projection(const SpherePoint& w, const SpherePoint& north) {
  if (w.ambient_dim() != north.ambient_dim()) throw DimensionMismatch("hemisphere inversion");
  const double height = w.coords().dot(north.coords());
  if (!(height > 0.0)) {
    throw NotInUpperHemisphere("<w, N> = " + std::to_string(height) + " is not positive");
  }
  return project_to_sphere(2.0 * height * w.coords() - north.coords());
}

std::vector<SpherePoint> preimages_under_p_alpha(const SpherePoint& w, const SpherePoint& north,
                                                 double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in (0, 1]");
  if (w.ambient_dim() != north.ambient_dim()) throw DimensionMismatch("preimage arguments");

  // (1 - alpha) N + alpha u = c w with c > 0 and |u| = 1 gives
  // c^2 - 2 (1 - alpha) <w, N> c + (1 - 2 alpha) = 0.
  const double half_b = (1.0 - alpha) * w.coords().dot(north.coords());
  const double constant = 1.0 - 2.0 * alpha;
  double disc = half_b * half_b - constant;
  if (disc < 0.0) {
    if (disc < -1e-14) return {};
    disc = 0.0;
  }
  const double root = std::sqrt(disc);
  std::vector<double> scales;
  const double q = half_b >= 0.0 ? half_b + root : half_b - root;
  if (q != 0.0) {
    scales.push_back(q);
    scales.push_back(constant / q);
  }

  std::vector<SpherePoint> out;
  for (std::size_t r = 0; r < scales.size(); ++r) {
    const double c = scales[r];
    if (!(c > 1e-12)) continue;
    if (r == 1 && std::abs(c - scales[0]) <= 1e-12) continue;
    const Vector u = (c * w.coords() - (1.0 - alpha) * north.coords()) / alpha;
    if (u.norm() < kProjectionThreshold) continue;
    SpherePoint candidate = project_to_sphere(u);
    try {
      if ((p_alpha(north, candidate, alpha).coords() - w.coords()).norm() <= 1e-9) {
        out.push_back(std::move(candidate));
      }
    } catch (const DegenerateVector&) {
    }
  }
  return out;
}

}  // namespace wsl
