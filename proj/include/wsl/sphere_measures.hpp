#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "wsl/errors.hpp"

namespace wsl {

using Vector = Eigen::VectorXd;

inline constexpr double kSphereTolerance = 1e-12;
inline constexpr double kWeightSumTolerance = 1e-12;
inline constexpr double kAtomMergeTolerance = 1e-12;
inline constexpr double kProjectionThreshold = 1e-10;

/// Unit vector of R^{n+1}, n >= 1.
class SpherePoint {
 public:
  /// Throws NotOnSphere if | |v| - 1 | > 1e-12, InvalidMeasure if v has fewer than 2 entries.
  explicit SpherePoint(Vector coords);

  const Vector& coords() const noexcept { return coords_; }
  /// Intrinsic dimension n of the sphere S^n containing the point.
  int sphere_dim() const noexcept { return static_cast<int>(coords_.size()) - 1; }
  Eigen::Index ambient_dim() const noexcept { return coords_.size(); }

  SpherePoint antipode() const { return SpherePoint(-coords_); }
  double operator[](Eigen::Index i) const { return coords_[i]; }

 private:
  Vector coords_;
};

/// Point on S^1 at angle theta (radians).
SpherePoint circle_point(double theta);

/// Finitely supported probability measure with atoms in R^{n+1}.
///
/// Atoms closer than 1e-12 are merged (first occurrence keeps its position),
/// zero-weight atoms are dropped. Immutable after construction.
class DiscreteMeasure {
 public:
  /// Strict constructor: weights must be nonnegative and sum to 1 within 1e-12.
  DiscreteMeasure(std::vector<Vector> points, std::vector<double> weights);

  /// Renormalizes nonnegative weights with positive total before construction.
  static DiscreteMeasure normalized(std::vector<Vector> points, std::vector<double> weights);
  static DiscreteMeasure dirac(const Vector& point);
  static DiscreteMeasure dirac(const SpherePoint& point) { return dirac(point.coords()); }
  static DiscreteMeasure uniform(std::vector<Vector> points);

  std::size_t size() const noexcept { return points_.size(); }
  Eigen::Index ambient_dim() const noexcept { return dim_; }
  int sphere_dim() const noexcept { return static_cast<int>(dim_) - 1; }
  bool on_sphere() const noexcept { return on_sphere_; }

  const std::vector<Vector>& points() const noexcept { return points_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const Vector& point(std::size_t i) const { return points_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  Vector weight_vector() const;

 private:
  std::vector<Vector> points_;
  std::vector<double> weights_;
  Eigen::Index dim_ = 0;
  bool on_sphere_ = false;
};

/// Admissible translations of an equal-weight two-point measure on S^n:
/// the set {v : (t_v)_# mu is supported on S^n}. It is the sphere of radius |s|
/// about -s inside the subspace orthogonal to b - a, where s = (a + b) / 2.
struct TranslationSphereDescription {
  Vector center;
  double radius = 0.0;
  /// Orthonormal basis of the subspace (affspan{a, b} - s)^perp.
  std::vector<Vector> normal_directions;
  /// Unit vector along b - a.
  Vector axis;

  bool is_singleton() const noexcept { return radius == 0.0; }
  /// Membership test: v orthogonal to the axis and |v - center| = radius.
  bool contains(const Vector& v, double tol = 1e-9) const;
  /// Member obtained from a (not necessarily unit) direction in the normal subspace.
  Vector member_along(const Vector& direction) const;
};

/// v / |v|. Throws DegenerateVector when |v| < threshold.
SpherePoint project_to_sphere(const Vector& v, double threshold = kProjectionThreshold);

Vector barycenter(const DiscreteMeasure& mu);

DiscreteMeasure translate(const DiscreteMeasure& mu, const Vector& v);

using PointMap = std::function<Vector(const Vector&)>;

/// Image measure; atoms whose images coincide are merged by weight summation.
DiscreteMeasure push_forward(const DiscreteMeasure& mu, const PointMap& f);

bool is_supported_on_sphere(const DiscreteMeasure& mu, double tol);

/// Throws NotTwoPoint unless mu = (delta_a + delta_b) / 2 with a != b, NotOnSphere if off S^n.
TranslationSphereDescription admissible_translations(const DiscreteMeasure& mu);

/// True when both measures have the same atoms (matched within atom_tol) and
/// matching weights (within weight_tol).
bool approx_equal(const DiscreteMeasure& a, const DiscreteMeasure& b, double atom_tol = 1e-9,
                  double weight_tol = 1e-12);

}  // namespace wsl
