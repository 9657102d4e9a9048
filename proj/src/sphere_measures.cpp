#include "wsl/sphere_measures.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace wsl {

namespace {

bool unit_norm(const Vector& v, double tol) { return std::abs(v.norm() - 1.0) <= tol; }

}  // namespace

SpherePoint::SpherePoint(Vector coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) throw InvalidMeasure("sphere point needs at least 2 coordinates");
  if (!unit_norm(coords_, kSphereTolerance)) {
    throw NotOnSphere("point norm " + std::to_string(coords_.norm()) + " is not 1");
  }
}

SpherePoint circle_point(double theta) {
  Vector v(2);
  v << std::cos(theta), std::sin(theta);
  return SpherePoint(std::move(v));
}

DiscreteMeasure::DiscreteMeasure(std::vector<Vector> points, std::vector<double> weights) {
  if (points.empty()) throw InvalidMeasure("measure needs at least one atom");
  if (points.size() != weights.size()) {
    throw InvalidMeasure("points and weights differ in length");
  }
  dim_ = points.front().size();
  if (dim_ < 1) throw InvalidMeasure("points must have at least one coordinate");

  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim_) throw DimensionMismatch("atoms of differing dimension");
    if (!points[i].allFinite()) throw InvalidMeasure("non-finite atom coordinate");
    if (!std::isfinite(weights[i]) || weights[i] < 0.0) {
      throw InvalidMeasure("weights must be finite and nonnegative");
    }
    total += weights[i];
  }
  if (std::abs(total - 1.0) > kWeightSumTolerance) {
    throw InvalidMeasure("weights sum to " + std::to_string(total) + ", expected 1");
  }

  for (std::size_t i = 0; i < points.size(); ++i) {
    if (weights[i] == 0.0) continue;
    bool merged = false;
    for (std::size_t k = 0; k < points_.size(); ++k) {
      if ((points_[k] - points[i]).norm() <= kAtomMergeTolerance) {
        weights_[k] += weights[i];
        merged = true;
        break;
      }
    }
    if (!merged) {
      points_.push_back(std::move(points[i]));
      weights_.push_back(weights[i]);
    }
  }
  if (points_.empty()) throw InvalidMeasure("measure has no positive-weight atom");

  on_sphere_ = dim_ >= 2;
  for (const auto& p : points_) on_sphere_ = on_sphere_ && unit_norm(p, kSphereTolerance);
}

DiscreteMeasure DiscreteMeasure::normalized(std::vector<Vector> points,
                                            std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw InvalidMeasure("weights must be nonnegative");
    total += w;
  }
  if (!(total > 0.0)) throw InvalidMeasure("weights have zero total mass");
  for (double& w : weights) w /= total;
  return DiscreteMeasure(std::move(points), std::move(weights));
}

DiscreteMeasure DiscreteMeasure::dirac(const Vector& point) {
  return DiscreteMeasure({point}, {1.0});
}

DiscreteMeasure DiscreteMeasure::uniform(std::vector<Vector> points) {
  std::vector<double> w(points.size(), 1.0);
  return normalized(std::move(points), std::move(w));
}

Vector DiscreteMeasure::weight_vector() const {
  Vector w(static_cast<Eigen::Index>(weights_.size()));
  for (std::size_t i = 0; i < weights_.size(); ++i) w[static_cast<Eigen::Index>(i)] = weights_[i];
  return w;
}

bool TranslationSphereDescription::contains(const Vector& v, double tol) const {
  if (v.size() != center.size()) return false;
  if (is_singleton()) return v.norm() <= tol;
  return std::abs(v.dot(axis)) <= tol && std::abs((v - center).norm() - radius) <= tol;
}

Vector TranslationSphereDescription::member_along(const Vector& direction) const {
  if (is_singleton()) return Vector::Zero(center.size());
  Vector u = Vector::Zero(center.size());
  for (const auto& e : normal_directions) u += e.dot(direction) * e;
  const double norm = u.norm();
  if (norm < kProjectionThreshold) throw DegenerateVector(norm);
  return center + radius * u / norm;
}

SpherePoint project_to_sphere(const Vector& v, double threshold) {
  const double norm = v.norm();
  if (!(norm >= threshold)) throw DegenerateVector(norm);
  return SpherePoint(v / norm);
}

Vector barycenter(const DiscreteMeasure& mu) {
  Vector m = Vector::Zero(mu.ambient_dim());
  for (std::size_t i = 0; i < mu.size(); ++i) m += mu.weight(i) * mu.point(i);
  return m;
}

DiscreteMeasure translate(const DiscreteMeasure& mu, const Vector& v) {
  if (v.size() != mu.ambient_dim()) throw DimensionMismatch("translation vector dimension");
  std::vector<Vector> pts;
  pts.reserve(mu.size());
  for (const auto& p : mu.points()) pts.push_back(p + v);
  return DiscreteMeasure(std::move(pts), mu.weights());
}

DiscreteMeasure push_forward(const DiscreteMeasure& mu, const PointMap& f) {
  std::vector<Vector> pts;
  pts.reserve(mu.size());
  for (const auto& p : mu.points()) pts.push_back(f(p));
  // Summing already-normalized weights can drift by an ulp or two.
  return DiscreteMeasure::normalized(std::move(pts), mu.weights());
}

bool is_supported_on_sphere(const DiscreteMeasure& mu, double tol) {
  for (const auto& p : mu.points()) {
    if (!unit_norm(p, tol)) return false;
  }
  return true;
}

TranslationSphereDescription admissible_translations(const DiscreteMeasure& mu) {
  if (mu.size() != 2) {
    throw NotTwoPoint("expected 2 atoms, got " + std::to_string(mu.size()));
  }
  if (std::abs(mu.weight(0) - 0.5) > kWeightSumTolerance ||
      std::abs(mu.weight(1) - 0.5) > kWeightSumTolerance) {
    throw NotTwoPoint("two-point measure must have weights 1/2, 1/2");
  }
  if (!mu.on_sphere()) throw NotOnSphere("two-point measure must live on the sphere");

  const Vector& a = mu.point(0);
  const Vector& b = mu.point(1);
  const Eigen::Index d = mu.ambient_dim();
  const Vector s = 0.5 * (a + b);

  TranslationSphereDescription out;
  out.axis = (b - a).normalized();
  out.center = -s;
  out.radius = s.norm();
  if (out.radius <= kAtomMergeTolerance) {
    out.radius = 0.0;
    out.center = Vector::Zero(d);
  }

  // Gram-Schmidt of the standard basis against the axis.
  std::vector<Vector> basis{out.axis};
  for (Eigen::Index k = 0; k < d && static_cast<Eigen::Index>(basis.size()) < d; ++k) {
    Vector e = Vector::Unit(d, k);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) e -= e.dot(q) * q;
    }
    const double n = e.norm();
    if (n > 1e-8) basis.push_back(e / n);
  }
  out.normal_directions.assign(basis.begin() + 1, basis.end());
  return out;
}

bool approx_equal(const DiscreteMeasure& a, const DiscreteMeasure& b, double atom_tol,
                  double weight_tol) {
  if (a.size() != b.size() || a.ambient_dim() != b.ambient_dim()) return false;
  std::vector<bool> used(b.size(), false);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t best = b.size();
    double best_dist = atom_tol;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double dist = (a.point(i) - b.point(j)).norm();
      if (dist <= best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    if (best == b.size()) return false;
    if (std::abs(a.weight(i) - b.weight(best)) > weight_tol) return false;
    used[best] = true;
  }
  return true;
}

}  // namespace wsl
