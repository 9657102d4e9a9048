#include "wsl/potential.hpp"

#include <cmath>
#include <string>

#include "wsl/exact_transport.hpp"

namespace wsl {

namespace {

void require_sphere(const DiscreteMeasure& mu) {
  if (!mu.on_sphere()) throw NotOnSphere("measure is not supported on the sphere");
}

}  // namespace

void PotentialSamples::validate() const {
  if (sites.size() != values.size()) throw InvalidMeasure("sites and values differ in length");
  if (!(p >= 1.0)) throw InvalidArgument("order p must be >= 1");
  const double diameter = metric == PotentialMetric::Chord ? 2.0 : 1.0;
  const double upper = std::pow(diameter, p) * (1.0 + 1e-12);
  for (double v : values) {
    if (!std::isfinite(v) || v < -1e-12 || v > upper) {
      throw InvalidMeasure("potential value " + std::to_string(v) + " out of range");
    }
  }
}

PotentialSamples PotentialSamples::converted(PotentialMetric target) const {
  PotentialSamples out = *this;
  if (target == metric) return out;
  const double factor = std::pow(2.0, target == PotentialMetric::HalfChord ? -p : p);
  for (double& v : out.values) v *= factor;
  out.metric = target;
  return out;
}

double potential(const DiscreteMeasure& mu, const SpherePoint& x, double p) {
  if (x.ambient_dim() != mu.ambient_dim()) throw DimensionMismatch("site dimension");
  double total = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double d = (x.coords() - mu.point(i)).norm();
    total += mu.weight(i) * (p == 2.0 ? d * d : std::pow(d, p));
  }
  return total;
}

PotentialSamples sample_potential(const DiscreteMeasure& mu, const std::vector<SpherePoint>& sites,
                                  double p) {
  PotentialSamples out;
  out.sites = sites;
  out.p = p;
  out.generated = true;
  out.values.reserve(sites.size());
  for (const auto& x : sites) out.values.push_back(potential(mu, x, p));
  return out;
}

double dirac_distance_quadratic(const DiscreteMeasure& mu, const SpherePoint& x) {
  require_sphere(mu);
  if (x.ambient_dim() != mu.ambient_dim()) throw DimensionMismatch("site dimension");
  return 2.0 * (1.0 - x.coords().dot(barycenter(mu)));
}

double dispersion(const DiscreteMeasure& mu) {
  require_sphere(mu);
  return 1.0 - barycenter(mu).squaredNorm();
}

double orthogonality_defect(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  require_sphere(mu);
  require_sphere(nu);
  const double d2 = ambient_w2_squared(mu, nu);
  const Vector dm = barycenter(mu) - barycenter(nu);
  return dm.squaredNorm() + dispersion(mu) + dispersion(nu) - d2;
}

bool supports_orthogonal(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double threshold) {
  return std::abs(orthogonality_defect(mu, nu)) <= threshold;
}

}  // namespace wsl
