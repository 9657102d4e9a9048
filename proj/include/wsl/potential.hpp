#pragma once

#include <vector>

#include "wsl/sphere_measures.hpp"

namespace wsl {

/// Which ground metric the potential values are expressed in.
enum class PotentialMetric {
  /// |x - y|, the chord metric of R^{n+1}.
  Chord,
  /// |(z - w) / 2|, the circle normalization used by the Fourier kernel.
  HalfChord,
};

/// Potential values x -> d_{W_p}(delta_x, mu)^p sampled at a set of sites.
struct PotentialSamples {
  std::vector<SpherePoint> sites;
  std::vector<double> values;
  double p = 2.0;
  PotentialMetric metric = PotentialMetric::Chord;
  /// True when produced from a known measure (values then equal the exact potential).
  bool generated = false;

  /// Range check 0 <= value <= diameter^p; throws InvalidMeasure.
  void validate() const;
  /// Same samples re-expressed in the requested metric (factor 2^{+-p}).
  PotentialSamples converted(PotentialMetric target) const;
};

/// sum_i w_i |x - p_i|^p, i.e. the potential of mu at x.
double potential(const DiscreteMeasure& mu, const SpherePoint& x, double p);

PotentialSamples sample_potential(const DiscreteMeasure& mu, const std::vector<SpherePoint>& sites,
                                  double p);

/// 2 (1 - <x, m(mu)>) = d_{W_2}^2(mu, delta_x) for mu on the sphere.
double dirac_distance_quadratic(const DiscreteMeasure& mu, const SpherePoint& x);

/// 1 - |m(mu)|^2 = d_{W_2(R^{n+1})}^2(mu, delta_{m(mu)}) for mu on the sphere.
double dispersion(const DiscreteMeasure& mu);

/// |m(mu) - m(nu)|^2 + dispersion(mu) + dispersion(nu) - d^2(mu, nu), with d the
/// ambient quadratic Wasserstein distance. Equals 2 max_pi E<X - m(mu), Y - m(nu)>,
/// so it is nonnegative and vanishes iff the supports lie in orthogonal affine subspaces.
double orthogonality_defect(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

inline constexpr double kOrthogonalityThreshold = 1e-7;

bool supports_orthogonal(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                         double threshold = kOrthogonalityThreshold);

}  // namespace wsl
