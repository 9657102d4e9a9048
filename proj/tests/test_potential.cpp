#include <cmath>

#include "doctest.h"
#include "wsl/exact_transport.hpp"
#include "wsl/potential.hpp"
#include "wsl/sampling.hpp"

using namespace wsl;

namespace {
DiscreteMeasure antipodal_pair(const SpherePoint& z) {
  return DiscreteMeasure({z.coords(), -z.coords()}, {0.5, 0.5});
}
Vector v2(double a, double b) { return Vector{{a, b}}; }
}  // namespace

TEST_CASE("potential examples") {
  sampling::Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    const DiscreteMeasure mu = antipodal_pair(sampling::random_sphere_point(rng, 2));
    const SpherePoint x = sampling::random_sphere_point(rng, 2);
    CHECK(std::abs(potential(mu, x, 2.0) - 2.0) <= 1e-12);
  }
  const SpherePoint y = sampling::random_sphere_point(rng, 2);
  const SpherePoint x = sampling::random_sphere_point(rng, 2);
  for (double p : {1.0, 1.5, 2.0}) {
    CHECK(std::abs(potential(DiscreteMeasure::dirac(y), x, p) - std::pow((x.coords() - y.coords()).norm(), p)) <= 1e-14);
  }
}

TEST_CASE("potential equals the Dirac transport cost") {
  sampling::Rng rng(2);
  const DiscreteMeasure mu = sampling::random_measure(rng, 2, 4);
  for (int k = 0; k < 20; ++k) {
    const SpherePoint x = sampling::random_sphere_point(rng, 2);
    for (double p : {1.0, 1.5, 2.0}) {
      const double d = wasserstein_distance(DiscreteMeasure::dirac(x), mu, p);
      CHECK(std::abs(potential(mu, x, p) - std::pow(d, p)) <= 1e-10);
    }
  }
}

TEST_CASE("potential bounds and the antipodal family") {
  sampling::Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    const DiscreteMeasure a = antipodal_pair(sampling::random_sphere_point(rng, 2));
    const DiscreteMeasure b = antipodal_pair(sampling::random_sphere_point(rng, 2));
    double spread = 0.0;
    for (int s = 0; s < 50; ++s) {
      const SpherePoint x = sampling::random_sphere_point(rng, 2);
      CHECK(std::abs(potential(a, x, 2.0) - potential(b, x, 2.0)) <= 1e-12);
      spread = std::max(spread, std::abs(potential(a, x, 1.0) - potential(b, x, 1.0)));
      for (double p : {1.0, 2.0, 3.0}) {
        const double t = potential(a, x, p);
        CHECK(t >= 0.0);
        CHECK(t <= std::pow(2.0, p));
      }
    }
    CHECK(spread > 1e-3);
  }
}

TEST_CASE("dirac_distance_quadratic") {
  const Vector x = v2(0.6, 0.8);
  CHECK(std::abs(dirac_distance_quadratic(DiscreteMeasure::dirac(x), SpherePoint(x))) <= 1e-15);
  sampling::Rng rng(4);
  const SpherePoint z = sampling::random_sphere_point(rng, 2);
  CHECK(dirac_distance_quadratic(antipodal_pair(z), sampling::random_sphere_point(rng, 2)) == doctest::Approx(2.0));
  for (int k = 0; k < 100; ++k) {
    const DiscreteMeasure mu = sampling::random_measure(rng, 1 + k % 3, 1 + k % 6);
    const SpherePoint s = sampling::random_sphere_point(rng, 1 + k % 3);
    // Direct sum of squared chords.
    double direct = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) direct += mu.weight(i) * (s.coords() - mu.point(i)).squaredNorm();
    CHECK(std::abs(dirac_distance_quadratic(mu, s) - direct) <= 1e-12);
    CHECK(std::abs(dirac_distance_quadratic(mu, s) - potential(mu, s, 2.0)) <= 1e-12);
  }
  CHECK_THROWS_AS(dirac_distance_quadratic(DiscreteMeasure::dirac(v2(0, 0.5)), SpherePoint(x)), NotOnSphere);
}

TEST_CASE("dispersion") {
  sampling::Rng rng(5);
  CHECK(std::abs(dispersion(DiscreteMeasure::dirac(v2(0, 1)))) <= 1e-15);
  CHECK(dispersion(antipodal_pair(sampling::random_sphere_point(rng, 2))) == doctest::Approx(1.0));
  for (int k = 0; k < 100; ++k) {
    const DiscreteMeasure mu = sampling::random_measure(rng, 1 + k % 3, 1 + k % 6);
    const Vector m = barycenter(mu);
    double expansion = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) expansion += mu.weight(i) * (mu.point(i) - m).squaredNorm();
    CHECK(std::abs(dispersion(mu) - expansion) <= 1e-12);
    CHECK(std::abs(dispersion(mu) - ambient_w2_squared(mu, DiscreteMeasure::dirac(m))) <= 1e-12);
  }
}

TEST_CASE("orthogonality defect examples") {
  const DiscreteMeasure ew({v2(1, 0), v2(-1, 0)}, {0.5, 0.5});
  const DiscreteMeasure n = DiscreteMeasure::dirac(v2(0, 1));
  CHECK(std::abs(orthogonality_defect(ew, n)) <= 1e-12);
  CHECK(supports_orthogonal(ew, n));
  CHECK(std::abs(orthogonality_defect(n, n)) <= 1e-12);

  // Lines through the origin meeting at angle 0.3.
  const double t = 0.3;
  const DiscreteMeasure tilted({v2(std::cos(t), std::sin(t)), v2(-std::cos(t), -std::sin(t))}, {0.5, 0.5});
  CHECK(orthogonality_defect(ew, tilted) > 1e-3);
  CHECK_FALSE(supports_orthogonal(ew, tilted));
  // Two vertical pairs offset along the axis they share: parallel, hence orthogonal affine spans.
  const DiscreteMeasure mirrored({v2(std::cos(t), std::sin(t)), v2(std::cos(t), -std::sin(t))}, {0.5, 0.5});
  CHECK(std::abs(orthogonality_defect(ew, mirrored)) <= 1e-12);
}

TEST_CASE("orthogonality defect is nonnegative") {
  sampling::Rng rng(6);
  for (int k = 0; k < 200; ++k) {
    const int n = 1 + k % 3;
    const DiscreteMeasure mu = sampling::random_measure(rng, n, 1 + k % 5);
    const DiscreteMeasure nu = sampling::random_measure(rng, n, 1 + (k + 1) % 5);
    CHECK(orthogonality_defect(mu, nu) >= -1e-9);
  }
}

TEST_CASE("sample validation and metric conversion") {
  PotentialSamples s;
  s.sites = {SpherePoint(v2(1, 0)), SpherePoint(v2(0, 1))};
  s.values = {4.0, 1.0};
  s.p = 2.0;
  CHECK_NOTHROW(s.validate());
  const PotentialSamples half = s.converted(PotentialMetric::HalfChord);
  CHECK(half.values[0] == doctest::Approx(1.0));
  CHECK(half.converted(PotentialMetric::Chord).values[1] == doctest::Approx(1.0));
  s.values[0] = 4.5;
  CHECK_THROWS_AS(s.validate(), InvalidMeasure);
}
