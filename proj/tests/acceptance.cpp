// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

#include <Eigen/QR>

#include "oracles.hpp"
#include "wsl/circle_fourier.hpp"
#include "wsl/exact_transport.hpp"
#include "wsl/interpolation.hpp"
#include "wsl/potential.hpp"
#include "wsl/rigidity_suite.hpp"
#include "wsl/sampling.hpp"

using namespace wsl;
using sampling::Rng;

namespace {

// Collects the sub-checks of one criterion and remembers the first failure.
class Criterion {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failure_.empty()) failure_ = what;
  }
  void at_most(double value, double bound, const std::string& what) {
    check(value <= bound, what + " (" + fmt(value) + " > " + fmt(bound) + ")");
    worst_ = std::max(worst_, value);
  }
  bool passed() const { return failure_.empty(); }
  std::string summary() const {
    return passed() ? std::to_string(checks_) + " checks, worst residual " + fmt(worst_) : "first failure: " + failure_;
  }
  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
  }

 private:
  int checks_ = 0;
  double worst_ = 0.0;
  std::string failure_;
};

Eigen::MatrixXd random_rotation(Rng& rng, Eigen::Index d) {
  Eigen::MatrixXd g(d, d);
  for (Eigen::Index c = 0; c < d; ++c) g.col(c) = sampling::random_gaussian(rng, d);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  return qr.householderQ();
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

DiscreteMeasure rotate(const DiscreteMeasure& mu, const Eigen::MatrixXd& r) {
  return push_forward(mu, [&](const Vector& x) { return Vector(r * x); });
}

DiscreteMeasure pair(const Vector& a, const Vector& b) { return DiscreteMeasure({a, b}, {0.5, 0.5}); }

// 1. Antipodal pairs have constant p = 2 potential, not so for p = 1.
void antipodal_counterexample(Criterion& c) {
  Rng rng(101);
  for (int k = 0; k < 20; ++k) {
    const SpherePoint z = sampling::random_sphere_point(rng, 2);
    const DiscreteMeasure mu = pair(z.coords(), -z.coords());
    double lo = 1e300, hi = -1e300;
    for (int s = 0; s < 50; ++s) {
      const SpherePoint x = sampling::random_sphere_point(rng, 2);
      c.at_most(std::abs(potential(mu, x, 2.0) - 2.0), 1e-12, "p = 2 potential equals 2");
      const double t = potential(mu, x, 1.0);
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
    c.check(hi - lo > 1e-3, "p = 1 potential is not constant");
  }
}

// 2. Sign pattern of the series coefficients and agreement with quadrature.
void fourier_signs(Criterion& c) {
  for (double p : {1.0, 1.25, 1.5, 1.75}) {
    for (int n = 0; n <= 20; ++n) {
      const double s = circle::kernel_coefficient_series(p, n);
      c.check(n == 0 ? s > 0.0 : s < 0.0, "sign of coefficient n = " + std::to_string(n));
      c.at_most(std::abs(s - circle::kernel_coefficient_quadrature(p, n, 1 << 17)), 1e-8, "series vs quadrature");
    }
  }
}

// 3. Rank collapse at p = 2.
void p2_degeneracy(Criterion& c) {
  for (int n : {8, 16, 32}) {
    const circle::CircleGrid grid(n);
    const Eigen::VectorXd sv = oracle::singular_values(circle::convolution_matrix(grid, 2.0));
    c.check(sv[2] > 1e-10, "third singular value is nonzero");
    c.at_most(sv[3], 1e-10, "fourth singular value");
    Rng rng(300 + static_cast<unsigned>(n));
    const PotentialSamples s = circle::potential_by_convolution(grid, sampling::random_weights(rng, static_cast<std::size_t>(n)), 2.0);
    try {
      circle::deconvolve_potential(s, 2.0);
      c.check(false, "deconvolution at p = 2 must raise SingularKernel");
    } catch (const SingularKernel& e) {
      c.check(e.kernel_rank() == n - 3, "kernel dimension N - 3");
    }
  }
}

// 4. Recovery of grid measures for p < 2.
void measure_recovery(Criterion& c) {
  Rng rng(401);
  const circle::CircleGrid grid(64);
  for (double p : {1.0, 1.5}) {
    for (int k = 0; k < 50; ++k) {
      std::vector<double> w = sampling::random_weights(rng, 64);
      const int keep = 1 + static_cast<int>(rng() % 64);
      for (std::size_t j = static_cast<std::size_t>(keep); j < w.size(); ++j) w[j] = 0.0;
      double t = 0.0;
      for (double x : w) t += x;
      for (double& x : w) x /= t;
      const std::vector<double> r = circle::deconvolve_potential(circle::potential_by_convolution(grid, w, p), p);
      double err = 0.0;
      for (std::size_t j = 0; j < w.size(); ++j) err = std::max(err, std::abs(r[j] - w[j]));
      c.at_most(err, 1e-6, "round-trip weight error");
    }
  }
}

// 5. Translation identity, and detection of translates both ways.
void translation_identity(Criterion& c) {
  const PropertyReport r = verify_translation_identity(50, 0);
  c.check(r.passed, "translation identity report: " + r.notes);
  c.at_most(r.residual, 1e-8, "translation identity residual");
  Rng rng(501);
  for (int k = 0; k < 50; ++k) {
    const DiscreteMeasure mu = sampling::random_measure(rng, 2, static_cast<std::size_t>(2 + k % 5));
    const Vector v = 0.7 * sampling::random_gaussian(rng, 3);
    c.at_most(std::abs(translate_detection_gap(mu, translate(mu, v))), 1e-8, "translate detected");
    const DiscreteMeasure nu = sampling::random_measure(rng, 2, static_cast<std::size_t>(2 + k % 5));
    c.check(translate_detection_gap(mu, nu) > 1e-8, "non-translate rejected");
  }
}

// 6. Barycentric formulas against the LP.
void barycentric(Criterion& c) {
  Rng rng(601);
  for (int k = 0; k < 100; ++k) {
    const int n = 1 + k % 3;
    const DiscreteMeasure mu = sampling::random_measure(rng, n, static_cast<std::size_t>(1 + k % 6));
    const SpherePoint x = sampling::random_sphere_point(rng, n);
    const Vector m = barycenter(mu);
    const DiscreteMeasure dx = DiscreteMeasure::dirac(x);
    const double lp = solve_transport(mu, dx, chord_cost(mu, dx, 2.0)).cost;
    c.at_most(std::abs(lp - 2.0 * (1.0 - x.coords().dot(m))), 1e-12, "d^2(mu, delta_x)");
    c.at_most(std::abs(ambient_w2_squared(mu, DiscreteMeasure::dirac(m)) - (1.0 - m.squaredNorm())), 1e-12, "dispersion");
  }
}

// 7. The minimizer of Q_alpha.
void q_minimizer(Criterion& c) {
  Rng rng(701);
  const std::vector<Vector> s1 = sampling::circle_nodes(720);
  const std::vector<Vector> s2 = sampling::icosphere(4);
  const double alphas[] = {0.3, 0.5, 0.7};
  for (int k = 0; k < 20; ++k) {
    const int n = 1 + k % 2;
    const double alpha = alphas[k % 3];
    const DiscreteMeasure mu = sampling::random_measure(rng, n, static_cast<std::size_t>(1 + k % 4));
    const DiscreteMeasure nu = sampling::random_measure(rng, n, static_cast<std::size_t>(1 + (k / 2) % 4));
    const InterpolationResult r = minimize_q(mu, nu, alpha);
    if (r.degenerate || !r.measure) {
      c.check(false, "random instance reported degenerate");
      continue;
    }
    const double q = q_alpha(mu, nu, *r.measure, alpha);
    c.at_most(std::abs(q - r.q_value), 1e-8, "Q at the minimizer vs c_alpha cost");
    for (int t = 0; t < 200; ++t) {
      const DiscreteMeasure rho = sampling::random_measure(rng, n, static_cast<std::size_t>(1 + t % 4));
      c.check(q <= q_alpha(mu, nu, rho, alpha) + 1e-12, "random candidate below the minimum");
    }
    const std::vector<Vector>& grid = n == 1 ? s1 : s2;
    if (mu.size() == 1 && nu.size() == 1) {
      // Every Dirac on the grid is a candidate.
      double best = 1e300;
      for (const auto& z : grid) {
        const double v = q_alpha(mu, nu, DiscreteMeasure::dirac(z), alpha);
        c.check(q <= v + 1e-12, "grid Dirac below the minimum");
        best = std::min(best, v);
      }
      c.at_most(best - q, 5e-3, "grid resolution gap");
    } else {
      // The minimizer snapped to the grid: never better, and close.
      std::vector<Vector> pts;
      for (const auto& a : r.measure->points()) {
        pts.push_back(*std::min_element(grid.begin(), grid.end(), [&](const Vector& u, const Vector& v) {
          return (u - a).squaredNorm() < (v - a).squaredNorm();
        }));
      }
      const double snapped = q_alpha(mu, nu, DiscreteMeasure::normalized(pts, r.measure->weights()), alpha);
      c.check(q <= snapped + 1e-12, "snapped candidate below the minimum");
      c.at_most(snapped - q, 5e-3, "grid resolution gap");
    }
  }
  for (int k = 0; k < 20; ++k) {
    const SpherePoint z = sampling::random_sphere_point(rng, 1 + k % 3);
    c.check(minimize_q(DiscreteMeasure::dirac(z), DiscreteMeasure::dirac(z.antipode()), 0.5).degenerate,
            "antipodal Dirac pair is degenerate");
  }
  const SpherePoint north = sampling::random_sphere_point(rng, 2);
  const DiscreteMeasure dn = DiscreteMeasure::dirac(north);
  const DiscreteMeasure ds = DiscreteMeasure::dirac(north.antipode());
  for (int t = 0; t < 100; ++t) {
    const DiscreteMeasure rho = sampling::random_measure(rng, 2, static_cast<std::size_t>(1 + t % 5));
    c.at_most(std::abs(q_alpha(dn, ds, rho, 0.5) - 2.0), 1e-10, "Q_1/2 constant for antipodal Diracs");
  }
}

// 8. Preimage counts of p_alpha(N, .) and the half-projection inverse.
void p_alpha_geometry(Criterion& c) {
  Rng rng(801);
  for (double alpha : {0.25, 0.5, 0.75}) {
    for (int k = 0; k < 100; ++k) {
      const SpherePoint north = sampling::random_sphere_point(rng, 1);
      const SpherePoint w = sampling::random_sphere_point(rng, 1);
      const std::size_t count = preimages_under_p_alpha(w, north, alpha).size();
      c.check(static_cast<int>(count) == oracle::preimage_count_sweep(w.coords(), north.coords(), alpha),
              "count matches the sweep");
      const double h = w.coords().dot(north.coords());
      std::size_t expected;
      if (alpha > 0.5) {
        expected = 1;
      } else if (alpha == 0.5) {
        expected = h > 0.0 ? 1 : 0;
      } else {
        const double reach = (1.0 - alpha) * h;
        expected = h > 0.0 && reach * reach > 1.0 - 2.0 * alpha ? 2 : 0;
      }
      c.check(count == expected, "trichotomy");
    }
  }
  for (int dim = 1; dim <= 3; ++dim) {
    for (int k = 0; k < 100; ++k) {
      const SpherePoint north = sampling::random_sphere_point(rng, dim);
      const SpherePoint w = sampling::random_hemisphere_point(rng, north, 1e-3);
      const SpherePoint back = p_alpha(north, invert_half_projection(w, north), 0.5);
      c.at_most((back.coords() - w.coords()).norm(), 1e-10, "half-projection round trip");
    }
  }
}

// 9. Bisector mass.
void bisector(Criterion& c) {
  Rng rng(901);
  for (int k = 0; k < 200; ++k) {
    const int n = 1 + k % 3;
    const SpherePoint x = sampling::random_sphere_point(rng, n);
    std::vector<Vector> pts;
    for (int a = 0; a < k % 3; ++a) {
      Vector g = sampling::random_gaussian(rng, n + 1);
      g -= g.dot(x.coords()) * x.coords();
      pts.push_back(g.normalized());
    }
    for (int a = 0; a < 1 + k % 4; ++a) pts.push_back(sampling::random_sphere_point(rng, n).coords());
    const DiscreteMeasure mu = DiscreteMeasure::normalized(pts, sampling::random_weights(rng, pts.size()));
    double inspected = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      if (std::abs((mu.point(i) - x.coords()).norm() - (mu.point(i) + x.coords()).norm()) <= 1e-10) inspected += mu.weight(i);
    }
    c.at_most(std::abs(bisector_mass(mu, x) - inspected), 1e-10, "bisector mass vs inspection");
    const BisectorScan scan = bisector_scan(mu, x);
    for (int s = 0; s <= 20; ++s) {
      const double alpha = s / 20.0;
      const DiscreteMeasure target = DiscreteMeasure::normalized({x.coords(), -x.coords()}, {alpha, 1.0 - alpha});
      const double lp = solve_transport(mu, target, chord_cost(mu, target, 2.0)).cost;
      c.at_most(std::abs(scan(alpha) - lp), 1e-8, "g^2 vs LP");
    }
  }
}

// 10. Orthogonality defect separates orthogonal from non-orthogonal supports.
void orthogonality(Criterion& c) {
  Rng rng(1001);
  for (int k = 0; k < 20; ++k) {
    const int n = 1 + k % 3;
    const Eigen::Index d = n + 1;
    // mu varies only in the first coordinate, nu only in the last ones; offsets are free.
    const double h = uniform(rng, -0.9, 0.9);
    Vector s = sampling::random_gaussian(rng, d - 1);
    s *= std::sqrt(1.0 - h * h) / s.norm();
    Vector a(d), b(d);
    a << h, s;
    b << -h, s;
    const DiscreteMeasure mu = pair(a, b);

    const double g = uniform(rng, -0.9, 0.9);
    std::vector<Vector> pts;
    for (int t = 0; t < 2 + k % 2; ++t) {
      Vector u = Vector::Zero(d);
      u[0] = g;
      Vector dir = sampling::random_gaussian(rng, d - 1);
      dir.normalize();
      for (Eigen::Index i = 1; i < d; ++i) u[i] = std::sqrt(1.0 - g * g) * dir[i - 1];
      pts.push_back(u);
    }
    const DiscreteMeasure nu = DiscreteMeasure::normalized(pts, sampling::random_weights(rng, pts.size()));
    const Eigen::MatrixXd r = random_rotation(rng, d);
    c.at_most(orthogonality_defect(rotate(mu, r), rotate(nu, r)), 1e-7, "orthogonal supports");
  }
  for (int k = 0; k < 20; ++k) {
    const int n = 1 + k % 3;
    const Eigen::Index d = n + 1;
    const double angle = uniform(rng, 0.3, 1.2);
    Vector u = Vector::Unit(d, 0);
    Vector v = std::cos(angle) * Vector::Unit(d, 0) + std::sin(angle) * Vector::Unit(d, 1);
    const Eigen::MatrixXd r = random_rotation(rng, d);
    const double defect = orthogonality_defect(pair(r * u, -(r * u)), pair(r * v, -(r * v)));
    c.check(defect > 1e-3, "non-orthogonal supports (defect " + Criterion::fmt(defect) + ")");
  }
}

// 11. Solver exactness on small problems.
void solver_exactness(Criterion& c) {
  Rng rng(0);
  for (int k = 0; k < 100; ++k) {
    const int n = 1 + k % 2;
    const DiscreteMeasure mu = sampling::random_measure(rng, n, static_cast<std::size_t>(1 + rng() % 3));
    const DiscreteMeasure nu = sampling::random_measure(rng, n, static_cast<std::size_t>(1 + rng() % 3));
    const CostMatrix cost = chord_cost(mu, nu, k % 3 == 0 ? 1.0 : 2.0);
    const double lp = solve_transport(mu, nu, cost).cost;
    const double best = oracle::vertex_enumeration_min(mu.weight_vector(), nu.weight_vector(), cost.entries());
    c.at_most(std::abs(lp - best), 1e-9, "LP vs vertex enumeration");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Criterion&)>>> criteria = {
      {"antipodal counterexample", antipodal_counterexample},
      {"Fourier sign pattern", fourier_signs},
      {"p = 2 degeneracy", p2_degeneracy},
      {"measure recovery for p < 2", measure_recovery},
      {"translation identity", translation_identity},
      {"barycentric formulas", barycentric},
      {"Q_alpha minimizer", q_minimizer},
      {"p_alpha geometry", p_alpha_geometry},
      {"bisector mass", bisector},
      {"orthogonality criterion", orthogonality},
      {"solver exactness", solver_exactness},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.check(false, std::string("exception: ") + e.what());
    }
    std::printf("[%s] %2zu %s: %s\n", c.passed() ? "PASS" : "FAIL", i + 1, criteria[i].first, c.summary().c_str());
    failed += c.passed() ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
