#include "wsl/rigidity_suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include <Eigen/QR>

#include "wsl/exact_transport.hpp"
#include "wsl/interpolation.hpp"
#include "wsl/potential.hpp"
#include "wsl/sampling.hpp"

namespace wsl {

PropertyReport PropertyReport::make(std::string name, std::string digest, double residual,
                                    double tolerance, std::string notes) {
  PropertyReport r;
  r.name = std::move(name);
  r.inputs_digest = std::move(digest);
  r.residual = residual;
  r.tolerance = tolerance;
  r.passed = std::abs(residual) <= tolerance;
  r.notes = std::move(notes);
  return r;
}

// ---------------------------------------------------------------------------
// Digest

void InputDigest::feed(std::string_view bytes) {
  for (unsigned char c : bytes) {
    state_ ^= c;
    state_ *= 0x100000001b3ULL;
  }
}

InputDigest& InputDigest::add(std::string_view text) {
  feed(text);
  feed(";");
  return *this;
}

InputDigest& InputDigest::add(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return add(std::string_view(buf));
}

InputDigest& InputDigest::add(std::int64_t value) { return add(std::to_string(value)); }

InputDigest& InputDigest::add(const Vector& v) {
  feed("[");
  for (Eigen::Index i = 0; i < v.size(); ++i) add(v[i]);
  feed("]");
  return *this;
}

InputDigest& InputDigest::add(const DiscreteMeasure& mu) {
  std::vector<std::size_t> order(mu.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Vector& pa = mu.point(a);
    const Vector& pb = mu.point(b);
    return std::lexicographical_compare(pa.data(), pa.data() + pa.size(), pb.data(),
                                        pb.data() + pb.size());
  });
  feed("{");
  for (std::size_t i : order) {
    add(mu.point(i));
    add(mu.weight(i));
  }
  feed("}");
  return *this;
}

std::string InputDigest::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(state_));
  return buf;
}

// ---------------------------------------------------------------------------
// Bisector mass

double BisectorScan::operator()(double alpha) const {
  if (alpha <= breakpoints.front()) return values.front();
  for (std::size_t k = 1; k < breakpoints.size(); ++k) {
    if (alpha <= breakpoints[k]) {
      const double width = breakpoints[k] - breakpoints[k - 1];
      if (width <= 0.0) return values[k];
      const double t = (alpha - breakpoints[k - 1]) / width;
      return values[k - 1] + t * (values[k] - values[k - 1]);
    }
  }
  return values.back();
}

double BisectorScan::minimum() const { return (*this)(0.5 * (flat_lo + flat_hi)); }

BisectorScan bisector_scan(const DiscreteMeasure& mu, const SpherePoint& x) {
  if (x.ambient_dim() != mu.ambient_dim()) throw DimensionMismatch("bisector pole dimension");

  struct Atom {
    double weight;
    double slope;  // |y - x|^2 - |y + x|^2, zero on the bisector
  };
  std::vector<Atom> atoms;
  double base = 0.0;  // everything sent to -x
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double to_x = (mu.point(i) - x.coords()).norm();
    const double to_minus_x = (mu.point(i) + x.coords()).norm();
    const bool on_bisector = std::abs(to_x - to_minus_x) <= kBisectorTolerance;
    atoms.push_back({mu.weight(i), on_bisector ? 0.0 : to_x * to_x - to_minus_x * to_minus_x});
    base += mu.weight(i) * to_minus_x * to_minus_x;
  }
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& a, const Atom& b) { return a.slope < b.slope; });

  BisectorScan scan;
  scan.breakpoints.push_back(0.0);
  scan.values.push_back(base);
  double alpha = 0.0;
  double value = base;
  double zero_mass = 0.0;
  double negative_mass = 0.0;
  for (std::size_t k = 0; k < atoms.size();) {
    // Atoms sharing a slope form one linear piece.
    double mass = 0.0;
    const double slope = atoms[k].slope;
    for (; k < atoms.size() && atoms[k].slope == slope; ++k) mass += atoms[k].weight;
    alpha += mass;
    value += mass * slope;
    scan.breakpoints.push_back(alpha);
    scan.values.push_back(value);
    if (slope < 0.0) negative_mass += mass;
    if (slope == 0.0) zero_mass += mass;
  }
  scan.breakpoints.back() = 1.0;
  scan.flat_lo = std::clamp(negative_mass, 0.0, 1.0);
  scan.flat_hi = std::clamp(negative_mass + zero_mass, 0.0, 1.0);
  return scan;
}

double bisector_mass(const DiscreteMeasure& mu, const SpherePoint& x) {
  const BisectorScan scan = bisector_scan(mu, x);
  return scan.flat_hi - scan.flat_lo;
}

// ---------------------------------------------------------------------------
// Translation identity

double translation_identity_residual(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                     const Vector& v) {
  const double shifted = ambient_w2_squared(translate(mu, v), nu);
  const double plain = ambient_w2_squared(mu, nu);
  const double predicted = v.dot(v + 2.0 * barycenter(mu) - 2.0 * barycenter(nu));
  return std::abs(shifted - plain - predicted);
}

double translate_detection_gap(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  return std::sqrt(ambient_w2_squared(mu, nu)) - (barycenter(nu) - barycenter(mu)).norm();
}

namespace {

using sampling::Rng;

std::uint64_t step_seed(std::uint64_t seed, std::string_view name) {
  InputDigest d;
  d.add(static_cast<std::int64_t>(seed)).add(name);
  return std::stoull(d.hex(), nullptr, 16);
}

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Eigen::MatrixXd random_rotation(Rng& rng, Eigen::Index d) {
  Eigen::MatrixXd g(d, d);
  for (Eigen::Index i = 0; i < d; ++i) g.col(i) = sampling::random_gaussian(rng, d);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  return q;
}

// Ratio recorded for a failed boolean check; finite so reports stay serializable.
constexpr double kHardFailure = 1e300;

// Collects sub-check outcomes as ratios that must stay <= 1.
class CheckSet {
 public:
  void within(const char* label, double error, double tol) { record(label, std::abs(error) / tol, error); }
  /// Passes when value > threshold.
  void above(const char* label, double value, double threshold) {
    record(label, value > 0.0 ? std::min(threshold / value, kHardFailure) : kHardFailure, value);
  }
  void require(const char* label, bool ok) { record(label, ok ? 0.0 : kHardFailure, ok); }

  PropertyReport report(std::string name, const InputDigest& digest, std::string notes) const {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s; worst sub-check %s (raw %.3g); %d checks", notes.c_str(),
                  worst_label_.c_str(), worst_raw_, count_);
    return PropertyReport::make(std::move(name), digest.hex(), worst_, 1.0, buf);
  }

 private:
  void record(const char* label, double ratio, double raw) {
    ++count_;
    if (!(ratio <= kHardFailure)) ratio = kHardFailure;  // NaN or overflow
    if (ratio > worst_ || worst_label_.empty()) {
      worst_ = std::max(worst_, ratio);
      worst_label_ = label;
      worst_raw_ = raw;
    }
  }

  double worst_ = 0.0;
  std::string worst_label_;
  double worst_raw_ = 0.0;
  int count_ = 0;
};

DiscreteMeasure random_measure_range(Rng& rng, int n, int min_atoms, int max_atoms) {
  return sampling::random_measure(rng, n, static_cast<std::size_t>(uniform_int(rng, min_atoms, max_atoms)));
}

// S1: the diameter 2 of W_2(S^n) is attained only by antipodal Dirac pairs.
PropertyReport step_diameter(std::uint64_t seed) {
  const char* name = "S1_diameter_antipodal_diracs";
  Rng rng(step_seed(seed, name));
  InputDigest digest;
  CheckSet checks;

  std::vector<SpherePoint> net;
  for (int k = 0; k < 20; ++k) {
    SpherePoint x = sampling::random_sphere_point(rng, 2);
    net.push_back(x);
    net.push_back(x.antipode());
  }
  double max_distance = 0.0;
  for (std::size_t i = 0; i < net.size(); ++i) {
    digest.add(net[i].coords());
    for (std::size_t j = i + 1; j < net.size(); ++j) {
      const double d = wasserstein_distance(DiscreteMeasure::dirac(net[i]),
                                            DiscreteMeasure::dirac(net[j]), 2.0);
      max_distance = std::max(max_distance, d);
      const bool antipodes = (net[i].coords() + net[j].coords()).norm() <= kAntipodalTolerance;
      if (antipodes) {
        checks.within("antipodal Dirac distance = 2", d - 2.0, 1e-12);
      } else {
        checks.above("non-antipodal Diracs stay below 2", 2.0 - d, 1e-9);
      }
    }
  }
  checks.within("maximum over the Dirac net = 2", max_distance - 2.0, 1e-12);

  for (int k = 0; k < 40; ++k) {
    const int n = uniform_int(rng, 1, 3);
    const DiscreteMeasure mu = random_measure_range(rng, n, 2, 4);
    const DiscreteMeasure nu = random_measure_range(rng, n, 1, 4);
    digest.add(mu).add(nu);
    checks.above("non-Dirac pairs stay below 2", 2.0 - wasserstein_distance(mu, nu, 2.0), 1e-9);
  }
  return checks.report(name, digest, "780 Dirac pairs, 40 non-Dirac pairs");
}

// S2: d^2(mu, delta_x) = 2 (1 - <x, m(mu)>), so Dirac distances determine the barycenter.
PropertyReport step_barycenter(std::uint64_t seed) {
  const char* name = "S2_barycenter_formula";
  Rng rng(step_seed(seed, name));
  InputDigest digest;
  CheckSet checks;
  for (int k = 0; k < 100; ++k) {
    const int n = uniform_int(rng, 1, 3);
    const DiscreteMeasure mu = random_measure_range(rng, n, 1, 6);
    const SpherePoint x = sampling::random_sphere_point(rng, n);
    digest.add(mu).add(x.coords());
    const double lp = solve_transport(mu, DiscreteMeasure::dirac(x),
                                      chord_cost(mu, DiscreteMeasure::dirac(x), 2.0)).cost;
    const double closed = dirac_distance_quadratic(mu, x);
    checks.within("LP d^2(mu, delta_x) vs 2(1 - <x, m>)", lp - closed, 1e-12);
    checks.within("potential(mu, x, 2) vs 2(1 - <x, m>)", potential(mu, x, 2.0) - closed, 1e-12);

    Vector recovered(n + 1);
    for (int c = 0; c <= n; ++c) {
      const SpherePoint e(Vector::Unit(n + 1, c));
      recovered[c] = 1.0 - 0.5 * wasserstein_distance(mu, DiscreteMeasure::dirac(e), 2.0) *
                               wasserstein_distance(mu, DiscreteMeasure::dirac(e), 2.0);
    }
    checks.within("barycenter recovered from Dirac distances", (recovered - barycenter(mu)).norm(), 1e-12);
  }
  return checks.report(name, digest, "100 random (mu, x) on S^1..S^3");
}

// Measure on S^{d-1} supported in {offset + span(directions)} with offset orthogonal to them.
DiscreteMeasure measure_in_affine_slice(Rng& rng, const Eigen::MatrixXd& frame, int first, int count,
                                        int atoms) {
  const Eigen::Index d = frame.rows();
  // Offset lives in the complementary directions.
  Vector offset = Vector::Zero(d);
  const double offset_norm = uniform_real(rng, 0.0, 0.8);
  Vector coeffs = sampling::random_gaussian(rng, d - count);
  coeffs.normalize();
  for (Eigen::Index c = 0, idx = 0; c < d; ++c) {
    if (c >= first && c < first + count) continue;
    offset += offset_norm * coeffs[idx++] * frame.col(c);
  }
  const double radius = std::sqrt(1.0 - offset_norm * offset_norm);
  std::vector<Vector> pts;
  for (int a = 0; a < atoms; ++a) {
    Vector u = sampling::random_gaussian(rng, count);
    u.normalize();
    Vector p = offset;
    for (int c = 0; c < count; ++c) p += radius * u[c] * frame.col(first + c);
    pts.push_back(p / p.norm());
  }
  return DiscreteMeasure::normalized(std::move(pts), sampling::random_weights(rng, static_cast<std::size_t>(atoms)));
}

// S3: dispersion 1 - |m|^2 and the orthogonal-support characterization.
PropertyReport step_dispersion_orthogonality(std::uint64_t seed) {
  const char* name = "S3_dispersion_orthogonality";
  Rng rng(step_seed(seed, name));
  InputDigest digest;
  CheckSet checks;

  for (int k = 0; k < 100; ++k) {
    const DiscreteMeasure mu = random_measure_range(rng, uniform_int(rng, 1, 3), 1, 6);
    digest.add(mu);
    const double lp = ambient_w2_squared(mu, DiscreteMeasure::dirac(barycenter(mu)));
    checks.within("LP d^2(mu, delta_m) vs 1 - |m|^2", lp - dispersion(mu), 1e-12);
  }

  for (int k = 0; k < 20; ++k) {
    const int n = uniform_int(rng, 1, 3);
    const Eigen::Index d = n + 1;
    const Eigen::MatrixXd frame = random_rotation(rng, d);
    const int split = uniform_int(rng, 1, static_cast<int>(d) - 1);
    const int atoms_mu = split == 1 ? 2 : uniform_int(rng, 1, 3);
    const int atoms_nu = d - split == 1 ? 2 : uniform_int(rng, 1, 3);
    const DiscreteMeasure mu = measure_in_affine_slice(rng, frame, 0, split, atoms_mu);
    const DiscreteMeasure nu = measure_in_affine_slice(rng, frame, split, static_cast<int>(d) - split, atoms_nu);
    digest.add(mu).add(nu);
    checks.within("orthogonal supports have zero defect", orthogonality_defect(mu, nu),
                  kOrthogonalityThreshold);
  }

  for (int k = 0; k < 20; ++k) {
    const int n = uniform_int(rng, 1, 3);
    const DiscreteMeasure mu = random_measure_range(rng, n, 2, 4);
    const Eigen::MatrixXd small = [&] {
      // Rotation by a small angle in a random plane.
      const Eigen::MatrixXd frame = random_rotation(rng, n + 1);
      const double angle = uniform_real(rng, 0.05, 0.3);
      Eigen::MatrixXd r = Eigen::MatrixXd::Identity(n + 1, n + 1);
      r(0, 0) = std::cos(angle);
      r(0, 1) = -std::sin(angle);
      r(1, 0) = std::sin(angle);
      r(1, 1) = std::cos(angle);
      return Eigen::MatrixXd(frame * r * frame.transpose());
    }();
    const DiscreteMeasure nu = push_forward(mu, [&](const Vector& p) { return Vector(small * p); });
    digest.add(mu).add(nu);
    checks.above("non-orthogonal supports have positive defect", orthogonality_defect(mu, nu), 1e-3);
  }

  for (int k = 0; k < 200; ++k) {
    const int n = uniform_int(rng, 1, 3);
    const DiscreteMeasure mu = random_measure_range(rng, n, 1, 5);
    const DiscreteMeasure nu = random_measure_range(rng, n, 1, 5);
    digest.add(mu).add(nu);
    checks.above("defect nonnegative", orthogonality_defect(mu, nu) + 1e-9, 0.0);
  }
  return checks.report(name, digest, "100 dispersion, 20 orthogonal, 20 rotated, 200 random pairs");
}

// S4: translations keeping an equal-weight two-point measure on the sphere.
PropertyReport step_translations(std::uint64_t seed) {
  const char* name = "S4_admissible_translations";
  Rng rng(step_seed(seed, name));
  InputDigest digest;
  CheckSet checks;

  for (int k = 0; k < 20; ++k) {
    const int n = uniform_int(rng, 1, 3);
    const Eigen::Index d = n + 1;
    const Vector a = sampling::random_sphere_point(rng, n).coords();
    const Vector b = sampling::random_sphere_point(rng, n).coords();
    const DiscreteMeasure mu({a, b}, {0.5, 0.5});
    digest.add(mu);
    const TranslationSphereDescription desc = admissible_translations(mu);
    checks.within("radius = |center|", desc.radius - desc.center.norm(), 1e-12);
    for (int s = 0; s < 50; ++s) {
      const Vector v = desc.member_along(sampling::random_gaussian(rng, d));
      const DiscreteMeasure moved = translate(mu, v);
      double worst = 0.0;
      for (const auto& p : moved.points()) worst = std::max(worst, std::abs(p.norm() - 1.0));
      checks.within("members keep the support on the sphere", worst, 1e-9);

      Vector w = sampling::random_gaussian(rng, d);
      w *= v.norm() / w.norm();
      if (desc.contains(w, 1e-6)) continue;
      const DiscreteMeasure off = translate(mu, w);
      double dev = 0.0;
      for (const auto& p : off.points()) dev = std::max(dev, std::abs(p.norm() - 1.0));
      checks.above("non-members leave the sphere", dev, 1e-9);
    }
  }

  // Frame form: supp = {(cos t, 0.., sin t), (cos t, 0.., -sin t)} gives center -(cos t, 0..),
  // radius |cos t| and normal space {v_{n+1} = 0}, rotated along with the measure.
  for (int k = 0; k < 10; ++k) {
    const int n = uniform_int(rng, 1, 3);
    const Eigen::Index d = n + 1;
    const double t = k == 0 ? std::numbers::pi / 2 : uniform_real(rng, 0.05, std::numbers::pi / 2);
    Vector a = Vector::Zero(d);
    Vector b = Vector::Zero(d);
    a[0] = b[0] = std::cos(t);
    a[d - 1] = std::sin(t);
    b[d - 1] = -std::sin(t);
    const Eigen::MatrixXd rot = random_rotation(rng, d);
    const DiscreteMeasure mu({rot * a, rot * b}, {0.5, 0.5});
    digest.add(mu);
    const TranslationSphereDescription desc = admissible_translations(mu);
    Vector frame_center = Vector::Zero(d);
    frame_center[0] = -std::cos(t);
    if (k == 0) {
      checks.require("antipodal support gives the singleton {0}", desc.is_singleton());
      continue;
    }
    checks.within("center matches the frame form", (desc.center - rot * frame_center).norm(), 1e-12);
    checks.within("radius matches |cos t|", desc.radius - std::abs(std::cos(t)), 1e-12);
    for (const auto& e : desc.normal_directions) {
      checks.within("normal space is {v_{n+1} = 0}", (rot.transpose() * e)[d - 1], 1e-12);
    }
  }
  return checks.report(name, digest, "20 random supports x 50 samples, 10 frame comparisons");
}

// S5: mu(B(x, -x)) from the flat minimum of alpha -> d(mu, alpha delta_x + (1-alpha) delta_-x).
PropertyReport step_bisector(std::uint64_t seed) {
  const char* name = "S5_bisector_mass";
  Rng rng(step_seed(seed, name));
  InputDigest digest;
  CheckSet checks;

  for (int k = 0; k < 200; ++k) {
    const int n = uniform_int(rng, 1, 3);
    const SpherePoint x = sampling::random_sphere_point(rng, n);
    std::vector<Vector> pts;
    const int on_bisector = uniform_int(rng, 0, 2);
    const int generic = uniform_int(rng, on_bisector == 0 ? 1 : 0, 3);
    for (int a = 0; a < on_bisector; ++a) {
      Vector g = sampling::random_gaussian(rng, n + 1);
      g -= g.dot(x.coords()) * x.coords();
      pts.push_back(g.normalized());
    }
    for (int a = 0; a < generic; ++a) pts.push_back(sampling::random_sphere_point(rng, n).coords());
    const DiscreteMeasure mu = DiscreteMeasure::normalized(pts, sampling::random_weights(rng, pts.size()));
    digest.add(mu).add(x.coords());

    double inspected = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      if (std::abs((mu.point(i) - x.coords()).norm() - (mu.point(i) + x.coords()).norm()) <= kBisectorTolerance) {
        inspected += mu.weight(i);
      }
    }
    const BisectorScan scan = bisector_scan(mu, x);
    checks.within("flat width = inspected bisector mass", (scan.flat_hi - scan.flat_lo) - inspected, 1e-10);

    if (k % 10 == 0) {
      for (int s = 0; s <= 20; ++s) {
        const double alpha = s / 20.0;
        const DiscreteMeasure target =
            DiscreteMeasure::normalized({x.coords(), -x.coords()}, {alpha, 1.0 - alpha});
        const double lp = solve_transport(mu, target, chord_cost(mu, target, 2.0)).cost;
        checks.within("g(alpha)^2 vs LP", scan(alpha) - lp, 1e-8);
      }
    }
  }
  return checks.report(name, digest, "200 (mu, x) on S^1..S^3, 20 x 21 LP samples");
}

// S6: p_{1/2}(N, .) is injective off -N and inverted by u = 2 <w, N> w - N.
PropertyReport step_hemisphere(std::uint64_t seed) {
  const char* name = "S6_hemisphere_inversion";
  Rng rng(step_seed(seed, name));
  InputDigest digest;
  CheckSet checks;

  auto round_trip = [&](const DiscreteMeasure& mu, const SpherePoint& north) {
    const DiscreteMeasure pole = DiscreteMeasure::dirac(north);
    const DiscreteMeasure rho = displacement_projection(pole, mu, product_plan(pole, mu), 0.5);
    bool upper = true;
    for (const auto& p : rho.points()) upper = upper && p.dot(north.coords()) > 0.0;
    checks.require("projection lands in the open upper hemisphere", upper);
    const DiscreteMeasure kappa = push_forward(rho, [&](const Vector& w) {
      return Vector(invert_half_projection(project_to_sphere(w), north).coords());
    });
    checks.require("kappa reproduces mu", approx_equal(kappa, mu, 1e-9, 1e-12));

    const InterpolationResult best = minimize_q(pole, mu, 0.5);
    checks.require("Q_1/2 minimizer is the projection", best.measure && approx_equal(*best.measure, rho, 1e-9, 1e-12));
    checks.within("Q_1/2 at the projection = c_1/2 cost", q_alpha(pole, mu, rho, 0.5) - best.q_value, 1e-8);
  };

  {
    Vector e(2), north(2);
    e << 1.0, 0.0;
    north << 0.0, 1.0;
    const DiscreteMeasure mu({e, north}, {0.5, 0.5});
    digest.add(mu);
    round_trip(mu, SpherePoint(north));
  }
  for (int k = 0; k < 50; ++k) {
    const int n = uniform_int(rng, 1, 3);
    const SpherePoint north = sampling::random_sphere_point(rng, n);
    std::vector<Vector> pts;
    const int atoms = uniform_int(rng, 1, 5);
    while (static_cast<int>(pts.size()) < atoms) {
      const SpherePoint u = sampling::random_sphere_point(rng, n);
      if (u.coords().dot(north.coords()) > -0.9) pts.push_back(u.coords());
    }
    const DiscreteMeasure mu = DiscreteMeasure::normalized(pts, sampling::random_weights(rng, pts.size()));
    digest.add(mu).add(north.coords());
    round_trip(mu, north);
  }
  return checks.report(name, digest, "51 measures without mass at -N");
}

}  // namespace

PropertyReport verify_translation_identity(int trials, std::uint64_t seed) {
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  Rng rng(step_seed(seed, "translation_identity"));
  InputDigest digest;
  double identity = 0.0;
  double detection = 0.0;
  for (int t = 0; t < trials; ++t) {
    const DiscreteMeasure mu = random_measure_range(rng, 2, 1, 6);
    const DiscreteMeasure nu = random_measure_range(rng, 2, 1, 6);
    const Vector v = 0.5 * sampling::random_gaussian(rng, 3);
    const Vector w = 0.5 * sampling::random_gaussian(rng, 3);
    digest.add(mu).add(nu).add(v).add(w);
    identity = std::max(identity, translation_identity_residual(mu, nu, v));
    detection = std::max(detection, std::abs(translate_detection_gap(mu, translate(mu, w))));
  }
  char notes[128];
  std::snprintf(notes, sizeof notes, "%d trials on S^2; identity %.3g, translate detection %.3g", trials,
                identity, detection);
  return PropertyReport::make("translation_identity", digest.hex(), std::max(identity, detection), 1e-8,
                              notes);
}

std::vector<PropertyReport> verify_rigidity_battery(std::uint64_t seed) {
  return {step_diameter(seed),      step_barycenter(seed),    step_dispersion_orthogonality(seed),
          step_translations(seed),  step_bisector(seed),      step_hemisphere(seed)};
}

}  // namespace wsl
