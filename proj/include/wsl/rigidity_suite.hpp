#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wsl/sphere_measures.hpp"

namespace wsl {

/// Pass/fail record of one certified identity. passed <=> |residual| <= tolerance.
struct PropertyReport {
  std::string name;
  std::string inputs_digest;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string notes;

  static PropertyReport make(std::string name, std::string digest, double residual,
                             double tolerance, std::string notes = {});
};

/// FNV-1a (64 bit) over a canonical text serialization: reals as 17 significant
/// digits, measures as their atoms sorted lexicographically, each followed by its weight.
class InputDigest {
 public:
  InputDigest& add(std::string_view text);
  InputDigest& add(double value);
  InputDigest& add(std::int64_t value);
  InputDigest& add(const Vector& v);
  InputDigest& add(const DiscreteMeasure& mu);
  std::string hex() const;

 private:
  void feed(std::string_view bytes);
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

/// g(alpha)^2 = d_{W_2}^2(mu, alpha delta_x + (1 - alpha) delta_{-x}) as an explicit
/// convex piecewise-linear function of alpha.
struct BisectorScan {
  std::vector<double> breakpoints;
  /// g^2 at each breakpoint.
  std::vector<double> values;
  /// Ends of the region where g^2 attains its minimum.
  double flat_lo = 0.0;
  double flat_hi = 0.0;

  double operator()(double alpha) const;
  double minimum() const;
};

/// Atoms with | |y - x| - |y + x| | <= this lie on the bisector B(x, -x).
inline constexpr double kBisectorTolerance = 1e-10;

/// Greedy evaluation: the mass sent to x is taken from atoms in increasing order of
/// |y - x|^2 - |y + x|^2, so every breakpoint is a cumulative weight.
BisectorScan bisector_scan(const DiscreteMeasure& mu, const SpherePoint& x);

/// mu(B(x, -x)) read off as the width of the flat minimum of g.
double bisector_mass(const DiscreteMeasure& mu, const SpherePoint& x);

/// | d^2((t_v)_# mu, nu) - d^2(mu, nu) - <v, v + 2 m(mu) - 2 m(nu)> | with ambient squared cost.
double translation_identity_residual(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                     const Vector& v);

/// d(mu, nu) - |m(nu) - m(mu)| in W_2(R^{n+1}); zero exactly when nu is a translate of mu.
double translate_detection_gap(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Random (mu, nu, v) on S^2 with at most 6 atoms per side; residual = max over trials of the
/// translation identity residual and of the translate-detection gap for nu = (t_w)_# mu.
PropertyReport verify_translation_identity(int trials, std::uint64_t seed);

/// Proof-step batteries S1..S6, in that order. The residual of each report is the largest
/// ratio (error / tolerance) over its sub-checks, so every report has tolerance 1.
std::vector<PropertyReport> verify_rigidity_battery(std::uint64_t seed);

}  // namespace wsl
