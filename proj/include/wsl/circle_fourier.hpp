#pragma once

#include <complex>
#include <map>
#include <vector>

#include <Eigen/Core>

#include "wsl/potential.hpp"
#include "wsl/sphere_measures.hpp"

// Fourier analysis on the circle T with the half-chord distance r(z, w) = |(z - w) / 2|.
// The chord-power kernel is f_p(e^{i theta}) = |sin(theta / 2)|^p; potentials on T are
// f_p * mu, and the Fourier coefficients of f_p decide whether mu can be recovered.

namespace wsl::circle {

/// Equispaced nodes theta_j = 2 pi j / N on [0, 2 pi), N >= 4.
class CircleGrid {
 public:
  explicit CircleGrid(int size);

  int size() const noexcept { return size_; }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  double node(int j) const { return nodes_[static_cast<std::size_t>(j)]; }
  SpherePoint point(int j) const;
  std::vector<SpherePoint> points() const;
  /// Index of the node at chord distance <= tol from x, or -1.
  int locate(const SpherePoint& x, double tol = 1e-9) const;

 private:
  int size_;
  std::vector<double> nodes_;
};

/// f_p(theta) = |sin(theta / 2)|^p.
double kernel_value(double p, double theta);

/// Fourier coefficient of f_p at frequency n from the binomial series
///   f_p(z) = sum_k binom(p/2, k) (-(2 + z + 1/z) / 4)^k,
/// whose z^n coefficient is sum_{k >= |n|} binom(p/2, k) (-1)^k 4^{-k} C(2k, k + n).
/// Partial sums at K0, 2 K0, ... 16 K0 terms (K0 = max(K, 10 n^2)) are extrapolated in the
/// known tail exponents; throws TruncationTooSmall if the extrapolation error estimate
/// exceeds `tolerance`. p in [1, 2]; the series terminates at p = 2.
double kernel_coefficient_series(double p, int n, int truncation = 200, double tolerance = 1e-10);

/// Raw partial sum sum_{k=|n|}^{K} of the binomial series (no tail treatment).
double kernel_series_partial_sum(double p, int n, int truncation);

/// Trapezoidal rule on M nodes for (1 / 2 pi) int |sin(theta/2)|^p e^{-i n theta} d theta.
std::complex<double> kernel_transform_quadrature(double p, int n, int nodes);

/// Real part of kernel_transform_quadrature. Requires M >= 2|n| + 16.
double kernel_coefficient_quadrature(double p, int n, int nodes);

enum class KernelMethod { Series, Quadrature };

/// Coefficient table of f_p for |n| <= max_frequency.
struct FourierKernel {
  double p = 1.0;
  int max_frequency = 0;
  /// Series truncation or quadrature node count, depending on `method`.
  int truncation = 0;
  KernelMethod method = KernelMethod::Series;
  std::map<int, double> coefficients;

  static FourierKernel build(double p, int max_frequency, KernelMethod method, int truncation);
  double operator[](int n) const { return coefficients.at(n); }
  /// Sign pattern: positive at 0 and negative elsewhere for p < 2; {1/2, -1/4, 0...} at p = 2.
  bool has_expected_signs(double zero_tol = 1e-12) const;
};

/// Normalized DFT (1/N) sum_j f_p(theta_j) e^{-2 pi i j n / N}: the aliased coefficients
/// sum_m \hat f_p(n + m N). Real because f_p is even.
std::vector<double> grid_kernel_transform(const CircleGrid& grid, double p);

/// Circulant matrix C(j, k) = f_p(theta_j - theta_k).
Eigen::MatrixXd convolution_matrix(const CircleGrid& grid, double p);

/// values_j = sum_k w_k f_p(theta_j - theta_k), in the half-chord metric.
PotentialSamples potential_by_convolution(const CircleGrid& grid, const std::vector<double>& weights,
                                          double p);

inline constexpr double kSingularDivisor = 1e-9;
inline constexpr double kNegativeWeightFloor = -1e-9;

/// Recovers grid weights from potential samples on every node of an N-grid by dividing
/// DFTs. Samples in either metric are accepted. Throws SingularKernel when a divisor is
/// below 1e-9 in magnitude (exactly the p = 2 case, leaving 3 nonzero frequencies),
/// ReconstructionFailure when a recovered weight is below -1e-9. Weights in [-1e-9, 1e-9]
/// are set to zero before renormalizing.
std::vector<double> deconvolve_potential(const PotentialSamples& samples, double p);

/// Grid measure on S^1 with the given node weights (zero weights dropped).
DiscreteMeasure grid_measure(const CircleGrid& grid, const std::vector<double>& weights);

}  // namespace wsl::circle
