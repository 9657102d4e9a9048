#include "wsl/circle_fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/LU>

namespace wsl::circle {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_order(double p) {
  if (!(p >= 1.0 && p <= 2.0)) throw InvalidArgument("kernel order p must lie in [1, 2]");
}

using Spectrum = std::vector<std::complex<double>>;

// Unnormalized DFT X[n] = sum_j x_j e^{-2 pi i j n / N}; twiddles indexed by (j n) mod N.
Spectrum dft(const Spectrum& x, bool inverse) {
  const std::size_t n = x.size();
  Spectrum twiddle(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = (inverse ? kTwoPi : -kTwoPi) * static_cast<double>(k) / static_cast<double>(n);
    twiddle[k] = {std::cos(angle), std::sin(angle)};
  }
  Spectrum out(n);
  for (std::size_t f = 0; f < n; ++f) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += x[j] * twiddle[(j * f) % n];
    out[f] = acc;
  }
  return out;
}

double grid_kernel(double p, int offset, int size) {
  return std::pow(std::abs(std::sin(std::numbers::pi * offset / size)), p);
}

}  // namespace

CircleGrid::CircleGrid(int size) : size_(size) {
  if (size < 4) throw InvalidArgument("circle grid needs N >= 4");
  nodes_.reserve(static_cast<std::size_t>(size));
  for (int j = 0; j < size; ++j) nodes_.push_back(kTwoPi * j / size);
}

SpherePoint CircleGrid::point(int j) const { return circle_point(node(j)); }

std::vector<SpherePoint> CircleGrid::points() const {
  std::vector<SpherePoint> out;
  out.reserve(nodes_.size());
  for (int j = 0; j < size_; ++j) out.push_back(point(j));
  return out;
}

int CircleGrid::locate(const SpherePoint& x, double tol) const {
  if (x.ambient_dim() != 2) return -1;
  double theta = std::atan2(x[1], x[0]);
  if (theta < 0.0) theta += kTwoPi;
  const int j = static_cast<int>(std::lround(theta / kTwoPi * size_)) % size_;
  return (point(j).coords() - x.coords()).norm() <= tol ? j : -1;
}

double kernel_value(double p, double theta) { return std::pow(std::abs(std::sin(0.5 * theta)), p); }

namespace {

// Partial sums of the binomial series recorded at each requested truncation.
std::vector<double> series_partial_sums(double p, int n, const std::vector<long>& checkpoints) {
  const double a = 0.5 * p;
  const long m = std::abs(n);
  // First term t_{|n|} = binom(a, |n|) (-1)^|n| 4^{-|n|}, since C(2|n|, 2|n|) = 1.
  double term = 1.0;
  for (long j = 0; j < m; ++j) {
    term *= (static_cast<double>(j) - a) / static_cast<double>(j + 1) * 0.25;
  }
  std::vector<double> sums;
  sums.reserve(checkpoints.size());
  double sum = 0.0;
  double carry = 0.0;  // Kahan compensation
  long k = m;
  for (long stop : checkpoints) {
    for (; k <= stop; ++k) {
      const double y = term - carry;
      const double t = sum + y;
      carry = (t - sum) - y;
      sum = t;
      const double kd = static_cast<double>(k);
      term *= (kd - a) * (2.0 * kd + 1.0) /
              (2.0 * (kd + 1.0 + static_cast<double>(m)) * (kd + 1.0 - static_cast<double>(m)));
    }
    sums.push_back(sum);
  }
  return sums;
}

// Extrapolates S_K = S - sum_j beta_j (K / K0)^{1 - s - j} through the given levels.
double extrapolate(const std::vector<double>& sums, const std::vector<double>& ratios, double s) {
  const Eigen::Index levels = static_cast<Eigen::Index>(sums.size());
  Eigen::MatrixXd lhs(levels, levels);
  Eigen::VectorXd rhs(levels);
  for (Eigen::Index r = 0; r < levels; ++r) {
    lhs(r, 0) = 1.0;
    for (Eigen::Index j = 1; j < levels; ++j) {
      lhs(r, j) = -std::pow(ratios[static_cast<std::size_t>(r)], 1.0 - s - static_cast<double>(j - 1));
    }
    rhs[r] = sums[static_cast<std::size_t>(r)];
  }
  return lhs.fullPivLu().solve(rhs)[0];
}

}  // namespace

double kernel_series_partial_sum(double p, int n, int truncation) {
  require_order(p);
  if (truncation < std::abs(n)) return 0.0;
  return series_partial_sums(p, n, {truncation}).front();
}

double kernel_coefficient_series(double p, int n, int truncation, double tolerance) {
  require_order(p);
  if (truncation < std::abs(n) + 10) {
    throw InvalidArgument("series truncation must be at least |n| + 10");
  }
  const long base = std::max<long>(truncation, 10L * n * n);
  constexpr int kLevels = 5;
  std::vector<long> checkpoints;
  std::vector<double> ratios;
  for (int l = 0; l < kLevels; ++l) {
    checkpoints.push_back(base << l);
    ratios.push_back(static_cast<double>(1L << l));
  }
  const std::vector<double> sums = series_partial_sums(p, n, checkpoints);
  if (p == 2.0) return sums.back();

  // Terms behave like k^{-s} (1 + c_1 / k + ...), s = 3/2 + p/2.
  const double s = 1.5 + 0.5 * p;
  const double fine = extrapolate(sums, ratios, s);
  const double coarse = extrapolate({sums.begin() + 1, sums.end()}, {ratios.begin() + 1, ratios.end()}, s);
  const double estimate = std::abs(fine - coarse);
  if (estimate > tolerance) throw TruncationTooSmall(estimate, tolerance);
  return fine;
}

std::complex<double> kernel_transform_quadrature(double p, int n, int nodes) {
  require_order(p);
  if (nodes < 2 * std::abs(n) + 16) throw InvalidArgument("quadrature needs M >= 2|n| + 16");
  const long m = nodes;
  const long freq = ((static_cast<long>(n) % m) + m) % m;
  double re = 0.0;
  double im = 0.0;
  for (long j = 0; j < m; ++j) {
    const double f = grid_kernel(p, static_cast<int>(j), nodes);
    const double angle = kTwoPi * static_cast<double>((j * freq) % m) / static_cast<double>(m);
    re += f * std::cos(angle);
    im -= f * std::sin(angle);
  }
  return {re / static_cast<double>(m), im / static_cast<double>(m)};
}

double kernel_coefficient_quadrature(double p, int n, int nodes) {
  return kernel_transform_quadrature(p, n, nodes).real();
}

FourierKernel FourierKernel::build(double p, int max_frequency, KernelMethod method, int truncation) {
  FourierKernel k;
  k.p = p;
  k.max_frequency = max_frequency;
  k.method = method;
  k.truncation = truncation;
  for (int n = 0; n <= max_frequency; ++n) {
    const double c = method == KernelMethod::Series ? kernel_coefficient_series(p, n, truncation)
                                                    : kernel_coefficient_quadrature(p, n, truncation);
    k.coefficients[n] = c;
    k.coefficients[-n] = c;
  }
  return k;
}

bool FourierKernel::has_expected_signs(double zero_tol) const {
  for (const auto& [n, c] : coefficients) {
    if (p == 2.0) {
      const double expected = n == 0 ? 0.5 : (std::abs(n) == 1 ? -0.25 : 0.0);
      if (std::abs(c - expected) > zero_tol) return false;
    } else if (n == 0 ? !(c > 0.0) : !(c < 0.0)) {
      return false;
    }
  }
  return true;
}

std::vector<double> grid_kernel_transform(const CircleGrid& grid, double p) {
  require_order(p);
  const int size = grid.size();
  Spectrum g(static_cast<std::size_t>(size));
  for (int j = 0; j < size; ++j) g[static_cast<std::size_t>(j)] = grid_kernel(p, j, size);
  const Spectrum G = dft(g, false);
  std::vector<double> out(static_cast<std::size_t>(size));
  for (int f = 0; f < size; ++f) out[static_cast<std::size_t>(f)] = G[static_cast<std::size_t>(f)].real() / size;
  return out;
}

Eigen::MatrixXd convolution_matrix(const CircleGrid& grid, double p) {
  require_order(p);
  const int size = grid.size();
  Eigen::MatrixXd c(size, size);
  for (int j = 0; j < size; ++j) {
    for (int k = 0; k < size; ++k) c(j, k) = grid_kernel(p, ((j - k) % size + size) % size, size);
  }
  return c;
}

PotentialSamples potential_by_convolution(const CircleGrid& grid, const std::vector<double>& weights,
                                          double p) {
  require_order(p);
  const int size = grid.size();
  if (static_cast<int>(weights.size()) != size) throw DimensionMismatch("one weight per grid node");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InvalidMeasure("grid weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidMeasure("grid weights must sum to 1");

  std::vector<double> kernel(static_cast<std::size_t>(size));
  for (int d = 0; d < size; ++d) kernel[static_cast<std::size_t>(d)] = grid_kernel(p, d, size);

  PotentialSamples out;
  out.sites = grid.points();
  out.p = p;
  out.metric = PotentialMetric::HalfChord;
  out.generated = true;
  out.values.assign(static_cast<std::size_t>(size), 0.0);
  for (int j = 0; j < size; ++j) {
    double acc = 0.0;
    for (int k = 0; k < size; ++k) {
      acc += weights[static_cast<std::size_t>(k)] * kernel[static_cast<std::size_t>(((j - k) % size + size) % size)];
    }
    out.values[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

std::vector<double> deconvolve_potential(const PotentialSamples& samples, double p) {
  require_order(p);
  if (samples.p != p) throw InvalidArgument("samples were produced for a different order p");
  const int size = static_cast<int>(samples.values.size());
  const CircleGrid grid(size);
  if (static_cast<int>(samples.sites.size()) != size) throw InvalidMeasure("samples need one site per value");
  for (int j = 0; j < size; ++j) {
    if (grid.locate(samples.sites[static_cast<std::size_t>(j)]) != j) {
      throw InvalidMeasure("samples are not on the equispaced N-grid in node order");
    }
  }
  const PotentialSamples half = samples.converted(PotentialMetric::HalfChord);

  const std::vector<double> divisor = grid_kernel_transform(grid, p);
  std::vector<int> singular;
  for (int f = 0; f < size; ++f) {
    if (std::abs(divisor[static_cast<std::size_t>(f)]) < kSingularDivisor) singular.push_back(f);
  }
  if (!singular.empty()) throw SingularKernel(std::move(singular), size);

  Spectrum v(half.values.begin(), half.values.end());
  Spectrum spectrum = dft(v, false);
  for (int f = 0; f < size; ++f) {
    spectrum[static_cast<std::size_t>(f)] /= divisor[static_cast<std::size_t>(f)] * size;
  }
  const Spectrum w = dft(spectrum, true);

  std::vector<double> weights(static_cast<std::size_t>(size));
  double lowest = 0.0;
  for (int j = 0; j < size; ++j) {
    const double x = w[static_cast<std::size_t>(j)].real() / size;
    lowest = std::min(lowest, x);
    // Values within the floor of zero are treated as zero, on either side.
    weights[static_cast<std::size_t>(j)] = x > -kNegativeWeightFloor ? x : 0.0;
  }
  if (lowest < kNegativeWeightFloor) throw ReconstructionFailure(lowest);
  double total = 0.0;
  for (double x : weights) total += x;
  if (!(total > 0.0)) throw ReconstructionFailure(lowest);
  for (double& x : weights) x /= total;
  return weights;
}

DiscreteMeasure grid_measure(const CircleGrid& grid, const std::vector<double>& weights) {
  if (static_cast<int>(weights.size()) != grid.size()) throw DimensionMismatch("one weight per grid node");
  std::vector<Vector> pts;
  pts.reserve(weights.size());
  for (int j = 0; j < grid.size(); ++j) pts.push_back(grid.point(j).coords());
  return DiscreteMeasure::normalized(std::move(pts), weights);
}

}  // namespace wsl::circle
