#pragma once
// Reference computations used only by the tests. Each one is deliberately naive and
// shares no code path with the library routine it checks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "wsl/sphere_measures.hpp"

namespace oracle {

using wsl::Vector;

/// Minimum of <C, pi> over the vertices of the transportation polytope, found by trying
/// every (m + n - 1)-subset of cells as a basis. Small problems only (m n <= 12).
inline double vertex_enumeration_min(const Vector& a, const Vector& b, const Eigen::MatrixXd& c) {
  const int m = static_cast<int>(a.size());
  const int n = static_cast<int>(b.size());
  const int cells = m * n;
  const int k = m + n - 1;
  Eigen::VectorXd rhs(m + n);
  rhs << a, b;

  double best = std::numeric_limits<double>::infinity();
  std::vector<int> pick(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
  while (true) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m + n, k);
    for (int t = 0; t < k; ++t) {
      const int cell = pick[static_cast<std::size_t>(t)];
      A(cell / n, t) = 1.0;
      A(m + cell % n, t) = 1.0;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (lu.rank() == k) {
      const Eigen::VectorXd x = A.colPivHouseholderQr().solve(rhs);
      if ((A * x - rhs).norm() <= 1e-12 && x.minCoeff() >= -1e-12) {
        double cost = 0.0;
        for (int t = 0; t < k; ++t) {
          const int cell = pick[static_cast<std::size_t>(t)];
          cost += x[t] * c(cell / n, cell % n);
        }
        best = std::min(best, cost);
      }
    }
    // Next combination in lexicographic order.
    int i = k - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == cells - k + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  return best;
}

/// Closed form of the Fourier coefficients of |sin(theta / 2)|^p:
/// (-1)^n Gamma(p + 1) / (2^p Gamma(1 + p/2 + n) Gamma(1 + p/2 - n)).
inline double gamma_coefficient(double p, int n) {
  n = std::abs(n);
  const double lower = 1.0 + p / 2.0 - n;
  if (lower <= 0.0 && lower == std::floor(lower)) return 0.0;  // 1 / Gamma vanishes at poles
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  return sign * std::tgamma(p + 1.0) / (std::pow(2.0, p) * std::tgamma(1.0 + p / 2.0 + n) * std::tgamma(lower));
}

/// Largest coefficient error of (2 + z + 1/z)^k against z^{-k} (1 + z)^{2k}, obtained by
/// multiplying Laurent polynomials out directly.
inline double binomial_identity_error(int k) {
  // Coefficients indexed by exponent + k.
  std::vector<double> lhs{1.0};
  for (int step = 0; step < k; ++step) {
    std::vector<double> next(lhs.size() + 2, 0.0);
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      next[i] += lhs[i];
      next[i + 1] += 2.0 * lhs[i];
      next[i + 2] += lhs[i];
    }
    lhs = std::move(next);
  }
  std::vector<double> rhs{1.0};
  for (int step = 0; step < 2 * k; ++step) {
    std::vector<double> next(rhs.size() + 1, 0.0);
    for (std::size_t i = 0; i < rhs.size(); ++i) {
      next[i] += rhs[i];
      next[i + 1] += rhs[i];
    }
    rhs = std::move(next);
  }
  double err = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) err = std::max(err, std::abs(lhs[i] - rhs[i]));
  return err;
}

/// Singular values of a dense matrix, descending.
inline Eigen::VectorXd singular_values(const Eigen::MatrixXd& m) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
}

inline Vector circle(double theta) { return Vector{{std::cos(theta), std::sin(theta)}}; }

/// Number of u on S^1 with normalize((1 - alpha) N + alpha u) = w, counted as sign changes
/// of the cross product along a sweep of `nodes` angles (only where the direction agrees).
inline int preimage_count_sweep(const Vector& w, const Vector& north, double alpha, int nodes = 10000) {
  auto cross = [&](double t) {
    const Vector v = (1.0 - alpha) * north + alpha * circle(t);
    return std::pair<double, double>{v[0] * w[1] - v[1] * w[0], v.dot(w)};
  };
  int count = 0;
  auto prev = cross(0.0);
  for (int j = 1; j <= nodes; ++j) {
    const auto cur = cross(2.0 * std::numbers::pi * j / nodes);
    if ((prev.first < 0.0) != (cur.first < 0.0) && prev.second > 0.0 && cur.second > 0.0) ++count;
    prev = cur;
  }
  return count;
}

/// min over z of (1 - alpha) |x - z|^2 + alpha |y - z|^2 on the given sphere grid, then
/// refined by a compass search in the tangent plane around the best node.
struct MinForm {
  double grid_value;
  double refined_value;
};

inline MinForm c_alpha_min_form(const Vector& x, const Vector& y, double alpha, const std::vector<Vector>& grid) {
  auto f = [&](const Vector& z) { return (1.0 - alpha) * (x - z).squaredNorm() + alpha * (y - z).squaredNorm(); };
  Vector best = grid.front();
  double value = f(best);
  for (const auto& z : grid) {
    const double v = f(z);
    if (v < value) {
      value = v;
      best = z;
    }
  }
  const double grid_value = value;
  const Eigen::Index d = x.size();
  double step = 0.05;
  while (step > 1e-13) {
    // Orthonormal tangent directions at the current point.
    Eigen::MatrixXd frame(d, d);
    frame.col(0) = best;
    for (Eigen::Index c = 1; c < d; ++c) frame.col(c) = Vector::Unit(d, c - 1) + 0.1 * Vector::Unit(d, c);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(frame);
    const Eigen::MatrixXd q = qr.householderQ();
    bool improved = false;
    for (Eigen::Index c = 1; c < d; ++c) {
      for (double sgn : {1.0, -1.0}) {
        const Vector z = (best + sgn * step * q.col(c)).normalized();
        const double v = f(z);
        if (v < value) {
          value = v;
          best = z;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return {grid_value, value};
}

}  // namespace oracle
