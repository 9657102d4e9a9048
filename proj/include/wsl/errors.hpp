#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wsl {

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside an operation's documented domain (order p, alpha, grid size...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Construction-time violation of a measure or point invariant.
class InvalidMeasure : public Error {
 public:
  using Error::Error;
};

/// A vector too short to be projected onto the sphere.
class DegenerateVector : public Error {
 public:
  explicit DegenerateVector(double norm)
      : Error("vector norm " + std::to_string(norm) + " below projection threshold"),
        norm_(norm) {}
  double norm() const noexcept { return norm_; }

 private:
  double norm_;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotOnSphere : public Error {
 public:
  using Error::Error;
};

/// The measure is not an equal-weight two-atom measure.
class NotTwoPoint : public Error {
 public:
  using Error::Error;
};

/// Transport simplex exceeded its iteration cap.
class SolverStall : public Error {
 public:
  using Error::Error;
};

class TruncationTooSmall : public Error {
 public:
  TruncationTooSmall(double estimate, double tolerance)
      : Error("series tail estimate " + std::to_string(estimate) + " exceeds tolerance " +
              std::to_string(tolerance)),
        estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

/// Deconvolution divisor vanishes at the listed grid frequencies.
class SingularKernel : public Error {
 public:
  SingularKernel(std::vector<int> frequencies, int grid_size)
      : Error("convolution kernel vanishes at " + std::to_string(frequencies.size()) +
              " of " + std::to_string(grid_size) + " grid frequencies"),
        frequencies_(std::move(frequencies)),
        grid_size_(grid_size) {}

  const std::vector<int>& frequencies() const noexcept { return frequencies_; }
  /// Dimension of the null space of the grid convolution operator.
  int kernel_rank() const noexcept { return static_cast<int>(frequencies_.size()); }
  int operator_rank() const noexcept { return grid_size_ - kernel_rank(); }
  int grid_size() const noexcept { return grid_size_; }

 private:
  std::vector<int> frequencies_;
  int grid_size_;
};

/// Recovered weights fell below the clamping floor.
class ReconstructionFailure : public Error {
 public:
  ReconstructionFailure(double min_weight)
      : Error("recovered weight " + std::to_string(min_weight) + " below -1e-9"),
        min_weight_(min_weight) {}
  double min_weight() const noexcept { return min_weight_; }

 private:
  double min_weight_;
};

/// Plan mass sits on antipodal pairs at alpha = 1/2.
class AntipodalMass : public Error {
 public:
  explicit AntipodalMass(double mass)
      : Error("plan carries mass " + std::to_string(mass) + " on antipodal pairs"), mass_(mass) {}
  double mass() const noexcept { return mass_; }

 private:
  double mass_;
};

class NotInUpperHemisphere : public Error {
 public:
  using Error::Error;
};

/// Malformed input document (JSON/CSV schema violation).
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace wsl
