#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "wsl/sphere_measures.hpp"

namespace wsl::sampling {

using Rng = std::mt19937_64;

/// Uniform point on S^n (normalized Gaussian).
SpherePoint random_sphere_point(Rng& rng, int n);

/// Random point of the open hemisphere {z : <z, pole> > margin}.
SpherePoint random_hemisphere_point(Rng& rng, const SpherePoint& pole, double margin = 1e-3);

/// Weights drawn uniformly from [0.05, 1] and normalized.
std::vector<double> random_weights(Rng& rng, std::size_t count);

/// Measure on S^n with `atoms` uniform random atoms and random weights.
DiscreteMeasure random_measure(Rng& rng, int n, std::size_t atoms);

/// Standard normal vector in R^d.
Vector random_gaussian(Rng& rng, Eigen::Index d);

/// Vertices of the icosahedron subdivided `level` times and projected to S^2
/// (10 * 4^level + 2 points; level 4 gives 2562, level 5 gives 10242).
std::vector<Vector> icosphere(int level);

/// N equispaced points on S^1 at angles 2 pi j / N.
std::vector<Vector> circle_nodes(int count);

}  // namespace wsl::sampling
