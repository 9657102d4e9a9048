#include "wsl/sampling.hpp"

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <utility>

namespace wsl::sampling {

Vector random_gaussian(Rng& rng, Eigen::Index d) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = normal(rng);
  return v;
}

SpherePoint random_sphere_point(Rng& rng, int n) {
  for (;;) {
    Vector v = random_gaussian(rng, n + 1);
    const double norm = v.norm();
    if (norm > 1e-6) return SpherePoint(v / norm);
  }
}

SpherePoint random_hemisphere_point(Rng& rng, const SpherePoint& pole, double margin) {
  for (;;) {
    SpherePoint z = random_sphere_point(rng, pole.sphere_dim());
    const double h = z.coords().dot(pole.coords());
    if (h > margin) return z;
    if (h < -margin) return z.antipode();
  }
}

std::vector<double> random_weights(Rng& rng, std::size_t count) {
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  std::vector<double> w(count);
  double total = 0.0;
  for (auto& x : w) {
    x = unif(rng);
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

DiscreteMeasure random_measure(Rng& rng, int n, std::size_t atoms) {
  std::vector<Vector> pts;
  pts.reserve(atoms);
  for (std::size_t i = 0; i < atoms; ++i) pts.push_back(random_sphere_point(rng, n).coords());
  return DiscreteMeasure::normalized(std::move(pts), random_weights(rng, atoms));
}

std::vector<Vector> icosphere(int level) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vector> verts;
  auto add = [&](double x, double y, double z) {
    Vector v(3);
    v << x, y, z;
    verts.push_back(v.normalized());
  };
  add(-1, t, 0);
  add(1, t, 0);
  add(-1, -t, 0);
  add(1, -t, 0);
  add(0, -1, t);
  add(0, 1, t);
  add(0, -1, -t);
  add(0, 1, -t);
  add(t, 0, -1);
  add(t, 0, 1);
  add(-t, 0, -1);
  add(-t, 0, 1);

  using Face = std::array<int, 3>;
  std::vector<Face> faces{{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                          {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                          {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                          {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const Vector m = (verts[static_cast<std::size_t>(a)] + verts[static_cast<std::size_t>(b)]);
      verts.push_back(m.normalized());
      const int idx = static_cast<int>(verts.size()) - 1;
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<Face> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const int a = mid(f[0], f[1]);
      const int b = mid(f[1], f[2]);
      const int c = mid(f[2], f[0]);
      next.push_back({f[0], a, c});
      next.push_back({f[1], b, a});
      next.push_back({f[2], c, b});
      next.push_back({a, b, c});
    }
    faces = std::move(next);
  }
  return verts;
}

std::vector<Vector> circle_nodes(int count) {
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / count;
    Vector v(2);
    v << std::cos(theta), std::sin(theta);
    out.push_back(v);
  }
  return out;
}

}  // namespace wsl::sampling
