// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blebsim Authors

#include "blebsim/geometry.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "blebsim/error.hpp"

namespace bleb {

SurfaceMesh cube_sphere(int n_passes) {
  const double s = 1.0 / std::sqrt(3.0);
  // Corner index bits: x = bit 0, y = bit 1, z = bit 2.
  std::vector<Vec3> corners;
  for (int i = 0; i < 8; ++i) {
    corners.push_back({(i & 1) ? s : -s, (i & 2) ? s : -s, (i & 4) ? s : -s});
  }
  // Two triangles per face, counter-clockwise seen from outside.
  std::vector<Triangle> tris{
      {0, 2, 3}, {0, 3, 1},  // z = -
      {4, 5, 7}, {4, 7, 6},  // z = +
      {0, 1, 5}, {0, 5, 4},  // y = -
      {2, 6, 7}, {2, 7, 3},  // y = +
      {0, 4, 6}, {0, 6, 2},  // x = -
      {1, 3, 7}, {1, 7, 5},  // x = +
  };
  const SurfaceMesh base = build_mesh(std::move(corners), std::move(tris));
  return refine_bisect(base, n_passes, unit_sphere_projector);
}

SurfaceMesh octahedron() {
  std::vector<Vec3> v = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  std::vector<Triangle> t = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
                             {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
  return build_mesh(std::move(v), std::move(t));
}

double discocyte_profile(double r) {
  if (r <= 2.0) return 0.5 * (3.0 - std::cos(std::numbers::pi * r / 2.0));
  const double d = r - 2.0;
  return std::sqrt(std::max(0.0, 4.0 - d * d));
}

Vec3 discocyte_map(const Vec3& y) {
  const double len = std::sqrt(symmetric_norm_sq(y));
  if (std::abs(len - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "discocyte_map expects a point on the unit sphere, got |y| = " << len;
    throw DomainError(os.str());
  }
  const double x1 = 4.0 * y.x;
  const double x2 = 4.0 * y.y;
  const double r = std::sqrt(x1 * x1 + x2 * x2);
  const double sign = (y.z > 0.0) ? 1.0 : ((y.z < 0.0) ? -1.0 : 0.0);
  return {x1, x2, sign * discocyte_profile(r)};
}

SurfaceMesh make_discocyte(int n_passes) {
  const SurfaceMesh sphere = cube_sphere(n_passes);
  std::vector<Vec3> mapped;
  mapped.reserve(sphere.n_vertices());
  for (const Vec3& v : sphere.vertices()) mapped.push_back(discocyte_map(v));
  return with_vertices(sphere, std::move(mapped));
}

CortexField build_cortex(const SurfaceMesh& mesh, double l0) {
  if (!(l0 >= 0.0)) throw std::invalid_argument("build_cortex: l0 must be >= 0");
  const std::vector<Vec3> normals = vertex_normals(mesh);
  CortexField cortex;
  cortex.points.reserve(mesh.n_vertices());
  for (std::size_t v = 0; v < mesh.n_vertices(); ++v) {
    cortex.points.push_back(mesh.vertices()[v] - l0 * normals[v]);
  }
  return cortex;
}

}  // namespace bleb
