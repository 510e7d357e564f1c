// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blebsim Authors

#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "blebsim/vec3.hpp"

namespace bleb {

using Triangle = std::array<std::size_t, 3>;

/// Cached P1 geometry of one flat triangle. `gradients[i]` is the constant
/// surface gradient of the nodal basis function of local vertex i.
struct TriangleGeometry {
  Vec3 normal;
  double area = 0.0;
  std::array<Vec3, 3> gradients;
};

struct MeshStats {
  std::size_t n_vertices = 0;
  std::size_t n_triangles = 0;
  double h_max = 0.0;
  double total_area = 0.0;
};

struct MeshOptions {
  // Closed meshes must have every edge shared by exactly two triangles and
  // are re-oriented so the right-hand-rule normal points outward. Open
  // patches (single triangles, flat test pieces) allow boundary edges.
  bool require_closed = true;
};

inline constexpr double kMinTriangleArea = 1e-14;

// Immutable indexed triangle mesh with per-triangle geometry computed at
// construction. Use build_mesh() to create one.
class SurfaceMesh {
 public:
  SurfaceMesh() = default;

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const TriangleGeometry& geometry(std::size_t t) const { return geometry_[t]; }

  std::size_t n_vertices() const { return vertices_.size(); }
  std::size_t n_triangles() const { return triangles_.size(); }
  std::size_t n_edges() const { return n_edges_; }
  bool is_closed() const { return closed_; }

 private:
  friend SurfaceMesh build_mesh(std::vector<Vec3>, std::vector<Triangle>, MeshOptions);

  std::vector<Vec3> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<TriangleGeometry> geometry_;
  std::size_t n_edges_ = 0;
  bool closed_ = false;
};

/// Validates the connectivity and computes the geometry cache.
///
/// Throws DegenerateTriangle when a triangle's area is below
/// kMinTriangleArea, NonManifoldEdge when an edge has more than two incident
/// triangles (or only one on a closed mesh), and InconsistentOrientation when
/// two triangles traverse a shared edge in the same direction.
SurfaceMesh build_mesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles,
                       MeshOptions options = {});

/// Same connectivity, new vertex positions. Geometry is recomputed and
/// validated again.
SurfaceMesh with_vertices(const SurfaceMesh& mesh, std::vector<Vec3> vertices);

const TriangleGeometry& triangle_geometry(const SurfaceMesh& mesh, std::size_t t);

// Computes normal, area and P1 gradients of a single triangle; no validation.
TriangleGeometry compute_triangle_geometry(const Vec3& p0, const Vec3& p1, const Vec3& p2);

using Projector = std::function<Vec3(const Vec3&)>;

Vec3 identity_projector(const Vec3& p);
Vec3 unit_sphere_projector(const Vec3& p);

/// Conforming longest-edge bisection. Every triangle present at the start of
/// a pass is bisected through its longest edge; neighbours are closed
/// recursively so no hanging nodes remain. New vertices are placed at
/// `projector(midpoint)`. Ties between equally long edges go to the edge
/// with the lexicographically smallest sorted vertex pair.
SurfaceMesh refine_bisect(const SurfaceMesh& mesh, int n_passes,
                          const Projector& projector = identity_projector);

/// Area-weighted average of the incident triangle normals, normalized.
/// Throws ZeroNormal if the average has length below 1e-12.
std::vector<Vec3> vertex_normals(const SurfaceMesh& mesh);

MeshStats stats(const SurfaceMesh& mesh);

long euler_characteristic(const SurfaceMesh& mesh);

}  // namespace bleb
