// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blebsim Authors

#pragma once

#include <vector>

#include "blebsim/mesh.hpp"
#include "blebsim/vec3.hpp"

namespace bleb {

/// Linker attachment points in the cortex, one per mesh vertex.
struct CortexField {
  std::vector<Vec3> points;
};

/// Cube with vertices on the unit sphere, faces cut diagonally into 12
/// triangles, then `n_passes` bisection passes with unit-sphere projection.
// Unit octahedron: vertices at the coordinate axes, outward orientation.
SurfaceMesh octahedron();

SurfaceMesh cube_sphere(int n_passes);

/// Maps a point of the unit sphere onto the discocyte (red-blood-cell like)
/// reference shape: (4 y1, 4 y2, sign(y3) rho(r)) with r = 4 |(y1, y2)|.
/// Throws DomainError if |y| differs from 1 by more than 1e-9.
Vec3 discocyte_map(const Vec3& y);

// Profile height of the discocyte at radial distance r in [0, 4].
double discocyte_profile(double r);

SurfaceMesh make_discocyte(int n_passes);

/// u_c(v) = v - l0 * n(v) with the nodal (area-weighted) normals.
CortexField build_cortex(const SurfaceMesh& mesh, double l0);

}  // namespace bleb
