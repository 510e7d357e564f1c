// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blebsim Authors

#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "blebsim/mesh.hpp"
#include "blebsim/sparse.hpp"
#include "blebsim/vec3.hpp"

namespace bleb {

using ScalarField = std::vector<double>;
using VectorField = std::vector<Vec3>;

// Per-triangle constant gradient of a P1 vector field. Row c is the surface
// gradient of coordinate c.
using Mat3 = std::array<Vec3, 3>;

inline double frobenius_sq(const Mat3& a) { return dot(a[0], a[0]) + dot(a[1], a[1]) + dot(a[2], a[2]); }

/// Empty matrix whose pattern holds the diagonal and every mesh edge.
SparseMatrix mesh_pattern(const SurfaceMesh& mesh);

/// Consistent P1 mass matrix, element matrix (area / 12) [[2,1,1],[1,2,1],[1,1,2]].
SparseMatrix assemble_mass(const SurfaceMesh& mesh);

/// P1 Laplace-Beltrami stiffness matrix, element entries area * g_i . g_j.
SparseMatrix assemble_stiffness(const SurfaceMesh& mesh);

/// Mass matrix weighted by the P1 interpolant of `nodal_coeff`, integrated
/// with the three-edge-midpoint rule. Throws NegativeCoefficient.
SparseMatrix assemble_weighted_mass(const SurfaceMesh& mesh, std::span<const double> nodal_coeff);

std::vector<double> lump(const SparseMatrix& mass);

Mat3 triangle_gradient(const SurfaceMesh& mesh, std::size_t t, std::span<const Vec3> field);

/// Load vector b_i = sum_T c(grad_T U) area_T (grad_T U) g_i, i.e. the
/// discrete form of the functional Phi -> int c(grad U) grad U : grad Phi.
VectorField assemble_gradient_load(const SurfaceMesh& mesh, std::span<const Vec3> field,
                                   const std::function<double(const Mat3&)>& coefficient);

/// Explicit tension load for the semi-implicit step. Per triangle the
/// coefficient is sqrt(2) x0 / |grad U|_F, with the denominator guarded by
/// max(., 1e-12) when `epsilon` is zero and replaced by sqrt(|.|^2 + epsilon)
/// otherwise.
VectorField assemble_tension_rhs(const SurfaceMesh& mesh, std::span<const Vec3> field, double x0,
                                 double epsilon = 0.0);

/// Enclosed-volume functional max{ int 1/3 U . nu dsigma, 0 } on the reference mesh.
double volume(const SurfaceMesh& mesh, std::span<const Vec3> field);

// Coordinate helpers for solving the three scalar systems separately.
std::vector<double> component(std::span<const Vec3> field, int c);
void set_component(std::span<Vec3> field, int c, std::span<const double> values);

VectorField multiply_field(const SparseMatrix& m, std::span<const Vec3> field);

// sqrt(sum_c x_c^T M x_c)
double mass_norm(const SparseMatrix& mass, std::span<const Vec3> field);

}  // namespace bleb
