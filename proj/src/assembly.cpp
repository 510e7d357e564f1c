// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blebsim Authors

#include "blebsim/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "blebsim/error.hpp"

namespace bleb {

SparseMatrix mesh_pattern(const SurfaceMesh& mesh) {
  const std::size_t n = mesh.n_vertices();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) adj[i].push_back(i);
  for (const auto& tri : mesh.triangles()) {
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        if (a != b) adj[tri[a]].push_back(tri[b]);
      }
    }
  }
  std::vector<std::size_t> row_ptr{0};
  std::vector<std::size_t> cols;
  for (auto& row : adj) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    cols.insert(cols.end(), row.begin(), row.end());
    row_ptr.push_back(cols.size());
  }
  return SparseMatrix(n, std::move(row_ptr), std::move(cols));
}

SparseMatrix assemble_mass(const SurfaceMesh& mesh) {
  SparseMatrix m = mesh_pattern(mesh);
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles()[t];
    const double a12 = mesh.geometry(t).area / 12.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m.add(tri[i], tri[j], (i == j ? 2.0 : 1.0) * a12);
    }
  }
  return m;
}

SparseMatrix assemble_stiffness(const SurfaceMesh& mesh) {
  SparseMatrix s = mesh_pattern(mesh);
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles()[t];
    const auto& g = mesh.geometry(t);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) s.add(tri[i], tri[j], g.area * dot(g.gradients[i], g.gradients[j]));
    }
  }
  return s;
}

SparseMatrix assemble_weighted_mass(const SurfaceMesh& mesh, std::span<const double> nodal_coeff) {
  if (nodal_coeff.size() != mesh.n_vertices()) {
    throw std::invalid_argument("assemble_weighted_mass: one coefficient per vertex expected");
  }
  for (std::size_t v = 0; v < nodal_coeff.size(); ++v) {
    if (!(nodal_coeff[v] >= 0.0)) {
      throw NegativeCoefficient("vertex " + std::to_string(v) + " has coefficient " +
                                std::to_string(nodal_coeff[v]));
    }
  }
  SparseMatrix m = mesh_pattern(mesh);
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles()[t];
    const double w = mesh.geometry(t).area / 3.0;
    // Quadrature point on edge (a, b): phi_a = phi_b = 1/2, third basis 0.
    for (int e = 0; e < 3; ++e) {
      const std::size_t a = tri[e];
      const std::size_t b = tri[(e + 1) % 3];
      const double c = 0.5 * (nodal_coeff[a] + nodal_coeff[b]);
      const double q = 0.25 * w * c;
      m.add(a, a, q);
      m.add(b, b, q);
      m.add(a, b, q);
      m.add(b, a, q);
    }
  }
  return m;
}

std::vector<double> lump(const SparseMatrix& mass) { return mass.row_sums(); }

Mat3 triangle_gradient(const SurfaceMesh& mesh, std::size_t t, std::span<const Vec3> field) {
  const auto& tri = mesh.triangles()[t];
  const auto& g = mesh.geometry(t);
  Mat3 a{};
  for (int i = 0; i < 3; ++i) {
    const Vec3& u = field[tri[i]];
    for (int c = 0; c < 3; ++c) a[c] += u[c] * g.gradients[i];
  }
  return a;
}

VectorField assemble_gradient_load(const SurfaceMesh& mesh, std::span<const Vec3> field,
                                   const std::function<double(const Mat3&)>& coefficient) {
  VectorField b(mesh.n_vertices());
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const Mat3 a = triangle_gradient(mesh, t, field);
    const double c = coefficient(a);
    if (c == 0.0) continue;
    const auto& tri = mesh.triangles()[t];
    const auto& g = mesh.geometry(t);
    const double w = c * g.area;
    for (int i = 0; i < 3; ++i) {
      for (int comp = 0; comp < 3; ++comp) b[tri[i]][comp] += w * dot(a[comp], g.gradients[i]);
    }
  }
  return b;
}

VectorField assemble_tension_rhs(const SurfaceMesh& mesh, std::span<const Vec3> field, double x0,
                                 double epsilon) {
  const double scale = std::numbers::sqrt2 * x0;
  if (epsilon > 0.0) {
    return assemble_gradient_load(mesh, field, [scale, epsilon](const Mat3& a) {
      return scale / std::sqrt(frobenius_sq(a) + epsilon);
    });
  }
  return assemble_gradient_load(mesh, field, [scale](const Mat3& a) {
    return scale / std::max(std::sqrt(frobenius_sq(a)), 1e-12);
  });
}

double volume(const SurfaceMesh& mesh, std::span<const Vec3> field) {
  double v = 0.0;
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles()[t];
    const auto& g = mesh.geometry(t);
    const Vec3 mean = (field[tri[0]] + field[tri[1]] + field[tri[2]]) / 3.0;
    v += g.area / 3.0 * dot(g.normal, mean);
  }
  return std::max(v, 0.0);
}

std::vector<double> component(std::span<const Vec3> field, int c) {
  std::vector<double> out(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) out[i] = field[i][c];
  return out;
}

void set_component(std::span<Vec3> field, int c, std::span<const double> values) {
  for (std::size_t i = 0; i < field.size(); ++i) field[i][c] = values[i];
}

VectorField multiply_field(const SparseMatrix& m, std::span<const Vec3> field) {
  VectorField out(field.size());
  for (int c = 0; c < 3; ++c) set_component(out, c, m.multiply(component(field, c)));
  return out;
}

double mass_norm(const SparseMatrix& mass, std::span<const Vec3> field) {
  double s = 0.0;
  for (int c = 0; c < 3; ++c) s += mass.quadratic_form(component(field, c));
  return std::sqrt(std::max(s, 0.0));
}

}  // namespace bleb
