// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blebsim Authors

#include "blebsim/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "blebsim/error.hpp"

namespace bleb {

namespace {

struct HalfEdge {
  std::size_t lo;
  std::size_t hi;
  std::size_t tri;
  int local;  // local edge k runs from corner k to corner k+1
  bool forward;  // true if traversed lo -> hi

  auto key() const { return std::tie(lo, hi, tri, local); }
};

// Undirected edges of a triangle list, numbered in sorted (lo, hi) order.
struct EdgeTable {
  std::vector<std::array<std::size_t, 2>> edges;
  std::vector<std::array<std::size_t, 3>> tri_edges;
  std::vector<std::vector<HalfEdge>> incident;
};

EdgeTable make_edge_table(const std::vector<Triangle>& triangles) {
  std::vector<HalfEdge> half;
  half.reserve(3 * triangles.size());
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const std::size_t a = triangles[t][k];
      const std::size_t b = triangles[t][(k + 1) % 3];
      half.push_back({std::min(a, b), std::max(a, b), t, k, a < b});
    }
  }
  std::sort(half.begin(), half.end(),
            [](const HalfEdge& l, const HalfEdge& r) { return l.key() < r.key(); });

  EdgeTable table;
  table.tri_edges.resize(triangles.size());
  for (std::size_t i = 0; i < half.size();) {
    std::size_t j = i;
    const std::size_t id = table.edges.size();
    table.edges.push_back({half[i].lo, half[i].hi});
    table.incident.emplace_back();
    while (j < half.size() && half[j].lo == half[i].lo && half[j].hi == half[i].hi) {
      table.tri_edges[half[j].tri][half[j].local] = id;
      table.incident.back().push_back(half[j]);
      ++j;
    }
    i = j;
  }
  return table;
}

std::string describe_edge(std::size_t a, std::size_t b) {
  std::ostringstream os;
  os << "edge (" << a << ", " << b << ")";
  return os.str();
}

}  // namespace

TriangleGeometry compute_triangle_geometry(const Vec3& p0, const Vec3& p1, const Vec3& p2) {
  TriangleGeometry g;
  const Vec3 c = cross(p1 - p0, p2 - p0);
  const double twice_area = norm(c);
  g.area = 0.5 * twice_area;
  if (twice_area == 0.0) return g;
  g.normal = c / twice_area;
  // grad(phi_i) = nu x e_i / (2A), e_i the edge opposite corner i taken
  // counter-clockwise.
  const std::array<Vec3, 3> opposite{p2 - p1, p0 - p2, p1 - p0};
  for (int i = 0; i < 3; ++i) g.gradients[i] = cross(g.normal, opposite[i]) / twice_area;
  return g;
}

SurfaceMesh build_mesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles,
                       MeshOptions options) {
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    for (std::size_t v : triangles[t]) {
      if (v >= vertices.size()) {
        throw std::out_of_range("triangle " + std::to_string(t) + " references vertex " +
                                std::to_string(v) + " of " + std::to_string(vertices.size()));
      }
    }
  }

  const EdgeTable table = make_edge_table(triangles);
  bool closed = true;
  for (std::size_t e = 0; e < table.edges.size(); ++e) {
    const auto& inc = table.incident[e];
    const auto [a, b] = table.edges[e];
    if (inc.size() > 2) {
      throw NonManifoldEdge(describe_edge(a, b) + " has " + std::to_string(inc.size()) +
                            " incident triangles");
    }
    if (inc.size() == 2 && inc[0].forward == inc[1].forward) {
      throw InconsistentOrientation(describe_edge(a, b) + " is traversed in the same direction by triangles " +
                                    std::to_string(inc[0].tri) + " and " + std::to_string(inc[1].tri));
    }
    if (inc.size() == 1) {
      closed = false;
      if (options.require_closed) {
        throw NonManifoldEdge(describe_edge(a, b) + " has a single incident triangle");
      }
    }
  }

  SurfaceMesh mesh;
  mesh.vertices_ = std::move(vertices);
  mesh.triangles_ = std::move(triangles);
  mesh.n_edges_ = table.edges.size();
  mesh.closed_ = closed && !mesh.triangles_.empty();

  auto compute_all = [&mesh] {
    mesh.geometry_.resize(mesh.triangles_.size());
    for (std::size_t t = 0; t < mesh.triangles_.size(); ++t) {
      const auto& tri = mesh.triangles_[t];
      mesh.geometry_[t] = compute_triangle_geometry(mesh.vertices_[tri[0]], mesh.vertices_[tri[1]],
                                                    mesh.vertices_[tri[2]]);
      if (!(mesh.geometry_[t].area > kMinTriangleArea)) {
        std::ostringstream os;
        os << "triangle " << t << " has area " << mesh.geometry_[t].area;
        throw DegenerateTriangle(os.str());
      }
    }
  };
  compute_all();

  if (mesh.closed_) {
    double signed_volume = 0.0;
    for (std::size_t t = 0; t < mesh.triangles_.size(); ++t) {
      const auto& tri = mesh.triangles_[t];
      const Vec3 centroid =
          (mesh.vertices_[tri[0]] + mesh.vertices_[tri[1]] + mesh.vertices_[tri[2]]) / 3.0;
      signed_volume += mesh.geometry_[t].area / 3.0 * dot(mesh.geometry_[t].normal, centroid);
    }
    if (signed_volume < 0.0) {
      for (auto& tri : mesh.triangles_) std::swap(tri[1], tri[2]);
      compute_all();
    }
  }
  return mesh;
}

SurfaceMesh with_vertices(const SurfaceMesh& mesh, std::vector<Vec3> vertices) {
  if (vertices.size() != mesh.n_vertices()) {
    throw std::invalid_argument("with_vertices: vertex count mismatch");
  }
  return build_mesh(std::move(vertices), mesh.triangles(),
                    MeshOptions{.require_closed = mesh.is_closed()});
}

const TriangleGeometry& triangle_geometry(const SurfaceMesh& mesh, std::size_t t) {
  return mesh.geometry(t);
}

Vec3 identity_projector(const Vec3& p) { return p; }

Vec3 unit_sphere_projector(const Vec3& p) { return p / std::sqrt(symmetric_norm_sq(p)); }

namespace {

SurfaceMesh bisect_pass(const SurfaceMesh& mesh, const Projector& projector) {
  const auto& verts = mesh.vertices();
  const auto& tris = mesh.triangles();
  const EdgeTable table = make_edge_table(tris);
  const std::size_t n_edges = table.edges.size();

  std::vector<double> length_sq(n_edges);
  for (std::size_t e = 0; e < n_edges; ++e) {
    length_sq[e] = symmetric_norm_sq(verts[table.edges[e][0]] - verts[table.edges[e][1]]);
  }

  // Local index of the refinement edge of each triangle. Edge ids follow the
  // sorted vertex pair, so the smaller id wins a tie.
  std::vector<int> longest(tris.size());
  for (std::size_t t = 0; t < tris.size(); ++t) {
    int best = 0;
    for (int k = 1; k < 3; ++k) {
      const std::size_t ek = table.tri_edges[t][k];
      const std::size_t eb = table.tri_edges[t][best];
      if (length_sq[ek] > length_sq[eb] || (length_sq[ek] == length_sq[eb] && ek < eb)) best = k;
    }
    longest[t] = best;
  }

  std::vector<char> marked(n_edges, 0);
  for (std::size_t t = 0; t < tris.size(); ++t) marked[table.tri_edges[t][longest[t]]] = 1;

  // Closure: a triangle with any marked edge must also split its longest edge.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      const auto& te = table.tri_edges[t];
      const bool any = marked[te[0]] || marked[te[1]] || marked[te[2]];
      if (any && !marked[te[longest[t]]]) {
        marked[te[longest[t]]] = 1;
        changed = true;
      }
    }
  }

  std::vector<Vec3> new_verts = verts;
  std::vector<std::size_t> midpoint(n_edges, 0);
  for (std::size_t e = 0; e < n_edges; ++e) {
    if (!marked[e]) continue;
    const Vec3 mid = 0.5 * (verts[table.edges[e][0]] + verts[table.edges[e][1]]);
    const Vec3 p = projector(mid);
    if (!is_finite(p)) {
      throw ProjectorFailure("projector returned a non-finite point for " +
                             describe_edge(table.edges[e][0], table.edges[e][1]));
    }
    midpoint[e] = new_verts.size();
    new_verts.push_back(p);
  }

  std::vector<Triangle> new_tris;
  new_tris.reserve(2 * tris.size());
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const auto& te = table.tri_edges[t];
    if (!marked[te[0]] && !marked[te[1]] && !marked[te[2]]) {
      new_tris.push_back(tris[t]);
      continue;
    }
    const int k = longest[t];
    const std::size_t p = tris[t][k];
    const std::size_t q = tris[t][(k + 1) % 3];
    const std::size_t r = tris[t][(k + 2) % 3];
    const std::size_t m = midpoint[te[k]];
    const std::size_t e_rp = te[(k + 2) % 3];
    const std::size_t e_qr = te[(k + 1) % 3];
    // Child (p, m, r) holds the old edge (r, p); child (m, q, r) holds (q, r).
    if (marked[e_rp]) {
      const std::size_t m1 = midpoint[e_rp];
      new_tris.push_back({r, m1, m});
      new_tris.push_back({m1, p, m});
    } else {
      new_tris.push_back({p, m, r});
    }
    if (marked[e_qr]) {
      const std::size_t m2 = midpoint[e_qr];
      new_tris.push_back({q, m2, m});
      new_tris.push_back({m2, r, m});
    } else {
      new_tris.push_back({m, q, r});
    }
  }

  return build_mesh(std::move(new_verts), std::move(new_tris),
                    MeshOptions{.require_closed = mesh.is_closed()});
}

}  // namespace

SurfaceMesh refine_bisect(const SurfaceMesh& mesh, int n_passes, const Projector& projector) {
  if (n_passes < 0) throw std::invalid_argument("refine_bisect: n_passes must be >= 0");
  SurfaceMesh current = mesh;
  for (int pass = 0; pass < n_passes; ++pass) current = bisect_pass(current, projector);
  return current;
}

std::vector<Vec3> vertex_normals(const SurfaceMesh& mesh) {
  std::vector<Vec3> normals(mesh.n_vertices());
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const auto& g = mesh.geometry(t);
    for (std::size_t v : mesh.triangles()[t]) normals[v] += g.area * g.normal;
  }
  for (std::size_t v = 0; v < normals.size(); ++v) {
    const double len = norm(normals[v]);
    if (len < 1e-12) throw ZeroNormal("vertex " + std::to_string(v));
    normals[v] = normals[v] / len;
  }
  return normals;
}

MeshStats stats(const SurfaceMesh& mesh) {
  MeshStats s;
  s.n_vertices = mesh.n_vertices();
  s.n_triangles = mesh.n_triangles();
  const auto& verts = mesh.vertices();
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles()[t];
    for (int k = 0; k < 3; ++k) {
      s.h_max = std::max(s.h_max, norm(verts[tri[k]] - verts[tri[(k + 1) % 3]]));
    }
    s.total_area += mesh.geometry(t).area;
  }
  return s;
}

long euler_characteristic(const SurfaceMesh& mesh) {
  return static_cast<long>(mesh.n_vertices()) - static_cast<long>(mesh.n_edges()) +
         static_cast<long>(mesh.n_triangles());
}

}  // namespace bleb
