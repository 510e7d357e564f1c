// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blebsim Authors

#pragma once

#include <filesystem>
#include <iosfwd>

#include "blebsim/mesh.hpp"
#include "blebsim/sim.hpp"

namespace bleb {

/// Reads a triangle mesh, format chosen by extension (.off or .obj).
///
/// OFF: `OFF`, then `V F E`, V coordinate lines and F lines `3 i j k` with
/// zero-based indices. OBJ: `v x y z` and `f i j k` (one-based, `i/t/n`
/// forms accepted, other records ignored). Throws ParseError with the line
/// number, UnsupportedFace for non-triangles, and the build_mesh errors.
SurfaceMesh read_mesh(const std::filesystem::path& path, MeshOptions options = {});
SurfaceMesh read_off(std::istream& in, MeshOptions options = {});
SurfaceMesh read_obj(std::istream& in, MeshOptions options = {});

// Coordinates are printed with 17 significant digits.
void write_off(std::ostream& out, const SurfaceMesh& mesh);
void write_off(const std::filesystem::path& path, const SurfaceMesh& mesh);

/// Legacy ASCII VTK polydata of the deformed surface with point data
/// `curvature` (W), `dist_to_cortex` (|U - u_c|) and `linker_intact` (0/1).
void write_vtk(std::ostream& out, const SurfaceMesh& mesh, const SimState& state);
void write_vtk(const std::filesystem::path& path, const SurfaceMesh& mesh, const SimState& state);

}  // namespace bleb
