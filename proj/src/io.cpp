// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blebsim Authors

#include "blebsim/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "blebsim/error.hpp"

namespace bleb {

namespace {

// Line reader that skips blank lines and '#' comments and tracks line numbers.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (std::any_of(line.begin(), line.end(), [](unsigned char c) { return !std::isspace(c); })) {
        return true;
      }
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& reason) const {
    throw ParseError("line " + std::to_string(number_) + ": " + reason);
  }

  int number() const { return number_; }

 private:
  std::istream& in_;
  int number_ = 0;
};

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext;
}

// Resolves an OBJ index token ("7", "7/2/1", "-1") to a zero-based index.
std::size_t obj_index(const std::string& token, std::size_t n_vertices, const LineReader& reader) {
  const std::string head = token.substr(0, token.find('/'));
  long idx = 0;
  try {
    std::size_t used = 0;
    idx = std::stol(head, &used);
    if (used != head.size()) reader.fail("bad face index '" + token + "'");
  } catch (const std::logic_error&) {
    reader.fail("bad face index '" + token + "'");
  }
  if (idx < 0) idx += static_cast<long>(n_vertices) + 1;
  if (idx < 1 || static_cast<std::size_t>(idx) > n_vertices) {
    reader.fail("face index " + head + " out of range");
  }
  return static_cast<std::size_t>(idx - 1);
}

}  // namespace

SurfaceMesh read_off(std::istream& in, MeshOptions options) {
  LineReader reader(in);
  std::string line;
  if (!reader.next(line)) reader.fail("empty file, expected OFF header");
  std::istringstream header(line);
  std::string magic;
  header >> magic;
  if (magic != "OFF") reader.fail("expected 'OFF' header, got '" + magic + "'");

  long nv = -1, nf = -1, ne = 0;
  if (!(header >> nv >> nf)) {
    if (!reader.next(line)) reader.fail("missing vertex/face counts");
    std::istringstream counts(line);
    if (!(counts >> nv >> nf)) reader.fail("expected 'V F E' counts");
    counts >> ne;
  }
  if (nv < 0 || nf < 0) reader.fail("negative counts");

  std::vector<Vec3> vertices;
  vertices.reserve(static_cast<std::size_t>(nv));
  for (long i = 0; i < nv; ++i) {
    if (!reader.next(line)) reader.fail("unexpected end of file in vertex list");
    std::istringstream ls(line);
    Vec3 p;
    if (!(ls >> p.x >> p.y >> p.z)) reader.fail("expected three vertex coordinates");
    vertices.push_back(p);
  }

  std::vector<Triangle> triangles;
  triangles.reserve(static_cast<std::size_t>(nf));
  for (long f = 0; f < nf; ++f) {
    if (!reader.next(line)) reader.fail("unexpected end of file in face list");
    std::istringstream ls(line);
    long count = 0;
    if (!(ls >> count)) reader.fail("expected face vertex count");
    if (count != 3) {
      throw UnsupportedFace("line " + std::to_string(reader.number()) + ": face with " +
                            std::to_string(count) + " vertices");
    }
    long idx[3];
    if (!(ls >> idx[0] >> idx[1] >> idx[2])) reader.fail("expected three face indices");
    Triangle tri;
    for (int k = 0; k < 3; ++k) {
      if (idx[k] < 0 || idx[k] >= nv) reader.fail("face index " + std::to_string(idx[k]) + " out of range");
      tri[k] = static_cast<std::size_t>(idx[k]);
    }
    triangles.push_back(tri);
  }
  return build_mesh(std::move(vertices), std::move(triangles), options);
}

SurfaceMesh read_obj(std::istream& in, MeshOptions options) {
  LineReader reader(in);
  std::string line;
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
  while (reader.next(line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      Vec3 p;
      if (!(ls >> p.x >> p.y >> p.z)) reader.fail("expected three vertex coordinates");
      vertices.push_back(p);
    } else if (tag == "f") {
      std::vector<std::string> tokens;
      for (std::string tok; ls >> tok;) tokens.push_back(tok);
      if (tokens.size() != 3) {
        throw UnsupportedFace("line " + std::to_string(reader.number()) + ": face with " +
                              std::to_string(tokens.size()) + " vertices");
      }
      Triangle tri;
      for (int k = 0; k < 3; ++k) tri[k] = obj_index(tokens[k], vertices.size(), reader);
      triangles.push_back(tri);
    }
  }
  return build_mesh(std::move(vertices), std::move(triangles), options);
}

SurfaceMesh read_mesh(const std::filesystem::path& path, MeshOptions options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  const std::string ext = lower_extension(path);
  try {
    if (ext == ".off") return read_off(in, options);
    if (ext == ".obj") return read_obj(in, options);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  throw ParseError("unsupported mesh extension '" + ext + "' (expected .off or .obj)");
}

void write_off(std::ostream& out, const SurfaceMesh& mesh) {
  out << std::setprecision(17);
  out << "OFF\n" << mesh.n_vertices() << ' ' << mesh.n_triangles() << ' ' << mesh.n_edges() << '\n';
  for (const Vec3& p : mesh.vertices()) out << p.x << ' ' << p.y << ' ' << p.z << '\n';
  for (const Triangle& t : mesh.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

void write_off(const std::filesystem::path& path, const SurfaceMesh& mesh) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  write_off(out, mesh);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void write_vtk(std::ostream& out, const SurfaceMesh& mesh, const SimState& state) {
  const std::size_t n = mesh.n_vertices();
  const std::size_t f = mesh.n_triangles();
  out << std::setprecision(17);
  out << "# vtk DataFile Version 3.0\n";
  out << "blebsim step " << state.step << " time " << state.time << '\n';
  out << "ASCII\nDATASET POLYDATA\n";
  out << "POINTS " << n << " double\n";
  for (const Vec3& p : state.U) out << p.x << ' ' << p.y << ' ' << p.z << '\n';
  out << "POLYGONS " << f << ' ' << 4 * f << '\n';
  for (const Triangle& t : mesh.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "POINT_DATA " << n << '\n';
  out << "VECTORS curvature double\n";
  for (const Vec3& w : state.W) out << w.x << ' ' << w.y << ' ' << w.z << '\n';
  out << "SCALARS dist_to_cortex double 1\nLOOKUP_TABLE default\n";
  for (double d : state.distance) out << d << '\n';
  out << "SCALARS linker_intact int 1\nLOOKUP_TABLE default\n";
  for (char c : state.linker_intact) out << (c ? 1 : 0) << '\n';
}

void write_vtk(const std::filesystem::path& path, const SurfaceMesh& mesh, const SimState& state) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  write_vtk(out, mesh, state);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace bleb
