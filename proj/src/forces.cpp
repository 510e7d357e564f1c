// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blebsim Authors

#include "blebsim/forces.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "blebsim/error.hpp"

namespace bleb {

namespace {

constexpr double kDirectionGuard = 1e-12;
constexpr double kVolumeGuard = 1e-10;

double heaviside(double r) { return r >= 0.0 ? 1.0 : 0.0; }

double logistic_step(double r, double eps) { return 1.0 / (1.0 + std::exp(-2.0 * r / eps)); }

}  // namespace

void ParamSet::validate() const {
  const std::pair<const char*, double> fields[] = {
      {"x0", x0},   {"lambda_b", lambda_b}, {"lambda_l", lambda_l}, {"l0", l0},
      {"u_B", u_B}, {"k_L", k_L},           {"u_R", u_R},           {"lambda_p", lambda_p},
      {"epsilon", epsilon}, {"tau", tau},   {"t_end", t_end}};
  for (const auto& [name, value] : fields) {
    if (!std::isfinite(value) || value < 0.0) {
      std::ostringstream os;
      os << name << " = " << value << " must be finite and >= 0";
      throw InvariantViolation(os.str());
    }
  }
  if (!(0.0 < u_R && u_R < l0 && l0 < u_B)) {
    std::ostringstream os;
    os << "require 0 < u_R < l0 < u_B, got u_R = " << u_R << ", l0 = " << l0 << ", u_B = " << u_B;
    throw InvariantViolation(os.str());
  }
  if (!(tau > 0.0)) throw InvariantViolation("tau must be > 0");
  if (!(t_end >= tau)) throw InvariantViolation("t_end must be >= tau");
}

ParamSet ParamSet::table1() { return ParamSet{}; }

ParamSet ParamSet::table2() {
  ParamSet p;
  p.x0 = 0.95;
  p.lambda_b = 0.125;
  p.lambda_l = 0.72;
  p.l0 = 0.2;
  p.u_B = 0.28;
  p.k_L = 500.0;
  p.u_R = 0.15;
  p.lambda_p = 150.0;
  p.tau = 0.02;
  p.t_end = 20.0;
  return p;
}

ForceMode parse_force_mode(std::string_view name) {
  if (name == "sharp") return ForceMode::sharp;
  if (name == "regularized") return ForceMode::regularized;
  if (name == "manufactured") return ForceMode::manufactured;
  throw BadMode("unknown force model '" + std::string(name) + "'");
}

std::string_view to_string(ForceMode mode) {
  switch (mode) {
    case ForceMode::sharp:
      return "sharp";
    case ForceMode::regularized:
      return "regularized";
    case ForceMode::manufactured:
      return "manufactured";
  }
  return "unknown";
}

double lambda_coupling(double dist, const ParamSet& p, ForceMode mode) {
  switch (mode) {
    case ForceMode::sharp:
      return p.lambda_l * (1.0 + p.k_L * heaviside(p.u_R - dist)) * heaviside(p.u_B - dist);
    case ForceMode::regularized:
      return p.lambda_l * (1.0 + p.k_L * logistic_step(p.u_R - dist, p.epsilon)) *
             logistic_step(p.u_B - dist, p.epsilon);
    case ForceMode::manufactured:
      return 0.0;
  }
  return 0.0;
}

Vec3 coupling_target(const Vec3& u, const Vec3& uc, const ParamSet& p, ForceMode mode) {
  const Vec3 d = u - uc;
  const double len = norm(d);
  const double denom = mode == ForceMode::regularized ? len + p.epsilon : std::max(len, kDirectionGuard);
  return uc + (p.l0 / denom) * d;
}

VectorField pressure_force(const SurfaceMesh& mesh, std::span<const Vec3> u, const ParamSet& p,
                           ForceMode mode) {
  VectorField load(mesh.n_vertices());
  if (p.lambda_p == 0.0 || mode == ForceMode::manufactured) return load;
  const double vol = volume(mesh, u);
  const double denom = mode == ForceMode::regularized ? vol + p.epsilon : std::max(vol, kVolumeGuard);
  const double pressure = p.lambda_p / denom;
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const auto& g = mesh.geometry(t);
    const Vec3 f = (pressure * g.area / 3.0) * g.normal;
    for (std::size_t v : mesh.triangles()[t]) load[v] += f;
  }
  return load;
}

double ForceModel::coupling_stiffness(double dist) const {
  return lambda_coupling(dist, params_, mode_);
}

Vec3 ForceModel::coupling_target(const Vec3& u, const Vec3& uc) const {
  return bleb::coupling_target(u, uc, params_, mode_);
}

Vec3 ForceModel::coupling(const Vec3& a, const Vec3& uc) const {
  if (mode_ == ForceMode::manufactured) return -3.0 * a;
  return coupling_stiffness(norm(a - uc)) * (a - coupling_target(a, uc));
}

double ForceModel::tension_coefficient(const Mat3& grad) const {
  const double scale = std::numbers::sqrt2 * params_.x0;
  switch (mode_) {
    case ForceMode::sharp:
      return 1.0 - scale / std::max(std::sqrt(frobenius_sq(grad)), kDirectionGuard);
    case ForceMode::regularized:
      return 1.0 - scale / std::sqrt(frobenius_sq(grad) + params_.epsilon);
    case ForceMode::manufactured:
      return 0.0;
  }
  return 0.0;
}

ForceModel make_model(ForceMode mode, const ParamSet& params) {
  if (mode == ForceMode::regularized && !(params.epsilon > 0.0)) {
    throw MissingEpsilon("the regularized model needs epsilon > 0");
  }
  return ForceModel(mode, params);
}

}  // namespace bleb
