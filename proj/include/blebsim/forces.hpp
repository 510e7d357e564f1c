// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blebsim Authors

#pragma once

#include <span>
#include <string>
#include <string_view>

#include "blebsim/assembly.hpp"
#include "blebsim/mesh.hpp"
#include "blebsim/vec3.hpp"

namespace bleb {

/// Non-dimensional model constants and time grid. Defaults are the standard
/// discocyte parameter set.
struct ParamSet {
  double x0 = 0.95;         // resting-length factor of the tension springs
  double lambda_b = 0.005;  // bending
  double lambda_l = 18.0;   // linker spring strength
  double l0 = 0.04;         // linker rest length
  double u_B = 0.056;       // linker breaking length
  double k_L = 500.0;       // repulsion multiplier below u_R
  double u_R = 0.0075;      // repulsion distance
  double lambda_p = 22.5;   // pressure
  double epsilon = 0.0;     // regularization, 0 selects the sharp model
  double tau = 0.0025;      // time step
  double t_end = 2.0;

  /// Throws InvariantViolation unless all values are >= 0,
  /// 0 < u_R < l0 < u_B, tau > 0 and t_end >= tau.
  void validate() const;

  static ParamSet table1();
  static ParamSet table2();

  friend bool operator==(const ParamSet&, const ParamSet&) = default;
};

enum class ForceMode { sharp, regularized, manufactured };

ForceMode parse_force_mode(std::string_view name);  // throws BadMode
std::string_view to_string(ForceMode mode);

/// Linker spring coefficient at membrane-cortex distance `dist`.
/// Sharp: lambda_l (1 + k_L H(u_R - d)) H(u_B - d) with H(0) = 1.
/// Regularized: logistic smoothing of both Heaviside factors with width epsilon.
double lambda_coupling(double dist, const ParamSet& params, ForceMode mode);

/// u_c + l0 (U - u_c) / |U - u_c|, the point at rest length from the cortex
/// in the current linker direction.
Vec3 coupling_target(const Vec3& u, const Vec3& uc, const ParamSet& params, ForceMode mode);

/// Load vector of the pressure term lambda_p / V_h(U) nu along the reference
/// normals: load_i = sum_T lambda_p / V * area_T / 3 * nu_T.
VectorField pressure_force(const SurfaceMesh& mesh, std::span<const Vec3> u, const ParamSet& params,
                           ForceMode mode);

/// Force laws of one model instance: the coupling term k(y, a) and the
/// tension derivative psi'(A) = tension_coefficient(A) * A.
///
/// Sign convention: k enters the evolution equation on the left-hand side,
/// u_t + lambda_b Delta^2 u - div psi'(grad u) + k(u) = 0, so the force
/// density acting on the membrane is -k.
class ForceModel {
 public:
  ForceModel(ForceMode mode, const ParamSet& params) : mode_(mode), params_(params) {}

  ForceMode mode() const { return mode_; }
  const ParamSet& params() const { return params_; }

  // Spring coefficient treated implicitly; zero for the manufactured model.
  double coupling_stiffness(double dist) const;
  Vec3 coupling_target(const Vec3& u, const Vec3& uc) const;

  // k(y, a) without the pressure contribution; uc is the cortex point of y.
  Vec3 coupling(const Vec3& a, const Vec3& uc) const;

  double tension_coefficient(const Mat3& grad) const;

  // Weight of the linear part of psi' taken implicitly as a stiffness term.
  double implicit_tension() const { return mode_ == ForceMode::manufactured ? 0.0 : 1.0; }
  bool has_pressure() const { return mode_ != ForceMode::manufactured; }

 private:
  ForceMode mode_;
  ParamSet params_;
};

/// Throws MissingEpsilon for the regularized model without epsilon > 0.
ForceModel make_model(ForceMode mode, const ParamSet& params);

}  // namespace bleb
