// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blebsim Authors

#pragma once

#include <string>
#include <vector>

#include "blebsim/sim.hpp"

namespace bleb {

// A convergence level halves the mesh size: level l is the cube-sphere after
// 2 l bisection passes.
inline constexpr int kPassesPerLevel = 2;

struct EocRow {
  int level = 0;
  double h_max = 0.0;
  std::vector<double> errors;  // one per quantity
};

struct EocReport {
  std::vector<std::string> quantities;
  std::vector<EocRow> rows;

  // log2(e_l / e_{l+1}) for quantity q, one entry per consecutive pair.
  std::vector<double> eoc(std::size_t q) const;
  // Minimum over the last `pairs` consecutive orders.
  double min_eoc(std::size_t q, std::size_t pairs) const;
};

/// Direct solve of the full 2N x 2N block system [[A, lambda_b S], [S, -M]]
/// per coordinate by Gaussian elimination with partial pivoting. Throws
/// SingularSystem on a vanishing pivot.
StepSolution dense_oracle_solve(const StepSystem& sys, SolverMode mode = SolverMode::consistent);

/// One step of the scheme solved densely; limited to 500 vertices.
std::pair<VectorField, VectorField> dense_oracle_step(const SimState& state, const SurfaceMesh& mesh,
                                                      const StepOperators& ops, const ForceModel& model);

struct ManufacturedOptions {
  double tau_factor = 1.0;  // tau = tau_factor * h_max^2, adjusted to divide t_end
  double t_end = 0.1;
  SolverMode solver = SolverMode::consistent;
};

/// Unit-sphere manufactured solution u = e^-t id, w = 2 e^-t id for
/// k(a) = -3a, psi' = 0 and unit bending. Quantities:
///   u_max_mass  max over steps of ||U^m - e^-t_m id||_M
///   w_l2_mass   (sum_m tau ||W^m - 2 e^-t_m id||_M^2)^(1/2)
///   w_identity  ||W - 2U||_M / ||W||_M at the final step
EocReport manufactured_convergence(const std::vector<int>& levels, const ManufacturedOptions& options = {});

/// Quantities: |area - 4 pi| and |V_h(id) - 4 pi / 3| on the cube-sphere.
EocReport geometric_convergence(const std::vector<int>& levels);

struct IdentityCheck {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_passed() const;
};

/// Exact algebraic identities of the discrete operators:
///   mass_sum          |sum M - area| / area                    <= 1e-12
///   stiffness_kernel  max |S 1|                                <= 1e-10
///   gradient_identity |sum_c id_c^T S id_c - 2 area| / 2 area <= 1e-12
///   tension_at_rest   max |S id - tension_rhs(id, x0 = 1)|     <= 1e-10
IdentityReport identity_suite(const SurfaceMesh& mesh);

}  // namespace bleb
