// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blebsim Authors

#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "blebsim/assembly.hpp"
#include "blebsim/forces.hpp"
#include "blebsim/geometry.hpp"
#include "blebsim/mesh.hpp"
#include "blebsim/solver.hpp"

namespace bleb {

struct SimState {
  long step = 0;
  double time = 0.0;
  VectorField U;  // positions
  VectorField W;  // discrete curvature
  CortexField cortex;
  std::vector<double> distance;    // |U - u_c| per vertex
  std::vector<char> linker_intact;  // distance <= u_B
};

/// Matrices that depend on the reference mesh only.
struct StepOperators {
  std::shared_ptr<const SparseMatrix> M;
  std::shared_ptr<const SparseMatrix> S;
  std::shared_ptr<const std::vector<double>> M_lumped;
};

StepOperators assemble_operators(const SurfaceMesh& mesh);

/// U = reference positions, cortex offset by l0 along the vertex normals,
/// W = M^-1 S U.
SimState initial_state(const SurfaceMesh& mesh, const StepOperators& ops, const ParamSet& params);

void update_linker_state(SimState& state, const ParamSet& params);

/// Semi-implicit step matrices and right-hand sides from the state at t^m:
///   A   = M / tau + M_lambda + S
///   rhs = M U / tau + tension(U) + M_lambda target(U) + pressure(U)
/// where every coefficient (spring stiffness, target, tension factor,
/// volume) is evaluated at U^m. The manufactured model drops S and replaces
/// the forces by the explicit load -M k(U^m).
StepSystem build_step_system(const SimState& state, const SurfaceMesh& mesh, const StepOperators& ops,
                             const ForceModel& model);

struct StepReport {
  long step = 0;  // index of the new time level
  double time = 0.0;
  double residual = 0.0;
  int outer_iterations = 0;
  double wall_seconds = 0.0;
};

inline constexpr double kMaxStepResidual = 1e-8;

/// Advances one step. Throws SolverFailure if the solve fails or the block
/// residual exceeds kMaxStepResidual.
SimState time_step(const SimState& state, const SurfaceMesh& mesh, const StepOperators& ops,
                   const ForceModel& model, const StepSolveOptions& solve = {},
                   StepReport* report = nullptr);

long step_count(double t_end, double tau);

using OutputHook = std::function<void(const SimState&, const SurfaceMesh&)>;

struct RunOptions {
  int output_every = 40;
  StepSolveOptions solve;
  std::function<void(const StepReport&)> on_step;
};

/// Runs ceil(t_end / tau) steps from the initial state. The hook sees the
/// initial state, every `output_every`-th step and the final step. On a
/// solver failure the last good state is handed to the hook before the
/// SolverFailure propagates.
SimState run(const SurfaceMesh& mesh, const ForceModel& model, const RunOptions& options,
             const OutputHook& hook = {});

}  // namespace bleb
