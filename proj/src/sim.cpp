// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blebsim Authors

#include "blebsim/sim.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "blebsim/error.hpp"

namespace bleb {

StepOperators assemble_operators(const SurfaceMesh& mesh) {
  StepOperators ops;
  auto m = std::make_shared<SparseMatrix>(assemble_mass(mesh));
  ops.M_lumped = std::make_shared<std::vector<double>>(lump(*m));
  ops.M = std::move(m);
  ops.S = std::make_shared<SparseMatrix>(assemble_stiffness(mesh));
  return ops;
}

void update_linker_state(SimState& state, const ParamSet& params) {
  const std::size_t n = state.U.size();
  state.distance.resize(n);
  state.linker_intact.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    state.distance[i] = norm(state.U[i] - state.cortex.points[i]);
    state.linker_intact[i] = state.distance[i] <= params.u_B ? 1 : 0;
  }
}

SimState initial_state(const SurfaceMesh& mesh, const StepOperators& ops, const ParamSet& params) {
  SimState s;
  s.U = mesh.vertices();
  s.cortex = build_cortex(mesh, params.l0);
  s.W.assign(mesh.n_vertices(), Vec3{});
  const LinearOperator m_op = matrix_operator(*ops.M);
  const LinearOperator precond = jacobi_precond(*ops.M);
  CgOptions cg;
  cg.rel_tol = 1e-12;
  cg.preconditioner = &precond;
  for (int c = 0; c < 3; ++c) {
    const std::vector<double> su = ops.S->multiply(component(s.U, c));
    std::vector<double> w(su.size(), 0.0);
    cg_solve(m_op, su, w, cg);
    set_component(s.W, c, w);
  }
  update_linker_state(s, params);
  return s;
}

StepSystem build_step_system(const SimState& state, const SurfaceMesh& mesh, const StepOperators& ops,
                             const ForceModel& model) {
  const ParamSet& p = model.params();
  const std::size_t n = mesh.n_vertices();
  const auto& uc = state.cortex.points;

  std::vector<double> stiffness(n);
  for (std::size_t i = 0; i < n; ++i) stiffness[i] = model.coupling_stiffness(norm(state.U[i] - uc[i]));
  const SparseMatrix m_lambda = assemble_weighted_mass(mesh, stiffness);

  StepSystem sys;
  sys.M = ops.M;
  sys.S = ops.S;
  sys.M_lumped = ops.M_lumped;
  sys.lambda_b = p.lambda_b;
  const SparseMatrix* parts[] = {ops.M.get(), &m_lambda, ops.S.get()};
  const double coeff[] = {1.0 / p.tau, 1.0, model.implicit_tension()};
  sys.A = combine(parts, coeff);

  VectorField load = multiply_field(*ops.M, state.U);
  for (Vec3& v : load) v *= 1.0 / p.tau;

  const double implicit = model.implicit_tension();
  const VectorField tension = assemble_gradient_load(
      mesh, state.U, [&model, implicit](const Mat3& a) { return implicit - model.tension_coefficient(a); });
  for (std::size_t i = 0; i < n; ++i) load[i] += tension[i];

  bool any_spring = false;
  for (double s : stiffness) any_spring = any_spring || s != 0.0;
  if (any_spring) {
    VectorField target(n);
    for (std::size_t i = 0; i < n; ++i) target[i] = model.coupling_target(state.U[i], uc[i]);
    const VectorField pull = multiply_field(m_lambda, target);
    for (std::size_t i = 0; i < n; ++i) load[i] += pull[i];
  }

  if (model.has_pressure()) {
    const VectorField push = pressure_force(mesh, state.U, p, model.mode());
    for (std::size_t i = 0; i < n; ++i) load[i] += push[i];
  }

  if (model.mode() == ForceMode::manufactured) {
    VectorField k(n);
    for (std::size_t i = 0; i < n; ++i) k[i] = -model.coupling(state.U[i], uc[i]);
    const VectorField f = multiply_field(*ops.M, k);
    for (std::size_t i = 0; i < n; ++i) load[i] += f[i];
  }

  for (int c = 0; c < 3; ++c) {
    sys.rhs[c] = component(load, c);
    sys.guess[c] = component(state.U, c);
  }
  return sys;
}

SimState time_step(const SimState& state, const SurfaceMesh& mesh, const StepOperators& ops,
                   const ForceModel& model, const StepSolveOptions& solve, StepReport* report) {
  const auto start = std::chrono::steady_clock::now();
  const long next = state.step + 1;
  StepSolution sol;
  try {
    const StepSystem sys = build_step_system(state, mesh, ops, model);
    sol = schur_step_solve(sys, solve);
  } catch (const Error& e) {
    throw SolverFailure(e.what(), next);
  }
  if (!(sol.residual <= kMaxStepResidual)) {
    std::ostringstream os;
    os << "block residual " << sol.residual << " exceeds " << kMaxStepResidual;
    throw SolverFailure(os.str(), next);
  }

  SimState out;
  out.step = next;
  out.time = static_cast<double>(next) * model.params().tau;
  out.cortex = state.cortex;
  out.U.resize(mesh.n_vertices());
  out.W.resize(mesh.n_vertices());
  for (int c = 0; c < 3; ++c) {
    set_component(out.U, c, sol.u[c]);
    set_component(out.W, c, sol.w[c]);
  }
  for (std::size_t i = 0; i < out.U.size(); ++i) {
    if (!is_finite(out.U[i]) || !is_finite(out.W[i])) {
      throw SolverFailure("non-finite value at vertex " + std::to_string(i), next);
    }
  }
  update_linker_state(out, model.params());

  if (report) {
    report->step = next;
    report->time = out.time;
    report->residual = sol.residual;
    report->outer_iterations = sol.outer_iterations;
    report->wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return out;
}

long step_count(double t_end, double tau) {
  const double ratio = t_end / tau;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, nearest)) return static_cast<long>(nearest);
  return static_cast<long>(std::ceil(ratio));
}

SimState run(const SurfaceMesh& mesh, const ForceModel& model, const RunOptions& options,
             const OutputHook& hook) {
  const ParamSet& p = model.params();
  p.validate();
  if (options.output_every < 1) throw InvariantViolation("output_every must be >= 1");

  const StepOperators ops = assemble_operators(mesh);
  SimState state = initial_state(mesh, ops, p);
  if (hook) hook(state, mesh);
  long last_output = 0;

  const long n_steps = step_count(p.t_end, p.tau);
  for (long m = 0; m < n_steps; ++m) {
    StepReport report;
    try {
      state = time_step(state, mesh, ops, model, options.solve, &report);
    } catch (const SolverFailure&) {
      if (hook && last_output != state.step) hook(state, mesh);
      throw;
    }
    if (options.on_step) options.on_step(report);
    if (hook && (state.step % options.output_every == 0 || m + 1 == n_steps)) {
      hook(state, mesh);
      last_output = state.step;
    }
  }
  return state;
}

}  // namespace bleb
