// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blebsim Authors

#pragma once

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "blebsim/sparse.hpp"

namespace bleb {

using LinearOperator = std::function<void(std::span<const double> in, std::span<double> out)>;

struct CgResult {
  int iterations = 0;
  double relative_residual = 0.0;  // ||b - Op x|| / ||b||, recomputed at exit
};

struct CgOptions {
  double rel_tol = 1e-10;
  int max_iter = 0;  // 0 means 10 * n
  const LinearOperator* preconditioner = nullptr;
  // Called after every iteration with the current iterate.
  std::function<void(int, std::span<const double>)> monitor;
};

/// Preconditioned conjugate gradients for an SPD operator. `x` holds the
/// initial guess and receives the solution. Throws NoConvergence when
/// max_iter is reached or when the operator shows a non-positive curvature
/// direction (p^T Op p <= 0).
CgResult cg_solve(const LinearOperator& op, std::span<const double> b, std::span<double> x,
                  const CgOptions& options = {});

LinearOperator matrix_operator(const SparseMatrix& a);

/// Divides by the given diagonal. Throws ZeroDiagonal for entries <= 0.
LinearOperator jacobi_precond(std::vector<double> diagonal);
LinearOperator jacobi_precond(const SparseMatrix& a);

enum class SolverMode { consistent, lumped };

SolverMode parse_solver_mode(std::string_view name);
std::string_view to_string(SolverMode mode);

/// One time step of the mixed scheme, for each coordinate c:
///
///   A u_c + lambda_b S w_c = rhs_c
///   S u_c - M w_c         = 0
///
/// with A = M / tau + M_lambda + S (SPD). S and M are shared across steps.
struct StepSystem {
  SparseMatrix A;
  std::shared_ptr<const SparseMatrix> S;
  std::shared_ptr<const SparseMatrix> M;
  std::shared_ptr<const std::vector<double>> M_lumped;
  double lambda_b = 0.0;
  std::array<std::vector<double>, 3> rhs;
  // Optional warm start for u (previous time level).
  std::array<std::vector<double>, 3> guess;
};

struct StepSolveOptions {
  SolverMode mode = SolverMode::consistent;
  double outer_tol = 1e-10;
  double inner_tol = 1e-12;
  int max_iter = 0;  // 0 means 10 * N for the outer solve
};

struct StepSolution {
  std::array<std::vector<double>, 3> u;
  std::array<std::vector<double>, 3> w;
  int outer_iterations = 0;  // summed over coordinates
  double residual = 0.0;     // max relative block residual over coordinates
};

/// Eliminates w and solves (A + lambda_b S M^-1 S) u = rhs with CG, then
/// recovers w = M^-1 S u. M^-1 is an inner CG solve with the consistent
/// mass (consistent mode) or the inverse lumped diagonal (lumped mode).
/// Throws NoConvergence naming the failing stage.
StepSolution schur_step_solve(const StepSystem& sys, const StepSolveOptions& options = {});

/// Relative residual of the 2x2 block system for one coordinate.
double block_residual(const StepSystem& sys, SolverMode mode, std::span<const double> rhs,
                      std::span<const double> u, std::span<const double> w);

}  // namespace bleb
