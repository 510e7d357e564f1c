// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blebsim Authors

#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <random>

#include "blebsim/assembly.hpp"
#include "blebsim/error.hpp"
#include "blebsim/geometry.hpp"
#include "blebsim/solver.hpp"
#include "blebsim/sparse.hpp"
#include "blebsim/verify.hpp"

using namespace bleb;

namespace {

SparseMatrix dense_to_sparse(std::size_t n, const std::vector<double>& a) {
  std::vector<std::size_t> rp{0}, cols;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) cols.push_back(j);
    rp.push_back(cols.size());
  }
  SparseMatrix m(n, rp, cols);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.add(i, j, a[i * n + j]);
  return m;
}

}  // namespace

TEST(Sparse, MultiplyAndFind) {
  const SparseMatrix m = dense_to_sparse(2, {4, 1, 1, 3});
  EXPECT_EQ(m.at(0, 1), 1.0);
  const auto y = m.multiply(std::vector<double>{1, 2});
  EXPECT_EQ(y, (std::vector<double>{6, 7}));
  EXPECT_EQ(m.sum(), 9.0);
  EXPECT_EQ(m.quadratic_form(std::vector<double>{1, 1}), 9.0);
}

TEST(Solver, TwoByTwoMatchesHandSolution) {
  // [[4,1],[1,3]] x = [1,2]  ->  x = [1/11, 7/11]
  const SparseMatrix m = dense_to_sparse(2, {4, 1, 1, 3});
  std::vector<double> x(2, 0.0);
  const CgResult r = cg_solve(matrix_operator(m), std::vector<double>{1, 2}, x);
  EXPECT_NEAR(x[0], 1.0 / 11.0, 1e-14);
  EXPECT_NEAR(x[1], 7.0 / 11.0, 1e-14);
  EXPECT_LE(r.iterations, 2);
}

TEST(Solver, ZeroRightHandSideGivesZero) {
  const SparseMatrix m = dense_to_sparse(2, {4, 1, 1, 3});
  std::vector<double> x = {5, 5};
  const CgResult r = cg_solve(matrix_operator(m), std::vector<double>{0, 0}, x);
  EXPECT_EQ(x, (std::vector<double>{0, 0}));
  EXPECT_EQ(r.iterations, 0);
}

TEST(Solver, IterationLimitReported) {
  const SurfaceMesh mesh = cube_sphere(6);
  const SparseMatrix s = assemble_stiffness(mesh);
  SparseMatrix a = assemble_mass(mesh);
  a.add_scaled(s, 1.0);
  std::vector<double> b(mesh.n_vertices(), 1.0), x(mesh.n_vertices(), 0.0);
  b[0] = 7.0;
  CgOptions opts;
  opts.max_iter = 2;
  EXPECT_THROW(cg_solve(matrix_operator(a), b, x, opts), NoConvergence);
}

TEST(Solver, IndefiniteOperatorBreaksDown) {
  const SparseMatrix m = dense_to_sparse(2, {1, 0, 0, -1});
  std::vector<double> x(2, 0.0);
  EXPECT_THROW(cg_solve(matrix_operator(m), std::vector<double>{1, 1}, x), NoConvergence);
}

TEST(Solver, JacobiRejectsZeroDiagonal) {
  EXPECT_THROW(jacobi_precond(std::vector<double>{1.0, 0.0}), ZeroDiagonal);
}

TEST(Solver, ModeParsing) {
  EXPECT_EQ(parse_solver_mode("lumped"), SolverMode::lumped);
  EXPECT_THROW(parse_solver_mode("direct"), BadValue);
}

TEST(Solver, SchurSolveMatchesDenseOracleOnRandomSystems) {
  const SurfaceMesh mesh = cube_sphere(3);
  auto M = std::make_shared<SparseMatrix>(assemble_mass(mesh));
  auto S = std::make_shared<SparseMatrix>(assemble_stiffness(mesh));
  auto ML = std::make_shared<std::vector<double>>(lump(*M));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (double lambda_b : {0.0, 0.01, 1.0}) {
    for (SolverMode mode : {SolverMode::consistent, SolverMode::lumped}) {
      StepSystem sys;
      sys.A = *M;
      for (double& v : sys.A.values()) v *= 100.0;
      sys.A.add_scaled(*S, 0.3);
      sys.S = S;
      sys.M = M;
      sys.M_lumped = ML;
      sys.lambda_b = lambda_b;
      for (auto& r : sys.rhs) {
        r.resize(mesh.n_vertices());
        for (double& v : r) v = uni(rng);
      }
      StepSolveOptions opts;
      opts.mode = mode;
      const StepSolution fast = schur_step_solve(sys, opts);
      const StepSolution dense = dense_oracle_solve(sys, mode);
      EXPECT_LT(fast.residual, 1e-9);
      for (int c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < mesh.n_vertices(); ++i) {
          EXPECT_NEAR(fast.u[c][i], dense.u[c][i], 1e-8 * (1.0 + std::abs(dense.u[c][i])));
          EXPECT_NEAR(fast.w[c][i], dense.w[c][i], 1e-8 * (1.0 + std::abs(dense.w[c][i])));
        }
      }
    }
  }
}
