// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blebsim Authors

#include "blebsim/solver.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "blebsim/error.hpp"

namespace bleb {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace

CgResult cg_solve(const LinearOperator& op, std::span<const double> b, std::span<double> x,
                  const CgOptions& options) {
  const std::size_t n = b.size();
  if (x.size() != n) throw std::invalid_argument("cg_solve: size mismatch");
  const int max_iter = options.max_iter > 0 ? options.max_iter : static_cast<int>(10 * std::max<std::size_t>(n, 1));
  const double b_norm = norm2(b);
  CgResult result;
  if (b_norm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    return result;
  }

  std::vector<double> r(n), z(n), p(n), q(n);
  auto true_residual = [&] {
    op(x, q);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - q[i];
    return norm2(r) / b_norm;
  };
  auto precondition = [&] {
    if (options.preconditioner) {
      (*options.preconditioner)(r, z);
    } else {
      std::copy(r.begin(), r.end(), z.begin());
    }
  };

  double rel = true_residual();
  int it = 0;
  // The outer loop restarts from the true residual when the recurrence
  // residual has drifted below tolerance but the true one has not.
  while (rel > options.rel_tol) {
    precondition();
    std::copy(z.begin(), z.end(), p.begin());
    double rz = dot(r, z);
    while (it < max_iter) {
      op(p, q);
      const double pq = dot(p, q);
      if (!(pq > 0.0)) {
        std::ostringstream os;
        os << "operator is not positive definite along a search direction (p^T A p = " << pq << ")";
        throw NoConvergence(os.str(), norm2(r) / b_norm, it);
      }
      const double alpha = rz / pq;
      for (std::size_t i = 0; i < n; ++i) {
        x[i] += alpha * p[i];
        r[i] -= alpha * q[i];
      }
      ++it;
      if (options.monitor) options.monitor(it, x);
      if (norm2(r) / b_norm <= options.rel_tol) break;
      precondition();
      const double rz_new = dot(r, z);
      const double beta = rz_new / rz;
      rz = rz_new;
      for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    const double prev = rel;
    rel = true_residual();
    if (rel <= options.rel_tol) break;
    if (it >= max_iter || !(rel < prev)) {
      std::ostringstream os;
      os << "CG stopped after " << it << " iterations with relative residual " << rel;
      throw NoConvergence(os.str(), rel, it);
    }
  }
  result.iterations = it;
  result.relative_residual = rel;
  return result;
}

LinearOperator matrix_operator(const SparseMatrix& a) {
  return [&a](std::span<const double> in, std::span<double> out) { a.multiply(in, out); };
}

LinearOperator jacobi_precond(std::vector<double> diagonal) {
  for (std::size_t i = 0; i < diagonal.size(); ++i) {
    if (!(diagonal[i] > 0.0)) {
      throw ZeroDiagonal("diagonal entry " + std::to_string(i) + " is " + std::to_string(diagonal[i]));
    }
  }
  auto inv = std::make_shared<std::vector<double>>(diagonal.size());
  for (std::size_t i = 0; i < diagonal.size(); ++i) (*inv)[i] = 1.0 / diagonal[i];
  return [inv](std::span<const double> in, std::span<double> out) {
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = (*inv)[i] * in[i];
  };
}

LinearOperator jacobi_precond(const SparseMatrix& a) { return jacobi_precond(a.diagonal()); }

SolverMode parse_solver_mode(std::string_view name) {
  if (name == "consistent") return SolverMode::consistent;
  if (name == "lumped") return SolverMode::lumped;
  throw BadValue("unknown solver mode '" + std::string(name) + "'");
}

std::string_view to_string(SolverMode mode) {
  return mode == SolverMode::consistent ? "consistent" : "lumped";
}

namespace {

// Applies M^-1 according to the solver mode.
class MassInverse {
 public:
  MassInverse(const StepSystem& sys, const StepSolveOptions& options)
      : sys_(sys), options_(options), op_(matrix_operator(*sys.M)), precond_(jacobi_precond(*sys.M)) {}

  void apply(std::span<const double> y, std::span<double> out) const {
    const auto& ml = *sys_.M_lumped;
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] / ml[i];
    if (options_.mode == SolverMode::lumped) return;
    CgOptions cg;
    cg.rel_tol = options_.inner_tol;
    cg.preconditioner = &precond_;
    try {
      cg_solve(op_, y, out, cg);
    } catch (const NoConvergence& e) {
      throw NoConvergence(std::string("inner mass solve: ") + e.what(), e.residual(), e.iterations());
    }
  }

 private:
  const StepSystem& sys_;
  const StepSolveOptions& options_;
  LinearOperator op_;
  LinearOperator precond_;
};

}  // namespace

double block_residual(const StepSystem& sys, SolverMode mode, std::span<const double> rhs,
                      std::span<const double> u, std::span<const double> w) {
  const std::size_t n = u.size();
  std::vector<double> au(n), sw(n), su(n), mw(n);
  sys.A.multiply(u, au);
  sys.S->multiply(w, sw);
  sys.S->multiply(u, su);
  if (mode == SolverMode::lumped) {
    for (std::size_t i = 0; i < n; ++i) mw[i] = (*sys.M_lumped)[i] * w[i];
  } else {
    sys.M->multiply(w, mw);
  }
  std::vector<double> r1(n), r2(n);
  for (std::size_t i = 0; i < n; ++i) {
    r1[i] = au[i] + sys.lambda_b * sw[i] - rhs[i];
    r2[i] = su[i] - mw[i];
  }
  const double scale1 = std::max(norm2(rhs), norm2(au));
  const double scale2 = std::max(norm2(su), norm2(mw));
  const double e1 = scale1 > 0.0 ? norm2(r1) / scale1 : norm2(r1);
  const double e2 = scale2 > 0.0 ? norm2(r2) / scale2 : norm2(r2);
  return std::max(e1, e2);
}

StepSolution schur_step_solve(const StepSystem& sys, const StepSolveOptions& options) {
  const std::size_t n = sys.A.size();
  if (!sys.S || !sys.M || !sys.M_lumped) throw std::invalid_argument("schur_step_solve: incomplete system");
  const MassInverse minv(sys, options);

  std::vector<double> tmp1(n), tmp2(n);
  LinearOperator schur = [&](std::span<const double> in, std::span<double> out) {
    sys.A.multiply(in, out);
    if (sys.lambda_b == 0.0) return;
    sys.S->multiply(in, tmp1);
    minv.apply(tmp1, tmp2);
    sys.S->multiply(tmp2, tmp1);
    for (std::size_t i = 0; i < n; ++i) out[i] += sys.lambda_b * tmp1[i];
  };

  // Jacobi on diag(A) + lambda_b diag(S M_L^-1 S).
  std::vector<double> diag = sys.A.diagonal();
  if (sys.lambda_b != 0.0) {
    const auto rp = sys.S->row_ptr();
    const auto cols = sys.S->cols();
    const auto vals = sys.S->values();
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) s += vals[k] * vals[k] / (*sys.M_lumped)[cols[k]];
      diag[i] += sys.lambda_b * s;
    }
  }
  const LinearOperator precond = jacobi_precond(std::move(diag));

  CgOptions cg;
  cg.rel_tol = options.outer_tol;
  cg.max_iter = options.max_iter > 0 ? options.max_iter : static_cast<int>(10 * n);
  cg.preconditioner = &precond;

  StepSolution sol;
  for (int c = 0; c < 3; ++c) {
    auto& u = sol.u[c];
    u = sys.guess[c].size() == n ? sys.guess[c] : std::vector<double>(n, 0.0);
    try {
      sol.outer_iterations += cg_solve(schur, sys.rhs[c], u, cg).iterations;
    } catch (const NoConvergence& e) {
      throw NoConvergence("Schur complement solve, coordinate " + std::to_string(c) + ": " + e.what(),
                          e.residual(), e.iterations());
    }
    auto& w = sol.w[c];
    w.assign(n, 0.0);
    sys.S->multiply(u, tmp1);
    minv.apply(tmp1, w);
    sol.residual = std::max(sol.residual, block_residual(sys, options.mode, sys.rhs[c], u, w));
  }
  return sol;
}

}  // namespace bleb
