// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blebsim Authors

#include "blebsim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "blebsim/error.hpp"

namespace bleb {

std::vector<double> EocReport::eoc(std::size_t q) const {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    out.push_back(std::log2(rows[i].errors[q] / rows[i + 1].errors[q]));
  }
  return out;
}

double EocReport::min_eoc(std::size_t q, std::size_t pairs) const {
  const std::vector<double> orders = eoc(q);
  if (orders.empty()) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t first = orders.size() > pairs ? orders.size() - pairs : 0;
  return *std::min_element(orders.begin() + static_cast<std::ptrdiff_t>(first), orders.end());
}

namespace {

// Solves the dense system in place (row-major, n x n); rhs receives x.
void gauss_solve(std::vector<double>& a, std::vector<double>& rhs, std::size_t n) {
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  const double tiny = 1e-12 * scale;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a[i * n + k]) > std::abs(a[piv * n + k])) piv = i;
    }
    if (!(std::abs(a[piv * n + k]) > tiny)) {
      std::ostringstream os;
      os << "pivot " << a[piv * n + k] << " in column " << k << " below " << tiny;
      throw SingularSystem(os.str());
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
      std::swap(rhs[k], rhs[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i * n + k] / a[k * n + k];
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
      rhs[i] -= f * rhs[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    double s = rhs[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a[k * n + j] * rhs[j];
    rhs[k] = s / a[k * n + k];
  }
}

}  // namespace

StepSolution dense_oracle_solve(const StepSystem& sys, SolverMode mode) {
  const std::size_t n = sys.A.size();
  const std::size_t n2 = 2 * n;
  const std::vector<double> a = sys.A.to_dense();
  const std::vector<double> s = sys.S->to_dense();
  std::vector<double> m;
  if (mode == SolverMode::lumped) {
    m.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = (*sys.M_lumped)[i];
  } else {
    m = sys.M->to_dense();
  }

  std::vector<double> block(n2 * n2, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      block[i * n2 + j] = a[i * n + j];
      block[i * n2 + n + j] = sys.lambda_b * s[i * n + j];
      block[(n + i) * n2 + j] = s[i * n + j];
      block[(n + i) * n2 + n + j] = -m[i * n + j];
    }
  }

  StepSolution sol;
  for (int c = 0; c < 3; ++c) {
    std::vector<double> work = block;
    std::vector<double> rhs(n2, 0.0);
    std::copy(sys.rhs[c].begin(), sys.rhs[c].end(), rhs.begin());
    gauss_solve(work, rhs, n2);
    sol.u[c].assign(rhs.begin(), rhs.begin() + static_cast<std::ptrdiff_t>(n));
    sol.w[c].assign(rhs.begin() + static_cast<std::ptrdiff_t>(n), rhs.end());
    sol.residual = std::max(sol.residual, block_residual(sys, mode, sys.rhs[c], sol.u[c], sol.w[c]));
  }
  return sol;
}

std::pair<VectorField, VectorField> dense_oracle_step(const SimState& state, const SurfaceMesh& mesh,
                                                      const StepOperators& ops, const ForceModel& model) {
  if (mesh.n_vertices() > 500) throw std::invalid_argument("dense_oracle_step: at most 500 vertices");
  const StepSystem sys = build_step_system(state, mesh, ops, model);
  const StepSolution sol = dense_oracle_solve(sys);
  VectorField u(mesh.n_vertices()), w(mesh.n_vertices());
  for (int c = 0; c < 3; ++c) {
    set_component(u, c, sol.u[c]);
    set_component(w, c, sol.w[c]);
  }
  return {std::move(u), std::move(w)};
}

EocReport manufactured_convergence(const std::vector<int>& levels, const ManufacturedOptions& options) {
  EocReport report;
  report.quantities = {"u_max_mass", "w_l2_mass", "w_identity"};
  for (int level : levels) {
    const SurfaceMesh mesh = cube_sphere(kPassesPerLevel * level);
    const double h = stats(mesh).h_max;

    ParamSet p;
    p.lambda_b = 1.0;
    p.t_end = options.t_end;
    const long n_steps =
        std::max<long>(1, static_cast<long>(std::ceil(options.t_end / (options.tau_factor * h * h))));
    p.tau = options.t_end / static_cast<double>(n_steps);
    const ForceModel model = make_model(ForceMode::manufactured, p);

    const StepOperators ops = assemble_operators(mesh);
    const VectorField& y = mesh.vertices();
    SimState state = initial_state(mesh, ops, p);

    StepSolveOptions solve;
    solve.mode = options.solver;
    double u_err = 0.0;
    double w_err_sq = 0.0;
    VectorField diff(y.size());
    for (long m = 0; m < n_steps; ++m) {
      state = time_step(state, mesh, ops, model, solve);
      const double decay = std::exp(-state.time);
      for (std::size_t i = 0; i < y.size(); ++i) diff[i] = state.U[i] - decay * y[i];
      u_err = std::max(u_err, mass_norm(*ops.M, diff));
      for (std::size_t i = 0; i < y.size(); ++i) diff[i] = state.W[i] - 2.0 * decay * y[i];
      const double we = mass_norm(*ops.M, diff);
      w_err_sq += p.tau * we * we;
    }
    for (std::size_t i = 0; i < y.size(); ++i) diff[i] = state.W[i] - 2.0 * state.U[i];
    const double w_identity = mass_norm(*ops.M, diff) / mass_norm(*ops.M, state.W);

    report.rows.push_back({level, h, {u_err, std::sqrt(w_err_sq), w_identity}});
  }
  return report;
}

EocReport geometric_convergence(const std::vector<int>& levels) {
  EocReport report;
  report.quantities = {"area", "volume"};
  for (int level : levels) {
    const SurfaceMesh mesh = cube_sphere(kPassesPerLevel * level);
    const MeshStats s = stats(mesh);
    const double area_err = std::abs(s.total_area - 4.0 * std::numbers::pi);
    const double vol_err = std::abs(volume(mesh, mesh.vertices()) - 4.0 * std::numbers::pi / 3.0);
    report.rows.push_back({level, s.h_max, {area_err, vol_err}});
  }
  return report;
}

bool IdentityReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.passed; });
}

IdentityReport identity_suite(const SurfaceMesh& mesh) {
  const SparseMatrix mass = assemble_mass(mesh);
  const SparseMatrix stiff = assemble_stiffness(mesh);
  const double area = stats(mesh).total_area;
  const std::size_t n = mesh.n_vertices();

  IdentityReport report;
  auto add = [&report](std::string name, double value, double tol) {
    report.checks.push_back({std::move(name), value, tol, value <= tol});
  };

  add("mass_sum", std::abs(mass.sum() - area) / area, 1e-12);

  const std::vector<double> ones(n, 1.0);
  const std::vector<double> s1 = stiff.multiply(ones);
  double kernel = 0.0;
  for (double v : s1) kernel = std::max(kernel, std::abs(v));
  add("stiffness_kernel", kernel, 1e-10);

  const VectorField& id = mesh.vertices();
  double energy = 0.0;
  for (int c = 0; c < 3; ++c) energy += stiff.quadratic_form(component(id, c));
  add("gradient_identity", std::abs(energy - 2.0 * area) / (2.0 * area), 1e-12);

  const VectorField s_id = multiply_field(stiff, id);
  const VectorField rest = assemble_tension_rhs(mesh, id, 1.0);
  double at_rest = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < 3; ++c) at_rest = std::max(at_rest, std::abs(s_id[i][c] - rest[i][c]));
  }
  add("tension_at_rest", at_rest, 1e-10);
  return report;
}

}  // namespace bleb
