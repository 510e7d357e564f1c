// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blebsim Authors
//
// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Pass a list of criterion numbers to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "blebsim/assembly.hpp"
#include "blebsim/config.hpp"
#include "blebsim/error.hpp"
#include "blebsim/geometry.hpp"
#include "blebsim/sim.hpp"
#include "blebsim/verify.hpp"

namespace {

using namespace bleb;

struct Outcome {
  bool passed = false;
  std::string detail;
};

double relative_error(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    ref += b[i] * b[i];
  }
  return ref > 0.0 ? std::sqrt(diff / ref) : std::sqrt(diff);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

Outcome criterion1() {
  bool ok = true;
  std::ostringstream os;
  const std::pair<const char*, SurfaceMesh> meshes[] = {{"octahedron", octahedron()},
                                                       {"discocyte4", make_discocyte(4)}};
  for (const auto& [name, mesh] : meshes) {
    const IdentityReport r = identity_suite(mesh);
    ok = ok && r.all_passed();
    os << name << "[";
    for (const auto& c : r.checks) os << ' ' << c.name << '=' << fmt(c.value) << (c.passed ? "" : "!");
    os << " ] ";
  }
  return {ok, os.str()};
}

Outcome criterion2() {
  const std::vector<int> levels = {3, 4, 5, 6};
  const EocReport r = geometric_convergence(levels);
  const double area = r.min_eoc(0, levels.size() - 1);
  const double vol = r.min_eoc(1, levels.size() - 1);
  return {area >= 1.9 && vol >= 1.9, "min EOC area=" + fmt(area) + " volume=" + fmt(vol) + " (>= 1.9)"};
}

Outcome criterion3() {
  const std::vector<int> levels = {3, 4, 5, 6};
  ManufacturedOptions opts;
  opts.solver = SolverMode::lumped;
  const EocReport r = manufactured_convergence(levels, opts);
  bool ok = true;
  std::ostringstream os;
  os << "errors u:";
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const double e = r.rows[i].errors[0];
    os << ' ' << fmt(e);
    ok = ok && std::isfinite(e) && e > 0.0;
    if (i > 0) ok = ok && e < r.rows[i - 1].errors[0];
  }
  os << " EOC u:";
  for (double e : r.eoc(0)) os << ' ' << fmt(e);
  os << " EOC w:";
  for (double e : r.eoc(1)) os << ' ' << fmt(e);
  const double floor = r.min_eoc(0, 2);
  ok = ok && floor >= 1.0;
  os << " min over last two pairs=" << fmt(floor) << " (>= 1.0)";
  return {ok, os.str()};
}

Outcome criterion4() {
  const SurfaceMesh mesh = octahedron();
  const StepOperators ops = assemble_operators(mesh);
  std::mt19937_64 rng(20260517);
  std::uniform_real_distribution<double> lb(0.0, 0.2), ll(0.0, 20.0), lt(-3.0, -1.0);
  double worst = 0.0;
  for (int draw = 0; draw < 5; ++draw) {
    ParamSet p;
    p.lambda_b = lb(rng);
    p.lambda_l = ll(rng);
    p.tau = std::pow(10.0, lt(rng));
    if (draw == 0) p.lambda_b = 0.0;
    if (draw == 1) p.lambda_l = 0.0;
    p.t_end = p.tau;
    const ForceModel model = make_model(ForceMode::sharp, p);
    const SimState state = initial_state(mesh, ops, p);
    const StepSystem sys = build_step_system(state, mesh, ops, model);
    const StepSolution fast = schur_step_solve(sys);
    const StepSolution dense = dense_oracle_solve(sys);
    for (int c = 0; c < 3; ++c) {
      worst = std::max(worst, relative_error(fast.u[c], dense.u[c]));
      worst = std::max(worst, relative_error(fast.w[c], dense.w[c]));
    }
  }
  return {worst <= 1e-8, "max relative difference over 5 draws=" + fmt(worst) + " (<= 1e-8)"};
}

Outcome criterion5() {
  const SurfaceMesh mesh = cube_sphere(4);
  ParamSet p;
  p.x0 = 0.0;
  p.lambda_l = 0.0;
  p.lambda_p = 0.0;
  p.lambda_b = 0.005;
  const ForceModel model = make_model(ForceMode::sharp, p);
  const StepOperators ops = assemble_operators(mesh);
  SimState state = initial_state(mesh, ops, p);
  double prev = mass_norm(*ops.M, state.U);
  double worst_ratio = 0.0;
  bool ok = true;
  for (int m = 0; m < 50; ++m) {
    state = time_step(state, mesh, ops, model);
    const double now = mass_norm(*ops.M, state.U);
    worst_ratio = std::max(worst_ratio, now / prev);
    ok = ok && now <= prev;
    prev = now;
  }
  return {ok, "max ||U^(m+1)||_M / ||U^m||_M over 50 steps=" + fmt(worst_ratio) + " (<= 1)"};
}

struct ScenarioResult {
  double initial_volume = 0.0;
  SimState final_state;
  double max_residual = 0.0;
  std::size_t broken = 0;
  double max_displacement = 0.0;
  double seconds = 0.0;
};

const SurfaceMesh& discocyte6() {
  static const SurfaceMesh mesh = make_discocyte(6);
  return mesh;
}

ScenarioResult run_scenario(const std::string& preset) {
  RunConfig config;
  apply_preset(config, preset);
  config.params.t_end = 0.5;
  const SurfaceMesh& mesh = discocyte6();
  ScenarioResult out;
  out.initial_volume = volume(mesh, mesh.vertices());
  RunOptions options;
  options.on_step = [&out](const StepReport& r) { out.max_residual = std::max(out.max_residual, r.residual); };
  const auto t0 = std::chrono::steady_clock::now();
  out.final_state = run(mesh, make_model(config.mode, config.params), options);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (std::size_t i = 0; i < mesh.n_vertices(); ++i) {
    out.broken += out.final_state.linker_intact[i] ? 0 : 1;
    out.max_displacement = std::max(out.max_displacement, norm(out.final_state.U[i] - mesh.vertices()[i]));
  }
  return out;
}

const ScenarioResult& baseline() {
  static const ScenarioResult result = run_scenario("table1");
  return result;
}

Outcome criterion6() {
  const SurfaceMesh& mesh = discocyte6();
  const ScenarioResult& r = baseline();
  const ParamSet p = ParamSet::table1();
  std::ostringstream os;

  const bool a = std::abs(r.initial_volume - 150.0) <= 0.05 * 150.0;
  os << "(a) volume=" << fmt(r.initial_volume) << (a ? "" : "!");

  // Regions on the reference shape: the dimple is the cosine part of the
  // profile, the rim is the band of largest in-plane radius.
  double r_max = 0.0;
  for (const Vec3& y : mesh.vertices()) r_max = std::max(r_max, std::hypot(y.x, y.y));
  double dimple_max = 0.0, rim_max = 0.0;
  for (std::size_t i = 0; i < mesh.n_vertices(); ++i) {
    const Vec3& y = mesh.vertices()[i];
    const double radius = std::hypot(y.x, y.y);
    const double d = r.final_state.distance[i];
    if (radius < 2.0) dimple_max = std::max(dimple_max, d);
    if (radius >= 0.95 * r_max) rim_max = std::max(rim_max, d);
  }
  const bool b = dimple_max > p.u_B && rim_max <= p.u_B;
  os << " (b) dimple max dist=" << fmt(dimple_max) << " rim max dist=" << fmt(rim_max) << " u_B=" << p.u_B
     << (b ? "" : "!");

  std::map<std::tuple<double, double, double>, std::size_t> index;
  for (std::size_t i = 0; i < mesh.n_vertices(); ++i) {
    const Vec3& y = mesh.vertices()[i];
    index[{y.x, y.y, y.z}] = i;
  }
  std::size_t pairs = 0, unmatched = 0;
  double asym = 0.0;
  for (std::size_t i = 0; i < mesh.n_vertices(); ++i) {
    const Vec3& y = mesh.vertices()[i];
    const auto it = index.find({-y.y, y.x, y.z});
    if (it == index.end()) {
      ++unmatched;
      continue;
    }
    ++pairs;
    asym = std::max(asym, std::abs(norm(r.final_state.U[i]) - norm(r.final_state.U[it->second])));
  }
  const bool c = pairs > 0 && unmatched == 0 && asym <= 1e-6;
  os << " (c) pairs=" << pairs << " unmatched=" << unmatched << " max | |U_i|-|U_j| |=" << fmt(asym)
     << (c ? "" : "!");

  bool finite = true;
  for (const Vec3& u : r.final_state.U) finite = finite && is_finite(u);
  for (const Vec3& w : r.final_state.W) finite = finite && is_finite(w);
  const bool d = finite && r.max_residual <= 1e-8;
  os << " (d) finite=" << (finite ? "yes" : "no") << " max residual=" << fmt(r.max_residual) << (d ? "" : "!");
  os << " [" << fmt(r.seconds) << " s]";
  return {a && b && c && d, os.str()};
}

Outcome criterion7() {
  const ScenarioResult& base = baseline();
  const ScenarioResult weak = run_scenario("weak_linkers");
  const ScenarioResult tense = run_scenario("high_tension");
  const ScenarioResult press = run_scenario("high_pressure");
  const bool a = weak.broken > base.broken;
  const bool b = tense.max_displacement > base.max_displacement;
  const bool c = press.broken >= base.broken;
  std::ostringstream os;
  os << "(a) broken lambda_l=12: " << weak.broken << " vs " << base.broken << (a ? "" : "!")
     << " (b) max |U-id| x0=0.85: " << fmt(tense.max_displacement) << " vs " << fmt(base.max_displacement)
     << (b ? "" : "!") << " (c) broken lambda_p=30: " << press.broken << " vs " << base.broken
     << (c ? "" : "!");
  return {a && b && c, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  using Fn = Outcome (*)();
  const Fn criteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (int k = 1; k <= 7; ++k) {
    if (!selected.empty() && !selected.count(k)) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[k - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d: %s  %s  (%.1f s)\n", k, o.passed ? "PASS" : "FAIL", o.detail.c_str(), s);
    std::fflush(stdout);
    failures += o.passed ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
