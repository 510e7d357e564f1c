// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blebsim Authors
//
// Command-line driver: run, verify, mesh-info.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "blebsim/assembly.hpp"
#include "blebsim/config.hpp"
#include "blebsim/error.hpp"
#include "blebsim/io.hpp"
#include "blebsim/sim.hpp"
#include "blebsim/verify.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitSolver = 2;

struct Flags {
  std::string config_path;
  std::optional<std::string> mesh;
  std::optional<int> refine;
  std::optional<double> tau;
  std::optional<double> t_end;
  std::optional<std::string> out;
  std::optional<int> output_every;
  std::optional<std::string> preset;
  std::optional<std::string> mode;
  std::optional<double> epsilon;
  std::optional<std::string> solver;
  std::vector<std::string> sets;
};

void add_config_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "key = value configuration file");
  cmd->add_option("--mesh", f.mesh, "sphere, discocyte or a .off/.obj path");
  cmd->add_option("--refine", f.refine, "refinement passes");
  cmd->add_option("--tau", f.tau, "time step");
  cmd->add_option("--t-end", f.t_end, "final time");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--output-every", f.output_every, "snapshot interval in steps");
  cmd->add_option("--preset", f.preset, "table1, weak_linkers, high_tension, high_pressure, imgdata");
  cmd->add_option("--mode", f.mode, "sharp, regularized or manufactured");
  cmd->add_option("--epsilon", f.epsilon, "regularization width");
  cmd->add_option("--solver", f.solver, "consistent or lumped");
  cmd->add_option("--set", f.sets, "key=value override, repeatable");
}

// Preset first so the file can refine it, then individual flags.
bleb::RunConfig resolve_config(const Flags& f) {
  bleb::RunConfig config;
  if (f.preset) bleb::apply_preset(config, *f.preset);
  if (!f.config_path.empty()) config = bleb::parse_config_file(f.config_path, config);
  auto num = [](double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
  };
  if (f.mesh) bleb::set_config_value(config, "mesh", *f.mesh);
  if (f.refine) bleb::set_config_value(config, "refinements", std::to_string(*f.refine));
  if (f.tau) bleb::set_config_value(config, "tau", num(*f.tau));
  if (f.t_end) bleb::set_config_value(config, "t_end", num(*f.t_end));
  if (f.out) bleb::set_config_value(config, "output_dir", *f.out);
  if (f.output_every) bleb::set_config_value(config, "output_every", std::to_string(*f.output_every));
  if (f.mode) bleb::set_config_value(config, "mode", *f.mode);
  if (f.epsilon) bleb::set_config_value(config, "epsilon", num(*f.epsilon));
  if (f.solver) bleb::set_config_value(config, "solver", *f.solver);
  for (const std::string& kv : f.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw bleb::BadValue("--set expects key=value, got '" + kv + "'");
    bleb::set_config_value(config, kv.substr(0, eq), kv.substr(eq + 1));
  }
  bleb::validate_config(config);
  return config;
}

std::string snapshot_name(long step) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "snapshot_%06ld.vtk", step);
  return buf;
}

int cmd_run(const Flags& flags) {
  bleb::RunConfig config;
  bleb::SurfaceMesh mesh;
  std::optional<bleb::ForceModel> model;
  try {
    config = resolve_config(flags);
    mesh = bleb::load_scenario_mesh(config);
    model = bleb::make_model(config.mode, config.params);
  } catch (const bleb::Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  const fs::path out_dir(config.output_dir);
  fs::create_directories(out_dir);
  {
    std::ofstream cfg(out_dir / "config.txt");
    cfg << bleb::serialize(config);
  }
  std::ofstream log(out_dir / "run.log");
  log << std::setprecision(10);
  log << "# vertices " << mesh.n_vertices() << " triangles " << mesh.n_triangles() << '\n';
  log << "step,time,residual,outer_iterations,wall_seconds\n";

  bleb::RunOptions options;
  options.output_every = config.output_every;
  options.solve.mode = config.solver;
  options.on_step = [&log](const bleb::StepReport& r) {
    log << r.step << ',' << r.time << ',' << r.residual << ',' << r.outer_iterations << ','
        << r.wall_seconds << '\n';
  };
  long snapshots = 0;
  const auto hook = [&](const bleb::SimState& state, const bleb::SurfaceMesh& m) {
    bleb::write_vtk(out_dir / snapshot_name(state.step), m, state);
    ++snapshots;
  };

  const auto t0 = std::chrono::steady_clock::now();
  try {
    const bleb::SimState final_state = bleb::run(mesh, *model, options, hook);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::size_t broken = 0;
    for (char c : final_state.linker_intact) broken += c ? 0 : 1;
    log << "# done steps " << final_state.step << " wall " << wall << '\n';
    std::cout << "completed " << final_state.step << " steps to t = " << final_state.time << " in " << wall
              << " s; " << snapshots << " snapshots in " << out_dir.string() << "; broken linkers " << broken
              << " of " << final_state.U.size() << '\n';
  } catch (const bleb::SolverFailure& e) {
    log << "# solver failure: " << e.what() << '\n';
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitOk;
}

int cmd_mesh_info(const Flags& flags) {
  bleb::RunConfig config;
  bleb::SurfaceMesh mesh;
  try {
    config = resolve_config(flags);
    mesh = bleb::load_scenario_mesh(config);
  } catch (const bleb::Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  const bleb::MeshStats s = bleb::stats(mesh);
  std::cout << std::setprecision(10);
  std::cout << "mesh " << config.mesh << " refinements " << config.refinements << '\n';
  std::cout << "vertices " << s.n_vertices << '\n';
  std::cout << "triangles " << s.n_triangles << '\n';
  std::cout << "edges " << mesh.n_edges() << '\n';
  std::cout << "euler_characteristic " << bleb::euler_characteristic(mesh) << '\n';
  std::cout << "h_max " << s.h_max << '\n';
  std::cout << "area " << s.total_area << '\n';
  std::cout << "volume " << bleb::volume(mesh, mesh.vertices()) << '\n';
  return kExitOk;
}

struct VerifyFlags {
  std::string suite = "manufactured";
  int level_min = 3;
  int level_max = 6;
  double tau_factor = 1.0;
  std::string solver = "consistent";
};

void print_csv(const bleb::EocReport& report, const std::string& header) {
  std::cout << header << '\n';
  const auto eoc0 = report.eoc(0);
  const auto eoc1 = report.eoc(1);
  std::cout << std::setprecision(8);
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    std::cout << r.level << ',' << r.h_max << ',' << r.errors[0] << ',' << r.errors[1] << ',';
    if (i > 0) std::cout << eoc0[i - 1] << ',' << eoc1[i - 1];
    else std::cout << ',';
    std::cout << '\n';
  }
}

int cmd_verify(const VerifyFlags& v) {
  if (v.level_min < 0 || v.level_max <= v.level_min) {
    std::cerr << "config error: need 0 <= --level-min < --level-max\n";
    return kExitConfig;
  }
  std::vector<int> levels;
  for (int l = v.level_min; l <= v.level_max; ++l) levels.push_back(l);
  const std::size_t pairs = std::min<std::size_t>(2, levels.size() - 1);

  bool pass = true;
  if (v.suite == "geometric" || v.suite == "all") {
    const bleb::EocReport r = bleb::geometric_convergence(levels);
    print_csv(r, "level,h_max,error_area,error_volume,eoc_area,eoc_volume");
    const double a = r.min_eoc(0, levels.size() - 1);
    const double b = r.min_eoc(1, levels.size() - 1);
    const bool ok = a >= 1.9 && b >= 1.9;
    pass = pass && ok;
    std::cout << "summary suite=geometric min_eoc_area=" << a << " min_eoc_volume=" << b
              << " threshold=1.9 result=" << (ok ? "PASS" : "FAIL") << '\n';
  }
  if (v.suite == "manufactured" || v.suite == "all") {
    bleb::ManufacturedOptions opts;
    opts.tau_factor = v.tau_factor;
    try {
      opts.solver = bleb::parse_solver_mode(v.solver);
    } catch (const bleb::Error& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return kExitConfig;
    }
    bleb::EocReport r;
    try {
      r = bleb::manufactured_convergence(levels, opts);
    } catch (const bleb::SolverFailure& e) {
      std::cerr << "solver failure: " << e.what() << '\n';
      return kExitSolver;
    }
    print_csv(r, "level,h_max,error_u,error_w,eoc_u,eoc_w");
    const double u = r.min_eoc(0, pairs);
    const bool ok = u >= 1.0;
    pass = pass && ok;
    std::cout << "summary suite=manufactured min_eoc_u=" << u << " threshold=1.0 w_identity="
              << r.rows.back().errors[2] << " result=" << (ok ? "PASS" : "FAIL") << '\n';
  }
  if (v.suite != "geometric" && v.suite != "manufactured" && v.suite != "all") {
    std::cerr << "config error: unknown suite '" << v.suite << "'\n";
    return kExitConfig;
  }
  return pass ? kExitOk : kExitSolver;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"blebsim: surface finite element simulation of membrane blebbing"};
  app.require_subcommand(1);

  Flags run_flags;
  CLI::App* run = app.add_subcommand("run", "simulate a scenario and write VTK snapshots");
  add_config_flags(run, run_flags);

  Flags info_flags;
  CLI::App* info = app.add_subcommand("mesh-info", "print mesh statistics");
  add_config_flags(info, info_flags);

  VerifyFlags verify_flags;
  CLI::App* verify = app.add_subcommand("verify", "run the convergence suites and print CSV");
  verify->add_option("--suite", verify_flags.suite, "manufactured, geometric or all");
  verify->add_option("--level-min", verify_flags.level_min, "coarsest level");
  verify->add_option("--level-max", verify_flags.level_max, "finest level");
  verify->add_option("--tau-factor", verify_flags.tau_factor, "tau = factor * h_max^2");
  verify->add_option("--solver", verify_flags.solver, "consistent or lumped");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (run->parsed()) return cmd_run(run_flags);
    if (info->parsed()) return cmd_mesh_info(info_flags);
    if (verify->parsed()) return cmd_verify(verify_flags);
  } catch (const bleb::SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
