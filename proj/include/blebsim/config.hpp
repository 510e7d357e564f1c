// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blebsim Authors

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "blebsim/forces.hpp"
#include "blebsim/mesh.hpp"
#include "blebsim/solver.hpp"

namespace bleb {

struct RunConfig {
  std::string mesh = "discocyte";  // `sphere`, `discocyte` or a .off/.obj path
  int refinements = 6;
  ParamSet params;
  std::string output_dir = "out";
  int output_every = 40;
  SolverMode solver = SolverMode::consistent;
  ForceMode mode = ForceMode::sharp;
  std::string preset;  // empty when none was applied

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Scenario presets:
///   table1          standard discocyte parameters
///   weak_linkers    table1 with lambda_l = 12
///   high_tension    table1 with x0 = 0.85
///   high_pressure   table1 with lambda_p = 30
///   imgdata         image-derived cell parameters, tau = 0.02, t_end = 20
std::vector<std::string> preset_names();
void apply_preset(RunConfig& config, std::string_view name);  // throws BadValue

/// Sets one `key = value` entry. Keys: mesh, refinements, output_dir,
/// output_every, solver, mode, preset and the ParamSet fields x0, lambda_b,
/// lambda_l, l0, u_B, k_L, u_R, lambda_p, epsilon, tau, t_end.
/// Throws UnknownKey or BadValue.
void set_config_value(RunConfig& config, std::string_view key, std::string_view value);

/// `key = value` lines; `#` starts a comment. A `preset` line resets the
/// parameters to the preset, later lines override it.
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig parse_config_file(const std::filesystem::path& path, RunConfig base = {});

/// Throws InvariantViolation (ParamSet invariants, output_every >= 1,
/// refinements >= 0, epsilon > 0 for the regularized model).
void validate_config(const RunConfig& config);

/// Text that parse_config maps back to the same RunConfig.
std::string serialize(const RunConfig& config);

/// Builtin scenario or mesh file, refined `refinements` times (builtins use
/// the sphere projector, files the identity projector).
SurfaceMesh load_scenario_mesh(const RunConfig& config);

}  // namespace bleb
