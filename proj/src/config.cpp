// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blebsim Authors

#include "blebsim/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "blebsim/error.hpp"
#include "blebsim/geometry.hpp"
#include "blebsim/io.hpp"

namespace bleb {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw BadValue(std::string(key) + ": '" + std::string(text) + "' is not a number");
  }
  return v;
}

int parse_int(std::string_view key, std::string_view text) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw BadValue(std::string(key) + ": '" + std::string(text) + "' is not an integer");
  }
  return v;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

struct ParamField {
  const char* key;
  double ParamSet::*member;
};

constexpr ParamField kParamFields[] = {
    {"x0", &ParamSet::x0},         {"lambda_b", &ParamSet::lambda_b}, {"lambda_l", &ParamSet::lambda_l},
    {"l0", &ParamSet::l0},         {"u_B", &ParamSet::u_B},           {"k_L", &ParamSet::k_L},
    {"u_R", &ParamSet::u_R},       {"lambda_p", &ParamSet::lambda_p}, {"epsilon", &ParamSet::epsilon},
    {"tau", &ParamSet::tau},       {"t_end", &ParamSet::t_end},
};

}  // namespace

std::vector<std::string> preset_names() {
  return {"table1", "weak_linkers", "high_tension", "high_pressure", "imgdata"};
}

void apply_preset(RunConfig& config, std::string_view name) {
  ParamSet p = ParamSet::table1();
  if (name == "table1") {
  } else if (name == "weak_linkers") {
    p.lambda_l = 12.0;
  } else if (name == "high_tension") {
    p.x0 = 0.85;
  } else if (name == "high_pressure") {
    p.lambda_p = 30.0;
  } else if (name == "imgdata") {
    p = ParamSet::table2();
  } else {
    throw BadValue("unknown preset '" + std::string(name) + "'");
  }
  config.params = p;
  config.preset = std::string(name);
}

void set_config_value(RunConfig& config, std::string_view key, std::string_view value) {
  for (const auto& field : kParamFields) {
    if (key == field.key) {
      config.params.*field.member = parse_double(key, value);
      return;
    }
  }
  if (key == "mesh") {
    if (value.empty()) throw BadValue("mesh must not be empty");
    config.mesh = std::string(value);
  } else if (key == "refinements") {
    config.refinements = parse_int(key, value);
  } else if (key == "output_dir") {
    config.output_dir = std::string(value);
  } else if (key == "output_every") {
    config.output_every = parse_int(key, value);
  } else if (key == "solver") {
    config.solver = parse_solver_mode(value);
  } else if (key == "mode") {
    try {
      config.mode = parse_force_mode(value);
    } catch (const BadMode& e) {
      throw BadValue(e.what());
    }
  } else if (key == "preset") {
    apply_preset(config, value);
  } else {
    throw UnknownKey("'" + std::string(key) + "'");
  }
}

RunConfig parse_config(std::istream& in, RunConfig base) {
  RunConfig config = std::move(base);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("line " + std::to_string(number) + ": expected 'key = value'");
    }
    const std::string_view key = trim(view.substr(0, eq));
    const std::string_view value = trim(view.substr(eq + 1));
    try {
      set_config_value(config, key, value);
    } catch (const UnknownKey& e) {
      throw UnknownKey("line " + std::to_string(number) + ": " + e.what());
    } catch (const BadValue& e) {
      throw BadValue("line " + std::to_string(number) + ": " + e.what());
    }
  }
  return config;
}

RunConfig parse_config_file(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  return parse_config(in, std::move(base));
}

void validate_config(const RunConfig& config) {
  config.params.validate();
  if (config.output_every < 1) throw InvariantViolation("output_every must be >= 1");
  if (config.refinements < 0) throw InvariantViolation("refinements must be >= 0");
  if (config.mode == ForceMode::regularized && !(config.params.epsilon > 0.0)) {
    throw InvariantViolation("the regularized model needs epsilon > 0");
  }
}

std::string serialize(const RunConfig& config) {
  std::ostringstream os;
  if (!config.preset.empty()) os << "preset = " << config.preset << '\n';
  os << "mesh = " << config.mesh << '\n';
  os << "refinements = " << config.refinements << '\n';
  os << "output_dir = " << config.output_dir << '\n';
  os << "output_every = " << config.output_every << '\n';
  os << "solver = " << to_string(config.solver) << '\n';
  os << "mode = " << to_string(config.mode) << '\n';
  for (const auto& field : kParamFields) {
    os << field.key << " = " << format_double(config.params.*field.member) << '\n';
  }
  return os.str();
}

SurfaceMesh load_scenario_mesh(const RunConfig& config) {
  if (config.mesh == "sphere") return cube_sphere(config.refinements);
  if (config.mesh == "discocyte") return make_discocyte(config.refinements);
  const SurfaceMesh base = read_mesh(config.mesh);
  return refine_bisect(base, config.refinements, identity_projector);
}

}  // namespace bleb
