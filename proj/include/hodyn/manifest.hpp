#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hodyn/schmidt.hpp"
#include "hodyn/variational.hpp"

namespace hodyn {

enum class Mode { Auto, Even, Odd };
Mode parse_mode(const std::string& s);
const char* mode_name(Mode m);

struct Simulation {
  std::map<std::string, double> initial_state;
  double dt = 1e-3;
  double T = 10.0;
};

struct Manifest {
  std::string name;
  std::vector<std::string> coordinates;
  int order = 1;
  std::string lagrangian;
  std::map<std::string, double> parameters;
  std::optional<std::string> auxiliary_F;
  Mode mode = Mode::Auto;
  std::optional<Simulation> simulation;
  std::vector<std::string> accelerations, auxiliaries, multipliers;  // optional overrides
  nlohmann::json golden;  // expectations shipped with bundled fixtures
};

/// Reads a rational ("3/4", "2") or a JSON number.
double json_number(const nlohmann::json& j, const std::string& what);

Manifest parse_manifest(const nlohmann::json& j);
Manifest load_manifest(const std::filesystem::path& path);

/// Path of a bundled fixture by file name.
std::filesystem::path fixture_path(const std::string& file);

LagrangianSpec build_spec(const Manifest& m);
SchmidtNames build_names(const Manifest& m);

}  // namespace hodyn
