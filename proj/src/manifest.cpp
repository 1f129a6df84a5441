#include "hodyn/manifest.hpp"

#include <fstream>

#include "hodyn/error.hpp"

namespace hodyn {

using nlohmann::json;

Mode parse_mode(const std::string& s) {
  if (s == "auto") return Mode::Auto;
  if (s == "even") return Mode::Even;
  if (s == "odd") return Mode::Odd;
  throw ValidationError("mode must be auto, even or odd, got '" + s + "'");
}

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::Auto: return "auto";
    case Mode::Even: return "even";
    case Mode::Odd: return "odd";
  }
  return "?";
}

double json_number(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      sym::Rational r(j.get<std::string>());
      r.canonicalize();
      if (r.get_den() == 0) throw std::invalid_argument("zero denominator");
      return r.get_d();
    } catch (const std::invalid_argument&) {
      throw ValidationError(what + ": '" + j.get<std::string>() + "' is not a rational number");
    }
  }
  throw ValidationError(what + " must be a number or a rational string");
}

namespace {

std::vector<std::string> string_list(const json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  if (!j.at(key).is_array()) throw ValidationError(std::string("'") + key + "' must be an array of names");
  for (const auto& e : j.at(key)) {
    if (!e.is_string()) throw ValidationError(std::string("'") + key + "' must contain strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

Manifest parse_manifest(const json& j) {
  if (!j.is_object()) throw ValidationError("manifest must be a JSON object");
  for (const char* key : {"coordinates", "order", "lagrangian"})
    if (!j.contains(key)) throw ValidationError(std::string("manifest lacks '") + key + "'");
  Manifest m;
  m.name = j.value("name", std::string("manifest"));
  m.coordinates = string_list(j, "coordinates");
  if (!j.at("order").is_number_integer()) throw ValidationError("'order' must be an integer");
  m.order = j.at("order").get<int>();
  if (!j.at("lagrangian").is_string()) throw ValidationError("'lagrangian' must be an expression string");
  m.lagrangian = j.at("lagrangian").get<std::string>();
  if (j.contains("parameters")) {
    if (!j.at("parameters").is_object()) throw ValidationError("'parameters' must map names to numbers");
    for (const auto& [k, v] : j.at("parameters").items()) m.parameters[k] = json_number(v, "parameter " + k);
  }
  if (j.contains("auxiliary_F") && !j.at("auxiliary_F").is_null())
    m.auxiliary_F = j.at("auxiliary_F").get<std::string>();
  m.mode = parse_mode(j.value("mode", std::string("auto")));
  if (m.mode == Mode::Odd && !m.auxiliary_F) throw ValidationError("mode odd requires 'auxiliary_F'");
  if (j.contains("simulation")) {
    const auto& s = j.at("simulation");
    Simulation sim;
    if (s.contains("initial_state"))
      for (const auto& [k, v] : s.at("initial_state").items()) sim.initial_state[k] = json_number(v, "initial " + k);
    if (s.contains("dt")) sim.dt = json_number(s.at("dt"), "dt");
    if (s.contains("T")) sim.T = json_number(s.at("T"), "T");
    m.simulation = sim;
  }
  m.accelerations = string_list(j, "accelerations");
  m.auxiliaries = string_list(j, "auxiliaries");
  m.multipliers = string_list(j, "multipliers");
  if (j.contains("golden")) m.golden = j.at("golden");
  // Surface grammar and declaration errors now rather than mid-pipeline.
  build_spec(m);
  return m;
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open manifest '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("manifest '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_manifest(j);
}

std::filesystem::path fixture_path(const std::string& file) {
  return std::filesystem::path(HODYN_FIXTURE_DIR) / file;
}

LagrangianSpec build_spec(const Manifest& m) {
  std::vector<std::string> params;
  for (const auto& [k, _] : m.parameters) params.push_back(k);
  try {
    return make_spec(m.coordinates, m.order, m.lagrangian, params);
  } catch (const ParseError& e) {
    throw ValidationError(std::string("lagrangian: ") + e.what());
  }
}

SchmidtNames build_names(const Manifest& m) {
  SchmidtNames n = SchmidtNames::defaults(m.coordinates);
  auto take = [&](const std::vector<std::string>& src, std::vector<std::string>& dst, const char* what) {
    if (src.empty()) return;
    if (src.size() != m.coordinates.size())
      throw ValidationError(std::string("'") + what + "' needs one name per coordinate");
    dst = src;
  };
  take(m.accelerations, n.accelerations, "accelerations");
  take(m.auxiliaries, n.auxiliaries, "auxiliaries");
  n.multipliers = m.multipliers;
  return n;
}

}  // namespace hodyn
