#include "hodyn/report.hpp"

#include "hodyn/symcore/parse.hpp"

namespace hodyn {

Json to_json(const Expr& e) { return e.str(); }

Json to_json(const Rules& rules) {
  Json j = Json::object();
  for (const auto& [k, v] : rules) j[k] = v.str();
  return j;
}

Json to_json(const ExprMatrix& m) {
  Json j = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).str());
    j.push_back(std::move(row));
  }
  return j;
}

Json to_json(const std::vector<Expr>& v) {
  Json j = Json::array();
  for (const auto& e : v) j.push_back(e.str());
  return j;
}

namespace {

Json table_json(const std::vector<std::pair<std::string, Expr>>& t) {
  Json j = Json::object();
  for (const auto& [k, v] : t) j[k] = v.str();
  return j;
}

// Each golden "<key>_reference_display" is compared against the derived value
// parsed in the phase context.
void flag_discrepancies(Json& out, const nlohmann::json& golden, const std::string& prefix,
                        const std::map<std::string, Expr>& derived, const VariableContext& ctx) {
  if (!golden.is_object()) return;
  for (const auto& [key, value] : golden.items()) {
    const std::string suffix = "_reference_display";
    if (key.size() <= suffix.size() || key.compare(key.size() - suffix.size(), suffix.size(), suffix) != 0)
      continue;
    auto field = key.substr(0, key.size() - suffix.size());
    auto it = derived.find(field);
    if (it == derived.end()) continue;
    Expr reference = sym::parse(value.get<std::string>(), ctx);
    Expr diff = it->second - reference;
    if (diff.is_zero()) continue;
    out["discrepancies"].push_back({{"field", prefix + "." + field},
                                    {"reference", reference.str()},
                                    {"derived", it->second.str()},
                                    {"derived_minus_reference", diff.str()}});
  }
}

}  // namespace

Json el_section(const LagrangianSpec& spec) {
  auto el = euler_lagrange(spec);
  auto hess = highest_hessian(spec);
  auto d = sym::det(hess);
  return {{"order", el.order},
          {"equations", to_json(el.equations)},
          {"hessian", {{"matrix", to_json(hess)}, {"determinant", d.str()}, {"nondegenerate", !d.is_zero()}}}};
}

Json ostro_section(const LagrangianSpec& spec, const OstroResult& r) {
  Json hamilton = table_json(hamilton_equations(r.phase));
  Json dyn = Json::array();
  bool sound = true;
  for (const auto& e : ostro_dynamics_residuals(spec, r)) {
    sound = sound && e.is_zero();
    dyn.push_back(e.str());
  }
  return {{"chart", to_json(r.chart)},
          {"momenta", table_json(r.momenta)},
          {"top_velocity", to_json(r.top_velocity)},
          {"H", r.phase.H.str()},
          {"hamilton", hamilton},
          {"reproduces_el", sound}};
}

Json schmidt_even_section(const EvenPipeline& p, const nlohmann::json& golden) {
  const auto& s = p.schmidt;
  auto integ = integrability_check(p.spec, p.names);
  Json out{{"mode", "even"},
           {"integrability", {{"symmetric", integ.ok}, {"matrix", to_json(integ.matrix)}}},
           {"F", s.F.F.str()},
           {"L2", s.L2.str()},
           {"momenta", table_json(s.momenta)},
           {"Z", to_json(s.Z)},
           {"H", s.H.str()},
           {"hamilton", table_json(hamilton_equations(s.phase))}};
  out["constraint_recovery"] = verify_constraint_recovery(p.spec, s.F, p.names);
  out["legendre_identity"] = legendre_identity_residual(s, p.names).is_zero();
  bool sound = true;
  for (const auto& e : schmidt_dynamics_residuals(p.spec, s, p.names)) sound = sound && e.is_zero();
  out["reproduces_el"] = sound;
  out["discrepancies"] = Json::array();
  if (golden.contains("schmidt"))
    flag_discrepancies(out, golden["schmidt"], "schmidt", {{"H", s.H}}, s.phase.ctx);
  if (golden.contains("ostrogradsky"))
    flag_discrepancies(out, golden["ostrogradsky"], "ostrogradsky", {{"H", p.ostro.phase.H}}, p.ostro.phase.ctx);
  return out;
}

Json schmidt_odd_section(const OddPipeline& p) {
  const auto& s = p.schmidt;
  Json undetermined = Json::array();
  for (const auto& v : s.undetermined) undetermined.push_back(v);
  Json multipliers = Json::array();
  for (const auto& m : s.phase.multipliers) multipliers.push_back(m);
  return {{"mode", "odd"},
          {"F", s.F.str()},
          {"L3", s.L3.str()},
          {"momenta", table_json(s.momenta)},
          {"velocities", to_json(s.velocities)},
          {"undetermined_velocities", undetermined},
          {"primaries", to_json(s.primaries)},
          {"H", s.H.str()},
          {"multipliers", multipliers},
          {"H_T", s.phase.H.str()}};
}

Json chain_section(const OddPipeline& p) {
  const auto& c = p.chain;
  Json stages = Json::array();
  for (std::size_t k = 0; k < c.stages.size(); ++k) {
    Json constraints = Json::array();
    for (const auto& cc : c.stages[k])
      constraints.push_back({{"stage", k + 1}, {"raw", cc.raw.str()}, {"reduced", cc.reduced.str()}});
    stages.push_back({{"stage", k + 1}, {"constraints", constraints}});
  }
  Json sols = Json::array();
  for (const auto& m : c.multiplier_solutions)
    sols.push_back({{"multiplier", m.multiplier},
                    {"value", m.value.str()},
                    {"stage", m.stage},
                    {"assumptions", to_json(m.assumptions)}});
  Json residual = Json::array();
  for (const auto& m : c.residual_multipliers) residual.push_back(m);
  Json rules = to_json(c.weak.solved);
  return {{"status", status_name(c.status)},
          {"stages", stages},
          {"multiplier_solutions", sols},
          {"undetermined_multipliers", residual},
          {"weak_rules", rules},
          {"unsolved_constraints", to_json(c.weak.unsolved)},
          {"assumptions", to_json(c.assumptions)},
          {"reduced_H", reduced_hamiltonian(p.schmidt.phase, c).str()}};
}

Json map_section(const CanonicalMap& map, const BracketCertificate& cert) {
  Json pairs = Json::array();
  for (const auto& [x, px] : map.target_pairs) pairs.push_back({x, px});
  return {{"momentum_sign", map.momentum_sign},
          {"target_pairs", pairs},
          {"rules", to_json(map.rules)},
          {"assumptions", to_json(map.assumptions)},
          {"certificate",
           {{"canonical", cert.canonical}, {"offending", cert.offending}, {"brackets", to_json(cert.brackets)}}}};
}

Json transport_section(const EvenPipeline& p) {
  Expr moved = transport_hamiltonian(p.ostro.phase.H, p.map);
  Expr diff = moved - p.schmidt.H;
  return {{"transported_H", moved.str()}, {"difference", diff.str()}, {"consistent", diff.is_zero()}};
}

Json numeric_section(const NumericRun& run, double dt, double T) {
  return {{"dt", dt},
          {"T", T},
          {"steps", step_count(dt, T)},
          {"map_error", run.map_error},
          {"el_error", run.el_error},
          {"energy_drift_schmidt", run.drift_schmidt},
          {"energy_drift_ostrogradsky", run.drift_ostro}};
}

Json obstruction_section(const std::string& message, const std::optional<sym::Asymmetry>& witness) {
  Json out{{"error", "obstruction"}, {"message", message}};
  if (witness)
    out["witness"] = {{"i", witness->i + 1}, {"j", witness->j + 1}, {"difference", witness->difference.str()}};
  return out;
}

}  // namespace hodyn
