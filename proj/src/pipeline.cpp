#include "hodyn/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "hodyn/error.hpp"

namespace hodyn {

using sym::jet_name;

Mode resolve_mode(const Manifest& m, std::optional<Mode> override_mode) {
  Mode mode = override_mode.value_or(m.mode);
  if (mode != Mode::Auto) return mode;
  if (m.order == 2) {
    auto spec = build_spec(m);
    if (integrability_check(spec, build_names(m)).ok) return Mode::Even;
  }
  if (m.auxiliary_F) return Mode::Odd;
  if (m.order == 2) {
    auto spec = build_spec(m);
    solve_auxiliary_even(spec, build_names(m));  // throws with the witness
  }
  throw ObstructionError("no Schmidt route applies: supply an odd-mode auxiliary function");
}

EvenPipeline run_even(const Manifest& m) {
  EvenPipeline p{build_spec(m), build_names(m), {}, {}, {}, {}};
  auto F = solve_auxiliary_even(p.spec, p.names);
  p.schmidt = schmidt_even(p.spec, F, p.names);
  p.ostro = ostrogradsky_hamiltonian(p.spec);
  std::tie(p.map, p.certificate) = certified_map_even(p.spec, p.schmidt, p.names);
  return p;
}

OddPipeline run_odd(const Manifest& m) {
  if (!m.auxiliary_F) throw ValidationError("odd route needs 'auxiliary_F'");
  OddPipeline p{build_spec(m), build_names(m), {}, {}};
  Expr F;
  try {
    F = parse_auxiliary(*m.auxiliary_F, p.spec, p.names);
  } catch (const ParseError& e) {
    throw ValidationError(std::string("auxiliary_F: ") + e.what());
  }
  p.schmidt = schmidt_odd(p.spec, F, p.names);
  if (!p.schmidt.primaries.empty()) p.chain = dirac_chain(p.schmidt.phase);
  return p;
}

std::vector<std::string> state_order(const PhaseSystem& ps) {
  auto v = ps.coordinates();
  auto m = ps.momenta();
  v.insert(v.end(), m.begin(), m.end());
  return v;
}

CompiledSystem compile_rates(const PhaseSystem& ps, const std::map<std::string, double>& params) {
  std::vector<Expr> rhs;
  for (const auto& [_, e] : hamilton_equations(ps)) rhs.push_back(e);
  return CompiledSystem(rhs, state_order(ps), params);
}

NumericRun simulate(const EvenPipeline& p, const Manifest& m, double dt, double T) {
  if (!m.simulation) throw ValidationError("manifest has no 'simulation' block");
  const auto& params = m.parameters;
  const auto s_order = state_order(p.schmidt.phase);
  const auto o_order = state_order(p.ostro.phase);

  std::vector<double> y0;
  for (const auto& v : s_order) {
    auto it = m.simulation->initial_state.find(v);
    if (it == m.simulation->initial_state.end()) throw ValidationError("initial state lacks '" + v + "'");
    y0.push_back(it->second);
  }
  std::vector<Expr> map_exprs;
  for (const auto& v : o_order) map_exprs.push_back(p.map.rules.at(v));
  CompiledSystem map(map_exprs, s_order, params);

  NumericRun run;
  run.schmidt = rk4_integrate(compile_rates(p.schmidt.phase, params), y0, dt, T);
  run.ostro = rk4_integrate(compile_rates(p.ostro.phase, params), map(y0), dt, T);
  run.map_error = compare_under_map(run.schmidt, map, run.ostro);
  run.drift_schmidt = energy_drift(CompiledSystem({p.schmidt.H}, s_order, params), run.schmidt);
  run.drift_ostro = energy_drift(CompiledSystem({p.ostro.phase.H}, o_order, params), run.ostro);

  // Euler-Lagrange equations as a first-order system in jets 0..2k-1.
  const auto& spec = p.spec;
  const int top = 2 * spec.order;
  auto el = euler_lagrange(spec);
  std::vector<std::string> tops, jets;
  for (const auto& c : spec.coords) tops.push_back(jet_name(c, top));
  auto sol = sym::linear_solve(el.equations, tops);
  if (!sol.free.empty() || !sol.residual.empty())
    throw ObstructionError("Euler-Lagrange equations do not determine the top derivatives");
  std::vector<Expr> rhs;
  for (const auto& c : spec.coords)
    for (int r = 0; r < top; ++r) {
      jets.push_back(jet_name(c, r));
      rhs.push_back(r + 1 < top ? Expr::variable(jet_name(c, r + 1)) : sol.solved.at(jet_name(c, top)));
    }
  // Jets at t = 0 from the Schmidt state: q, Z, A, dH/dp_A.
  std::vector<Expr> init;
  for (std::size_t i = 0; i < spec.coords.size(); ++i) {
    const auto& q = p.names.coords[i];
    const auto& a = p.names.accelerations[i];
    init.push_back(Expr::variable(q));
    init.push_back(p.schmidt.Z.at(jet_name(q, 1)));
    init.push_back(Expr::variable(a));
    init.push_back(sym::partial(p.schmidt.H, SchmidtNames::momentum(a)));
  }
  run.el = rk4_integrate(CompiledSystem(rhs, jets, params), CompiledSystem(init, s_order, params)(y0), dt, T);
  for (std::size_t s = 0; s < run.el.states.size(); ++s)
    for (std::size_t i = 0; i < spec.coords.size(); ++i)
      run.el_error = std::max(run.el_error, std::abs(run.el.states[s][i * top] - run.schmidt.states[s][i]));
  return run;
}

}  // namespace hodyn
