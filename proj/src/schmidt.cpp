#include "hodyn/schmidt.hpp"

#include <algorithm>

#include "hodyn/error.hpp"
#include "hodyn/symcore/parse.hpp"

namespace hodyn {

using sym::jet_name;
using sym::partial;
using sym::Role;
using sym::substitute;

namespace {

Expr var(const std::string& n) { return Expr::variable(n); }
std::string dot(const std::string& n) { return jet_name(n, 1); }

}  // namespace

SchmidtNames SchmidtNames::defaults(const std::vector<std::string>& coords) {
  SchmidtNames n;
  n.coords = coords;
  for (const auto& c : coords) {
    n.accelerations.push_back("a_" + c);
    n.auxiliaries.push_back("r_" + c);
  }
  return n;
}

VariableContext schmidt_context(const LagrangianSpec& spec, const SchmidtNames& names) {
  if (names.accelerations.size() != names.coords.size())
    throw ValidationError("one acceleration symbol per coordinate is required");
  VariableContext ctx;
  for (const auto& v : spec.ctx.vars())
    if (v.role == Role::Parameter) ctx.declare_parameter(v.name);
  for (const auto& c : names.coords) ctx.declare_coordinate(c, 1);
  for (const auto& a : names.accelerations) ctx.declare_coordinate(a, 1, true);
  for (const auto& r : names.auxiliaries) ctx.declare_coordinate(r, 1, true);
  for (const auto& c : names.coords) ctx.declare_momentum(SchmidtNames::momentum(c), c);
  for (const auto& a : names.accelerations) ctx.declare_momentum(SchmidtNames::momentum(a), a);
  for (const auto& r : names.auxiliaries) ctx.declare_momentum(SchmidtNames::momentum(r), r);
  for (const auto& m : names.multipliers) ctx.declare_multiplier(m);
  return ctx;
}

Expr to_acceleration_chart(const Expr& e, const LagrangianSpec& spec, const SchmidtNames& names) {
  Rules rules;
  for (std::size_t i = 0; i < names.coords.size(); ++i) {
    rules.emplace(jet_name(names.coords[i], 2), var(names.accelerations[i]));
    rules.emplace(jet_name(names.coords[i], 3), var(dot(names.accelerations[i])));
  }
  for (const auto& v : e.variables()) {
    const auto* d = spec.ctx.find(v);
    if (d && d->role == Role::JetDerivative && d->order > 3)
      throw ValidationError("'" + v + "' exceeds the third-order acceleration chart");
  }
  return substitute(e, rules);
}

IntegrabilityResult integrability_check(const LagrangianSpec& spec, const SchmidtNames& names) {
  if (spec.order != 2) throw ValidationError("integrability check needs a second-order Lagrangian");
  Expr L = to_acceleration_chart(spec.L, spec, names);
  std::vector<Expr> g;
  std::vector<std::string> vel;
  for (std::size_t i = 0; i < names.coords.size(); ++i) {
    g.push_back(-partial(L, names.accelerations[i]));
    vel.push_back(dot(names.coords[i]));
  }
  IntegrabilityResult r;
  r.matrix = sym::jacobian(g, vel);
  r.witness = sym::asymmetry_witness(r.matrix);
  r.ok = !r.witness.has_value();
  return r;
}

AuxiliaryFunction solve_auxiliary_even(const LagrangianSpec& spec, const SchmidtNames& names) {
  auto chk = integrability_check(spec, names);
  if (!chk.ok) {
    const auto& w = *chk.witness;
    throw ObstructionError("integrability obstruction: [d2L/dA dQ'] not symmetric at (" +
                           std::to_string(w.i + 1) + "," + std::to_string(w.j + 1) +
                           "), d(-dL/dA_i)/dQ'_j - d(-dL/dA_j)/dQ'_i = " + w.difference.str());
  }
  Expr L = to_acceleration_chart(spec.L, spec, names);
  Expr F;
  for (std::size_t i = 0; i < names.coords.size(); ++i) {
    std::string v = dot(names.coords[i]);
    Expr missing = -partial(L, names.accelerations[i]) - partial(F, v);
    F += sym::antiderivative(missing, v);
  }
  return {F, false};
}

namespace {

// L + dF/dQ.Q' + dF/dQ'.A + dF/dA.A' (+ dF/dr.r' when odd).
Expr lifted_lagrangian(const Expr& L, const Expr& F, const SchmidtNames& names, bool odd) {
  Expr out = L;
  for (std::size_t i = 0; i < names.coords.size(); ++i) {
    const auto& q = names.coords[i];
    const auto& a = names.accelerations[i];
    out += partial(F, q) * var(dot(q)) + partial(F, dot(q)) * var(a) + partial(F, a) * var(dot(a));
  }
  if (odd)
    for (const auto& r : names.auxiliaries) out += partial(F, r) * var(dot(r));
  return out;
}

std::vector<std::string> dots(const std::vector<std::string>& v) {
  std::vector<std::string> out;
  for (const auto& n : v) out.push_back(dot(n));
  return out;
}

}  // namespace

SchmidtEvenResult schmidt_even(const LagrangianSpec& spec, const AuxiliaryFunction& F, const SchmidtNames& names) {
  if (spec.order != 2) throw ValidationError("even-order Schmidt route needs a second-order Lagrangian");
  SchmidtEvenResult r;
  r.F = F;
  r.phase.ctx = schmidt_context(spec, names);
  const auto n = names.coords.size();
  const auto qdot = dots(names.coords);
  const auto adot = dots(names.accelerations);

  if (sym::det(sym::mixed_hessian(F.F, names.accelerations, qdot)).is_zero())
    throw ObstructionError("[d2F/dA dQ'] is singular: velocities cannot be solved from p_A");

  Expr L = to_acceleration_chart(spec.L, spec, names);
  r.L2 = lifted_lagrangian(L, F.F, names, false);
  for (std::size_t i = 0; i < n; ++i)
    r.momenta.emplace_back(SchmidtNames::momentum(names.coords[i]), partial(r.L2, qdot[i]));
  for (std::size_t i = 0; i < n; ++i)
    r.momenta.emplace_back(SchmidtNames::momentum(names.accelerations[i]), partial(r.L2, adot[i]));

  std::vector<Expr> eqs;
  for (std::size_t i = 0; i < n; ++i)
    eqs.push_back(var(SchmidtNames::momentum(names.accelerations[i])) - partial(F.F, names.accelerations[i]));
  auto sol = sym::linear_solve(eqs, qdot);
  if (!sol.free.empty() || !sol.residual.empty())
    throw ObstructionError("velocities are not determined by the acceleration momenta");
  r.Z = sol.solved;

  Expr H = -substitute(L, r.Z);
  for (std::size_t i = 0; i < n; ++i) {
    const Expr& Zi = r.Z.at(qdot[i]);
    H += var(SchmidtNames::momentum(names.coords[i])) * Zi;
    H -= substitute(partial(F.F, names.coords[i]), r.Z) * Zi;
    H -= substitute(partial(F.F, qdot[i]), r.Z) * var(names.accelerations[i]);
  }
  r.H = H;
  r.phase.H = H;
  for (const auto& q : names.coords) r.phase.pairs.emplace_back(q, SchmidtNames::momentum(q));
  for (const auto& a : names.accelerations) r.phase.pairs.emplace_back(a, SchmidtNames::momentum(a));
  return r;
}

std::vector<Expr> constraint_recovery_residuals(const LagrangianSpec& spec, const AuxiliaryFunction& F,
                                                const SchmidtNames& names) {
  VariableContext ctx = schmidt_context(spec, names);
  Expr L = to_acceleration_chart(spec.L, spec, names);
  Expr L2 = lifted_lagrangian(L, F.F, names, false);
  const auto qdot = dots(names.coords);
  std::vector<Expr> out;
  for (std::size_t i = 0; i < names.coords.size(); ++i) {
    const auto& a = names.accelerations[i];
    Expr el = partial(L2, a) - sym::total_time_derivative(partial(L2, dot(a)), ctx);
    Expr expected;
    for (std::size_t j = 0; j < names.coords.size(); ++j) {
      Expr m = partial(partial(F.F, a), qdot[j]);
      expected += m * (var(names.accelerations[j]) - var(jet_name(names.coords[j], 2)));
    }
    out.push_back(el - expected);
  }
  return out;
}

bool verify_constraint_recovery(const LagrangianSpec& spec, const AuxiliaryFunction& F,
                                const SchmidtNames& names) {
  auto res = constraint_recovery_residuals(spec, F, names);
  return std::all_of(res.begin(), res.end(), [](const Expr& e) { return e.is_zero(); });
}

Expr legendre_identity_residual(const SchmidtEvenResult& r, const SchmidtNames& names) {
  Rules at = r.Z;
  Expr pairing;
  for (std::size_t i = 0; i < names.coords.size(); ++i) {
    const auto& a = names.accelerations[i];
    Expr arate = partial(r.H, SchmidtNames::momentum(a));
    at.emplace(dot(a), arate);
    pairing += var(SchmidtNames::momentum(names.coords[i])) * r.Z.at(dot(names.coords[i]));
    pairing += var(SchmidtNames::momentum(a)) * arate;
  }
  return r.H - (pairing - substitute(r.L2, at));
}

std::vector<Expr> schmidt_dynamics_residuals(const LagrangianSpec& spec, const SchmidtEvenResult& r,
                                             const SchmidtNames& names) {
  VariableContext ctx = spec.ctx;
  for (const auto& c : spec.coords) ctx.ensure_jet(c, 2 * spec.order + 1);
  Rules defs;
  for (const auto& [p, d] : r.momenta) defs.emplace(p, d);
  Rules chart;
  for (std::size_t i = 0; i < names.coords.size(); ++i) {
    chart.emplace(names.accelerations[i], var(jet_name(names.coords[i], 2)));
    chart.emplace(dot(names.accelerations[i]), var(jet_name(names.coords[i], 3)));
  }
  auto back = [&](const Expr& e) { return substitute(substitute(e, defs), chart); };

  auto el = euler_lagrange(spec);
  std::vector<Expr> first, rest;
  for (const auto& [rate, rhs] : hamilton_rates(r.phase)) {
    std::string base = rate.substr(0, rate.size() - 1);
    Expr res = sym::total_time_derivative(back(var(base)), ctx) - back(rhs);
    auto it = std::find(names.coords.begin(), names.coords.end(),
                        base.rfind("p_", 0) == 0 ? base.substr(2) : std::string());
    if (it != names.coords.end() && base == SchmidtNames::momentum(*it))
      first.push_back(res + el.equations[it - names.coords.begin()]);
    else
      rest.push_back(res);
  }
  first.insert(first.end(), rest.begin(), rest.end());
  return first;
}

Expr parse_auxiliary(const std::string& text, const LagrangianSpec& spec, const SchmidtNames& names) {
  VariableContext ctx = schmidt_context(spec, names);
  // Allow Q'' as an alias of A.
  VariableContext wide;
  for (const auto& v : ctx.vars()) {
    if (v.role == Role::JetDerivative) continue;
    if (v.role == Role::BaseCoordinate)
      wide.declare_coordinate(v.name, std::find(names.coords.begin(), names.coords.end(), v.name) !=
                                              names.coords.end() ? 2 : 0);
    else if (v.role == Role::Auxiliary)
      wide.declare_coordinate(v.name, 0, true);
    else if (v.role == Role::Momentum)
      continue;
    else
      wide.declare(v);
  }
  Expr F = sym::parse(text, wide);
  Rules alias;
  for (std::size_t i = 0; i < names.coords.size(); ++i)
    alias.emplace(jet_name(names.coords[i], 2), var(names.accelerations[i]));
  return substitute(F, alias);
}

void check_odd_auxiliary(const Expr& F, const LagrangianSpec& spec, const SchmidtNames& names) {
  (void)spec;
  if (names.auxiliaries.size() != names.coords.size())
    throw ValidationError("the auxiliary manifold must have one variable per coordinate");
  for (const auto& v : F.variables())
    for (const auto& m : names.multipliers)
      if (v == m) throw ValidationError("auxiliary function must not mention multipliers");
  auto block = sym::mixed_hessian(F, dots(names.coords), names.auxiliaries);
  if (sym::det(block).is_zero())
    throw ObstructionError("auxiliary function violates the odd-order requirement: det[d2F/dQ' dr] = 0");
}

SchmidtOddResult schmidt_odd(const LagrangianSpec& spec, const Expr& F, const SchmidtNames& names) {
  if (spec.order != 2 && spec.order != 3)
    throw ValidationError("odd-order Schmidt route handles Lagrangians of order 2 or 3");
  check_odd_auxiliary(F, spec, names);
  SchmidtOddResult r;
  r.F = F;
  auto& ps = r.phase;
  ps.ctx = schmidt_context(spec, names);

  Expr L = to_acceleration_chart(spec.L, spec, names);
  r.L3 = lifted_lagrangian(L, F, names, true);

  std::vector<std::string> base;
  for (const auto* group : {&names.coords, &names.accelerations, &names.auxiliaries})
    base.insert(base.end(), group->begin(), group->end());
  const auto vel = dots(base);

  std::vector<Expr> eqs;
  for (std::size_t i = 0; i < base.size(); ++i) {
    Expr def = partial(r.L3, vel[i]);
    r.momenta.emplace_back(SchmidtNames::momentum(base[i]), def);
    eqs.push_back(var(SchmidtNames::momentum(base[i])) - def);
  }
  sym::LinearSolution sol;
  try {
    sol = sym::linear_solve(eqs, vel);
  } catch (const ObstructionError& e) {
    throw ObstructionError(std::string("momentum definitions are not affine in the velocities: ") + e.what());
  }
  r.velocities = sol.solved;
  r.undetermined = sol.free;
  r.primaries = sol.residual;

  Expr Hc = -r.L3;
  for (std::size_t i = 0; i < base.size(); ++i) Hc += var(SchmidtNames::momentum(base[i])) * var(vel[i]);
  Hc = substitute(Hc, sol.solved);

  // Free velocities must enter only through primaries.
  Rules on_primaries;
  for (const auto& phi : r.primaries)
    for (const auto& v : phi.variables()) {
      const auto* d = ps.ctx.find(v);
      if (!d || d->role != Role::Momentum || on_primaries.count(v)) continue;
      Expr c = partial(phi, v);
      if (!c.is_constant() || c.is_zero()) continue;
      on_primaries.emplace(v, var(v) - phi / c);
      break;
    }
  Rules zero;
  for (const auto& u : r.undetermined) {
    if (!substitute(partial(Hc, u), on_primaries).is_zero())
      throw ObstructionError("canonical Hamiltonian depends on the undetermined velocity '" + u + "'");
    zero.emplace(u, Expr());
  }
  r.H = substitute(Hc, zero);

  Expr HT = r.H;
  for (std::size_t i = 0; i < r.primaries.size(); ++i) {
    std::string m;
    if (i < names.multipliers.size()) {
      m = names.multipliers[i];
    } else {
      for (int k = static_cast<int>(i) + 1;; ++k) {
        m = "lambda" + std::to_string(k);
        if (!ps.ctx.contains(m)) break;
      }
      ps.ctx.declare_multiplier(m);
    }
    ps.multipliers.push_back(m);
    HT += var(m) * r.primaries[i];
  }
  ps.H = HT;
  ps.constraints = r.primaries;
  for (const auto& b : base) ps.pairs.emplace_back(b, SchmidtNames::momentum(b));
  for (const auto& a : names.auxiliaries) ps.elimination_preference.push_back(a);
  for (const auto& a : names.auxiliaries) ps.elimination_preference.push_back(SchmidtNames::momentum(a));
  return r;
}

}  // namespace hodyn
