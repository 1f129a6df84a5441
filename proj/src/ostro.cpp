#include "hodyn/ostro.hpp"

#include "hodyn/error.hpp"

namespace hodyn {

using sym::jet_name;
using sym::partial;
using sym::substitute;
using sym::total_time_derivative;

std::string ostro_coordinate(const std::string& stem, int i) { return stem + "_" + std::to_string(i); }

std::string ostro_momentum(std::size_t n_coords, const std::string& stem, int i) {
  std::string base = "pi_" + std::to_string(i);
  return n_coords == 1 ? base : base + "_" + stem;
}

std::string ostro_momentum(const LagrangianSpec& spec, const std::string& stem, int i) {
  return ostro_momentum(spec.coords.size(), stem, i);
}

MomentumTable ostrogradsky_momenta(const LagrangianSpec& spec) {
  const int k = spec.order;
  VariableContext ctx = spec.ctx;
  for (const auto& c : spec.coords) ctx.ensure_jet(c, 2 * k);
  MomentumTable out;
  for (int i = 1; i <= k; ++i)
    for (const auto& c : spec.coords) {
      Expr pi;
      for (int j = i; j <= k; ++j) {
        Expr t = total_time_derivative(partial(spec.L, jet_name(c, j)), ctx, j - i);
        pi = ((j - i) % 2) ? pi - t : pi + t;
      }
      out.emplace_back(ostro_momentum(spec, c, i), pi);
    }
  return out;
}

OstroResult ostrogradsky_hamiltonian(const LagrangianSpec& spec) {
  const int k = spec.order;
  if (sym::det(highest_hessian(spec)).is_zero())
    throw ObstructionError("degenerate Lagrangian: the highest-order Hessian is singular");

  OstroResult r;
  r.momenta = ostrogradsky_momenta(spec);
  for (const auto& c : spec.coords)
    for (int i = 1; i <= k; ++i) r.chart.emplace(jet_name(c, i - 1), Expr::variable(ostro_coordinate(c, i)));

  // Phase-space context.
  auto& ps = r.phase;
  for (const auto& v : spec.ctx.vars())
    if (v.role == sym::Role::Parameter) ps.ctx.declare_parameter(v.name);
  for (const auto& c : spec.coords)
    for (int i = 1; i <= k; ++i) {
      std::string x = ostro_coordinate(c, i);
      ps.ctx.declare_coordinate(x, 1);
    }
  for (int i = 1; i <= k; ++i)
    for (const auto& c : spec.coords) {
      std::string x = ostro_coordinate(c, i), p = ostro_momentum(spec, c, i);
      ps.ctx.declare_momentum(p, x);
    }
  for (const auto& c : spec.coords)
    for (int i = 1; i <= k; ++i) ps.pairs.emplace_back(ostro_coordinate(c, i), ostro_momentum(spec, c, i));

  // pi^k = dL/dq^(k), solved for q^(k).
  std::vector<Expr> eqs;
  std::vector<std::string> unknowns;
  for (const auto& c : spec.coords) {
    Expr def = substitute(partial(spec.L, jet_name(c, k)), r.chart);
    eqs.push_back(Expr::variable(ostro_momentum(spec, c, k)) - def);
    unknowns.push_back(jet_name(c, k));
  }
  sym::LinearSolution sol;
  try {
    sol = sym::linear_solve(eqs, unknowns);
  } catch (const ObstructionError& e) {
    throw ObstructionError(std::string("top momentum relation cannot be solved for the highest jet: ") + e.what());
  }
  if (!sol.free.empty() || !sol.residual.empty())
    throw ObstructionError("top momentum relation does not determine the highest jet uniquely");
  r.top_velocity = sol.solved;

  Rules full = r.chart;
  for (const auto& [v, e] : sol.solved) full.emplace(v, e);
  Expr H = -substitute(spec.L, full);
  for (const auto& c : spec.coords)
    for (int i = 1; i <= k; ++i) {
      Expr rate = i < k ? Expr::variable(ostro_coordinate(c, i + 1)) : sol.solved.at(jet_name(c, k));
      H += rate * Expr::variable(ostro_momentum(spec, c, i));
    }
  ps.H = H;
  return r;
}

std::vector<Expr> ostro_dynamics_residuals(const LagrangianSpec& spec, const OstroResult& r) {
  const int k = spec.order;
  VariableContext ctx = spec.ctx;
  for (const auto& c : spec.coords) ctx.ensure_jet(c, 2 * k + 1);
  // Back to jets: q_(i) -> q^(i-1), pi^i -> its definition.
  Rules back;
  for (const auto& c : spec.coords)
    for (int i = 1; i <= k; ++i) back.emplace(ostro_coordinate(c, i), Expr::variable(jet_name(c, i - 1)));
  for (const auto& [p, def] : r.momenta) back.emplace(p, def);

  auto el = euler_lagrange(spec);
  std::vector<Expr> first, rest;
  auto rates = hamilton_rates(r.phase);
  for (const auto& [rate, rhs] : rates) {
    std::string base = rate.substr(0, rate.size() - 1);
    Expr lhs = total_time_derivative(substitute(Expr::variable(base), back), ctx);
    Expr res = lhs - substitute(rhs, back);
    bool is_pi1 = false;
    for (std::size_t a = 0; a < spec.coords.size(); ++a)
      if (base == ostro_momentum(spec, spec.coords[a], 1)) {
        // d(pi^1)/dt - dL/dq is minus the Euler-Lagrange expression
        first.push_back(res + el.equations[a]);
        is_pi1 = true;
      }
    if (!is_pi1) rest.push_back(res);
  }
  first.insert(first.end(), rest.begin(), rest.end());
  return first;
}

}  // namespace hodyn
