#include "hodyn/variational.hpp"

#include <algorithm>

#include "hodyn/error.hpp"
#include "hodyn/symcore/parse.hpp"

namespace hodyn {

using sym::jet_name;
using sym::partial;
using sym::total_time_derivative;

LagrangianSpec make_spec(const std::vector<std::string>& coords, int order, const std::string& lagrangian,
                         const std::vector<std::string>& parameters) {
  if (order < 1) throw ValidationError("Lagrangian order must be at least 1");
  if (coords.empty()) throw ValidationError("no coordinates declared");
  LagrangianSpec spec;
  spec.coords = coords;
  spec.order = order;
  for (const auto& c : coords) spec.ctx.declare_coordinate(c, 2 * order);
  for (const auto& p : parameters) spec.ctx.declare_parameter(p);
  spec.L = sym::parse(lagrangian, spec.ctx);
  validate(spec);
  return spec;
}

int jet_order(const Expr& e, const LagrangianSpec& spec) {
  int best = -1;
  for (const auto& v : e.variables()) {
    const auto* var = spec.ctx.find(v);
    if (!var) continue;
    if (var->role == sym::Role::BaseCoordinate || var->role == sym::Role::JetDerivative)
      best = std::max(best, var->order);
  }
  return best;
}

void validate(const LagrangianSpec& spec) {
  for (const auto& v : spec.L.variables()) {
    const auto& var = spec.ctx.at(v);
    if (var.role == sym::Role::Parameter) continue;
    if (std::find(spec.coords.begin(), spec.coords.end(), var.stem) == spec.coords.end())
      throw ValidationError("Lagrangian mentions '" + v + "', which is not a coordinate jet");
    if (var.order > spec.order)
      throw ValidationError("Lagrangian mentions '" + v + "' beyond order " + std::to_string(spec.order));
  }
}

namespace {

VariableContext extended(const LagrangianSpec& spec, int order) {
  VariableContext ctx = spec.ctx;
  for (const auto& c : spec.coords) ctx.ensure_jet(c, order);
  return ctx;
}

}  // namespace

ELSystem euler_lagrange(const LagrangianSpec& spec) {
  const int k = spec.order;
  VariableContext ctx = extended(spec, 2 * k);
  ELSystem out;
  out.order = 2 * k;
  for (const auto& c : spec.coords) {
    Expr eq;
    for (int a = 0; a <= k; ++a) {
      Expr term = total_time_derivative(partial(spec.L, jet_name(c, a)), ctx, a);
      eq = (a % 2) ? eq - term : eq + term;
    }
    out.equations.push_back(eq);
  }
  return out;
}

ExprMatrix highest_hessian(const LagrangianSpec& spec) {
  std::vector<std::string> top;
  for (const auto& c : spec.coords) top.push_back(jet_name(c, spec.order));
  return sym::hessian(spec.L, top);
}

LagrangianSpec gauge_lift(const LagrangianSpec& spec, const Expr& F) {
  LagrangianSpec out = spec;
  int fo = jet_order(F, spec);
  out.order = std::max(spec.order, fo + 1);
  for (const auto& c : spec.coords) out.ctx.ensure_jet(c, 2 * out.order);
  out.L = spec.L + total_time_derivative(F, out.ctx);
  return out;
}

bool morse_rank_check(const Expr& E, const std::vector<std::string>& base_vars,
                      const std::vector<std::string>& fiber_vars) {
  std::vector<std::string> cols = base_vars;
  cols.insert(cols.end(), fiber_vars.begin(), fiber_vars.end());
  ExprMatrix m = sym::mixed_hessian(E, base_vars, cols);
  return sym::matrix_rank(m) == base_vars.size();
}

}  // namespace hodyn
