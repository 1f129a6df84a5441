#pragma once

#include <string>
#include <vector>

#include "hodyn/symcore/calculus.hpp"
#include "hodyn/symcore/context.hpp"
#include "hodyn/symcore/expr.hpp"
#include "hodyn/symcore/linalg.hpp"

namespace hodyn {

using sym::Expr;
using sym::ExprMatrix;
using sym::Rules;
using sym::VariableContext;

/// A Lagrangian L(q, q', ..., q^(k)) over the coordinate stems in coords.
struct LagrangianSpec {
  VariableContext ctx;
  std::vector<std::string> coords;
  int order = 1;
  Expr L;
};

/// Builds a spec: declares every coordinate with jets up to 2*order (room
/// for the Euler-Lagrange equations) and every parameter, then parses L.
LagrangianSpec make_spec(const std::vector<std::string>& coords, int order, const std::string& lagrangian,
                         const std::vector<std::string>& parameters = {});

/// Throws ValidationError when L mentions jets above the order or foreign stems.
void validate(const LagrangianSpec& spec);

/// Highest jet order of any coordinate occurring in e (0 for jet-free, -1 for constants).
int jet_order(const Expr& e, const LagrangianSpec& spec);

struct ELSystem {
  std::vector<Expr> equations;  // one per coordinate, each read as "= 0"
  int order = 0;
};

ELSystem euler_lagrange(const LagrangianSpec& spec);

/// d^2 L / d q_i^(k) d q_j^(k).
ExprMatrix highest_hessian(const LagrangianSpec& spec);

/// L + dF/dt. The order becomes max(k, order(F) + 1).
LagrangianSpec gauge_lift(const LagrangianSpec& spec, const Expr& F);

/// Maximal rank of the block (d^2E/dx dx | d^2E/dx dr), rows indexed by x.
bool morse_rank_check(const Expr& E, const std::vector<std::string>& base_vars,
                      const std::vector<std::string>& fiber_vars);

}  // namespace hodyn
