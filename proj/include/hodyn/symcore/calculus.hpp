#pragma once

#include <map>
#include <string>

#include "hodyn/symcore/context.hpp"
#include "hodyn/symcore/expr.hpp"

namespace hodyn::sym {

using Rules = std::map<std::string, Expr>;

/// Exact partial derivative, all other symbols independent.
Expr partial(const Expr& e, const std::string& var);

/// d/dt along jet chains: each base coordinate, auxiliary or jet variable of
/// order r maps to its order r+1 successor; parameters are constant. The
/// successor names follow jet_name() whether or not ctx declares them yet.
/// Momenta and multipliers have no Lagrangian-side time derivative and are
/// rejected.
Expr total_time_derivative(const Expr& e, const VariableContext& ctx);

/// Applies d/dt n times.
Expr total_time_derivative(const Expr& e, const VariableContext& ctx, int n);

/// Simultaneous substitution. Throws DivisionByZero when a denominator
/// becomes identically zero.
Expr substitute(const Expr& e, const Rules& rules);

/// P with dP/dvar = e and P|_{var=0} = 0. e must be polynomial in var.
Expr antiderivative(const Expr& e, const std::string& var);

/// Degree of e in var; e's denominator must not depend on var (else -2).
int polynomial_degree(const Expr& e, const std::string& var);

}  // namespace hodyn::sym
