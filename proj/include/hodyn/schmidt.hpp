#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hodyn/phase.hpp"
#include "hodyn/variational.hpp"

namespace hodyn {

/// Symbol names on the acceleration-bundle side. Coordinates keep their stems;
/// the rest default to a_<stem>, r_<stem>, lambda<i>; momenta are p_<name>.
struct SchmidtNames {
  std::vector<std::string> coords;
  std::vector<std::string> accelerations;
  std::vector<std::string> auxiliaries;
  std::vector<std::string> multipliers;

  static SchmidtNames defaults(const std::vector<std::string>& coords);
  static std::string momentum(const std::string& name) { return "p_" + name; }
};

/// Context holding Q, Q', A, A', r, r' (as jets), parameters, momenta and
/// multipliers of the Schmidt picture.
VariableContext schmidt_context(const LagrangianSpec& spec, const SchmidtNames& names);

/// Rewrites jets of the source Lagrangian: q'' -> A, q''' -> A'.
Expr to_acceleration_chart(const Expr& e, const LagrangianSpec& spec, const SchmidtNames& names);

struct IntegrabilityResult {
  bool ok = false;
  ExprMatrix matrix;  // d(-dL/dA_i)/dQ'_j
  std::optional<sym::Asymmetry> witness;
};

IntegrabilityResult integrability_check(const LagrangianSpec& spec, const SchmidtNames& names);

struct AuxiliaryFunction {
  Expr F;
  bool odd = false;
};

/// Integrates dF/dQ'_i = -dL/dA_i along the velocities, W(Q, A) = 0.
AuxiliaryFunction solve_auxiliary_even(const LagrangianSpec& spec, const SchmidtNames& names);

struct SchmidtEvenResult {
  AuxiliaryFunction F;
  Expr L2;
  MomentumTable momenta;  // p_Q, p_A in (Q, Q', A, A')
  Rules Z;                // Q' -> Z(Q, A, p_A)
  Expr H;
  PhaseSystem phase;
};

SchmidtEvenResult schmidt_even(const LagrangianSpec& spec, const AuxiliaryFunction& F, const SchmidtNames& names);

/// Residual of the second Euler-Lagrange set of L2 against
/// [d^2F/dA dQ'] (A - Q''), per acceleration; all zero iff recovery holds.
std::vector<Expr> constraint_recovery_residuals(const LagrangianSpec& spec, const AuxiliaryFunction& F,
                                                const SchmidtNames& names);
bool verify_constraint_recovery(const LagrangianSpec& spec, const AuxiliaryFunction& F,
                                const SchmidtNames& names);

/// H - (p_Q.Z + p_A.A'_H - L2(Q, A, Z, A'_H)) with A'_H = dH/dp_A.
Expr legendre_identity_residual(const SchmidtEvenResult& r, const SchmidtNames& names);

/// Hamilton's equations pulled back through the momentum definitions and
/// A = Q'', A' = Q'''. Per coordinate, p_Q' + dH/dQ + EL comes first, then
/// the remaining rate equations; all vanish when the dynamics agree.
std::vector<Expr> schmidt_dynamics_residuals(const LagrangianSpec& spec, const SchmidtEvenResult& r,
                                             const SchmidtNames& names);

struct SchmidtOddResult {
  Expr F;
  Expr L3;
  MomentumTable momenta;         // p_Q, p_A, p_r in velocities
  Rules velocities;              // solved velocities in phase variables
  std::vector<std::string> undetermined;  // velocities left free by the momenta
  std::vector<Expr> primaries;
  Expr H;                        // canonical part, multiplier free
  PhaseSystem phase;             // H_T = H + sum lambda_i Phi_i
};

/// Parses an odd-mode F given over (Q, Q', A, r); q'' in the text is read as A.
Expr parse_auxiliary(const std::string& text, const LagrangianSpec& spec, const SchmidtNames& names);

/// Throws ObstructionError unless det[d^2F/dQ' dr] is a nonzero expression.
void check_odd_auxiliary(const Expr& F, const LagrangianSpec& spec, const SchmidtNames& names);

SchmidtOddResult schmidt_odd(const LagrangianSpec& spec, const Expr& F, const SchmidtNames& names);

}  // namespace hodyn
