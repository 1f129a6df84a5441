#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hodyn/symcore/context.hpp"
#include "hodyn/symcore/expr.hpp"

namespace hodyn {

/// Hamiltonian data on a cotangent bundle with canonical pairs (x_i, p_i).
struct PhaseSystem {
  sym::VariableContext ctx;
  std::vector<std::pair<std::string, std::string>> pairs;  // (coordinate, momentum)
  sym::Expr H;
  std::vector<sym::Expr> constraints;  // primaries, each ≈ 0
  std::vector<std::string> multipliers;
  /// Variables that weak reduction should eliminate first, most preferred first.
  std::vector<std::string> elimination_preference;

  std::vector<std::string> coordinates() const;
  std::vector<std::string> momenta() const;
};

/// Ordered (momentum name, defining expression) list.
using MomentumTable = std::vector<std::pair<std::string, sym::Expr>>;

/// Hamilton's equations as (rate symbol, right-hand side); the rate symbol of
/// x is x' in the jet notation.
using RateList = std::vector<std::pair<std::string, sym::Expr>>;

/// x' = dH/dp, p' = -dH/dx for every pair. Throws ValidationError when the
/// system still carries constraints.
RateList hamilton_equations(const PhaseSystem& ps);

/// Same as hamilton_equations but ignores constraints (multipliers are
/// treated as constants).
RateList hamilton_rates(const PhaseSystem& ps);

/// Sum over pairs of dH/dx * x' + dH/dp * p' with the rates substituted.
sym::Expr energy_rate(const PhaseSystem& ps);

}  // namespace hodyn
