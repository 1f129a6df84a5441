#pragma once

#include <string>
#include <vector>

#include "hodyn/phase.hpp"
#include "hodyn/symcore/calculus.hpp"

namespace hodyn {

using sym::Expr;
using sym::Rules;

/// {f, g} = sum over pairs (df/dx dg/dp - df/dp dg/dx).
Expr poisson_bracket(const Expr& f, const Expr& g, const PhaseSystem& ps);

/// Constraints in triangular form: each solved constraint contributes one
/// rule var -> expr whose right side is free of every solved variable.
struct WeakContext {
  Rules solved;
  std::vector<Expr> unsolved;
  std::vector<Expr> sources;
};

/// Reduces c against wc; if still nonzero, records it (as a rule when it is
/// affine in a preferred variable with constant coefficient). Returns the
/// reduced constraint (zero when c already vanished weakly).
Expr add_constraint(WeakContext& wc, const Expr& c, const PhaseSystem& ps);

/// Substitutes the solved rules to a fixed point.
Expr weak_reduce(const Expr& e, const WeakContext& wc);

enum class ChainStatus { Closed, MultiplierDetermined, Inconsistent };
const char* status_name(ChainStatus s);

struct ChainConstraint {
  Expr raw;      // bracket as computed, multipliers substituted
  Expr reduced;  // weak-reduced against earlier stages
};

struct MultiplierSolution {
  std::string multiplier;
  Expr value;
  int stage = 0;                  // stage whose consistency equations fixed it
  std::vector<Expr> assumptions;  // expressions assumed nonzero
};

struct ConstraintChain {
  std::vector<std::vector<ChainConstraint>> stages;
  std::vector<WeakContext> context_before;  // weak context in force when each stage was found
  std::vector<MultiplierSolution> multiplier_solutions;
  Rules multiplier_rules;
  std::vector<std::string> residual_multipliers;
  ChainStatus status = ChainStatus::Closed;
  WeakContext weak;
  std::vector<Expr> assumptions;
};

/// Dirac-Bergmann consistency algorithm. Stage 0 holds the primaries.
ConstraintChain dirac_chain(const PhaseSystem& ps, int max_stages = 10);

/// One more consistency pass over every recorded constraint; returns the
/// weakly nonzero leftovers (empty for a complete chain).
std::vector<Expr> consistency_leftovers(const PhaseSystem& ps, const ConstraintChain& chain);

/// H_T with multiplier solutions and solved constraints substituted.
Expr reduced_hamiltonian(const PhaseSystem& ps, const ConstraintChain& chain);

}  // namespace hodyn
