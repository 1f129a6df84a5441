#pragma once

#include <string>

#include "hodyn/phase.hpp"
#include "hodyn/variational.hpp"

namespace hodyn {

/// Chart symbol q_(i) of stem: "<stem>_<i>".
std::string ostro_coordinate(const std::string& stem, int i);
/// Momentum symbol pi^i: "pi_<i>" for a single stem, else "pi_<i>_<stem>".
std::string ostro_momentum(const LagrangianSpec& spec, const std::string& stem, int i);
std::string ostro_momentum(std::size_t n_coords, const std::string& stem, int i);

/// pi^i = sum_{j=i..k} (-d/dt)^(j-i) dL/dq^(j), expressed in jet variables.
MomentumTable ostrogradsky_momenta(const LagrangianSpec& spec);

struct OstroResult {
  MomentumTable momenta;  // in jet variables
  Rules chart;            // jet q^(i-1) -> q_(i), i = 1..k
  Rules top_velocity;     // q^(k) in chart and momentum symbols
  PhaseSystem phase;
};

/// Canonical Hamiltonian sum q_(i)' pi^i - L on the Ostrogradsky phase space.
/// Throws ObstructionError for a degenerate highest Hessian or when pi^k is
/// not affine in q^(k).
OstroResult ostrogradsky_hamiltonian(const LagrangianSpec& spec);

/// Hamilton's equations pulled back to jets (q_(i) -> q^(i-1), momenta ->
/// their definitions). Per coordinate, d(pi^1)/dt + dH/dq_(1) + EL comes
/// first; every other rate equation follows as lhs - rhs. All entries vanish
/// for a sound transformation.
std::vector<Expr> ostro_dynamics_residuals(const LagrangianSpec& spec, const OstroResult& r);

}  // namespace hodyn
