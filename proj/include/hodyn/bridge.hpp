#pragma once

#include <string>
#include <vector>

#include "hodyn/canonical.hpp"
#include "hodyn/schmidt.hpp"

namespace hodyn {

/// Target phase variables expressed in source phase variables.
struct CanonicalMap {
  std::vector<std::pair<std::string, std::string>> source_pairs;
  std::vector<std::pair<std::string, std::string>> target_pairs;
  Rules rules;  // target symbol -> expression in source symbols
  std::vector<Expr> assumptions;
  int momentum_sign = 1;  // sign s in pi^2 = s * dF/dQ'
};

struct BracketCertificate {
  bool canonical = false;
  /// Entry (a, b) = {image(z_a), image(z_b)} with z = (x_1..x_n, p_1..p_n) of the target.
  ExprMatrix brackets;
  std::string offending;  // first failing relation, empty when canonical
};

/// Builds the even-order map for a fixed sign of pi^2. Ostrogradsky side:
/// q_1 = Q, q_2 = Z, pi^1 = P_Q - dF/dQ, pi^2 = sign * dF/dQ' at Q' = Z.
CanonicalMap generating_map_even(const LagrangianSpec& spec, const SchmidtEvenResult& schmidt,
                                 const SchmidtNames& names, int sign);

/// Odd-order map: q_1 = Q, q_2 = W, q_3 = A, pi^1 = P_Q - dF/dQ,
/// pi^2 = sign * dF/dQ', pi^3 = P_A - dF/dA, with Q' = W solved from P_r = dF/dr.
CanonicalMap generating_map_odd(const LagrangianSpec& spec, const SchmidtOddResult& schmidt,
                                const SchmidtNames& names, int sign);

BracketCertificate verify_canonical(const CanonicalMap& map, const PhaseSystem& source);

/// Tries sign +1 first, then -1; returns the first map whose certificate passes
/// (or the +1 map with its failing certificate).
std::pair<CanonicalMap, BracketCertificate> certified_map_even(const LagrangianSpec& spec,
                                                               const SchmidtEvenResult& schmidt,
                                                               const SchmidtNames& names);
std::pair<CanonicalMap, BracketCertificate> certified_map_odd(const LagrangianSpec& spec,
                                                              const SchmidtOddResult& schmidt,
                                                              const SchmidtNames& names);

/// Substitutes the rules into a target-side expression. Throws DivisionByZero
/// when an assumption vanishes identically.
Expr transport_hamiltonian(const Expr& H_target, const CanonicalMap& map);

}  // namespace hodyn
