#pragma once

#include <optional>

#include "hodyn/bridge.hpp"
#include "hodyn/canonical.hpp"
#include "hodyn/manifest.hpp"
#include "hodyn/numlab.hpp"
#include "hodyn/ostro.hpp"
#include "hodyn/schmidt.hpp"

namespace hodyn {

/// Even unless the manifest (or the override) says otherwise; auto picks the
/// odd route when the auxiliary-function condition is not integrable and an
/// odd-mode F is supplied. Throws ObstructionError when neither route applies.
Mode resolve_mode(const Manifest& m, std::optional<Mode> override_mode = std::nullopt);

struct EvenPipeline {
  LagrangianSpec spec;
  SchmidtNames names;
  SchmidtEvenResult schmidt;
  OstroResult ostro;
  CanonicalMap map;
  BracketCertificate certificate;
};

EvenPipeline run_even(const Manifest& m);

struct OddPipeline {
  LagrangianSpec spec;
  SchmidtNames names;
  SchmidtOddResult schmidt;
  ConstraintChain chain;
};

OddPipeline run_odd(const Manifest& m);

/// Compiled Hamilton flows of both pictures.
struct NumericRun {
  Trajectory schmidt, ostro, el;
  double map_error = 0;    // Schmidt flow mapped vs Ostrogradsky flow
  double el_error = 0;     // coordinate components vs the reduced Euler-Lagrange ODE
  double drift_schmidt = 0, drift_ostro = 0;
};

/// State order of a phase system: coordinates then momenta.
std::vector<std::string> state_order(const PhaseSystem& ps);
CompiledSystem compile_rates(const PhaseSystem& ps, const std::map<std::string, double>& params);

/// Integrates both pictures from the manifest's Schmidt initial state (the
/// Ostrogradsky start is its image under the map) plus the first-order
/// reduction of the Euler-Lagrange equations.
NumericRun simulate(const EvenPipeline& p, const Manifest& m, double dt, double T);

}  // namespace hodyn
