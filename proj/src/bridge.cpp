#include "hodyn/bridge.hpp"

#include "hodyn/error.hpp"
#include "hodyn/ostro.hpp"

namespace hodyn {

using sym::jet_name;
using sym::partial;
using sym::substitute;

namespace {

Expr var(const std::string& n) { return Expr::variable(n); }

std::vector<std::pair<std::string, std::string>> ostro_pairs(const LagrangianSpec& spec, int k) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& c : spec.coords)
    for (int i = 1; i <= k; ++i) out.emplace_back(ostro_coordinate(c, i), ostro_momentum(spec, c, i));
  return out;
}

}  // namespace

CanonicalMap generating_map_even(const LagrangianSpec& spec, const SchmidtEvenResult& schmidt,
                                 const SchmidtNames& names, int sign) {
  if (schmidt.Z.empty()) throw ValidationError("velocity solution missing for the generating map");
  CanonicalMap m;
  m.momentum_sign = sign;
  m.source_pairs = schmidt.phase.pairs;
  m.target_pairs = ostro_pairs(spec, 2);
  const Expr& F = schmidt.F.F;
  std::vector<std::string> qdot;
  for (const auto& q : names.coords) qdot.push_back(jet_name(q, 1));
  m.assumptions.push_back(sym::det(sym::mixed_hessian(F, names.accelerations, qdot)));
  if (m.assumptions.back().is_zero())
    throw ObstructionError("generating map is degenerate: det[d2F/dA dQ'] = 0");
  for (std::size_t i = 0; i < names.coords.size(); ++i) {
    const auto& c = spec.coords[i];
    const auto& q = names.coords[i];
    m.rules.emplace(ostro_coordinate(c, 1), var(q));
    m.rules.emplace(ostro_coordinate(c, 2), schmidt.Z.at(qdot[i]));
    m.rules.emplace(ostro_momentum(spec, c, 1),
                    var(SchmidtNames::momentum(q)) - substitute(partial(F, q), schmidt.Z));
    m.rules.emplace(ostro_momentum(spec, c, 2), Expr(sign) * substitute(partial(F, qdot[i]), schmidt.Z));
  }
  return m;
}

CanonicalMap generating_map_odd(const LagrangianSpec& spec, const SchmidtOddResult& schmidt,
                                const SchmidtNames& names, int sign) {
  CanonicalMap m;
  m.momentum_sign = sign;
  m.source_pairs = schmidt.phase.pairs;
  m.target_pairs = ostro_pairs(spec, 3);
  const Expr& F = schmidt.F;
  std::vector<std::string> qdot;
  std::vector<Expr> eqs;
  for (const auto& q : names.coords) qdot.push_back(jet_name(q, 1));
  for (const auto& r : names.auxiliaries) eqs.push_back(var(SchmidtNames::momentum(r)) - partial(F, r));
  auto sol = sym::linear_solve(eqs, qdot);
  if (!sol.free.empty() || !sol.residual.empty())
    throw ObstructionError("velocities are not determined by the auxiliary momenta");
  m.assumptions = sol.assumptions;
  m.assumptions.push_back(sym::det(sym::mixed_hessian(F, qdot, names.auxiliaries)));
  const Rules& W = sol.solved;
  for (std::size_t i = 0; i < names.coords.size(); ++i) {
    const auto& c = spec.coords[i];
    const auto& q = names.coords[i];
    const auto& a = names.accelerations[i];
    m.rules.emplace(ostro_coordinate(c, 1), var(q));
    m.rules.emplace(ostro_coordinate(c, 2), W.at(qdot[i]));
    m.rules.emplace(ostro_coordinate(c, 3), var(a));
    m.rules.emplace(ostro_momentum(spec, c, 1), var(SchmidtNames::momentum(q)) - substitute(partial(F, q), W));
    m.rules.emplace(ostro_momentum(spec, c, 2), Expr(sign) * substitute(partial(F, qdot[i]), W));
    m.rules.emplace(ostro_momentum(spec, c, 3), var(SchmidtNames::momentum(a)) - substitute(partial(F, a), W));
  }
  return m;
}

BracketCertificate verify_canonical(const CanonicalMap& map, const PhaseSystem& source) {
  const std::size_t n = map.target_pairs.size();
  std::vector<Expr> img;
  std::vector<std::string> label;
  for (const auto& [x, _] : map.target_pairs) {
    img.push_back(map.rules.at(x));
    label.push_back(x);
  }
  for (const auto& [_, p] : map.target_pairs) {
    img.push_back(map.rules.at(p));
    label.push_back(p);
  }
  BracketCertificate cert;
  cert.brackets = ExprMatrix(2 * n, 2 * n);
  cert.canonical = true;
  for (std::size_t a = 0; a < 2 * n; ++a)
    for (std::size_t b = 0; b < 2 * n; ++b) {
      Expr v = poisson_bracket(img[a], img[b], source);
      cert.brackets(a, b) = v;
      Expr want = (a < n && b == a + n) ? Expr(1) : (b < n && a == b + n) ? Expr(-1) : Expr(0);
      if (cert.canonical && !(v == want)) {
        cert.canonical = false;
        cert.offending = "{" + label[a] + ", " + label[b] + "} = " + v.str() + ", expected " + want.str();
      }
    }
  return cert;
}

namespace {

template <class Build>
std::pair<CanonicalMap, BracketCertificate> first_passing(Build build, const PhaseSystem& source) {
  auto plus = build(1);
  auto cert_plus = verify_canonical(plus, source);
  if (cert_plus.canonical) return {plus, cert_plus};
  auto minus = build(-1);
  auto cert_minus = verify_canonical(minus, source);
  if (cert_minus.canonical) return {minus, cert_minus};
  return {plus, cert_plus};
}

}  // namespace

std::pair<CanonicalMap, BracketCertificate> certified_map_even(const LagrangianSpec& spec,
                                                               const SchmidtEvenResult& schmidt,
                                                               const SchmidtNames& names) {
  return first_passing([&](int s) { return generating_map_even(spec, schmidt, names, s); }, schmidt.phase);
}

std::pair<CanonicalMap, BracketCertificate> certified_map_odd(const LagrangianSpec& spec,
                                                              const SchmidtOddResult& schmidt,
                                                              const SchmidtNames& names) {
  return first_passing([&](int s) { return generating_map_odd(spec, schmidt, names, s); }, schmidt.phase);
}

Expr transport_hamiltonian(const Expr& H_target, const CanonicalMap& map) {
  for (const auto& a : map.assumptions)
    if (a.is_zero()) throw DivisionByZero("canonical map assumption vanishes identically");
  return substitute(H_target, map.rules);
}

}  // namespace hodyn
