#include "hodyn/phase.hpp"

#include <map>

#include "hodyn/error.hpp"
#include "hodyn/symcore/calculus.hpp"

namespace hodyn {

std::vector<std::string> PhaseSystem::coordinates() const {
  std::vector<std::string> out;
  for (const auto& [x, _] : pairs) out.push_back(x);
  return out;
}

std::vector<std::string> PhaseSystem::momenta() const {
  std::vector<std::string> out;
  for (const auto& [_, p] : pairs) out.push_back(p);
  return out;
}

RateList hamilton_rates(const PhaseSystem& ps) {
  RateList out;
  for (const auto& [x, p] : ps.pairs) out.emplace_back(sym::jet_name(x, 1), sym::partial(ps.H, p));
  for (const auto& [x, p] : ps.pairs) out.emplace_back(sym::jet_name(p, 1), -sym::partial(ps.H, x));
  return out;
}

RateList hamilton_equations(const PhaseSystem& ps) {
  if (!ps.constraints.empty())
    throw ValidationError("constrained system: use the constraint algorithm for its dynamics");
  return hamilton_rates(ps);
}

sym::Expr energy_rate(const PhaseSystem& ps) {
  std::map<std::string, sym::Expr> rate;
  for (auto& [name, rhs] : hamilton_rates(ps)) rate.emplace(name, std::move(rhs));
  sym::Expr sum;
  for (const auto& [x, p] : ps.pairs)
    sum += sym::partial(ps.H, x) * rate.at(sym::jet_name(x, 1)) + sym::partial(ps.H, p) * rate.at(sym::jet_name(p, 1));
  return sum;
}

}  // namespace hodyn
