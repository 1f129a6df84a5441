#include "hodyn/canonical.hpp"

#include <algorithm>
#include <set>

#include "hodyn/error.hpp"
#include "hodyn/symcore/linalg.hpp"

namespace hodyn {

using sym::partial;
using sym::Role;
using sym::substitute;

Expr poisson_bracket(const Expr& f, const Expr& g, const PhaseSystem& ps) {
  Expr out;
  for (const auto& [x, p] : ps.pairs) {
    if (!(f.depends_on(x) || f.depends_on(p)) || !(g.depends_on(x) || g.depends_on(p))) continue;
    out += partial(f, x) * partial(g, p) - partial(f, p) * partial(g, x);
  }
  return out;
}

const char* status_name(ChainStatus s) {
  switch (s) {
    case ChainStatus::Closed: return "closed";
    case ChainStatus::MultiplierDetermined: return "multiplier-determined";
    case ChainStatus::Inconsistent: return "inconsistent";
  }
  return "?";
}

Expr weak_reduce(const Expr& e, const WeakContext& wc) {
  Expr cur = e;
  for (std::size_t round = 0; round <= wc.solved.size() + 1; ++round) {
    bool touches = false;
    for (const auto& [v, _] : wc.solved)
      if (cur.depends_on(v)) {
        touches = true;
        break;
      }
    if (!touches) return cur;
    cur = substitute(cur, wc.solved);
  }
  throw ObstructionError("weak reduction does not terminate: cyclic constraint rules");
}

namespace {

// Lower is more preferred; parameters and multipliers are never eliminated.
int elimination_rank(const std::string& v, const PhaseSystem& ps) {
  auto it = std::find(ps.elimination_preference.begin(), ps.elimination_preference.end(), v);
  int n = static_cast<int>(ps.elimination_preference.size());
  if (it != ps.elimination_preference.end()) return static_cast<int>(it - ps.elimination_preference.begin());
  const auto* d = ps.ctx.find(v);
  if (!d) return n + 10;
  switch (d->role) {
    case Role::Momentum: return n + 1;
    case Role::Auxiliary: return n + 2;
    case Role::BaseCoordinate: return n + 3;
    case Role::JetDerivative: return n + 4;
    default: return -1;
  }
}

void install_rule(WeakContext& wc, const std::string& v, const Expr& value) {
  Rules one{{v, value}};
  for (auto& [_, e] : wc.solved) e = substitute(e, one);
  wc.solved.emplace(v, value);
}

}  // namespace

Expr add_constraint(WeakContext& wc, const Expr& c, const PhaseSystem& ps) {
  Expr r = weak_reduce(c, wc);
  if (r.is_zero()) return r;
  wc.sources.push_back(c);
  if (r.is_constant()) {
    wc.unsolved.push_back(r);
    return r;
  }
  std::vector<std::pair<int, std::string>> cands;
  for (const auto& v : r.variables()) {
    int rank = elimination_rank(v, ps);
    if (rank >= 0) cands.emplace_back(rank, v);
  }
  std::sort(cands.begin(), cands.end());
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& [_, v] : cands) {
      if (r.den().depends_on(v) || r.num().degree(v) != 1) continue;
      Expr coeff = partial(r, v);
      if (coeff.depends_on(v)) continue;
      if (pass == 0 && !coeff.is_constant()) continue;
      install_rule(wc, v, Expr::variable(v) - r / coeff);
      return r;
    }
  wc.unsolved.push_back(r);
  return r;
}

namespace {

bool mentions_any(const Expr& e, const std::vector<std::string>& names) {
  return std::any_of(names.begin(), names.end(), [&](const auto& n) { return e.depends_on(n); });
}

}  // namespace

ConstraintChain dirac_chain(const PhaseSystem& ps, int max_stages) {
  if (ps.constraints.empty()) throw ValidationError("constraint algorithm needs primary constraints");
  ConstraintChain chain;
  chain.context_before.push_back(chain.weak);
  std::vector<ChainConstraint> stage0;
  std::vector<Expr> active;
  for (const auto& phi : ps.constraints) {
    stage0.push_back({phi, phi});
    Expr a = add_constraint(chain.weak, phi, ps);
    if (!a.is_zero()) active.push_back(a);
  }
  chain.stages.push_back(stage0);
  std::vector<std::string> open = ps.multipliers;

  for (int stage = 1;; ++stage) {
    if (stage > max_stages)
      throw ObstructionError("constraint algorithm exceeded " + std::to_string(max_stages) + " stages");
    WeakContext before = chain.weak;
    std::vector<ChainConstraint> found;
    std::vector<Expr> equations;
    for (const auto& phi : active) {
      Expr b = substitute(poisson_bracket(phi, ps.H, ps), chain.multiplier_rules);
      Expr red = weak_reduce(b, chain.weak);
      if (red.is_zero()) continue;
      if (mentions_any(red, open))
        equations.push_back(red);
      else
        found.push_back({b, red});
    }
    if (!equations.empty()) {
      sym::LinearSolution sol;
      try {
        sol = sym::linear_solve(equations, open);
      } catch (const ObstructionError& e) {
        throw ObstructionError(std::string("multiplier equations are not affine: ") + e.what());
      }
      for (const auto& [m, value] : sol.solved) {
        Rules one{{m, value}};
        for (auto& [_, e] : chain.multiplier_rules) e = substitute(e, one);
        for (auto& s : chain.multiplier_solutions) s.value = substitute(s.value, one);
        chain.multiplier_rules.emplace(m, value);
        chain.multiplier_solutions.push_back({m, value, stage, sol.assumptions});
      }
      chain.assumptions.insert(chain.assumptions.end(), sol.assumptions.begin(), sol.assumptions.end());
      open = sol.free;
      for (const auto& res : sol.residual) {
        Expr red = weak_reduce(res, chain.weak);
        if (!red.is_zero()) found.push_back({res, red});
      }
    }
    active.clear();
    std::vector<ChainConstraint> recorded;
    for (const auto& c : found) {
      Expr a = add_constraint(chain.weak, c.reduced, ps);
      if (a.is_zero()) continue;
      recorded.push_back(c);
      active.push_back(a);
      if (a.is_constant()) chain.status = ChainStatus::Inconsistent;
    }
    if (recorded.empty()) break;
    chain.stages.push_back(recorded);
    chain.context_before.push_back(before);
    if (chain.status == ChainStatus::Inconsistent) break;
  }
  chain.residual_multipliers = open;
  if (chain.status != ChainStatus::Inconsistent)
    chain.status = !ps.multipliers.empty() && open.empty() ? ChainStatus::MultiplierDetermined : ChainStatus::Closed;
  return chain;
}

std::vector<Expr> consistency_leftovers(const PhaseSystem& ps, const ConstraintChain& chain) {
  std::vector<Expr> out;
  for (const auto& stage : chain.stages)
    for (const auto& c : stage) {
      Expr b = substitute(poisson_bracket(c.reduced, ps.H, ps), chain.multiplier_rules);
      Expr red = weak_reduce(b, chain.weak);
      if (red.is_zero() || mentions_any(red, chain.residual_multipliers)) continue;
      out.push_back(red);
    }
  return out;
}

Expr reduced_hamiltonian(const PhaseSystem& ps, const ConstraintChain& chain) {
  if (chain.status == ChainStatus::Inconsistent)
    throw ObstructionError("inconsistent constraint chain has no reduced Hamiltonian");
  // Reducing first drops the multiplier terms with the primaries they multiply.
  Expr h = weak_reduce(ps.H, chain.weak);
  if (mentions_any(h, ps.multipliers)) h = weak_reduce(substitute(h, chain.multiplier_rules), chain.weak);
  return h;
}

}  // namespace hodyn
