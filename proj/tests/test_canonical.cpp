#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hodyn/canonical.hpp"
#include "hodyn/error.hpp"
#include "hodyn/pipeline.hpp"
#include "hodyn/symcore/random.hpp"
#include "support.hpp"

using namespace hodyn;
using namespace hodyn::sym;
using test::kCases;
using test::kSeed;
using test::V;

namespace {

PhaseSystem plane(int n) {
  PhaseSystem ps;
  for (int i = 1; i <= n; ++i) {
    const std::string x = "x" + std::to_string(i), p = "p" + std::to_string(i);
    ps.ctx.declare_coordinate(x, 0, false);
    ps.ctx.declare_momentum(p, x);
    ps.pairs.emplace_back(x, p);
  }
  return ps;
}

OddPipeline odd(const std::string& file) { return run_odd(load_manifest(fixture_path(file))); }

Expr P(const std::string& text, const PhaseSystem& ps) { return test::P(text, ps.ctx); }

bool stage_contains(const std::vector<ChainConstraint>& stage, const Expr& e) {
  for (const auto& c : stage)
    if (proportional(c.reduced, e)) return true;
  return false;
}

Expr solution(const ConstraintChain& chain, const std::string& m) {
  for (const auto& s : chain.multiplier_solutions)
    if (s.multiplier == m) return s.value;
  FAIL("no solution for " << m);
  return {};
}

}  // namespace

TEST_CASE("bracket examples") {
  PhaseSystem ps = plane(2);
  CHECK(poisson_bracket(V("x1"), V("p1"), ps) == Expr(1));
  CHECK(poisson_bracket(V("p1"), V("x1"), ps) == Expr(-1));
  const Expr f = P("x1^2*p2 + p1", ps);
  CHECK(poisson_bracket(f, f, ps).is_zero());

  auto st = odd("sarioglu_tekin.json");
  const auto& H = st.schmidt.phase;
  for (const char* i : {"1", "2", "3"}) {
    const std::string s = i;
    CHECK(poisson_bracket(V("p_A" + s), H.H, H) == V("p_s" + s) + V("r" + s));
    CHECK(poisson_bracket(V("p_B" + s), H.H, H) == V("s" + s));
  }
}

TEST_CASE("canonical relations") {
  PhaseSystem ps = plane(3);
  for (const auto& [xi, pi] : ps.pairs)
    for (const auto& [xj, pj] : ps.pairs) {
      CHECK(poisson_bracket(V(xi), V(pj), ps) == Expr(xi == xj ? 1 : 0));
      CHECK(poisson_bracket(V(xi), V(xj), ps).is_zero());
      CHECK(poisson_bracket(V(pi), V(pj), ps).is_zero());
    }
}

TEST_CASE("bracket antisymmetry, Leibniz rule and Jacobi identity") {
  PhaseSystem ps = plane(2);
  ExprGenerator gen({"x1", "x2", "p1", "p2"}, kSeed + 50);
  auto pb = [&](const Expr& a, const Expr& b) { return poisson_bracket(a, b, ps); };
  for (int i = 0; i < kCases; ++i) {
    const Expr f = Expr::fraction(gen.polynomial(), Poly(1)), g = Expr::fraction(gen.polynomial(), Poly(1)),
               h = Expr::fraction(gen.polynomial(), Poly(1));
    CHECK((pb(f, g) + pb(g, f)).is_zero());
    CHECK((pb(f, g * h) - pb(f, g) * h - g * pb(f, h)).is_zero());
    CHECK((pb(f, pb(g, h)) + pb(g, pb(h, f)) + pb(h, pb(f, g))).is_zero());
  }
}

TEST_CASE("brackets of rational functions stay antisymmetric") {
  PhaseSystem ps = plane(2);
  ExprGenerator gen({"x1", "x2", "p1", "p2"}, kSeed + 51);
  for (int i = 0; i < kCases; ++i) {
    const Expr f = gen.positive_fraction(), g = gen.positive_fraction();
    CHECK((poisson_bracket(f, g, ps) + poisson_bracket(g, f, ps)).is_zero());
  }
}

TEST_CASE("weak reduction") {
  auto cl = odd("clement.json");
  const auto& chain = cl.chain;
  for (const auto& stage : chain.stages)
    for (const auto& c : stage) CHECK(weak_reduce(c.reduced, chain.weak).is_zero());
  Expr untouched(7);
  for (const auto& [x, p] : cl.schmidt.phase.pairs)
    for (const auto& v : {x, p})
      if (!chain.weak.solved.count(v)) untouched = untouched * V(v) + Expr(1);
  REQUIRE_FALSE(untouched.is_constant());
  CHECK(weak_reduce(untouched, chain.weak) == untouched);
}

TEST_CASE("weak reduction is idempotent") {
  auto st = odd("sarioglu_tekin.json");
  std::vector<std::string> vars;
  for (const auto& [x, p] : st.schmidt.phase.pairs) {
    vars.push_back(x);
    vars.push_back(p);
  }
  ExprGenerator gen(vars, kSeed + 52);
  for (int i = 0; i < kCases; ++i) {
    const Expr e = Expr::fraction(gen.polynomial(4, 3), Poly(1));
    const Expr once = weak_reduce(e, st.chain.weak);
    CHECK(weak_reduce(once, st.chain.weak) == once);
    for (const auto& [v, _] : st.chain.weak.solved) CHECK_FALSE(once.depends_on(v));
  }
}

TEST_CASE("constraint chain of the non-integrable example") {
  auto ex = odd("example3.json");
  const auto& ps = ex.schmidt.phase;
  const auto& chain = ex.chain;
  CHECK(chain.status == ChainStatus::MultiplierDetermined);
  REQUIRE(chain.stages.size() >= 2);
  CHECK(stage_contains(chain.stages[1], weak_reduce(P("-a*p_s - r", ps), chain.context_before[1])));
  CHECK(stage_contains(chain.stages[1], weak_reduce(P("-b*p_r - s", ps), chain.context_before[1])));
  const Expr l1 = P("(b^2/2 - p_x - a*b)/p_s", ps), l2 = P("(a^2/2 - p_y - a*b)/p_r", ps);
  CHECK(weak_reduce(solution(chain, "lambda1") - l1, chain.weak).is_zero());
  CHECK(weak_reduce(solution(chain, "lambda2") - l2, chain.weak).is_zero());
  bool assumes_ps = false;
  for (const auto& a : chain.assumptions) assumes_ps = assumes_ps || proportional(weak_reduce(a, chain.weak), V("p_s"));
  CHECK(assumes_ps);

  // Reduced Hamiltonian oracle: substitute the multipliers, then reduce.
  const Expr by_hand = weak_reduce(substitute(ps.H, {{"lambda1", l1}, {"lambda2", l2}}), chain.weak);
  CHECK(weak_reduce(reduced_hamiltonian(ps, chain) - by_hand, chain.weak).is_zero());
}

TEST_CASE("constraint chain of the vector example with four stages") {
  auto st = odd("sarioglu_tekin.json");
  const auto& ps = st.schmidt.phase;
  const auto& chain = st.chain;
  CHECK(chain.status == ChainStatus::MultiplierDetermined);
  REQUIRE(chain.stages.size() == 3);
  for (const char* i : {"1", "2", "3"}) {
    const std::string s = i;
    auto reduce = [&](const std::string& text, std::size_t k) { return weak_reduce(P(text, ps), chain.context_before[k]); };
    CHECK(stage_contains(chain.stages[1], reduce("p_s" + s + " + r" + s, 1)));
    CHECK(stage_contains(chain.stages[1], reduce("s" + s, 1)));
    CHECK(stage_contains(chain.stages[2], reduce("B" + s + " + p_X" + s + " - p_r" + s, 2)));
    CHECK(stage_contains(chain.stages[2], reduce("p_Y" + s + " - A" + s + " - p_s" + s, 2)));
    CHECK(weak_reduce(solution(chain, "lambda" + s) - P("-Y" + s + " - B" + s, ps), chain.weak).is_zero());
    CHECK(weak_reduce(solution(chain, "beta" + s) - P("X" + s + " + A" + s, ps), chain.weak).is_zero());
  }
}

TEST_CASE("chains are sound and complete") {
  for (const char* file : {"example3.json", "sarioglu_tekin.json", "clement.json"}) {
    auto o = odd(file);
    const auto& ps = o.schmidt.phase;
    const auto& chain = o.chain;
    CHECK(consistency_leftovers(ps, chain).empty());
    // Independent pass: every constraint's bracket with H_T, multipliers
    // substituted, vanishes weakly.
    for (const auto& stage : chain.stages)
      for (const auto& c : stage) {
        const Expr rate = substitute(poisson_bracket(c.raw, ps.H, ps), chain.multiplier_rules);
        CHECK(weak_reduce(rate, chain.weak).is_zero());
      }
    CHECK(chain.stages.size() <= 5);
  }
}

TEST_CASE("chains without multipliers or rules leave H unchanged") {
  PhaseSystem ps = plane(1);
  ps.H = P("(p1^2 + x1^2)/2", ps);
  ps.constraints.push_back(P("p1^2 + x1^2 - 1", ps));
  auto chain = dirac_chain(ps);
  CHECK(chain.status == ChainStatus::Closed);
  CHECK(chain.stages.size() == 1);
  CHECK(chain.weak.solved.empty());
  CHECK(reduced_hamiltonian(ps, chain) == ps.H);
}

TEST_CASE("inconsistent and malformed chains") {
  PhaseSystem ps = plane(1);
  ps.H = V("x1");
  ps.constraints.push_back(V("p1"));
  auto chain = dirac_chain(ps);
  CHECK(chain.status == ChainStatus::Inconsistent);
  CHECK_THROWS_AS(reduced_hamiltonian(ps, chain), ObstructionError);

  PhaseSystem bare = plane(1);
  CHECK_THROWS_AS(dirac_chain(bare), ValidationError);

  PhaseSystem quad = plane(2);
  quad.ctx.declare_multiplier("lam");
  quad.multipliers = {"lam"};
  quad.H = P("lam*p2 + lam^2*x2", quad);
  quad.constraints.push_back(V("p2"));
  CHECK_THROWS_AS(dirac_chain(quad), ObstructionError);
}
