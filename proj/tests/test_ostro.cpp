#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "hodyn/error.hpp"
#include "hodyn/ostro.hpp"
#include "hodyn/symcore/random.hpp"
#include "support.hpp"

using namespace hodyn;
using namespace hodyn::sym;
using test::kCases;
using test::kSeed;
using test::V;

namespace {

const char* kExample1 = "q''^2/2 + 5*q^2*q'^2 + q^6";
const char* kPU = "q''^2/2 - (w1^2 + w2^2)*q'^2/2 + w1^2*w2^2*q^2/2";

LagrangianSpec pu_spec() { return make_spec({"q"}, 2, kPU, {"w1", "w2"}); }

Expr P(const std::string& text, const VariableContext& ctx) { return test::P(text, ctx); }

std::map<std::string, Expr> as_map(const std::vector<std::pair<std::string, Expr>>& t) { return {t.begin(), t.end()}; }

// pi^i = sum_{j=i..k} (-d/dt)^(j-i) dL/dq^(j), single coordinate.
std::vector<Expr> momenta_by_definition(const LagrangianSpec& spec) {
  VariableContext ctx = spec.ctx;
  const std::string& q = spec.coords[0];
  ctx.ensure_jet(q, 2 * spec.order + 1);
  std::vector<Expr> out;
  for (int i = 1; i <= spec.order; ++i) {
    Expr sum;
    for (int j = i; j <= spec.order; ++j) {
      Expr term = partial(spec.L, jet_name(q, j));
      for (int n = 0; n < j - i; ++n) term = -total_time_derivative(term, ctx);
      sum += term;
    }
    out.push_back(sum);
  }
  return out;
}

// H = q_2 pi_1 + q'' pi_2 - L for a second-order single-coordinate L with
// pi_2 = c q'' + f(q, q'), eliminating q'' by hand.
Expr hamiltonian_by_hand(const LagrangianSpec& spec) {
  const Expr pi2 = momenta_by_definition(spec)[1];
  const Expr c = partial(pi2, "q''");
  const Expr f = pi2 - c * V("q''");
  const Expr acc = (V("pi_2") - substitute(f, {{"q", V("q_1")}, {"q'", V("q_2")}})) / c;
  Rules chart{{"q", V("q_1")}, {"q'", V("q_2")}, {"q''", acc}};
  return V("q_2") * V("pi_1") + acc * V("pi_2") - substitute(spec.L, chart);
}

}  // namespace

TEST_CASE("Ostrogradsky momenta") {
  auto pu = pu_spec();
  auto m = as_map(ostrogradsky_momenta(pu));
  CHECK(m.at("pi_1") == P("-(w1^2 + w2^2)*q' - q'''", pu.ctx));
  CHECK(m.at("pi_2") == P("q''", pu.ctx));

  auto free = make_spec({"q"}, 1, "q'^2/2");
  CHECK(as_map(ostrogradsky_momenta(free)).at("pi_1") == V("q'"));

  auto ex1 = make_spec({"q"}, 2, kExample1);
  auto m1 = as_map(ostrogradsky_momenta(ex1));
  auto oracle = momenta_by_definition(ex1);
  CHECK(m1.at("pi_1") == oracle[0]);
  CHECK(m1.at("pi_2") == oracle[1]);
  CHECK(m1.at("pi_1") == P("10*q^2*q' - q'''", ex1.ctx));
}

TEST_CASE("Ostrogradsky momentum names for several coordinates") {
  auto spec = make_spec({"x", "y"}, 2, "x''^2/2 + y''^2/2");
  auto m = as_map(ostrogradsky_momenta(spec));
  CHECK(m.count("pi_1_x"));
  CHECK(m.count("pi_2_y"));
  CHECK(ostro_coordinate("x", 2) == "x_2");
}

TEST_CASE("Ostrogradsky Hamiltonians") {
  auto pu = ostrogradsky_hamiltonian(pu_spec());
  CHECK(pu.phase.H == P("pi_2^2/2 + pi_1*q_2 + (w1^2 + w2^2)*q_2^2/2 - w1^2*w2^2*q_1^2/2", pu.phase.ctx));
  CHECK(pu.phase.constraints.empty());

  auto ex1_spec = make_spec({"q"}, 2, kExample1);
  auto ex1 = ostrogradsky_hamiltonian(ex1_spec);
  CHECK(ex1.phase.H == hamiltonian_by_hand(ex1_spec));
  CHECK(ex1.phase.H == P("q_2*pi_1 + pi_2^2/2 - 5*q_1^2*q_2^2 - q_1^6", ex1.phase.ctx));
  // The reference display carries -pi_2^2/2; the two differ by pi_2^2.
  CHECK(ex1.phase.H - P("q_2*pi_1 - pi_2^2/2 - 5*q_1^2*q_2^2 - q_1^6", ex1.phase.ctx) == P("pi_2^2", ex1.phase.ctx));

  auto osc = ostrogradsky_hamiltonian(make_spec({"q"}, 1, "q'^2/2 - q^2/2"));
  CHECK(osc.phase.H == P("pi_1^2/2 + q_1^2/2", osc.phase.ctx));
}

TEST_CASE("degenerate or non-affine top momenta are rejected") {
  CHECK_THROWS_AS(ostrogradsky_hamiltonian(make_spec({"q"}, 2, "q''*q'")), ObstructionError);
  CHECK_THROWS_AS(ostrogradsky_hamiltonian(make_spec({"q"}, 2, "q''^4")), ObstructionError);
}

TEST_CASE("Hamilton equations") {
  auto pu = ostrogradsky_hamiltonian(pu_spec());
  auto rates = as_map(hamilton_equations(pu.phase));
  const auto& ctx = pu.phase.ctx;
  CHECK(rates.at("q_1'") == V("q_2"));
  CHECK(rates.at("q_2'") == V("pi_2"));
  CHECK(rates.at("pi_1'") == P("w1^2*w2^2*q_1", ctx));
  CHECK(rates.at("pi_2'") == P("-pi_1 - (w1^2 + w2^2)*q_2", ctx));

  PhaseSystem ps;
  ps.ctx.declare_coordinate("x", 0, false);
  ps.ctx.declare_momentum("p", "x");
  ps.pairs.emplace_back("x", "p");
  for (const auto& [_, rhs] : hamilton_equations(ps)) CHECK(rhs.is_zero());
  ps.H = P("p^2/2 + x^4 - 3*x", ps.ctx);
  auto r = as_map(hamilton_equations(ps));
  CHECK(r.at("x'") == V("p"));
  CHECK(r.at("p'") == P("3 - 4*x^3", ps.ctx));

  ps.constraints.push_back(V("p"));
  CHECK_THROWS_AS(hamilton_equations(ps), ValidationError);
}

TEST_CASE("Hamilton equations reproduce the Euler-Lagrange equations of the examples") {
  for (auto spec : {make_spec({"q"}, 2, kExample1), pu_spec()}) {
    auto r = ostrogradsky_hamiltonian(spec);
    for (const auto& e : ostro_dynamics_residuals(spec, r)) CHECK(e.is_zero());
  }
}

TEST_CASE("first order reduces to the classical Legendre transformation") {
  ExprGenerator gen({"q"}, kSeed + 30);
  for (int i = 0; i < kCases; ++i) {
    const Expr V_q = Expr::fraction(gen.polynomial(3, 4), Poly(1));
    const Expr mass(gen.coefficient());
    LagrangianSpec spec = make_spec({"q"}, 1, "0");
    spec.L = mass * V("q'") * V("q'") / Expr(2) - V_q;
    auto r = ostrogradsky_hamiltonian(spec);
    const Expr expected = V("pi_1") * V("pi_1") / (Expr(2) * mass) + substitute(V_q, {{"q", V("q_1")}});
    CHECK(r.phase.H == expected);
  }
}

TEST_CASE("energy is conserved and dynamics agree for random nondegenerate Lagrangians") {
  ExprGenerator gen({"q", "q'"}, kSeed + 31);
  for (int i = 0; i < kCases; ++i) {
    LagrangianSpec spec = make_spec({"q"}, 2, "0");
    const Expr c(gen.coefficient());
    spec.L = c * V("q''") * V("q''") / Expr(2) + V("q''") * Expr::fraction(gen.polynomial(2, 2), Poly(1)) +
             Expr::fraction(gen.polynomial(3, 3), Poly(1));
    auto r = ostrogradsky_hamiltonian(spec);
    CHECK(energy_rate(r.phase).is_zero());
    CHECK(r.phase.H == hamiltonian_by_hand(spec));
    for (const auto& e : ostro_dynamics_residuals(spec, r)) CHECK(e.is_zero());
  }
}
