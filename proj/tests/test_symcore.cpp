#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hodyn/error.hpp"
#include "hodyn/symcore/linalg.hpp"
#include "hodyn/symcore/random.hpp"
#include "support.hpp"

using namespace hodyn;
using namespace hodyn::sym;
using test::kCases;
using test::kSeed;
using test::P;
using test::V;

namespace {

Expr poly(ExprGenerator& g, int terms = 3, int degree = 3) { return Expr::fraction(g.polynomial(terms, degree), Poly(1)); }

}  // namespace

TEST_CASE("parse reads the sextic Lagrangian with jets") {
  auto ctx = test::coords({"q"}, 2);
  Expr L = P("q''^2/2 + 5*q^2*q'^2 + q^6", ctx);
  Expr manual = V("q''").pow(2) / Expr(2) + Expr(5) * V("q").pow(2) * V("q'").pow(2) + V("q").pow(6);
  CHECK(L == manual);
  CHECK(P("0", ctx).is_zero());
  CHECK(P("(q + q)/2", ctx) == V("q"));
  CHECK(P("  3/4 *q ", ctx) == Expr(Rational(3, 4)) * V("q"));
  CHECK(P("-q^2", ctx) == -(V("q").pow(2)));
  CHECK(P("2^3", ctx) == Expr(8));
}

TEST_CASE("parse reports errors") {
  auto ctx = test::coords({"q"}, 1);
  try {
    P("q + * q", ctx);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.column() == 5);
  }
  CHECK_THROWS_AS(P("z + q", ctx), ValidationError);
  CHECK_THROWS_AS(P("q''", ctx), ValidationError);
  CHECK_THROWS_AS(P("(q + 1", ctx), ParseError);
  CHECK_THROWS_AS(P("q/0", ctx), ParseError);
  CHECK_THROWS_AS(P("q $ q", ctx), ParseError);
}

TEST_CASE("normalize gives canonical forms") {
  auto ctx = test::coords({"a", "b", "q"}, 1);
  CHECK(P("(a+b)*(a-b)", ctx) == P("a^2 - b^2", ctx));
  CHECK(P("q'*a' - a'*q'", ctx).is_zero());
  Expr f = P("(a^2 - b^2)/(a - b)", ctx);
  CHECK(f == P("a + b", ctx));
  CHECK(f.is_polynomial());
  Expr g = P("1/(2*a + 4)", ctx);
  CHECK(g.den() == Poly::variable("a") + Poly(Rational(2)));
}

TEST_CASE("normalize is idempotent on random rational functions") {
  ExprGenerator gen({"x", "y", "z"}, kSeed);
  for (int i = 0; i < kCases; ++i) {
    Poly n = gen.polynomial(), d = gen.nonzero_polynomial(), c = gen.nonzero_polynomial();
    Expr e = Expr::fraction(n, d);
    CHECK(normalize(normalize(e)) == normalize(e));
    CHECK(Expr::fraction(e.num(), e.den()) == e);
    CHECK(Expr::fraction(n * c, d * c) == e);
  }
}

TEST_CASE("ring axioms hold under normalization") {
  ExprGenerator gen({"x", "y", "z"}, kSeed + 1);
  for (int i = 0; i < kCases; ++i) {
    Expr e = gen.positive_fraction(), f = poly(gen), g = gen.positive_fraction();
    CHECK(((e + f) + g - (e + (f + g))).is_zero());
    CHECK(((e * f) * g - e * (f * g)).is_zero());
    CHECK((e * (f + g) - (e * f + e * g)).is_zero());
  }
}

TEST_CASE("render then parse round-trips") {
  auto ctx = test::coords({"x", "y"}, 2);
  ExprGenerator gen({"x", "y", "x'", "y''"}, kSeed + 2);
  for (int i = 0; i < kCases; ++i) {
    Poly d = gen.nonzero_polynomial();
    Expr e = Expr::fraction(gen.polynomial(4, 4), d);
    CHECK(P(e.str(), ctx) == e);
  }
}

TEST_CASE("partial derivative examples") {
  auto ctx = test::coords({"q", "x", "y"}, 2);
  CHECK(partial(P("q''^2/2", ctx), "q''") == V("q''"));
  CHECK(partial(Expr(7), "q").is_zero());
  CHECK(partial(P("x^3*y", ctx), "x") == P("3*x^2*y", ctx));
  CHECK(partial(P("1/x", ctx), "x") == P("-1/x^2", ctx));
}

TEST_CASE("partial derivatives obey Leibniz and commute") {
  ExprGenerator gen({"u", "v", "w"}, kSeed + 3);
  for (int i = 0; i < kCases; ++i) {
    Expr e = gen.positive_fraction(), f = poly(gen);
    const std::string v = gen.pick_variable(), u = gen.pick_variable();
    CHECK((partial(e * f, v) - (partial(e, v) * f + e * partial(f, v))).is_zero());
    CHECK((partial(partial(e, u), v) - partial(partial(e, v), u)).is_zero());
  }
}

TEST_CASE("total time derivative") {
  VariableContext ctx = test::coords({"q"}, 4);
  ctx.declare_coordinate("a", 1, true);
  ctx.declare_parameter("w");
  CHECK(total_time_derivative(P("-q'*a", ctx), ctx) == P("-q''*a - q'*a'", ctx));
  CHECK(total_time_derivative(Expr(3), ctx).is_zero());
  CHECK(total_time_derivative(P("q^2", ctx), ctx) == P("2*q*q'", ctx));
  CHECK(total_time_derivative(P("w*q", ctx), ctx) == P("w*q'", ctx));
  CHECK(total_time_derivative(P("q", ctx), ctx, 3) == V("q'''"));
  ctx.declare_momentum("p", "q");
  CHECK_THROWS_AS(total_time_derivative(P("p", ctx), ctx), ValidationError);
}

TEST_CASE("total time derivative obeys Leibniz") {
  VariableContext ctx = test::coords({"x", "y"}, 3);
  ExprGenerator gen({"x", "x'", "y", "y''"}, kSeed + 4);
  for (int i = 0; i < kCases; ++i) {
    Expr e = gen.positive_fraction(), f = poly(gen);
    auto D = [&](const Expr& g) { return total_time_derivative(g, ctx); };
    CHECK((D(e * f) - (D(e) * f + e * D(f))).is_zero());
  }
}

TEST_CASE("substitution is simultaneous") {
  VariableContext ctx = test::coords({"q", "x", "y"}, 1);
  ctx.declare_coordinate("a", 0, true);
  ctx.declare_momentum("p_a", "a");
  CHECK(substitute(P("5*q^2*q'^2", ctx), {{"q'", -V("p_a")}}) == P("5*q^2*p_a^2", ctx));
  Expr e = P("x - y", ctx);
  CHECK(substitute(e, {}) == e);
  CHECK(substitute(e, {{"x", V("y")}, {"y", V("x")}}) == P("y - x", ctx));
  CHECK_THROWS_AS(substitute(P("1/(x - y)", ctx), {{"x", V("y")}}), DivisionByZero);
}

TEST_CASE("antiderivative examples") {
  VariableContext ctx = test::coords({"q", "v"}, 1);
  ctx.declare_coordinate("a", 0, true);
  CHECK(antiderivative(-V("a"), "q'") == P("-a*q'", ctx));
  CHECK(antiderivative(Expr(), "v").is_zero());
  CHECK(antiderivative(P("3*v^2", ctx), "v") == P("v^3", ctx));
  CHECK_THROWS_AS(antiderivative(P("1/v", ctx), "v"), ObstructionError);
}

TEST_CASE("antiderivative inverts partial on polynomials") {
  ExprGenerator gen({"u", "v", "w"}, kSeed + 5);
  for (int i = 0; i < kCases; ++i) {
    Expr e = Expr::fraction(gen.polynomial(4, 4), Poly(1) + Poly::monomial(Monomial::variable("w", 2)));
    CHECK(partial(antiderivative(e, "u"), "u") == e);
    CHECK(substitute(antiderivative(e, "u"), {{"u", Expr()}}).is_zero());
  }
}

TEST_CASE("jacobian examples") {
  VariableContext ctx = test::coords({"x", "y"}, 1);
  ctx.declare_coordinate("a", 0, true);
  ctx.declare_coordinate("b", 0, true);
  // -dL/dA for L = (x' b^2 + y' a^2)/2 with a = x'', b = y''.
  std::vector<Expr> g{P("-y'*a", ctx), P("-x'*b", ctx)};
  std::vector<std::string> w{"x'", "y'"};
  auto J = jacobian(g, w);
  CHECK(J(0, 0).is_zero());
  CHECK(J(0, 1) == -V("a"));
  CHECK(J(1, 0) == -V("b"));
  CHECK(J(1, 1).is_zero());
  auto witness = asymmetry_witness(J);
  REQUIRE(witness);
  CHECK(witness->i == 0);
  CHECK(witness->j == 1);
  CHECK(witness->difference == V("b") - V("a"));

  std::vector<Expr> id{V("x"), V("y")};
  std::vector<std::string> xy{"x", "y"};
  CHECK(jacobian(id, xy) == ExprMatrix::identity(2));
}

TEST_CASE("Jacobian of a gradient is symmetric") {
  ExprGenerator gen({"u", "v", "w"}, kSeed + 6);
  std::vector<std::string> vars{"u", "v", "w"};
  for (int i = 0; i < kCases; ++i) {
    Expr f = gen.positive_fraction(4, 4);
    std::vector<Expr> grad;
    for (const auto& v : vars) grad.push_back(partial(f, v));
    CHECK(is_symmetric(jacobian(grad, vars)));
  }
}

TEST_CASE("rank and determinant") {
  VariableContext ctx = test::coords({"q", "x", "y"}, 2);
  ctx.declare_coordinate("b", 0, true);
  ctx.declare_coordinate("r", 0, true);
  ctx.declare_coordinate("s", 0, true);
  std::vector<std::string> qq{"q''"};
  auto H = hessian(P("q''^2/2 + 5*q^2*q'^2 + q^6", ctx), qq);
  CHECK(det(H) == Expr(1));
  CHECK(matrix_rank(H) == 1);
  CHECK(matrix_rank(ExprMatrix(3, 2)) == 0);
  CHECK(det(ExprMatrix(2, 2)).is_zero());
  CHECK_THROWS_AS(det(ExprMatrix(2, 3)), ValidationError);
  std::vector<std::string> vel{"x'", "y'"}, aux{"r", "s"};
  // The printed auxiliary x'*r + b*s leaves the block singular; x'*r + y'*s does not.
  CHECK(matrix_rank(mixed_hessian(P("x'*r + b*s", ctx), vel, aux)) == 1);
  CHECK(det(mixed_hessian(P("x'*r + y'*s", ctx), vel, aux)) == Expr(1));
  ExprMatrix m(2, 2);
  m(0, 0) = V("x");
  m(0, 1) = V("y");
  m(1, 0) = Expr(1);
  m(1, 1) = Expr(2);
  CHECK(det(m) == P("2*x - y", ctx));
}

TEST_CASE("rank is invariant under row swaps and scaling") {
  ExprGenerator gen({"u", "v"}, kSeed + 7);
  std::mt19937_64& rng = gen.engine();
  for (int i = 0; i < kCases; ++i) {
    ExprMatrix m(3, 3);
    // Third row a combination of the first two in half the cases.
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 3; ++c) m(r, c) = poly(gen, 2, 2);
    bool dependent = rng() % 2;
    const Expr k(gen.coefficient());
    for (std::size_t c = 0; c < 3; ++c) m(2, c) = dependent ? m(0, c) * k + m(1, c) : poly(gen, 2, 2);
    ExprMatrix t = m;
    for (std::size_t c = 0; c < 3; ++c) std::swap(t(0, c), t(2, c));
    const Expr scale(gen.coefficient());
    for (std::size_t c = 0; c < 3; ++c) t(1, c) = t(1, c) * scale;
    CHECK(matrix_rank(m) == matrix_rank(t));
    if (dependent) CHECK(matrix_rank(m) <= 2);
  }
}

TEST_CASE("linear_solve examples") {
  VariableContext ctx = test::coords({"x", "y", "z", "c"}, 0);
  std::vector<std::string> x{"x"};
  std::vector<Expr> twice{V("x") - Expr(1), V("x") - Expr(1)};
  auto s = linear_solve(twice, x);
  CHECK(s.solved.at("x") == Expr(1));
  CHECK(s.residual.empty());
  CHECK(s.free.empty());

  std::vector<std::string> xy{"x", "y"};
  std::vector<Expr> rankdef{P("x + y - c", ctx), P("2*x + 2*y - z", ctx)};
  auto r = linear_solve(rankdef, xy);
  CHECK(r.free == std::vector<std::string>{"y"});
  REQUIRE(r.residual.size() == 1);
  CHECK(proportional(r.residual[0], P("z - 2*c", ctx)));

  std::vector<Expr> scaled{P("c*x - 1", ctx)};
  auto q = linear_solve(scaled, x);
  CHECK(q.solved.at("x") == P("1/c", ctx));
  REQUIRE(q.assumptions.size() == 1);
  CHECK(q.assumptions[0] == V("c"));

  std::vector<Expr> nonlinear{P("x*y - 1", ctx)};
  CHECK_THROWS_AS(linear_solve(nonlinear, xy), ObstructionError);
  std::vector<Expr> in_den{P("1/x - 1", ctx)};
  CHECK_THROWS_AS(linear_solve(in_den, x), ObstructionError);
}

TEST_CASE("linear_solve recovers planted solutions") {
  ExprGenerator gen({"u", "v"}, kSeed + 8);
  std::vector<std::string> unknowns{"x", "y", "z"};
  std::mt19937_64& rng = gen.engine();
  for (int i = 0; i < kCases; ++i) {
    Rules planted;
    for (const auto& x : unknowns) planted[x] = poly(gen, 2, 2);
    std::size_t n_eq = 1 + rng() % 4;
    std::vector<Expr> eqs;
    for (std::size_t k = 0; k < n_eq; ++k) {
      Expr e;
      for (const auto& x : unknowns)
        if (rng() % 3) e += (rng() % 2 ? poly(gen, 1, 1) + Expr(1) : Expr(gen.coefficient())) * V(x);
      eqs.push_back(e - substitute(e, planted));
    }
    auto sol = linear_solve(eqs, unknowns);
    CHECK(sol.residual.empty());
    Rules free_values;
    for (const auto& f : sol.free) free_values[f] = planted.at(f);
    for (const auto& [x, value] : sol.solved) CHECK(substitute(value, free_values) == planted.at(x));
    Rules all = sol.solved;
    for (const auto& e : eqs) CHECK(substitute(e, all).is_zero());
  }
}

TEST_CASE("linear_solve residuals are free of the unknowns") {
  ExprGenerator gen({"u", "v"}, kSeed + 9);
  std::vector<std::string> unknowns{"x", "y"};
  for (int i = 0; i < kCases; ++i) {
    Expr a = Expr(gen.coefficient()), b = poly(gen, 2, 1) + Expr(1);
    Expr row = a * V("x") + b * V("y");
    std::vector<Expr> eqs{row - poly(gen, 2, 2), Expr(2) * row - poly(gen, 2, 2)};
    auto sol = linear_solve(eqs, unknowns);
    for (const auto& r : sol.residual)
      for (const auto& x : unknowns) CHECK_FALSE(r.depends_on(x));
    CHECK(sol.solved.size() == 1);
  }
}

TEST_CASE("gcd contains a planted common factor and divides both inputs") {
  ExprGenerator gen({"u", "v", "w"}, kSeed + 10);
  for (int i = 0; i < kCases; ++i) {
    const Poly g = gen.nonzero_polynomial(3, 2), a = gen.nonzero_polynomial(3, 3), b = gen.nonzero_polynomial(3, 3);
    const Poly x = a * g, y = b * g;
    const Poly d = gcd(x, y);
    CHECK(d.divmod(g).second.is_zero());
    CHECK(x.divmod(d).second.is_zero());
    CHECK(y.divmod(d).second.is_zero());
    CHECK(d.leading().coeff == 1);
  }
}
