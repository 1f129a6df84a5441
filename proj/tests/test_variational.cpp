#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hodyn/error.hpp"
#include "hodyn/manifest.hpp"
#include "hodyn/pipeline.hpp"
#include "hodyn/symcore/random.hpp"
#include "hodyn/variational.hpp"
#include "support.hpp"

using namespace hodyn;
using namespace hodyn::sym;
using test::kCases;
using test::kSeed;
using test::V;

namespace {

Expr P(const std::string& text, const LagrangianSpec& spec) { return test::P(text, spec.ctx); }

Expr random_poly(ExprGenerator& g, int terms, int degree) { return Expr::fraction(g.polynomial(terms, degree), Poly(1)); }

const std::vector<std::string> kJets2{"x", "x'", "x''", "y", "y'", "y''"};
const std::vector<std::string> kJets1{"x", "x'", "y", "y'"};

}  // namespace

TEST_CASE("Euler-Lagrange equations of the worked examples") {
  auto ex1 = make_spec({"q"}, 2, "q''^2/2 + 5*q^2*q'^2 + q^6");
  auto el1 = euler_lagrange(ex1);
  CHECK(el1.order == 4);
  REQUIRE(el1.equations.size() == 1);
  CHECK(el1.equations[0] == P("q'''' - 10*q^2*q'' - 10*q*q'^2 + 6*q^5", ex1));

  auto pu = make_spec({"q"}, 2, "q''^2/2 - (w1^2 + w2^2)*q'^2/2 + w1^2*w2^2*q^2/2", {"w1", "w2"});
  CHECK(euler_lagrange(pu).equations[0] == P("q'''' + (w1^2 + w2^2)*q'' + w1^2*w2^2*q", pu));

  auto free = make_spec({"q"}, 1, "q'^2/2");
  auto el = euler_lagrange(free);
  CHECK(el.order == 2);
  CHECK(el.equations[0] == -V("q''"));
}

TEST_CASE("validation rejects jets above the order and foreign symbols") {
  CHECK_THROWS_AS(make_spec({"q"}, 1, "q''^2"), ValidationError);
  CHECK_THROWS_AS(make_spec({"q"}, 2, "q''^2 + z"), ValidationError);
  CHECK_THROWS_AS(make_spec({"q"}, 0, "q^2"), ValidationError);
}

TEST_CASE("highest Hessian of the worked examples") {
  auto ex1 = make_spec({"q"}, 2, "q''^2/2 + 5*q^2*q'^2 + q^6");
  auto h1 = highest_hessian(ex1);
  REQUIRE(h1.rows() == 1);
  CHECK(h1(0, 0) == Expr(1));
  CHECK(det(h1) == Expr(1));
  CHECK(matrix_rank(h1) == 1);

  auto free = make_spec({"q"}, 1, "q'^2/2");
  CHECK(highest_hessian(free)(0, 0) == Expr(1));
}

TEST_CASE("the vector Lagrangian with Y'.X'' has a degenerate highest Hessian") {
  Manifest m = load_manifest(fixture_path("sarioglu_tekin.json"));
  LagrangianSpec spec = build_spec(m);
  auto h = highest_hessian(spec);
  REQUIRE(h.rows() == 6);
  CHECK(matrix_rank(h) < 6);
  CHECK(det(h).is_zero());

  // Oracle: differentiate twice entry by entry, evaluate at a rational point,
  // and row-reduce over Q.
  std::vector<std::string> top;
  for (const auto& c : spec.coords) top.push_back(c + "''");
  test::Point point;
  int k = 2;
  for (const auto& v : spec.ctx.vars()) point[v.name] = Rational(k++, 3);
  std::vector<std::vector<Rational>> numeric(6, std::vector<Rational>(6));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      Expr entry = partial(partial(spec.L, top[i]), top[j]);
      CHECK(entry == h(i, j));
      numeric[i][j] = test::at(entry, point);
    }
  CHECK(test::rational_rank(numeric) < 6);
}

TEST_CASE("gauge lift examples") {
  auto ex1 = make_spec({"q"}, 2, "q''^2/2 + 5*q^2*q'^2 + q^6");
  auto same = gauge_lift(ex1, Expr());
  CHECK(same.order == 2);
  CHECK(same.L == ex1.L);

  auto lifted = gauge_lift(ex1, -V("q'") * V("q''"));
  CHECK(lifted.order == 3);
  CHECK(lifted.L == ex1.L - P("q''^2 + q'*q'''", lifted));

  auto low = gauge_lift(ex1, -V("q") * V("q'"));
  CHECK(low.order == 2);
}

TEST_CASE("the Morse family of the oscillator has maximal rank") {
  Manifest m = load_manifest(fixture_path("pais_uhlenbeck.json"));
  EvenPipeline p = run_even(m);
  const Expr E = V("p_q") * V("q'") + V("p_a") * V("a'") - p.schmidt.L2;
  const std::vector<std::string> base{"q", "a", "p_q", "p_a"}, fiber{"q'", "a'"};
  CHECK(morse_rank_check(E, base, fiber));

  // Oracle: the 4x6 block evaluated at a rational point and row-reduced.
  test::Point point{{"q", Rational(1, 2)}, {"a", Rational(-2, 3)}, {"p_q", Rational(3, 5)},
                    {"p_a", Rational(1, 7)},  {"q'", Rational(2)},     {"a'", Rational(-1, 4)},
                    {"w1", Rational(2)},      {"w2", Rational(1)}};
  std::vector<std::vector<Rational>> block;
  for (const auto& x : base) {
    std::vector<Rational> row;
    for (const auto& y : base) row.push_back(test::at(partial(partial(E, x), y), point));
    for (const auto& r : fiber) row.push_back(test::at(partial(partial(E, x), r), point));
    block.push_back(row);
  }
  CHECK(test::rational_rank(block) == 4);
}

TEST_CASE("Morse rank edge cases") {
  CHECK_FALSE(morse_rank_check(Expr(3), {"x"}, {"r"}));
  CHECK(morse_rank_check(Expr(3), {}, {}));
  CHECK(morse_rank_check(V("x1") * V("r1") + V("x2") * V("r2"), {"x1", "x2"}, {"r1", "r2"}));
}

TEST_CASE("gauge invariance at matched order") {
  LagrangianSpec base = make_spec({"x", "y"}, 2, "0");
  ExprGenerator lag(kJets2, kSeed + 20), gauge(kJets1, kSeed + 21);
  for (int i = 0; i < kCases; ++i) {
    LagrangianSpec spec = base;
    spec.L = random_poly(lag, 3, 3);
    auto lifted = gauge_lift(spec, random_poly(gauge, 2, 3));
    REQUIRE(lifted.order == 2);
    auto a = euler_lagrange(spec).equations, b = euler_lagrange(lifted).equations;
    for (std::size_t k = 0; k < a.size(); ++k) CHECK((b[k] - a[k]).is_zero());
  }
}

TEST_CASE("a total derivative alone has vanishing Euler-Lagrange equations") {
  LagrangianSpec base = make_spec({"x", "y"}, 2, "0");
  ExprGenerator gauge(kJets1, kSeed + 22);
  for (int i = 0; i < kCases; ++i) {
    Expr F = random_poly(gauge, 3, 3);
    LagrangianSpec spec = base;
    spec.L = total_time_derivative(F, spec.ctx);
    for (const auto& e : euler_lagrange(spec).equations) CHECK(e.is_zero());
  }
}

TEST_CASE("Euler-Lagrange is linear") {
  LagrangianSpec base = make_spec({"x", "y"}, 2, "0");
  ExprGenerator gen(kJets2, kSeed + 23);
  for (int i = 0; i < kCases; ++i) {
    LagrangianSpec s1 = base, s2 = base, mix = base;
    s1.L = random_poly(gen, 3, 3);
    s2.L = random_poly(gen, 3, 3);
    const Expr a(gen.coefficient()), b(gen.coefficient());
    mix.L = a * s1.L + b * s2.L;
    auto e1 = euler_lagrange(s1).equations, e2 = euler_lagrange(s2).equations, em = euler_lagrange(mix).equations;
    for (std::size_t k = 0; k < em.size(); ++k) CHECK((em[k] - a * e1[k] - b * e2[k]).is_zero());
  }
}

TEST_CASE("highest Hessian is symmetric") {
  LagrangianSpec base = make_spec({"x", "y"}, 2, "0");
  ExprGenerator gen(kJets2, kSeed + 24);
  for (int i = 0; i < kCases; ++i) {
    LagrangianSpec spec = base;
    spec.L = Expr::fraction(gen.polynomial(4, 4), gen.positive_fraction(1, 0).den());
    CHECK(is_symmetric(highest_hessian(spec)));
  }
}
