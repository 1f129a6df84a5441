#include "hodyn/symcore/calculus.hpp"

#include "hodyn/error.hpp"

namespace hodyn::sym {

Expr partial(const Expr& e, const std::string& var) {
  if (!e.depends_on(var)) return {};
  const Poly& n = e.num();
  const Poly& d = e.den();
  if (!d.depends_on(var)) return Expr::fraction(n.partial(var), d);
  return Expr::fraction(n.partial(var) * d - n * d.partial(var), d * d);
}

namespace {

Poly poly_time_derivative(const Poly& p, const VariableContext& ctx) {
  Poly out;
  for (const auto& v : p.variables()) {
    const Var& var = ctx.at(v);
    switch (var.role) {
      case Role::Parameter: continue;
      case Role::Momentum:
      case Role::Multiplier:
        throw ValidationError("no total time derivative for phase-space symbol '" + v + "'");
      default: break;
    }
    out = out + p.partial(v) * Poly::variable(jet_name(var.stem, var.order + 1));
  }
  return out;
}

}  // namespace

Expr total_time_derivative(const Expr& e, const VariableContext& ctx) {
  if (e.is_constant()) return {};
  const Poly& d = e.den();
  Poly dn = poly_time_derivative(e.num(), ctx);
  if (d.is_constant()) return Expr::fraction(dn, d);
  return Expr::fraction(dn * d - e.num() * poly_time_derivative(d, ctx), d * d);
}

Expr total_time_derivative(const Expr& e, const VariableContext& ctx, int n) {
  Expr out = e;
  for (int i = 0; i < n; ++i) out = total_time_derivative(out, ctx);
  return out;
}

namespace {

// Substitutes into p and returns an unreduced (numerator, denominator) pair
// over the common denominator prod(den_v ^ maxdeg_v).
std::pair<Poly, Poly> substitute_poly(const Poly& p, const Rules& rules) {
  std::map<std::string, int> maxdeg;
  for (const auto& t : p.terms())
    for (const auto& [v, e] : t.mono.factors())
      if (rules.count(v)) maxdeg[v] = std::max(maxdeg[v], e);

  std::map<std::string, std::vector<Poly>> num_pow, den_pow;
  Poly common(1);
  for (const auto& [v, m] : maxdeg) {
    const Expr& r = rules.at(v);
    auto& np = num_pow[v];
    auto& dp = den_pow[v];
    np.push_back(Poly(1));
    dp.push_back(Poly(1));
    for (int i = 1; i <= m; ++i) {
      np.push_back(np.back() * r.num());
      dp.push_back(dp.back() * r.den());
    }
    common = common * dp.back();
  }

  Poly out;
  for (const auto& t : p.terms()) {
    Poly term = Poly::monomial(Monomial{}, t.coeff);
    Monomial kept;
    for (const auto& [v, e] : t.mono.factors())
      if (!maxdeg.count(v)) kept = kept * Monomial::variable(v, e);
    for (const auto& [v, m] : maxdeg) {
      const int e = t.mono.degree(v);
      if (e > 0) term = term * num_pow[v][e];
      if (e < m) term = term * den_pow[v][m - e];
    }
    out = out + term.times_monomial(kept);
  }
  return {std::move(out), std::move(common)};
}

}  // namespace

Expr substitute(const Expr& e, const Rules& rules) {
  if (rules.empty()) return e;
  bool touches = false;
  for (const auto& [v, _] : rules)
    if (e.depends_on(v)) {
      touches = true;
      break;
    }
  if (!touches) return e;
  auto [nn, nd] = substitute_poly(e.num(), rules);
  auto [dn, dd] = substitute_poly(e.den(), rules);
  if (dn.is_zero()) throw DivisionByZero("substitution makes a denominator vanish identically");
  // (nn/nd) / (dn/dd)
  return Expr::fraction(nn * dd, nd * dn);
}

int polynomial_degree(const Expr& e, const std::string& var) {
  if (e.den().depends_on(var)) return -2;
  return e.num().degree(var);
}

Expr antiderivative(const Expr& e, const std::string& var) {
  if (e.den().depends_on(var))
    throw ObstructionError("antiderivative: expression is not polynomial in '" + var + "'");
  Poly out;
  for (const auto& t : e.num().terms()) {
    int k = t.mono.degree(var);
    out = out + Poly::monomial(t.mono * Monomial::variable(var), t.coeff / (k + 1));
  }
  return Expr::fraction(out, e.den());
}

}  // namespace hodyn::sym
