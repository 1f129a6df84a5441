#include "hodyn/symcore/random.hpp"

namespace hodyn::sym {

int ExprGenerator::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

double ExprGenerator::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

Rational ExprGenerator::coefficient() {
  int n = 0;
  while (n == 0) n = integer(-5, 5);
  Rational c(n, integer(1, 3));
  c.canonicalize();
  return c;
}

const std::string& ExprGenerator::pick_variable() {
  return vars_[static_cast<std::size_t>(integer(0, static_cast<int>(vars_.size()) - 1))];
}

Monomial ExprGenerator::monomial(int max_degree) {
  Monomial m;
  int degree = integer(0, max_degree);
  for (int d = 0; d < degree; ++d) m = m * Monomial::variable(pick_variable());
  return m;
}

Poly ExprGenerator::polynomial(int max_terms, int max_degree) {
  Poly p;
  int terms = integer(0, max_terms);
  for (int t = 0; t < terms; ++t) p = p + Poly::monomial(monomial(max_degree), coefficient());
  return p;
}

Poly ExprGenerator::nonzero_polynomial(int max_terms, int max_degree) {
  Poly p;
  while (p.is_zero()) p = polynomial(max_terms, max_degree);
  return p;
}

Expr ExprGenerator::positive_fraction(int max_terms, int max_degree) {
  Poly den(Rational(1));
  for (const auto& v : vars_) {
    int c = integer(0, 2);
    if (c) den = den + Poly::monomial(Monomial::variable(v, 2), Rational(c));
  }
  return Expr::fraction(polynomial(max_terms, max_degree), den);
}

}  // namespace hodyn::sym
