#pragma once

#include <map>
#include <ostream>
#include <set>
#include <string>

#include "hodyn/symcore/poly.hpp"

namespace hodyn::sym {

/// Exact rational function num/den over Q.
///
/// Every Expr is held in canonical form: numerator and denominator share no
/// nontrivial polynomial factor, the denominator is monic in grlex order, and
/// zero is 0/1. Structural equality therefore coincides with mathematical
/// equality, and normalize() is the identity on any constructed value.
class Expr {
 public:
  Expr() : den_(1) {}
  Expr(const Rational& c) : num_(c), den_(1) {}  // NOLINT: implicit by design of the algebra
  Expr(long c) : Expr(Rational(c)) {}            // NOLINT
  Expr(int c) : Expr(Rational(c)) {}             // NOLINT

  static Expr variable(const std::string& name);
  /// Builds num/den and reduces it; throws DivisionByZero for a zero den.
  static Expr fraction(Poly num, Poly den);

  const Poly& num() const noexcept { return num_; }
  const Poly& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const noexcept { return den_.is_constant(); }
  /// Value of a constant expression; throws std::logic_error otherwise.
  Rational constant_value() const;

  std::set<std::string> variables() const;
  bool depends_on(const std::string& var) const;

  Expr operator-() const;
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator-=(const Expr& o) { return *this = *this - o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }
  Expr pow(int n) const;

  bool operator==(const Expr& o) const { return num_ == o.num_ && den_ == o.den_; }

  /// Renders in the expression grammar (minimal parentheses, grlex order).
  std::string str() const;

 private:
  Poly num_;
  Poly den_;
};

std::ostream& operator<<(std::ostream& os, const Expr& e);

/// Identity on canonical values; kept as the named entry point of the algebra.
inline const Expr& normalize(const Expr& e) { return e; }

/// Renders a polynomial in the expression grammar.
std::string render(const Poly& p);

/// Exact evaluation; every variable of e must be bound.
Rational evaluate(const Expr& e, const std::map<std::string, Rational>& point);

/// Representative of the constraint e ≈ 0: the numerator with monomial
/// content removed, scaled monic. Zero maps to zero.
Expr constraint_form(const Expr& e);

/// True when a = c * b for some nonzero rational c (both zero also counts).
bool proportional(const Expr& a, const Expr& b);

}  // namespace hodyn::sym
