#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace hodyn::sym {

using Rational = mpq_class;

/// Power product of named variables. Factors are kept sorted by name with
/// positive exponents, so two equal monomials compare equal structurally.
class Monomial {
 public:
  using Factor = std::pair<std::string, int>;

  Monomial() = default;
  static Monomial variable(std::string name, int exponent = 1);

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  int total_degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return factors_.empty(); }
  int degree(const std::string& var) const;

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  /// Requires divides(*this, other) to hold, i.e. other | *this.
  Monomial quotient(const Monomial& divisor) const;
  Monomial without(const std::string& var) const;
  static Monomial gcd(const Monomial& a, const Monomial& b);

  bool operator==(const Monomial& other) const { return factors_ == other.factors_; }

 private:
  explicit Monomial(std::vector<Factor> f);
  std::vector<Factor> factors_;
  int degree_ = 0;
};

/// Graded lexicographic order: total degree first, then lexicographic with
/// variables ranked by name. Returns true when a is strictly greater.
bool grlex_greater(const Monomial& a, const Monomial& b);

/// Sparse multivariate polynomial over Q. Terms are kept sorted in decreasing
/// grlex order with no zero coefficients, which makes the representation
/// canonical.
class Poly {
 public:
  struct Term {
    Monomial mono;
    Rational coeff;
    bool operator==(const Term& o) const { return mono == o.mono && coeff == o.coeff; }
  };

  Poly() = default;
  explicit Poly(const Rational& c);
  static Poly variable(const std::string& name);
  static Poly monomial(Monomial m, Rational c = 1);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  std::size_t size() const noexcept { return terms_.size(); }
  Rational constant_term() const;
  const Term& leading() const { return terms_.front(); }
  int total_degree() const;
  int degree(const std::string& var) const;
  std::set<std::string> variables() const;
  bool depends_on(const std::string& var) const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Rational& c) const;
  Poly times_monomial(const Monomial& m) const;
  /// Applies f to every coefficient, dropping terms that become zero.
  Poly map_coefficients(const std::function<Rational(const Rational&)>& f) const;
  Poly pow(unsigned n) const;

  /// Leading coefficient scaled to one (zero stays zero).
  Poly monic() const;
  /// Coefficients of var^0, var^1, ... as polynomials free of var.
  std::vector<Poly> coefficients_in(const std::string& var) const;
  Poly partial(const std::string& var) const;
  /// Greatest monomial dividing every term.
  Monomial monomial_content() const;

  /// Multivariate division by leading terms. Returns (quotient, remainder).
  std::pair<Poly, Poly> divmod(const Poly& divisor) const;
  /// Division that must be exact; throws std::logic_error otherwise.
  Poly divide_exact(const Poly& divisor) const;

  bool operator==(const Poly& o) const { return terms_ == o.terms_; }

 private:
  static Poly from_map(std::map<Monomial, Rational, bool (*)(const Monomial&, const Monomial&)>&& m);
  std::vector<Term> terms_;
};

/// Monic greatest common divisor over Q[x1..xn] (heuristic evaluation gcd with
/// a recursive primitive PRS fallback).
Poly gcd(const Poly& a, const Poly& b);

}  // namespace hodyn::sym
