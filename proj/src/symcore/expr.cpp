#include "hodyn/symcore/expr.hpp"

#include <sstream>
#include <stdexcept>

#include "hodyn/error.hpp"

namespace hodyn::sym {

Expr Expr::variable(const std::string& name) {
  Expr e;
  e.num_ = Poly::variable(name);
  return e;
}

Expr Expr::fraction(Poly num, Poly den) {
  if (den.is_zero()) throw DivisionByZero("division by an expression that is identically zero");
  Expr e;
  if (num.is_zero()) return e;
  if (!den.is_constant()) {
    Poly g = gcd(num, den);
    if (!g.is_constant()) {
      num = num.divide_exact(g);
      den = den.divide_exact(g);
    }
  }
  Rational lc = den.leading().coeff;
  e.num_ = num.scaled(1 / lc);
  e.den_ = den.scaled(1 / lc);
  return e;
}

Rational Expr::constant_value() const {
  if (!is_constant()) throw std::logic_error("expression is not constant: " + str());
  return num_.constant_term() / den_.constant_term();
}

std::set<std::string> Expr::variables() const {
  auto v = num_.variables();
  auto d = den_.variables();
  v.insert(d.begin(), d.end());
  return v;
}

bool Expr::depends_on(const std::string& var) const {
  return num_.depends_on(var) || den_.depends_on(var);
}

Expr Expr::operator-() const {
  Expr e = *this;
  e.num_ = -e.num_;
  return e;
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) {
    if (a.den_.is_constant()) {
      Expr e;
      e.num_ = a.num_ + b.num_;
      e.den_ = a.den_;
      if (e.num_.is_zero()) e.den_ = Poly(1);
      return e;
    }
    return Expr::fraction(a.num_ + b.num_, a.den_);
  }
  if (a.den_.is_constant() && b.den_.is_constant()) {
    Expr e;
    e.num_ = a.num_ + b.num_;  // both denominators are the monic constant 1
    e.den_ = Poly(1);
    return e;
  }
  Poly g = gcd(a.den_, b.den_);
  Poly ad = a.den_.divide_exact(g);
  Poly bd = b.den_.divide_exact(g);
  return Expr::fraction(a.num_ * bd + b.num_ * ad, ad * b.den_);
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_polynomial() && b.is_polynomial()) {
    Expr e;
    e.num_ = a.num_ * b.num_;
    return e;
  }
  Poly g1 = gcd(a.num_, b.den_);
  Poly g2 = gcd(b.num_, a.den_);
  Poly n = a.num_.divide_exact(g1) * b.num_.divide_exact(g2);
  Poly d = a.den_.divide_exact(g2) * b.den_.divide_exact(g1);
  Rational lc = d.leading().coeff;
  Expr e;
  e.num_ = n.scaled(1 / lc);
  e.den_ = d.scaled(1 / lc);
  return e;
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw DivisionByZero("division by an expression that is identically zero");
  Expr inv;
  inv.num_ = b.den_;
  inv.den_ = b.num_;
  Rational lc = inv.den_.leading().coeff;
  inv.num_ = inv.num_.scaled(1 / lc);
  inv.den_ = inv.den_.scaled(1 / lc);
  return a * inv;
}

Expr Expr::pow(int n) const {
  if (n < 0) return Expr(1) / pow(-n);
  Expr e;
  e.num_ = num_.pow(static_cast<unsigned>(n));
  e.den_ = den_.pow(static_cast<unsigned>(n));
  return e;
}

// --------------------------------------------------------------- rendering

namespace {

std::string monomial_str(const Monomial& m) {
  std::string out;
  for (const auto& [v, e] : m.factors()) {
    if (!out.empty()) out += '*';
    out += v;
    if (e != 1) out += '^' + std::to_string(e);
  }
  return out;
}

std::string term_str(const Rational& magnitude, const Monomial& m) {
  const mpz_class& n = magnitude.get_num();
  const mpz_class& d = magnitude.get_den();
  if (m.is_one()) return d == 1 ? n.get_str() : n.get_str() + "/" + d.get_str();
  std::string ms = monomial_str(m);
  if (n == 1 && d == 1) return ms;
  if (d == 1) return n.get_str() + "*" + ms;
  if (n == 1) return ms + "/" + d.get_str();
  return n.get_str() + "*" + ms + "/" + d.get_str();
}

}  // namespace

std::string render(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    bool neg = t.coeff < 0;
    Rational mag = neg ? Rational(-t.coeff) : t.coeff;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    out += term_str(mag, t.mono);
    first = false;
  }
  return out;
}

std::string Expr::str() const {
  if (den_.is_constant()) return render(num_);
  std::string n = render(num_);
  if (num_.size() > 1) n = "(" + n + ")";
  std::string d = render(den_);
  if (den_.size() > 1 || den_.leading().mono.factors().size() > 1) d = "(" + d + ")";
  return n + "/" + d;
}

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << e.str(); }

// -------------------------------------------------------------- evaluation

namespace {

Rational eval_poly(const Poly& p, const std::map<std::string, Rational>& point) {
  Rational acc = 0;
  for (const auto& t : p.terms()) {
    Rational v = t.coeff;
    for (const auto& [name, e] : t.mono.factors()) {
      auto it = point.find(name);
      if (it == point.end()) throw ValidationError("unbound variable '" + name + "' in evaluation");
      Rational b = it->second;
      Rational pw = 1;
      for (int i = 0; i < e; ++i) pw *= b;
      v *= pw;
    }
    acc += v;
  }
  return acc;
}

}  // namespace

Rational evaluate(const Expr& e, const std::map<std::string, Rational>& point) {
  Rational d = eval_poly(e.den(), point);
  if (d == 0) throw DivisionByZero("denominator vanishes at evaluation point");
  return eval_poly(e.num(), point) / d;
}

Expr constraint_form(const Expr& e) {
  if (e.is_zero()) return e;
  Poly n = e.num();
  Monomial m = n.monomial_content();
  if (!m.is_one()) n = n.divide_exact(Poly::monomial(m));
  return Expr::fraction(n.monic(), Poly(1));
}

bool proportional(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return (a / b).is_constant();
}

}  // namespace hodyn::sym
