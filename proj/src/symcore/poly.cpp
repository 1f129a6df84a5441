#include "hodyn/symcore/poly.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace hodyn::sym {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<Factor> f) : factors_(std::move(f)) {
  for (const auto& [_, e] : factors_) degree_ += e;
}

Monomial Monomial::variable(std::string name, int exponent) {
  if (exponent == 0) return {};
  return Monomial({{std::move(name), exponent}});
}

int Monomial::degree(const std::string& var) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), var,
                             [](const Factor& f, const std::string& v) { return f.first < v; });
  return (it != factors_.end() && it->first == var) ? it->second : 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  std::vector<Factor> out;
  out.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      out.push_back(*b++);
    } else {
      out.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return Monomial(std::move(out));
}

bool Monomial::divides(const Monomial& other) const {
  // true when *this | other
  for (const auto& [v, e] : factors_)
    if (other.degree(v) < e) return false;
  return true;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  std::vector<Factor> out;
  for (const auto& [v, e] : factors_) {
    int r = e - divisor.degree(v);
    if (r < 0) throw std::logic_error("monomial quotient is not exact");
    if (r > 0) out.emplace_back(v, r);
  }
  for (const auto& [v, e] : divisor.factors_)
    if (degree(v) < e) throw std::logic_error("monomial quotient is not exact");
  return Monomial(std::move(out));
}

Monomial Monomial::without(const std::string& var) const {
  std::vector<Factor> out;
  for (const auto& f : factors_)
    if (f.first != var) out.push_back(f);
  return Monomial(std::move(out));
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  std::vector<Factor> out;
  for (const auto& [v, e] : a.factors_) {
    int m = std::min(e, b.degree(v));
    if (m > 0) out.emplace_back(v, m);
  }
  return Monomial(std::move(out));
}

bool grlex_greater(const Monomial& a, const Monomial& b) {
  if (a.total_degree() != b.total_degree()) return a.total_degree() > b.total_degree();
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0;
  for (; i < fa.size() && i < fb.size(); ++i) {
    if (fa[i].first != fb[i].first) return fa[i].first < fb[i].first;
    if (fa[i].second != fb[i].second) return fa[i].second > fb[i].second;
  }
  return i < fa.size() && i >= fb.size();
}

// -------------------------------------------------------------------- Poly

using TermMap = std::map<Monomial, Rational, bool (*)(const Monomial&, const Monomial&)>;

Poly::Poly(const Rational& c) {
  if (c != 0) terms_.push_back({Monomial{}, c});
}

Poly Poly::variable(const std::string& name) { return monomial(Monomial::variable(name), 1); }

Poly Poly::monomial(Monomial m, Rational c) {
  Poly p;
  if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
  return p;
}

Poly Poly::from_map(TermMap&& m) {
  Poly p;
  p.terms_.reserve(m.size());
  for (auto& [mono, c] : m)
    if (c != 0) p.terms_.push_back({mono, std::move(c)});
  return p;
}

bool Poly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

Rational Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return 0;
}

int Poly::total_degree() const { return terms_.empty() ? -1 : terms_.front().mono.total_degree(); }

int Poly::degree(const std::string& var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree(var));
  return d;
}

std::set<std::string> Poly::variables() const {
  std::set<std::string> out;
  for (const auto& t : terms_)
    for (const auto& f : t.mono.factors()) out.insert(f.first);
  return out;
}

bool Poly::depends_on(const std::string& var) const {
  for (const auto& t : terms_)
    if (t.mono.degree(var) > 0) return true;
  return false;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Poly Poly::operator+(const Poly& o) const {
  Poly out;
  out.terms_.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && grlex_greater(a->mono, b->mono))) {
      out.terms_.push_back(*a++);
    } else if (a == terms_.end() || grlex_greater(b->mono, a->mono)) {
      out.terms_.push_back(*b++);
    } else {
      Rational c = a->coeff + b->coeff;
      if (c != 0) out.terms_.push_back({a->mono, std::move(c)});
      ++a;
      ++b;
    }
  }
  return out;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return {};
  if (o.is_constant()) return scaled(o.terms_[0].coeff);
  if (is_constant()) return o.scaled(terms_[0].coeff);
  TermMap acc(&grlex_greater);
  for (const auto& x : terms_)
    for (const auto& y : o.terms_) acc[x.mono * y.mono] += x.coeff * y.coeff;
  return from_map(std::move(acc));
}

Poly Poly::scaled(const Rational& c) const {
  if (c == 0) return {};
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff *= c;
  return p;
}

Poly Poly::times_monomial(const Monomial& m) const {
  Poly p = *this;
  for (auto& t : p.terms_) t.mono = t.mono * m;
  return p;  // multiplication by a monomial preserves grlex order
}

Poly Poly::map_coefficients(const std::function<Rational(const Rational&)>& f) const {
  Poly out;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Rational c = f(t.coeff);
    if (c != 0) out.terms_.push_back({t.mono, std::move(c)});
  }
  return out;
}

Poly Poly::pow(unsigned n) const {
  Poly result(1);
  Poly base = *this;
  while (n) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n) base = base * base;
  }
  return result;
}

Poly Poly::monic() const {
  if (is_zero()) return {};
  Rational lc = terms_.front().coeff;
  if (lc == 1) return *this;
  return scaled(1 / lc);
}

std::vector<Poly> Poly::coefficients_in(const std::string& var) const {
  int d = degree(var);
  std::vector<TermMap> parts(std::max(d + 1, 0), TermMap(&grlex_greater));
  for (const auto& t : terms_) parts[t.mono.degree(var)][t.mono.without(var)] += t.coeff;
  std::vector<Poly> out;
  out.reserve(parts.size());
  for (auto& m : parts) out.push_back(from_map(std::move(m)));
  return out;
}

Poly Poly::partial(const std::string& var) const {
  TermMap acc(&grlex_greater);
  for (const auto& t : terms_) {
    int e = t.mono.degree(var);
    if (e == 0) continue;
    acc[t.mono.quotient(Monomial::variable(var))] += t.coeff * e;
  }
  return from_map(std::move(acc));
}

Monomial Poly::monomial_content() const {
  if (terms_.empty()) return {};
  Monomial g = terms_.front().mono;
  for (const auto& t : terms_) {
    g = Monomial::gcd(g, t.mono);
    if (g.is_one()) break;
  }
  return g;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  const Term& lead = divisor.terms_.front();
  Poly q, r, p = *this;
  while (!p.is_zero()) {
    const Term& lt = p.terms_.front();
    if (lead.mono.divides(lt.mono)) {
      Poly t = Poly::monomial(lt.mono.quotient(lead.mono), lt.coeff / lead.coeff);
      q = q + t;
      p = p - divisor * t;
    } else {
      Poly t = Poly::monomial(lt.mono, lt.coeff);
      r = r + t;
      p = p - t;
    }
  }
  return {std::move(q), std::move(r)};
}

Poly Poly::divide_exact(const Poly& divisor) const {
  if (divisor.is_constant()) {
    if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
    return scaled(1 / divisor.terms_[0].coeff);
  }
  if (divisor.size() == 1) {
    Poly p = *this;
    const Term& d = divisor.terms_[0];
    for (auto& t : p.terms_) {
      t.mono = t.mono.quotient(d.mono);
      t.coeff /= d.coeff;
    }
    return p;
  }
  auto [q, r] = divmod(divisor);
  if (!r.is_zero()) throw std::logic_error("polynomial division is not exact");
  return q;
}

// --------------------------------------------------------------------- gcd

namespace {

Poly content_in(const Poly& p, const std::string& var);

// p scaled to integer coefficients with unit gcd; keeps remainder sequences small.
Poly integer_primitive(const Poly& p) {
  if (p.is_zero()) return p;
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& t : p.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  return scale == 1 ? p : p.scaled(scale);
}

Poly pseudo_remainder(const Poly& a, const Poly& b, const std::string& var) {
  const int db = b.degree(var);
  const Poly lcb = b.coefficients_in(var).back();
  Poly r = a;
  while (!r.is_zero()) {
    const int dr = r.degree(var);
    if (dr < db) break;
    const Poly lcr = r.coefficients_in(var).back();
    r = integer_primitive(r * lcb - (lcr * b).times_monomial(Monomial::variable(var, dr - db)));
  }
  return r;
}

Poly primitive_part(const Poly& p, const std::string& var) {
  return integer_primitive(p.divide_exact(content_in(p, var)));
}

// Running gcd of a list; stops early at a constant.
Poly gcd_fold(const std::vector<Poly>& ps, Poly g = Poly()) {
  for (const auto& c : ps) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : gcd(g, c);
    if (g.is_constant()) return Poly(1);
  }
  return g.is_zero() ? Poly(1) : g;
}

using Univariate = std::vector<Rational>;  // coefficient of var^i at index i

void trim(Univariate& u) {
  while (!u.empty() && u.back() == 0) u.pop_back();
}

Univariate univariate_remainder(Univariate a, const Univariate& b) {
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

std::size_t univariate_gcd_degree(Univariate a, Univariate b) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    Univariate r = univariate_remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? 0 : a.size() - 1;
}

// p with every variable but var replaced by the values in point.
Univariate specialize(const Poly& p, const std::string& var, const std::map<std::string, Rational>& point) {
  Univariate u(static_cast<std::size_t>(p.degree(var)) + 1);
  for (const auto& t : p.terms()) {
    Rational c = t.coeff;
    int d = 0;
    for (const auto& [name, e] : t.mono.factors()) {
      if (name == var) {
        d = e;
        continue;
      }
      mpq_class v = point.at(name), r = 1;
      for (int k = 0; k < e; ++k) r *= v;
      c *= r;
    }
    u[static_cast<std::size_t>(d)] += c;
  }
  return u;
}

// True when gcd(a, b) provably does not involve var: some specialization of
// the other variables keeps both leading coefficients and leaves coprime
// univariate images. Deterministic points keep results reproducible.
bool gcd_free_of(const Poly& a, const Poly& b, const std::string& var, const std::set<std::string>& vars) {
  const std::size_t da = static_cast<std::size_t>(a.degree(var)), db = static_cast<std::size_t>(b.degree(var));
  unsigned long seed = 7;
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::map<std::string, Rational> point;
    for (const auto& v : vars) {
      seed = seed * 6364136223846793005ul + 1442695040888963407ul;
      point[v] = Rational(static_cast<long>((seed >> 33) % 97) - 48);
    }
    Univariate ua = specialize(a, var, point), ub = specialize(b, var, point);
    trim(ua);
    trim(ub);
    if (ua.size() != da + 1 || ub.size() != db + 1) continue;
    return univariate_gcd_degree(ua, ub) == 0;
  }
  return false;
}

mpz_class max_norm(const Poly& p) {
  mpz_class m = 0;
  for (const auto& t : p.terms()) {
    mpz_class c = abs(t.coeff.get_num());
    if (c > m) m = c;
  }
  return m;
}

mpz_class integer_content(const Poly& p) {
  mpz_class g = 0;
  for (const auto& t : p.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
  return g;
}

// p(var = xi) for integer-coefficient p.
Poly evaluate_at(const Poly& p, const std::string& var, const mpz_class& xi) {
  Poly out;
  mpz_class power = 1;
  for (const auto& c : p.coefficients_in(var)) {
    if (!c.is_zero()) out = out + c.scaled(Rational(power));
    power *= xi;
  }
  return out;
}

// Symmetric residue of n modulo m.
mpz_class symmetric_mod(const mpz_class& n, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
  if (2 * r > m) r -= m;
  return r;
}

// Gcd over Z of integer-coefficient polynomials by evaluation at a large
// integer and xi-adic reconstruction, verified by trial division. nullopt when
// the heuristic gives up.
std::optional<Poly> heuristic_gcd(const Poly& a, const Poly& b, int budget = 64) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  mpz_class ca = integer_content(a), cb = integer_content(b), c;
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  if (a.is_constant() || b.is_constant()) return Poly(Rational(c));
  const Poly pa = a.scaled(Rational(1) / Rational(ca)), pb = b.scaled(Rational(1) / Rational(cb));
  const std::string var = *pa.variables().begin();
  if (!pb.depends_on(var)) {
    // The gcd lies in the content of pa with respect to var.
    std::optional<Poly> g = pb;
    for (const auto& k : pa.coefficients_in(var)) {
      if (k.is_zero()) continue;
      g = heuristic_gcd(*g, k, budget);
      if (!g) return std::nullopt;
    }
    return g->scaled(Rational(c));
  }
  mpz_class xi = 2 * std::min(max_norm(pa), max_norm(pb)) + 29;
  for (int attempt = 0; attempt < 6 && budget > 0; ++attempt, --budget) {
    auto image = heuristic_gcd(evaluate_at(pa, var, xi), evaluate_at(pb, var, xi), budget / 2);
    if (image) {
      Poly g;
      for (int k = 0; !image->is_zero(); ++k) {
        Poly digit = image->map_coefficients([&](const Rational& r) { return Rational(symmetric_mod(r.get_num(), xi)); });
        g = g + (k ? digit.times_monomial(Monomial::variable(var, k)) : digit);
        *image = (*image - digit).scaled(Rational(1) / Rational(xi));
      }
      if (!g.is_zero()) {
        g = g.scaled(Rational(1) / Rational(integer_content(g)));
        if (pa.divmod(g).second.is_zero() && pb.divmod(g).second.is_zero()) return g.scaled(Rational(c));
      }
    }
    xi = xi * 73794 / 27011;
  }
  return std::nullopt;
}

Poly gcd_core(const Poly& a, const Poly& b) {
  if (a.is_constant() || b.is_constant()) return Poly(1);
  const auto va = a.variables();
  const auto vb = b.variables();
  // A variable present in one argument only cannot occur in the gcd.
  for (const auto& v : va)
    if (!vb.count(v)) return gcd_fold(a.coefficients_in(v), b.monic());
  for (const auto& v : vb)
    if (!va.count(v)) return gcd_fold(b.coefficients_in(v), a.monic());
  if (a.size() >= b.size() && a.divmod(b).second.is_zero()) return b.monic();
  if (b.size() > a.size() && b.divmod(a).second.is_zero()) return a.monic();
  for (const auto& v : va)
    if (gcd_free_of(a, b, v, va)) {
      auto ca = a.coefficients_in(v), cb = b.coefficients_in(v);
      ca.insert(ca.end(), cb.begin(), cb.end());
      return gcd_fold(ca);
    }

  if (auto g = heuristic_gcd(integer_primitive(a), integer_primitive(b))) return *g;

  std::string main;
  int best = -1;
  for (const auto& v : va) {
    int d = std::max(a.degree(v), b.degree(v));
    if (best < 0 || d < best) {
      best = d;
      main = v;
    }
  }
  const Poly ca = content_in(a, main);
  const Poly cb = content_in(b, main);
  const Poly c = gcd(ca, cb);
  Poly pa = integer_primitive(a.divide_exact(ca));
  Poly pb = integer_primitive(b.divide_exact(cb));
  if (pa.degree(main) < pb.degree(main)) std::swap(pa, pb);
  while (true) {
    Poly r = pseudo_remainder(pa, pb, main);
    if (r.is_zero()) break;
    if (r.degree(main) == 0) {
      pb = Poly(1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_part(r, main);
  }
  return c * pb;
}

Poly content_in(const Poly& p, const std::string& var) {
  Poly g;
  for (const auto& c : p.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : gcd(g, c);
    if (g.is_constant()) return Poly(1);
  }
  return g.is_zero() ? Poly(1) : g;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly(1);
  if (a == b) return a.monic();
  const Monomial ma = a.monomial_content();
  const Monomial mb = b.monomial_content();
  const Monomial mg = Monomial::gcd(ma, mb);
  Poly ar = a, br = b;
  if (!ma.is_one()) ar = a.divide_exact(Poly::monomial(ma));
  if (!mb.is_one()) br = b.divide_exact(Poly::monomial(mb));
  return gcd_core(ar, br).times_monomial(mg).monic();
}

}  // namespace hodyn::sym
