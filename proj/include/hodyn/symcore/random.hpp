#pragma once

#include <random>
#include <string>
#include <vector>

#include "hodyn/symcore/expr.hpp"

namespace hodyn::sym {

/// Seeded generator of small random polynomials and rational functions over
/// a fixed variable set.
class ExprGenerator {
 public:
  ExprGenerator(std::vector<std::string> vars, std::uint64_t seed) : vars_(std::move(vars)), rng_(seed) {}

  Rational coefficient();
  Monomial monomial(int max_degree);
  Poly polynomial(int max_terms = 3, int max_degree = 3);
  /// Polynomial over a denominator 1 + sum c_i v_i^2 (c_i >= 0), positive on R^n.
  Expr positive_fraction(int max_terms = 3, int max_degree = 3);
  /// Random nonzero polynomial.
  Poly nonzero_polynomial(int max_terms = 3, int max_degree = 3);
  const std::string& pick_variable();
  double uniform(double lo, double hi);
  std::mt19937_64& engine() { return rng_; }

 private:
  int integer(int lo, int hi);
  std::vector<std::string> vars_;
  std::mt19937_64 rng_;
};

}  // namespace hodyn::sym
