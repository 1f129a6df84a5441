#pragma once

#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "hodyn/symcore/calculus.hpp"
#include "hodyn/symcore/context.hpp"
#include "hodyn/symcore/parse.hpp"

namespace test {

using hodyn::sym::Expr;
using hodyn::sym::VariableContext;

constexpr int kCases = 200;
constexpr std::uint64_t kSeed = 20261018;

/// Context with each stem as a base coordinate carrying jets up to order.
inline VariableContext coords(std::initializer_list<const char*> stems, int order = 0) {
  VariableContext ctx;
  for (const char* s : stems) ctx.declare_coordinate(s, order, false);
  return ctx;
}

inline Expr P(const std::string& text, const VariableContext& ctx) { return hodyn::sym::parse(text, ctx); }

inline Expr V(const std::string& name) { return Expr::variable(name); }

using Point = std::map<std::string, hodyn::sym::Rational>;

/// Exact value of e at a rational point covering all its variables.
inline hodyn::sym::Rational at(const Expr& e, const Point& point) {
  hodyn::sym::Rules rules;
  for (const auto& [k, v] : point) rules[k] = Expr(v);
  return hodyn::sym::substitute(e, rules).constant_value();
}

/// Rank of a rational matrix by plain fraction-exact row reduction.
inline std::size_t rational_rank(std::vector<std::vector<hodyn::sym::Rational>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t i = rank + 1; i < m.size(); ++i) {
      hodyn::sym::Rational f = m[i][c] / m[rank][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace test
