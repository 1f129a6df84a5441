#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hodyn/symcore/calculus.hpp"
#include "hodyn/symcore/expr.hpp"

namespace hodyn::sym {

/// Dense rows x cols matrix of expressions.
class ExprMatrix {
 public:
  ExprMatrix() = default;
  ExprMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Expr& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Expr& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  static ExprMatrix identity(std::size_t n);
  bool operator==(const ExprMatrix& o) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Expr> data_;
};

/// Entry (i, j) = d f_i / d w_j.
ExprMatrix jacobian(std::span<const Expr> f, std::span<const std::string> w);
/// Hessian of a scalar.
ExprMatrix hessian(const Expr& f, std::span<const std::string> w);
/// Mixed block d^2 f / (d row_i d col_j).
ExprMatrix mixed_hessian(const Expr& f, std::span<const std::string> row_vars,
                         std::span<const std::string> col_vars);

/// Generic rank over the rational-function field.
std::size_t matrix_rank(const ExprMatrix& m);
/// Determinant; throws ValidationError for non-square input.
Expr det(const ExprMatrix& m);

struct Asymmetry {
  std::size_t i, j;
  Expr difference;  // m(i,j) - m(j,i), nonzero
};
/// First (i < j) pair with m(i,j) != m(j,i); nullopt when symmetric.
std::optional<Asymmetry> asymmetry_witness(const ExprMatrix& m);
inline bool is_symmetric(const ExprMatrix& m) { return !asymmetry_witness(m).has_value(); }

struct LinearSolution {
  Rules solved;                      // pivot unknown -> value (may mention free unknowns)
  std::vector<std::string> free;     // undetermined unknowns
  std::vector<Expr> residual;        // unknown-free compatibility conditions, each ≈ 0
  std::vector<Expr> assumptions;     // non-constant pivots, assumed nonzero
};

/// Gauss-Jordan elimination with exact zero tests on equations affine in the
/// unknowns (each equation read as "expr = 0"). Throws ObstructionError on a
/// nonlinear occurrence of an unknown.
LinearSolution linear_solve(std::span<const Expr> equations, std::span<const std::string> unknowns);

}  // namespace hodyn::sym
