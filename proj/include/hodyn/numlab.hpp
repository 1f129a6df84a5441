#pragma once

#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "hodyn/error.hpp"
#include "hodyn/symcore/expr.hpp"

namespace hodyn {

/// Raised when a compiled expression cannot be evaluated (zero denominator).
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// Polynomial-quotient evaluator over a fixed slot layout.
class CompiledExpr {
 public:
  CompiledExpr() = default;
  CompiledExpr(const sym::Expr& e, const std::map<std::string, std::size_t>& slots);
  double operator()(const double* x) const;

 private:
  struct Term {
    double coeff;
    std::vector<std::pair<std::size_t, int>> powers;
  };
  static double eval(const std::vector<Term>& p, const double* x);
  std::vector<Term> num_, den_;
};

/// Right-hand sides over a state vector, parameters bound to numbers.
class CompiledSystem {
 public:
  CompiledSystem(const std::vector<sym::Expr>& exprs, const std::vector<std::string>& order,
                 const std::map<std::string, double>& parameters = {});

  const std::vector<std::string>& order() const noexcept { return order_; }
  std::size_t size() const noexcept { return exprs_.size(); }
  /// Evaluates every expression at state y (size = order().size()).
  std::vector<double> operator()(const std::vector<double>& y) const;
  double eval(std::size_t i, const std::vector<double>& y) const;

 private:
  std::vector<std::string> order_;
  std::vector<double> params_;
  std::vector<CompiledExpr> exprs_;
};

struct Trajectory {
  std::vector<std::string> vars;
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  double dt = 0, T = 0;
};

/// N = T/dt steps (rounded when T/dt is within 1e-9 of an integer, floored otherwise).
std::size_t step_count(double dt, double T);

/// Classical fixed-step RK4 for y' = f(y).
Trajectory rk4_integrate(const CompiledSystem& rhs, const std::vector<double>& y0, double dt, double T);
Trajectory rk4_integrate(const std::function<std::vector<double>(const std::vector<double>&)>& rhs,
                         const std::vector<std::string>& vars, const std::vector<double>& y0, double dt, double T);

/// max_t || map(src(t)) - dst(t) ||_inf; map evaluated on source states.
double compare_under_map(const Trajectory& src, const CompiledSystem& map, const Trajectory& dst);

/// Relative error between a central difference and the symbolic partial,
/// |fd - exact| / max(1, |exact|).
double finite_diff_check(const sym::Expr& e, const std::string& v, const std::map<std::string, double>& point,
                         double h);

double energy_drift(const CompiledSystem& H, const Trajectory& traj);

/// Trajectory CSV: header "t,<vars>", 17 significant digits.
void write_csv(std::ostream& os, const Trajectory& traj);

}  // namespace hodyn
