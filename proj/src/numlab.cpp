#include "hodyn/numlab.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

#include "hodyn/symcore/calculus.hpp"

namespace hodyn {

CompiledExpr::CompiledExpr(const sym::Expr& e, const std::map<std::string, std::size_t>& slots) {
  auto lower = [&](const sym::Poly& p) {
    std::vector<Term> out;
    for (const auto& t : p.terms()) {
      Term term{t.coeff.get_d(), {}};
      for (const auto& [v, k] : t.mono.factors()) {
        auto it = slots.find(v);
        if (it == slots.end()) throw ValidationError("unbound variable '" + v + "' in compiled expression");
        term.powers.emplace_back(it->second, k);
      }
      out.push_back(std::move(term));
    }
    return out;
  };
  num_ = lower(e.num());
  den_ = lower(e.den());
}

double CompiledExpr::eval(const std::vector<Term>& p, const double* x) {
  double s = 0;
  for (const auto& t : p) {
    double m = t.coeff;
    for (const auto& [i, k] : t.powers)
      for (int j = 0; j < k; ++j) m *= x[i];
    s += m;
  }
  return s;
}

double CompiledExpr::operator()(const double* x) const {
  double d = den_.size() == 1 && den_[0].powers.empty() ? den_[0].coeff : eval(den_, x);
  if (d == 0.0) throw EvaluationError("division by zero during evaluation");
  return eval(num_, x) / d;
}

CompiledSystem::CompiledSystem(const std::vector<sym::Expr>& exprs, const std::vector<std::string>& order,
                               const std::map<std::string, double>& parameters)
    : order_(order) {
  std::map<std::string, std::size_t> slots;
  for (std::size_t i = 0; i < order.size(); ++i) slots.emplace(order[i], i);
  for (const auto& [name, value] : parameters)
    if (!slots.count(name)) {
      slots.emplace(name, order.size() + params_.size());
      params_.push_back(value);
    }
  for (const auto& e : exprs) exprs_.emplace_back(e, slots);
}

double CompiledSystem::eval(std::size_t i, const std::vector<double>& y) const {
  if (y.size() != order_.size()) throw ValidationError("state size does not match the compiled system");
  std::vector<double> x(y);
  x.insert(x.end(), params_.begin(), params_.end());
  return exprs_[i](x.data());
}

std::vector<double> CompiledSystem::operator()(const std::vector<double>& y) const {
  if (y.size() != order_.size()) throw ValidationError("state size does not match the compiled system");
  std::vector<double> x(y);
  x.insert(x.end(), params_.begin(), params_.end());
  std::vector<double> out(exprs_.size());
  for (std::size_t i = 0; i < exprs_.size(); ++i) out[i] = exprs_[i](x.data());
  return out;
}

std::size_t step_count(double dt, double T) {
  if (!(dt > 0) || !(T >= dt)) throw ValidationError("integration needs dt > 0 and T >= dt");
  double ratio = T / dt;
  double r = std::round(ratio);
  if (std::abs(ratio - r) <= 1e-9 * std::max(1.0, r)) return static_cast<std::size_t>(r);
  return static_cast<std::size_t>(std::floor(ratio));
}

Trajectory rk4_integrate(const std::function<std::vector<double>(const std::vector<double>&)>& f,
                         const std::vector<std::string>& vars, const std::vector<double>& y0, double dt,
                         double T) {
  const std::size_t n = step_count(dt, T);
  Trajectory tr;
  tr.vars = vars;
  tr.dt = dt;
  tr.T = T;
  tr.times.reserve(n + 1);
  tr.states.reserve(n + 1);
  std::vector<double> y = y0, tmp(y0.size());
  tr.times.push_back(0.0);
  tr.states.push_back(y);
  for (std::size_t s = 0; s < n; ++s) {
    double t = static_cast<double>(s) * dt;
    try {
      auto k1 = f(y);
      for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
      auto k2 = f(tmp);
      for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
      auto k3 = f(tmp);
      for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + dt * k3[i];
      auto k4 = f(tmp);
      for (std::size_t i = 0; i < y.size(); ++i) y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    } catch (const EvaluationError& e) {
      throw EvaluationError(std::string(e.what()) + " at t = " + std::to_string(t));
    }
    tr.times.push_back(static_cast<double>(s + 1) * dt);
    tr.states.push_back(y);
  }
  return tr;
}

Trajectory rk4_integrate(const CompiledSystem& rhs, const std::vector<double>& y0, double dt, double T) {
  if (y0.size() != rhs.order().size() || rhs.size() != y0.size())
    throw ValidationError("state size does not match the compiled system");
  return rk4_integrate([&](const std::vector<double>& y) { return rhs(y); }, rhs.order(), y0, dt, T);
}

double compare_under_map(const Trajectory& src, const CompiledSystem& map, const Trajectory& dst) {
  if (src.states.size() != dst.states.size() || src.dt != dst.dt)
    throw ValidationError("trajectories are on different grids");
  double worst = 0;
  for (std::size_t s = 0; s < src.states.size(); ++s) {
    auto img = map(src.states[s]);
    if (img.size() != dst.states[s].size()) throw ValidationError("map image has the wrong dimension");
    for (std::size_t i = 0; i < img.size(); ++i) worst = std::max(worst, std::abs(img[i] - dst.states[s][i]));
  }
  return worst;
}

double finite_diff_check(const sym::Expr& e, const std::string& v, const std::map<std::string, double>& point,
                         double h) {
  std::vector<std::string> order;
  std::vector<double> y;
  for (const auto& [name, value] : point) {
    order.push_back(name);
    y.push_back(value);
  }
  CompiledSystem cs({e, sym::partial(e, v)}, order);
  auto idx = std::find(order.begin(), order.end(), v) - order.begin();
  if (static_cast<std::size_t>(idx) == order.size()) throw ValidationError("no value for '" + v + "'");
  auto yp = y, ym = y;
  yp[idx] += h;
  ym[idx] -= h;
  double fd = (cs.eval(0, yp) - cs.eval(0, ym)) / (2 * h);
  double exact = cs.eval(1, y);
  return std::abs(fd - exact) / std::max(1.0, std::abs(exact));
}

double energy_drift(const CompiledSystem& H, const Trajectory& traj) {
  if (traj.states.empty()) return 0;
  double h0 = H.eval(0, traj.states.front());
  double worst = 0;
  for (const auto& s : traj.states) worst = std::max(worst, std::abs(H.eval(0, s) - h0));
  return worst;
}

void write_csv(std::ostream& os, const Trajectory& traj) {
  os << "t";
  for (const auto& v : traj.vars) os << ',' << v;
  os << '\n' << std::setprecision(17);
  for (std::size_t s = 0; s < traj.states.size(); ++s) {
    os << traj.times[s];
    for (double x : traj.states[s]) os << ',' << x;
    os << '\n';
  }
}

}  // namespace hodyn
