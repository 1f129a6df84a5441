#include "hodyn/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

#include "hodyn/commands.hpp"
#include "hodyn/error.hpp"
#include "hodyn/report.hpp"
#include "hodyn/symcore/parse.hpp"
#include "hodyn/symcore/random.hpp"

namespace hodyn {

namespace {

using Clock = std::chrono::steady_clock;
using sym::parse;
using sym::Poly;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Check {
  bool ok = true;
  std::ostringstream why;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

// Every golden entry must equal the derived table entry of the same name.
void compare_table(Check& c, const std::string& label, const std::vector<std::pair<std::string, Expr>>& derived,
                   const nlohmann::json& golden, const VariableContext& ctx) {
  c.require(derived.size() == golden.size(), label + ": entry count differs");
  for (const auto& [name, value] : derived) {
    if (!golden.contains(name)) {
      c.require(false, label + ": no golden for " + name);
      continue;
    }
    Expr diff = value - parse(golden[name].get<std::string>(), ctx);
    c.require(diff.is_zero(), label + "." + name + " differs by " + diff.str());
  }
}

void compare_expr(Check& c, const std::string& label, const Expr& derived, const nlohmann::json& golden,
                  const VariableContext& ctx) {
  Expr diff = derived - parse(golden.get<std::string>(), ctx);
  c.require(diff.is_zero(), label + " differs by " + diff.str());
}

// Stage k of the chain, as a set of constraints up to scale, against the
// golden stage weak-reduced by the context in force when it was found.
void compare_stages(Check& c, const ConstraintChain& chain, const nlohmann::json& golden, const VariableContext& ctx) {
  c.require(chain.stages.size() >= golden.size(), "chain has " + std::to_string(chain.stages.size()) + " stages");
  for (std::size_t k = 0; k < golden.size() && k < chain.stages.size(); ++k) {
    const auto& stage = chain.stages[k];
    c.require(stage.size() == golden[k].size(), "stage " + std::to_string(k + 1) + " size differs");
    for (const auto& g : golden[k]) {
      Expr want = sym::constraint_form(weak_reduce(parse(g.get<std::string>(), ctx), chain.context_before[k]));
      bool hit = std::any_of(stage.begin(), stage.end(), [&](const ChainConstraint& cc) {
        return sym::proportional(sym::constraint_form(cc.reduced), want);
      });
      c.require(hit, "stage " + std::to_string(k + 1) + " lacks " + g.get<std::string>());
    }
  }
}

void compare_multipliers(Check& c, const ConstraintChain& chain, const nlohmann::json& golden,
                         const VariableContext& ctx) {
  for (const auto& [name, value] : golden.items()) {
    auto it = chain.multiplier_rules.find(name);
    if (it == chain.multiplier_rules.end()) {
      c.require(false, name + " not solved");
      continue;
    }
    Expr diff = weak_reduce(it->second - parse(value.get<std::string>(), ctx), chain.weak);
    c.require(diff.is_zero(), name + " differs weakly by " + diff.str());
  }
}

Manifest fixture(const std::string& name) { return load_manifest(fixture_path(name + ".json")); }

CriterionResult run(const std::string& id, const std::string& title, double budget,
                    const std::function<void(Check&)>& body) {
  CriterionResult r{id, title, false, "", 0};
  Check c;
  auto t0 = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  r.seconds = seconds_since(t0);
  if (budget > 0) c.require(r.seconds < budget, "runtime over budget");
  r.pass = c.ok;
  r.detail = c.why.str();
  return r;
}

void el_golden(Check& c) {
  for (const char* name : {"example1", "pais_uhlenbeck"}) {
    auto t0 = Clock::now();
    auto m = fixture(name);
    auto spec = build_spec(m);
    auto el = euler_lagrange(spec);
    const auto& g = m.golden["el"];
    c.require(el.equations.size() == g.size(), std::string(name) + ": equation count differs");
    for (std::size_t i = 0; i < g.size() && i < el.equations.size(); ++i)
      compare_expr(c, std::string(name) + ".el", el.equations[i], g[i], spec.ctx);
    c.require(seconds_since(t0) < 1.0, std::string(name) + ": over 1 s");
  }
}

void schmidt_golden(Check& c) {
  auto m = fixture("pais_uhlenbeck");
  auto p = run_even(m);
  const auto& g = m.golden["schmidt"];
  const auto& ctx = p.schmidt.phase.ctx;
  compare_expr(c, "F", p.schmidt.F.F, g["F"], ctx);
  compare_table(c, "momenta", p.schmidt.momenta, g["momenta"], ctx);
  compare_expr(c, "H", p.schmidt.H, g["H"], ctx);
  compare_table(c, "hamilton", hamilton_equations(p.schmidt.phase), g["hamilton"], ctx);
}

void ostro_golden(Check& c) {
  auto m = fixture("pais_uhlenbeck");
  auto spec = build_spec(m);
  auto r = ostrogradsky_hamiltonian(spec);
  const auto& g = m.golden["ostrogradsky"];
  compare_expr(c, "H", r.phase.H, g["H"], r.phase.ctx);
  compare_table(c, "hamilton", hamilton_equations(r.phase), g["hamilton"], r.phase.ctx);
}

void map_golden(Check& c) {
  auto m = fixture("pais_uhlenbeck");
  auto p = run_even(m);
  c.require(p.certificate.canonical, "brackets: " + p.certificate.offending);
  std::vector<std::pair<std::string, Expr>> rules(p.map.rules.begin(), p.map.rules.end());
  compare_table(c, "map", rules, m.golden["canonical_map"], p.schmidt.phase.ctx);
  Expr diff = transport_hamiltonian(p.ostro.phase.H, p.map) - p.schmidt.H;
  c.require(diff.is_zero(), "transported H differs by " + diff.str());
}

std::string sci(double x) {
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << x;
  return os.str();
}

// Fourth-order reduction y = (q, q', q'', q''') of
// q'''' + (w1^2 + w2^2) q'' + w1^2 w2^2 q = 0.
Trajectory pu_reference(const Manifest& m, double dt, double T) {
  double w1 = m.parameters.at("w1"), w2 = m.parameters.at("w2");
  double s = w1 * w1 + w2 * w2, prod = w1 * w1 * w2 * w2;
  const auto& x = m.simulation->initial_state;
  // q' = -p_a, q'' = a, q''' = a' = -p_q + s p_a.
  std::vector<double> y0{x.at("q"), -x.at("p_a"), x.at("a"), -x.at("p_q") + s * x.at("p_a")};
  auto rhs = [&](const std::vector<double>& y) {
    return std::vector<double>{y[1], y[2], y[3], -s * y[2] - prod * y[0]};
  };
  return rk4_integrate(rhs, {"q", "q'", "q''", "q'''"}, y0, dt, T);
}

std::vector<CriterionResult> numeric_criteria() {
  const double dt = 1e-3, T = 10;
  std::vector<CriterionResult> out;
  auto t0 = Clock::now();
  std::optional<Manifest> m;
  std::optional<NumericRun> full, half;
  double oracle_error = INFINITY;
  std::string failure;
  try {
    m = fixture("pais_uhlenbeck");
    auto p = run_even(*m);
    full = simulate(p, *m, dt, T);
    half = simulate(p, *m, dt / 2, T);
    auto ref = pu_reference(*m, dt, T);
    oracle_error = 0;
    for (std::size_t s = 0; s < ref.states.size(); ++s)
      oracle_error = std::max(oracle_error, std::abs(ref.states[s][0] - full->schmidt.states[s][0]));
  } catch (const std::exception& e) {
    failure = std::string("exception: ") + e.what();
  }
  double elapsed = seconds_since(t0);
  auto line = [&](const std::string& id, const std::string& title, bool ok, std::string detail) {
    if (!failure.empty()) {
      ok = false;
      detail = failure;
    }
    if (elapsed >= 5.0) {
      ok = false;
      detail += " (suite over 5 s)";
    }
    out.push_back({id, title, ok, detail, elapsed});
  };
  bool ran = failure.empty();
  line("5a", "PU flows agree under the canonical map", ran && full->map_error <= 1e-6,
       ran ? "max error " + sci(full->map_error) : "");
  line("5b", "PU q matches the fourth-order ODE", ran && oracle_error <= 1e-6,
       ran ? "max error " + sci(oracle_error) : "");
  line("5c", "PU energy drift on both sides",
       ran && full->drift_schmidt <= 1e-7 && full->drift_ostro <= 1e-7,
       ran ? "drift " + sci(full->drift_schmidt) + " / " + sci(full->drift_ostro) : "");
  double ratio = ran && half->map_error > 0 ? full->map_error / half->map_error : NAN;
  line("5d", "halving dt improves the map error by 8..32", ran && ratio >= 8 && ratio <= 32,
       ran ? "errors " + sci(full->map_error) + " -> " + sci(half->map_error) +
                 (std::isnan(ratio) ? ", ratio undefined" : ", ratio " + sci(ratio))
           : "");
  return out;
}

void obstruction_exit(Check& c) {
  CommandOptions opt;
  opt.command = "schmidt";
  opt.manifest = fixture_path("example3.json");
  opt.mode = Mode::Even;
  std::ostringstream out, err;
  int code = dispatch(opt, out, err);
  c.require(code == Obstruction, "exit code " + std::to_string(code));
  if (code != Obstruction) return;
  auto report = nlohmann::json::parse(out.str());
  const auto& w = report["schmidt"]["witness"];
  auto m = fixture("example3");
  const auto& g = m.golden["integrability"];
  c.require(w["i"] == g["i"] && w["j"] == g["j"], "witness position differs");
  auto spec = build_spec(m);
  auto ctx = schmidt_context(spec, build_names(m));
  compare_expr(c, "witness", parse(w["difference"].get<std::string>(), ctx), g["difference"], ctx);
  c.require(err.str().find("integrability obstruction") != std::string::npos, "message lacks the obstruction");
}

void chain_golden(Check& c, const std::string& name) {
  auto m = fixture(name);
  auto p = run_odd(m);
  const auto& g = m.golden["dirac_chain"];
  const auto& ctx = p.schmidt.phase.ctx;
  compare_stages(c, p.chain, g["stages"], ctx);
  c.require(p.chain.stages.size() == g["stages"].size(), "extra stages found");
  if (g.contains("multipliers")) compare_multipliers(c, p.chain, g["multipliers"], ctx);
  if (g.contains("multipliers_solved_at_stage")) {
    std::map<int, int> counts;
    for (const auto& s : p.chain.multiplier_solutions) ++counts[s.stage];
    for (const auto& [stage, n] : g["multipliers_solved_at_stage"].items())
      c.require(counts[std::stoi(stage)] == n.get<int>(), "stage " + stage + " solved " +
                                                              std::to_string(counts[std::stoi(stage)]));
  }
  c.require(p.chain.status == ChainStatus::MultiplierDetermined,
            std::string("status ") + status_name(p.chain.status));
  if (g.contains("reduced_H")) {
    Expr diff = weak_reduce(reduced_hamiltonian(p.schmidt.phase, p.chain) -
                                parse(g["reduced_H"].get<std::string>(), ctx),
                            p.chain.weak);
    c.require(diff.is_zero(), "reduced H differs weakly by " + diff.str());
  }
}

void example1_oracles(Check& c) {
  auto m = fixture("example1");
  auto p = run_even(m);
  Expr legendre = legendre_identity_residual(p.schmidt, p.names);
  c.require(legendre.is_zero(), "Legendre residual " + legendre.str());
  for (const auto& e : schmidt_dynamics_residuals(p.spec, p.schmidt, p.names))
    c.require(e.is_zero(), "Hamilton equations leave " + e.str());
  auto section = schmidt_even_section(p, m.golden);
  bool flagged = false;
  for (const auto& d : section["discrepancies"]) flagged = flagged || d["field"] == "schmidt.H";
  c.require(flagged, "report does not flag the reference H display");
}

// Property suites, each over 200 seeded cases.
constexpr int kCases = 200;

void property_suites(Check& c) {
  PhaseSystem ps;
  for (const auto& [x, p] : {std::pair{"x1", "p1"}, std::pair{"x2", "p2"}}) {
    ps.ctx.declare_coordinate(x, 0, false);
    ps.ctx.declare_momentum(p, x);
    ps.pairs.emplace_back(x, p);
  }
  sym::ExprGenerator phase_gen({"x1", "x2", "p1", "p2"}, 20261018);
  for (int i = 0; i < kCases; ++i) {
    Expr f = Expr::fraction(phase_gen.polynomial(), Poly(1));
    Expr g = Expr::fraction(phase_gen.polynomial(), Poly(1));
    Expr h = Expr::fraction(phase_gen.polynomial(), Poly(1));
    auto pb = [&](const Expr& a, const Expr& b) { return poisson_bracket(a, b, ps); };
    c.require((pb(f, g) + pb(g, f)).is_zero(), "bracket antisymmetry fails at case " + std::to_string(i));
    c.require((pb(f, g * h) - pb(f, g) * h - g * pb(f, h)).is_zero(), "Leibniz fails at case " + std::to_string(i));
    c.require((pb(f, pb(g, h)) + pb(g, pb(h, f)) + pb(h, pb(f, g))).is_zero(),
              "Jacobi fails at case " + std::to_string(i));
  }

  LagrangianSpec base = make_spec({"x", "y"}, 2, "0");
  sym::ExprGenerator lag_gen({"x", "x'", "x''", "y", "y'", "y''"}, 77);
  sym::ExprGenerator gauge_gen({"x", "x'", "y", "y'"}, 78);
  for (int i = 0; i < kCases; ++i) {
    LagrangianSpec spec = base;
    spec.L = Expr::fraction(lag_gen.polynomial(3, 3), Poly(1));
    Expr F = Expr::fraction(gauge_gen.polynomial(2, 3), Poly(1));
    auto lifted = gauge_lift(spec, F);
    if (lifted.order != spec.order) continue;
    auto a = euler_lagrange(spec).equations, b = euler_lagrange(lifted).equations;
    for (std::size_t k = 0; k < a.size(); ++k)
      c.require((b[k] - a[k]).is_zero(), "gauge invariance fails at case " + std::to_string(i));
  }

  sym::ExprGenerator fd_gen({"u", "v", "w"}, 4242);
  double worst = 0;
  for (int i = 0; i < kCases; ++i) {
    Expr e = fd_gen.positive_fraction(4, 3);
    std::string var = fd_gen.pick_variable();
    std::map<std::string, double> point{
        {"u", fd_gen.uniform(-1, 1)}, {"v", fd_gen.uniform(-1, 1)}, {"w", fd_gen.uniform(-1, 1)}};
    worst = std::max(worst, finite_diff_check(e, var, point, 1e-5));
  }
  c.require(worst <= 1e-6, "finite-difference relative error " + sci(worst));

  VariableContext nctx;
  for (const char* v : {"u", "v", "w"}) nctx.declare_coordinate(v, 0, false);
  sym::ExprGenerator norm_gen({"u", "v", "w"}, 99);
  for (int i = 0; i < kCases; ++i) {
    Poly num = norm_gen.polynomial(), den = norm_gen.nonzero_polynomial(), common = norm_gen.nonzero_polynomial();
    Expr e = Expr::fraction(num, den);
    Expr again = Expr::fraction(e.num(), e.den());
    Expr scaled = Expr::fraction(num * common, den * common);
    c.require(normalize(normalize(e)) == normalize(e) && again == e && scaled == e,
              "normalize is not idempotent at case " + std::to_string(i));
    c.require(parse(e.str(), nctx) == e, "render/parse round trip fails for " + e.str());
  }
}

}  // namespace

std::vector<CriterionResult> run_acceptance() {
  std::vector<CriterionResult> out;
  out.push_back(run("1", "Euler-Lagrange goldens (example1, pais_uhlenbeck)", 0, el_golden));
  out.push_back(run("2", "Schmidt even-order golden (PU)", 1.0, schmidt_golden));
  out.push_back(run("3", "Ostrogradsky golden (PU)", 1.0, ostro_golden));
  out.push_back(run("4", "canonical map certificate and Hamiltonian transport (PU)", 0, map_golden));
  for (auto& r : numeric_criteria()) out.push_back(std::move(r));
  out.push_back(run("6", "integrability obstruction on example3, exit code 3", 0, obstruction_exit));
  out.push_back(run("7a", "Dirac chain golden (example3)", 2.0, [](Check& c) { chain_golden(c, "example3"); }));
  out.push_back(
      run("7b", "Dirac chain golden (sarioglu_tekin)", 2.0, [](Check& c) { chain_golden(c, "sarioglu_tekin"); }));
  out.push_back(run("7c", "Dirac chain golden (clement)", 2.0, [](Check& c) { chain_golden(c, "clement"); }));
  out.push_back(run("8", "example1 derived oracles and discrepancy flag", 0, example1_oracles));
  out.push_back(run("9", "property suites (200 cases each)", 30.0, property_suites));
  return out;
}

void print_acceptance(std::ostream& os, const std::vector<CriterionResult>& results, bool timings) {
  for (const auto& r : results) {
    os << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(3) << r.id << ' ' << r.title;
    if (timings) os << " [" << std::fixed << std::setprecision(2) << r.seconds << " s]";
    if (!r.detail.empty()) os << ": " << r.detail;
    os << '\n';
  }
  std::size_t passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.pass; });
  os << passed << '/' << results.size() << " criteria passed\n";
}

nlohmann::ordered_json acceptance_json(const std::vector<CriterionResult>& results) {
  auto j = nlohmann::ordered_json::array();
  for (const auto& r : results) j.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
  return j;
}

}  // namespace hodyn
