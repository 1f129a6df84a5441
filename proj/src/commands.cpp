#include "hodyn/commands.hpp"

#include <fstream>

#include "hodyn/acceptance.hpp"
#include "hodyn/error.hpp"
#include "hodyn/report.hpp"

namespace hodyn {

namespace {

Json header(const Manifest& m, const char* command) {
  return {{"manifest", m.name}, {"command", command}};
}

Json run_el(const Manifest& m) {
  auto spec = build_spec(m);
  Json r = header(m, "el");
  r["el"] = el_section(spec);
  return r;
}

Json run_ostro(const Manifest& m) {
  auto spec = build_spec(m);
  Json r = header(m, "ostro");
  r["ostrogradsky"] = ostro_section(spec, ostrogradsky_hamiltonian(spec));
  return r;
}

Json run_schmidt(const Manifest& m, std::optional<Mode> mode) {
  Json r = header(m, "schmidt");
  if (resolve_mode(m, mode) == Mode::Even)
    r["schmidt"] = schmidt_even_section(run_even(m), m.golden);
  else
    r["schmidt"] = schmidt_odd_section(run_odd(m));
  return r;
}

Json run_dirac(const Manifest& m, std::optional<Mode> mode) {
  if (resolve_mode(m, mode) != Mode::Odd) throw ValidationError("dirac needs an odd-mode manifest");
  auto p = run_odd(m);
  Json r = header(m, "dirac");
  r["schmidt"] = schmidt_odd_section(p);
  r["dirac_chain"] = chain_section(p);
  return r;
}

Json run_bridge(const Manifest& m, std::optional<Mode> mode) {
  Json r = header(m, "bridge");
  if (resolve_mode(m, mode) == Mode::Even) {
    auto p = run_even(m);
    r["canonical_map"] = map_section(p.map, p.certificate);
    r["canonical_map"]["transport"] = transport_section(p);
  } else {
    auto p = run_odd(m);
    auto [map, cert] = certified_map_odd(p.spec, p.schmidt, p.names);
    r["canonical_map"] = map_section(map, cert);
  }
  return r;
}

void write_trajectory(const std::filesystem::path& dir, const std::string& file, const Trajectory& t) {
  std::ofstream os(dir / file);
  if (!os) throw ValidationError("cannot write " + (dir / file).string());
  write_csv(os, t);
}

Json run_simulate(const Manifest& m, const CommandOptions& opt) {
  if (resolve_mode(m, opt.mode) != Mode::Even) throw ValidationError("simulate needs an even-mode manifest");
  if (!m.simulation) throw ValidationError("manifest has no 'simulation' block");
  double dt = opt.dt.value_or(m.simulation->dt);
  double T = opt.T.value_or(m.simulation->T);
  if (!(dt > 0) || !(T > 0)) throw ValidationError("dt and T must be positive");
  auto p = run_even(m);
  auto run = simulate(p, m, dt, T);
  Json r = header(m, "simulate");
  r["numeric"] = numeric_section(run, dt, T);
  if (opt.out_dir) {
    std::filesystem::create_directories(*opt.out_dir);
    write_trajectory(*opt.out_dir, "schmidt.csv", run.schmidt);
    write_trajectory(*opt.out_dir, "ostrogradsky.csv", run.ostro);
    write_trajectory(*opt.out_dir, "euler_lagrange.csv", run.el);
    r["numeric"]["csv"] = {"schmidt.csv", "ostrogradsky.csv", "euler_lagrange.csv"};
  }
  return r;
}

int run_verify(const CommandOptions& opt, std::ostream& out) {
  auto results = run_acceptance();
  if (opt.json)
    out << acceptance_json(results).dump(2) << '\n';
  else
    print_acceptance(out, results);
  for (const auto& c : results)
    if (!c.pass) return AcceptanceFailure;
  return Success;
}

// Witness of the integrability failure, when that is what blocked the command.
std::optional<sym::Asymmetry> integrability_witness(const Manifest& m) {
  try {
    if (m.order != 2) return std::nullopt;
    return integrability_check(build_spec(m), build_names(m)).witness;
  } catch (const Error&) {
    return std::nullopt;
  }
}

const std::map<std::string, const char*> kSections = {
    {"el", "el"},         {"ostro", "ostrogradsky"},   {"schmidt", "schmidt"},  {"dirac", "dirac_chain"},
    {"bridge", "canonical_map"}, {"simulate", "numeric"}};

}  // namespace

int dispatch(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.command == "verify") return run_verify(opt, out);
  auto section = kSections.find(opt.command);
  if (section == kSections.end()) {
    err << "error: unknown command '" << opt.command << "'\n";
    return ValidationFailure;
  }
  if (!opt.manifest) {
    err << "error: " << opt.command << " needs --manifest\n";
    return ValidationFailure;
  }
  std::optional<Manifest> m;
  try {
    m = load_manifest(*opt.manifest);
    Json report;
    if (opt.command == "el") report = run_el(*m);
    if (opt.command == "ostro") report = run_ostro(*m);
    if (opt.command == "schmidt") report = run_schmidt(*m, opt.mode);
    if (opt.command == "dirac") report = run_dirac(*m, opt.mode);
    if (opt.command == "bridge") report = run_bridge(*m, opt.mode);
    if (opt.command == "simulate") report = run_simulate(*m, opt);
    out << report.dump(2) << '\n';
    return Success;
  } catch (const ObstructionError& e) {
    Json report = m ? header(*m, opt.command.c_str()) : Json::object();
    report[section->second] = obstruction_section(e.what(), m ? integrability_witness(*m) : std::nullopt);
    out << report.dump(2) << '\n';
    err << "obstruction: " << e.what() << '\n';
    return Obstruction;
  } catch (const DivisionByZero& e) {
    err << "obstruction: " << e.what() << '\n';
    return Obstruction;
  } catch (const EvaluationError& e) {
    err << "obstruction: " << e.what() << '\n';
    return Obstruction;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ValidationFailure;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed manifest: " << e.what() << '\n';
    return ValidationFailure;
  }
}

}  // namespace hodyn
