#include <iostream>

#include <CLI11.hpp>

#include "hodyn/commands.hpp"
#include "hodyn/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Higher-order Lagrangian dynamics: Euler-Lagrange, Ostrogradsky, Schmidt, Dirac chains"};
  hodyn::CommandOptions opt;
  std::string manifest, out_dir, mode;
  double dt = 0, T = 0;
  app.add_option("command", opt.command, "el | ostro | schmidt | dirac | bridge | simulate | verify")
      ->required()
      ->check(CLI::IsMember({"el", "ostro", "schmidt", "dirac", "bridge", "simulate", "verify"}));
  app.add_option("--manifest", manifest, "manifest JSON file");
  app.add_option("--out", out_dir, "directory for trajectory CSV files (simulate)");
  auto* dt_opt = app.add_option("--dt", dt, "RK4 step (simulate)")->check(CLI::PositiveNumber);
  auto* T_opt = app.add_option("--T", T, "integration horizon (simulate)")->check(CLI::PositiveNumber);
  app.add_option("--mode", mode, "override the manifest mode")->check(CLI::IsMember({"auto", "even", "odd"}));
  app.add_flag("--json", opt.json, "verify: print results as JSON");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : hodyn::ValidationFailure;
  }
  if (!manifest.empty()) opt.manifest = manifest;
  if (!out_dir.empty()) opt.out_dir = out_dir;
  if (*dt_opt) opt.dt = dt;
  if (*T_opt) opt.T = T;
  if (!mode.empty()) opt.mode = hodyn::parse_mode(mode);
  return hodyn::dispatch(opt, std::cout, std::cerr);
}
