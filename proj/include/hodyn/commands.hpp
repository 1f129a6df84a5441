#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "hodyn/manifest.hpp"

namespace hodyn {

enum ExitCode : int { Success = 0, ValidationFailure = 2, Obstruction = 3, AcceptanceFailure = 4 };

struct CommandOptions {
  std::string command;  // el | ostro | schmidt | dirac | bridge | simulate | verify
  std::optional<std::filesystem::path> manifest;
  std::optional<std::filesystem::path> out_dir;  // CSV destination for simulate
  std::optional<double> dt, T;
  std::optional<Mode> mode;  // overrides the manifest's mode
  bool json = false;         // verify: emit results as JSON instead of text lines
};

/// Runs one command; the report goes to out, diagnostics to err.
int dispatch(const CommandOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace hodyn
