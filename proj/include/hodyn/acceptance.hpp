#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace hodyn {

struct CriterionResult {
  std::string id;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

/// Runs every acceptance criterion against the bundled fixtures.
std::vector<CriterionResult> run_acceptance();

/// One "PASS|FAIL <id> <title> ..." line per criterion; timings make the
/// output run-dependent, so verify leaves them off.
void print_acceptance(std::ostream& os, const std::vector<CriterionResult>& results, bool timings = false);
nlohmann::ordered_json acceptance_json(const std::vector<CriterionResult>& results);

}  // namespace hodyn
