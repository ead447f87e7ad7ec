#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vrm::harness {

struct AcceptanceOptions {
  double oracle_tol = 1e-10;
  int workers = 1;
};

struct CriterionResult {
  int number = 0;
  std::string title;
  bool pass = false;
  std::vector<std::string> details;
};

constexpr int acceptance_count = 9;

/// Runs criterion `number` (1..9). Throws Error for other numbers.
CriterionResult run_criterion(int number, const AcceptanceOptions& opts = {});

/// All criteria in order; default sweeps are shared between criteria 8 and 9.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

/// "criterion N: PASS|FAIL  title" followed by indented detail lines.
void print_criterion(std::ostream& os, const CriterionResult& result, bool verbose = true);

}  // namespace vrm::harness
