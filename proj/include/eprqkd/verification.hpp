#pragma once

#include <string>
#include <vector>

namespace eprqkd {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;  // first failure, or a one-line summary when passing
};

// The nine release criteria, fixed seeds, fixed tolerances. Each entry
// prints as a single verdict line.
std::vector<CriterionResult> run_verification_suite();

// Robustness variant: re-runs the sampled checks over seeds 0..99 and
// requires at least 99 passes per check.
std::vector<CriterionResult> run_seed_sweep();

bool all_passed(const std::vector<CriterionResult>& results);

// One verdict line per criterion, e.g. "PASS  encoding_algebra  ...".
void print_results(const std::vector<CriterionResult>& results,
                   std::ostream& out);

}  // namespace eprqkd
