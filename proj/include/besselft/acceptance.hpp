#pragma once

// The acceptance suite: one check per criterion, shared by the acceptance test
// binary and the `selftest` command.

#include <string>
#include <vector>

namespace besselft::acceptance {

struct Outcome {
  int id = 0;
  std::string title;
  bool accurate = false;  // every numerical condition held
  std::string detail;     // deterministic summary: counts and worst errors
  double seconds = 0.0;
  double budget_seconds = 0.0;

  bool within_budget() const { return seconds < budget_seconds; }
  bool pass() const { return accurate && within_budget(); }
};

// Criteria that run in-process, in order. The CLI determinism check lives with
// the test binary because it drives the executable.
std::vector<int> in_process_criteria();
double budget_seconds(int id);

Outcome run(int id);

// "criterion N (title): PASS detail" from the numerical verdict only, so the
// line does not depend on timing.
std::string line(const Outcome& o);

}  // namespace besselft::acceptance
