#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// The end-to-end acceptance suite: ten fixed checks, each pinning one
// headline numerical claim of the library to a frozen fixture, budget, seed,
// and tolerance.  Budgets are sized for a single core; the whole suite is a
// few minutes of compute.

namespace graphon {

struct CriterionResult {
  int index = 0;          // 1-based position in the suite
  std::string name;
  bool passed = false;
  std::string detail;     // measured values and the bound they were held to
};

// Runs every criterion (exceptions are caught and recorded as failures),
// streaming one "PASS"/"FAIL" line per criterion to `progress` as results
// arrive.  threads = 0 defers to GRAPHON_THREADS, then the hardware.
std::vector<CriterionResult> run_acceptance(int threads, std::ostream& progress);

}  // namespace graphon
