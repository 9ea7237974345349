// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.

#include <cstdio>

#include "probectl/claims.hpp"

int main() {
  bool all = true;
  for (const probectl::ClaimResult& r : probectl::run_all_claims()) {
    std::printf("[%s] criterion %2d: %s%s%s\n", r.passed ? "PASS" : "FAIL",
                r.id, r.name.c_str(), r.passed ? "" : " -- ",
                r.passed ? "" : r.detail.c_str());
    all = all && r.passed;
  }
  return all ? 0 : 1;
}
