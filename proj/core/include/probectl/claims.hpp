#pragma once

#include <string>
#include <vector>

namespace probectl {

struct ClaimResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

// Verification suite backing the acceptance gate and `report --suite
// paper-claims`. Each check is self-contained and deterministic.
ClaimResult claim_parity_one_step();        // 1
ClaimResult claim_octagon_procedure();      // 2
ClaimResult claim_indicator_recursion();    // 3
ClaimResult claim_composition();            // 4
ClaimResult claim_a5_generation();          // 5
ClaimResult claim_gate_fidelity();          // 6
ClaimResult claim_schedule_exactness();     // 7
ClaimResult claim_decoupling();             // 8
ClaimResult claim_collapse_oracle();        // 9
ClaimResult claim_cost_scaling();           // 10

std::vector<ClaimResult> run_all_claims();

}  // namespace probectl
