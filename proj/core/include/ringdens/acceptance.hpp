#pragma once

#include <string>
#include <vector>

namespace ringdens::acceptance {

struct CriterionResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Run the full verification suite.  Refuses (BudgetError) when
/// budget_minutes is below the declared requirement for a complete run.
std::vector<CriterionResult> run_all(int threads = 1, int budget_minutes = 30);

/// Wall-clock minutes a full run may need on desk hardware.
int required_budget_minutes();

}  // namespace ringdens::acceptance
