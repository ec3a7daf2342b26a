#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace su11::validate {

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Runs the release-gate checks: closed-form regressions, Fock-oracle
/// equivalence, derivative validation, qualitative loop/loss/sensitivity
/// behavior, and the determinism/performance contract. Prints one PASS/FAIL
/// line per check.
std::vector<CheckResult> run_all(std::ostream& os);

/// Runs a single check by id (1..10).
CheckResult run_one(int id, std::ostream& os);

/// True when every check passed.
bool all_passed(const std::vector<CheckResult>& results);

}  // namespace su11::validate
