#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace ncairy {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct NamedCheck {
    std::string name;
    std::function<CheckResult(std::uint64_t seed)> run;
};

// The invariant checks of all modules, in a fixed order.
const std::vector<NamedCheck>& verify_checks();

// Runs every check whose name starts with `filter` (all when empty) and
// prints one PASS/FAIL line per check to `report`.
std::vector<CheckResult> run_verify(std::uint64_t seed, std::ostream& report, const std::string& filter = "");

} // namespace ncairy
