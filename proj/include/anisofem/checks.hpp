#pragma once

#include <string>
#include <vector>

namespace anisofem {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Invariant suite behind `anisofem check`. Deterministic (fixed seeds).
std::vector<CheckResult> run_property_checks();

}  // namespace anisofem
