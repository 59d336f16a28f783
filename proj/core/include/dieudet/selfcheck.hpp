#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dieudet::checks {

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail; // counts, mismatched values, ...
};

// The fixed worked examples; all expected values are frozen constants.
std::vector<CheckResult> run_paper_checks();

// Seeded property suites; `cases` scales the sample counts.
std::vector<CheckResult> run_property_checks(int cases, std::uint64_t seed);

// Stable fingerprint of a result list (names, outcomes, details), used to
// assert determinism across runs.
std::uint64_t fingerprint(const std::vector<CheckResult>& results);

} // namespace dieudet::checks
