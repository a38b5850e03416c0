#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qbell {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    /// Worst deviation or the list of failing points.
    std::string detail;
};

inline constexpr int kAcceptanceCriteria = 12;

/// Runs one acceptance criterion (1..12). Randomized criteria draw from Rng(seed ^ id). Throws
/// ValidationError for an unknown id.
CriterionResult run_criterion(int id, std::uint64_t seed = 0);

/// All criteria in order.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 0);

}  // namespace qbell
