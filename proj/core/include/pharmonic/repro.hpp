#pragma once

#include <functional>
#include <string>
#include <vector>

namespace pharmonic {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct ReproOptions {
    /// Multiplies every solver gradient tolerance; > 1 corrupts the solves.
    /// Exists so the failure path of the battery can be exercised on purpose.
    double solver_tol_factor = 1.0;
    /// Base seed for every randomized criterion; results are byte-stable.
    std::uint64_t seed = 20240507;
};

/// Runs the full reproduction battery (12 criteria) with pinned seeds and
/// tolerances. The callback, when given, fires after each criterion.
std::vector<CriterionResult> run_acceptance(const ReproOptions& opts = {},
                                            const std::function<void(const CriterionResult&)>& on_result = {});

bool all_passed(const std::vector<CriterionResult>& results);
std::string format_result_line(const CriterionResult& r);

} // namespace pharmonic
