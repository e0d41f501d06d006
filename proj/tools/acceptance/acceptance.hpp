#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace besov_rough::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
    double budget_seconds = 0.0;
};

struct SuiteOptions {
    std::uint64_t seed = 20231017;
    /// Overrides keyed "<criterion name>.<tolerance>", e.g. "heaviside-critical-norm.rel".
    std::map<std::string, double> tolerances;
    /// Criterion ids to run; empty runs all.
    std::vector<int> only;
};

struct CriterionInfo {
    int id;
    std::string name;
    double budget_seconds;
};

const std::vector<CriterionInfo>& primary_criteria();

/// Runs the primary criteria in id order; `on_result` is invoked as each one finishes.
/// A criterion that throws is reported as failed with the exception message.
std::vector<CriterionResult> run_primary_suite(const SuiteOptions& opts,
                                               const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS  #01 heaviside-critical-norm  <detail>  [0.01 s / 1 s]"
std::string format_line(const CriterionResult& r);
nlohmann::json to_json(const std::vector<CriterionResult>& results);

}  // namespace besov_rough::acceptance
