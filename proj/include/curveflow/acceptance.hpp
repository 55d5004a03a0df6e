#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace curveflow {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

inline constexpr int kCriterionCount = 12;

std::string criterion_name(int id);
CriterionResult run_criterion(int id);

// Runs the given criteria in order, printing one line per result to `out`.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, std::ostream& out);

std::string format_result(const CriterionResult& r);

} // namespace curveflow
