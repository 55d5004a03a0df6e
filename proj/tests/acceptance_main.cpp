// Runs every acceptance criterion (or the ids given on the command line) and
// prints one PASS/FAIL line each. Exit status is nonzero if any failed.
#include <cstdlib>
#include <iostream>
#include <numeric>
#include <vector>

#include "curveflow/acceptance.hpp"

int main(int argc, char** argv) {
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
    if (ids.empty()) {
        ids.resize(curveflow::kCriterionCount);
        std::iota(ids.begin(), ids.end(), 1);
    }
    const auto results = curveflow::run_acceptance(ids, std::cout);
    int failed = 0;
    for (const auto& r : results) failed += !r.passed;
    std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
