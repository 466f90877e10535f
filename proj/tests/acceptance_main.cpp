// Runs the reproduction battery and prints one pass/fail line per criterion.
#include <cstdio>
#include <iostream>

#include "pharmonic/repro.hpp"

int main() {
    using namespace pharmonic;
    const auto results = run_acceptance(
        {}, [](const CriterionResult& r) { std::cout << format_result_line(r) << std::endl; });
    const bool ok = all_passed(results);
    std::cout << (ok ? "acceptance: all criteria passed" : "acceptance: FAILURES present") << std::endl;
    return ok ? 0 : 1;
}
