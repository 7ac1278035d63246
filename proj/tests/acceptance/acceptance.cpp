// Full-scale acceptance run: one PASS/FAIL line per criterion, exit status 1
// if any fails. Criteria with a runtime target fail when they overrun it.

#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mediumband/validation.hpp"

using namespace mediumband;

int main()
{
    ValidationOptions opts;
    const std::vector<std::function<CheckResult(const ValidationOptions&)>> checks{
        check_closed_form_vs_oracle, check_power_identity,   check_autocorr_identity,
        check_error_variance_optimality, check_orthogonality, check_narrowband_limit,
        check_delay_spread_sweep,     check_n_sweep,          check_parallel_determinism,
    };
    const std::map<std::string, double> time_limit{{"AC1", 300.0}, {"AC7", 600.0}};

    int failed = 0;
    for (const auto& check : checks) {
        CheckResult r = check(opts);
        std::string budget;
        if (auto it = time_limit.find(r.id); it != time_limit.end()) {
            budget = " (limit " + std::to_string(static_cast<int>(it->second)) + " s)";
            if (r.seconds >= it->second)
                r.passed = false;
        }
        failed += r.passed ? 0 : 1;
        std::printf("%s  %s  %s  [%.1f s%s]\n", r.passed ? "PASS" : "FAIL", r.id.c_str(), r.title.c_str(),
                    r.seconds, budget.c_str());
        std::printf("      %s\n", r.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu criteria, %d failed\n", checks.size(), failed);
    return failed == 0 ? 0 : 1;
}
