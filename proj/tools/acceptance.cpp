// Runs the full verification battery and prints one pass/fail line per
// criterion.  Exit status is the number of failures.

#include <defectchain/criteria.hpp>

#include <cstdio>

int main() {
    auto results = defectchain::run_all_criteria();
    int failures = 0;
    for (const auto& r : results) {
        std::printf("%s  %d  %-45s  %7.3fs  %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.seconds, r.detail.c_str());
        if (!r.pass)
            ++failures;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failures,
                results.size());
    return failures;
}
