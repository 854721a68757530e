// One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

#include "lowdeg/verify.hpp"

#include <cstdio>

int main() {
    int failed = 0;
    for (const auto& spec : lowdeg::invariant_suite()) {
        const auto r = lowdeg::run_check(spec);
        std::printf("%s %2d %s (%.1fs): %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds, r.detail.c_str());
        std::fflush(stdout);
        failed += r.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
