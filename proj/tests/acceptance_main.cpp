// Acceptance suite: one line per criterion, nonzero exit if any fails.
//
//  1  phi factorization, odd 3 <= |k|,|l| <= 9, exact
//  2  t identity, m in {-4..-2, 0, 1..4}, exact
//  3  Chebyshev identity suite, |j| <= 50, exact
//  4  diagonal curve splitting, odd 3 <= |l| <= 15, exact
//  5  genus / bidegree / gonality tables, odd 3 <= |k|,|l| <= 15
//  6  singular-point certificates (m in {1..4, -2..-4}) + numeric search |m| <= 3
//  7  degenerate fibers, m in {1, 2, -2, -3}, quotient-ring exact
//  8  Euler / blow-up arithmetic, m in [-6,6] \ {-1, 0}
//  9  birational round trips, 100 rational points per map per m in [-4,4]
// 10  Schwartz-Zippel identity testing at p = 2^61 - 1, 50 trials + fault demo
// 11  smoothness spot checks at tol 1e-7

#include <cstdio>

#include "charvar/verify.hpp"

int main() {
    using namespace charvar;
    VerifyOptions opt;
    opt.suite = "all";
    opt.jmax = 50;
    opt.max_kl = 9;
    opt.seed = 7;
    opt.trials = 50;
    opt.tol = 1e-7;
    opt.prime = default_oracle_prime();

    std::vector<SuiteResult> results = run_verify(opt);
    int failures = 0;
    int criterion = 0;
    for (const auto& r : results) {
        ++criterion;
        std::printf("criterion %2d %-24s %s  (%s, %ld ms)\n", criterion, r.name.c_str(),
                    r.passed ? "PASS" : "FAIL", r.detail.c_str(), r.millis);
        if (!r.passed) ++failures;
    }
    std::printf("acceptance: %d/%d criteria passed\n", criterion - failures, criterion);
    return failures == 0 ? 0 : 1;
}
