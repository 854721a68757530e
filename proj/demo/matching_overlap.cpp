// Overlap of the degree-profile greedy matcher and the power of the oracle edge-agreement
// test on correlated Erdos-Renyi pairs, for correlations around sqrt(alpha) ~ 0.58.

#include "lowdeg/reduction/reduction.hpp"
#include "lowdeg/stats.hpp"

#include <cmath>
#include <cstdio>

using namespace lowdeg;

int main() {
    const int n = 200, trials = 40;
    const Rational q(3, 100);
    std::printf("sqrt(alpha) = %.4f\n", std::sqrt(kOtterAlpha));
    std::printf("%6s %14s %14s %16s\n", "rho", "greedy overlap", "oracle reject", "null accept");
    for (const Rational& rho : {Rational(3, 10), Rational(1, 2), Rational(3, 5), Rational(7, 10), Rational(9, 10)}) {
        const auto m = ModelParams::correlated_er_qrho(n, q, rho);
        const auto sampler = correlated_er_sampler(m);
        Rng rng = stream(1, static_cast<std::uint64_t>(to_double(rho) * 100));
        RunningMoments ov;
        for (int t = 0; t < trials; ++t) {
            const auto s = sampler(rng);
            ov.add(to_double(overlap(greedy_estimator(s.a, s.b), s.pi)));
        }
        const double threshold = to_double(q) + 0.5 * to_double(rho) * (1 - to_double(q));
        const auto test = one_sided_test(oracle_edge_agreement, threshold, sampler, independent_er_sampler(n, to_double(q)),
                                         trials, 7, {}, 4);
        std::printf("%6.2f %14.4f %14.3f %16.3f\n", to_double(rho), ov.mean, test.p_reject_rate, test.q_accept_rate);
    }
}
