#pragma once

#include "lowdeg/numeric/rational.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace lowdeg {

// r_1..r_max_n: unlabeled rooted trees via the Euler transform
//   r_{n+1} = (1/n) sum_{k=1..n} (sum_{d|k} d r_d) r_{n-k+1}.
inline std::vector<BigInt> rooted_tree_counts(int max_n) {
    if (max_n < 0 || max_n > 200) throw std::invalid_argument("rooted_tree_counts: max_n out of range");
    std::vector<BigInt> r(static_cast<std::size_t>(max_n) + 1, 0);
    if (max_n >= 1) r[1] = 1;
    std::vector<BigInt> divsum(static_cast<std::size_t>(max_n) + 1, 0);
    for (int n = 1; n < max_n; ++n) {
        BigInt s = 0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) s += BigInt(d) * r[static_cast<std::size_t>(d)];
        divsum[static_cast<std::size_t>(n)] = s;
        BigInt acc = 0;
        for (int k = 1; k <= n; ++k) acc += divsum[static_cast<std::size_t>(k)] * r[static_cast<std::size_t>(n - k + 1)];
        r[static_cast<std::size_t>(n) + 1] = acc / n;
    }
    return {r.begin() + 1, r.end()};
}

struct OtterEstimate {
    double alpha = 0;
    bool converged = false;
    int terms = 0;
};

// Estimate of alpha = lim r_n / r_{n+1}. Ratios are first corrected by the
// (n/(n+1))^{3/2} factor of the r_n ~ C alpha^{-n} n^{-3/2} asymptotics and then
// Aitken-accelerated; with fewer than three ratios the raw last ratio is returned.
inline OtterEstimate otter_constant_estimate(int max_n) {
    if (max_n < 1) throw std::invalid_argument("otter_constant_estimate: max_n >= 1 required");
    auto r = rooted_tree_counts(max_n + 1);
    std::vector<double> raw, corrected;
    for (int j = 1; j <= max_n; ++j) {
        double ratio = to_double(Rational(r[static_cast<std::size_t>(j - 1)], r[static_cast<std::size_t>(j)]));
        raw.push_back(ratio);
        corrected.push_back(ratio * std::pow(static_cast<double>(j) / (j + 1), 1.5));
    }
    OtterEstimate est;
    est.terms = max_n;
    if (max_n < 8) {
        est.alpha = raw.back();
        est.converged = false;
        return est;
    }
    auto aitken = [&](std::size_t end) {
        double a0 = corrected[end - 3], a1 = corrected[end - 2], a2 = corrected[end - 1];
        double denom = (a2 - a1) - (a1 - a0);
        return denom == 0 ? a2 : a2 - (a2 - a1) * (a2 - a1) / denom;
    };
    est.alpha = aitken(corrected.size());
    double previous = aitken(corrected.size() - 1);
    est.converged = std::abs(est.alpha - previous) < 1e-4;
    return est;
}

}  // namespace lowdeg
