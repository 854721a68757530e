#pragma once

// Small Monte Carlo helpers: running moments, binomial errors, two-sample KS,
// 2x2 chi-square independence.

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace lowdeg {

struct RunningMoments {
    long count = 0;
    double mean = 0, m2 = 0;
    void add(double x) {
        ++count;
        double d = x - mean;
        mean += d / count;
        m2 += d * (x - mean);
    }
    double variance() const { return count > 1 ? m2 / (count - 1) : 0.0; }
    double stderr_of_mean() const { return count > 0 ? std::sqrt(variance() / count) : 0.0; }
};

inline double binomial_se(double p, double trials) { return std::sqrt(p * (1 - p) / trials); }

// |observed - expected| <= z binomial standard errors (with expected as the null rate).
inline bool within_binomial(double observed, double expected, double trials, double z = 3.0) {
    return std::abs(observed - expected) <= z * binomial_se(expected, trials) + 1e-15;
}

// Kolmogorov survival function Q(x) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 x^2).
inline double kolmogorov_survival(double x) {
    if (x <= 0) return 1.0;
    if (x < 0.2) return 1.0;
    double sum = 0;
    for (int j = 1; j <= 100; ++j) {
        double term = std::exp(-2.0 * j * j * x * x);
        sum += (j % 2 ? 1 : -1) * term;
        if (term < 1e-17) break;
    }
    return std::clamp(2 * sum, 0.0, 1.0);
}

struct KsResult {
    double statistic = 0;
    double p_value = 1;
};

// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value
// (Stephens' small-sample correction on the effective size).
inline KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0;
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    return {d, kolmogorov_survival((ne + 0.12 + 0.11 / ne) * d)};
}

struct ChiSquareResult {
    double statistic = 0;
    double p_value = 1;
};

// Pearson chi-square test of independence for a 2x2 table counts[row][col].
inline ChiSquareResult chi_square_2x2(const double counts[2][2]) {
    const double total = counts[0][0] + counts[0][1] + counts[1][0] + counts[1][1];
    if (total <= 0) throw std::invalid_argument("chi_square_2x2: empty table");
    double stat = 0;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            double expected = (counts[r][0] + counts[r][1]) * (counts[0][c] + counts[1][c]) / total;
            if (expected > 0) stat += (counts[r][c] - expected) * (counts[r][c] - expected) / expected;
        }
    boost::math::chi_squared dist(1.0);
    return {stat, boost::math::cdf(boost::math::complement(dist, stat))};
}

}  // namespace lowdeg
