#pragma once

// Hidden informative sample: M independent null factors, one of which (at a
// uniform position kappa) is replaced by the planted factor.

#include "lowdeg/advantage/advantage.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace lowdeg {

// min{n, ceil(eps^{-1/2})}
inline int hidden_block_count(int n, double eps) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (!(eps > 0)) return n;
    return std::min(n, static_cast<int>(std::ceil(1 / std::sqrt(eps) - 1e-12)));
}

struct HiddenSampleProblem {
    ExactMeasure base_null, base_alt;
    int M = 1;
    ExactMeasure null, alt;  // factor t occupies bits [t*w, (t+1)*w)
};

inline HiddenSampleProblem build_hidden_sample(const ExactMeasure& base_null, const ExactMeasure& base_alt, int M) {
    if (M < 1) throw std::invalid_argument("M must be at least 1");
    if (base_null.width() != base_alt.width()) throw std::invalid_argument("base measures of different width");
    if (static_cast<long>(M) * base_null.width() > kMaxMeasureWidth)
        throw std::length_error("composite sample too wide to enumerate");
    HiddenSampleProblem pr{base_null.marginal(), base_alt.marginal(), M, {}, {}};
    std::vector<ExactMeasure> parts;
    for (int kappa = 0; kappa < M; ++kappa) {
        ExactMeasure acc = kappa == 0 ? pr.base_alt : pr.base_null;
        for (int t = 1; t < M; ++t) acc = product(acc, t == kappa ? pr.base_alt : pr.base_null);
        parts.push_back(std::move(acc));
    }
    ExactMeasure null = pr.base_null;
    for (int t = 1; t < M; ++t) null = product(null, pr.base_null);
    pr.null = std::move(null);
    pr.alt = ExactMeasure::mixture(parts, std::vector<Rational>(static_cast<std::size_t>(M), Rational(1, M)));
    return pr;
}

// (1/M) sum_t dP'/dQ'(y_t); throws when some factor has P' mass on a Q'-null outcome.
inline Rational hidden_likelihood_ratio(const HiddenSampleProblem& pr, std::uint64_t outcome) {
    const int w = pr.base_null.width();
    const std::uint64_t field = w == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << w) - 1;
    Rational total = 0;
    for (int t = 0; t < pr.M; ++t) {
        const std::uint64_t y = (outcome >> (t * w)) & field;
        const Rational q = pr.base_null.probability_of(y), p = pr.base_alt.probability_of(y);
        if (q == 0) {
            if (p != 0) throw std::domain_error("likelihood ratio undefined: alt mass on a null-zero outcome");
            continue;
        }
        total += p / q;
    }
    return total / pr.M;
}

// Exact advantage of the composite pair at degree D; uses the product basis
// when the composite null is a product law and the Rayleigh route otherwise.
inline AdvantageReport hidden_sample_advantage(const HiddenSampleProblem& pr, int D) {
    if (is_product_measure(pr.null)) {
        const auto centers = coordinate_means(pr.null);
        if (std::none_of(centers.begin(), centers.end(), [](const Rational& c) { return c == 0 || c == 1; }))
            return advantage_product_basis(pr.alt, pr.null, D);
    }
    return advantage_rayleigh(pr.alt, pr.null, D);
}

}  // namespace lowdeg
