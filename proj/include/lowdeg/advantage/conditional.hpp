#pragma once

// Advantage of the correlated pair law conditioned on pi*(i) = j. Small n
// conditions the enumerated joint law; the grouped route uses
// E[phi_{S1,S2} | pi] = rho^{|S1|} 1{pi(S1) = S2} and averages over the
// permutations that satisfy the condition, which reaches n = 5.

#include "lowdeg/advantage/advantage.hpp"
#include "lowdeg/basis/model_measures.hpp"

#include <bit>
#include <stdexcept>
#include <vector>

namespace lowdeg {

inline ExactMeasure condition_on_permutation(const ExactMeasure& joint, int n, int i, int j) {
    if (i < 0 || j < 0 || i >= n || j >= n) throw std::out_of_range("condition vertex out of range");
    const auto perms = all_permutations(n);
    return joint.condition([&](const Atom<Rational>& a) {
        return perms.at(a.hidden)[static_cast<std::size_t>(i)] == j;
    });
}

namespace detail {

// Image of an edge mask of K_n under a vertex permutation.
inline EdgeMask permute_edges(const EdgeSpace& sp, EdgeMask s, const std::vector<int>& perm) {
    EdgeMask out = 0;
    for (EdgeMask r = s; r; r &= r - 1) {
        const Edge& e = sp.edge(std::countr_zero(r));
        out |= EdgeMask{1} << sp.index(perm[static_cast<std::size_t>(e.u)], perm[static_cast<std::size_t>(e.v)]);
    }
    return out;
}

inline std::vector<std::vector<int>> permutations_fixing(int n, int i, int j) {
    std::vector<std::vector<int>> out;
    for (auto& p : all_permutations(n))
        if (p[static_cast<std::size_t>(i)] == j) out.push_back(std::move(p));
    return out;
}

inline Rational grouped_moment(const EdgeSpace& sp, const std::vector<std::vector<int>>& perms, const Rational& rho,
                               EdgeMask s1, EdgeMask s2) {
    if (std::popcount(s1) != std::popcount(s2)) return 0;
    long hits = 0;
    for (const auto& p : perms)
        if (permute_edges(sp, s1, p) == s2) ++hits;
    if (hits == 0) return 0;
    return rational_pow(rho, std::popcount(s1)) * Rational(hits, static_cast<long>(perms.size()));
}

}  // namespace detail

// E[phi_{S1,S2} | pi*(i) = j] for the normalized pair basis.
inline Rational grouped_conditional_moment(const ModelParams& m, EdgeMask s1, EdgeMask s2, int i, int j) {
    EdgeSpace sp(m.n);
    return detail::grouped_moment(sp, detail::permutations_fixing(m.n, i, j), m.rho, s1, s2);
}

// Product-basis advantage from the grouped moments; n <= 5.
inline AdvantageReport grouped_conditional_advantage(const ModelParams& m, int D, int i, int j) {
    if (m.n > 5) throw std::length_error("conditional advantage limited to n <= 5");
    if (i < 0 || j < 0 || i >= m.n || j >= m.n) throw std::out_of_range("condition vertex out of range");
    EdgeSpace sp(m.n);
    const int e = sp.size();
    D = detail::clip_degree(D, 2 * e);
    const auto perms = detail::permutations_fixing(m.n, i, j);
    const EdgeMask low = (EdgeMask{1} << e) - 1;
    Rational total = 0;
    std::vector<Contribution> contrib;
    for (EdgeMask mask : monomials_up_to(2 * e, D)) {
        const Rational mu = detail::grouped_moment(sp, perms, m.rho, mask & low, mask >> e);
        if (mu == 0) continue;
        const Rational c = mu * mu;
        total += c;
        if (mask != 0) contrib.push_back({mask, lowdeg::to_double(c), c});
    }
    auto r = detail::exact_report(D, AdvantageMethod::product_basis, total);
    r.contributions = std::move(contrib);
    return r;
}

// Advantage of p_star(. | pi*(i) = j) against q from an enumerated joint law.
inline AdvantageReport conditional_advantage(const ExactMeasure& p_star, const ExactMeasure& q, int n, int D, int i, int j,
                                             AdvantageMethod method = AdvantageMethod::product_basis) {
    const ExactMeasure cond = condition_on_permutation(p_star, n, i, j).marginal();
    if (method == AdvantageMethod::gram_schmidt)
        return advantage_gram_schmidt(cond.convert<double>(), q.convert<double>(), D);
    return advantage(cond, q, D, method);
}

// Enumerates the joint law for n <= 4 and falls back to grouped moments at n = 5.
inline AdvantageReport conditional_advantage(const ModelParams& m, int D, int i, int j,
                                             AdvantageMethod method = AdvantageMethod::product_basis) {
    if (m.n == 5) {
        if (method != AdvantageMethod::product_basis)
            throw std::invalid_argument("n = 5 conditional advantage is only available through the product basis");
        return grouped_conditional_advantage(m, D, i, j);
    }
    if (m.n > 5) throw std::length_error("conditional advantage limited to n <= 5");
    return conditional_advantage(correlated_er_measure(m), independent_pair_measure(m.n, m.q), m.n, D, i, j, method);
}

// Largest |grouped - direct| over pair-basis means of degree <= D, the direct
// side computed on the conditioned enumerated law. Zero when the grouping holds.
inline Rational grouped_decomposition_defect(const ModelParams& m, int D, int i, int j) {
    if (m.n > 4) throw std::length_error("direct conditional moments need n <= 4");
    EdgeSpace sp(m.n);
    const int e = sp.size();
    const ExactMeasure cond = condition_on_permutation(correlated_er_measure(m), m.n, i, j);
    const auto masks = monomials_up_to(2 * e, detail::clip_degree(D, 2 * e));
    CenteredMoments mom(cond, std::vector<Rational>(static_cast<std::size_t>(2 * e), m.q));
    const auto means = mom.means(masks);
    const auto perms = detail::permutations_fixing(m.n, i, j);
    const EdgeMask low = (EdgeMask{1} << e) - 1;
    Rational worst = 0;
    for (std::size_t f = 0; f < masks.size(); ++f) {
        const Rational direct_sq = means[f] * means[f] / mom.product_variance(masks[f]);
        const Rational g = detail::grouped_moment(sp, perms, m.rho, masks[f] & low, masks[f] >> e);
        // signs must agree too
        Rational defect = abs(direct_sq - g * g);
        if ((means[f] > 0) != (g > 0) && (means[f] != 0 || g != 0)) defect += 1;
        worst = std::max(worst, defect);
    }
    return worst;
}

}  // namespace lowdeg
