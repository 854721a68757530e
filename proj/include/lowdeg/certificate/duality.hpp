#pragma once

// Checks around the dual certificate for the reversed SBM advantage
// sup_f E_Q[f] / sqrt(E_P[f^2]): the linear system M u = c row by row, the
// exact reversed advantage on enumerable instances, and Bessel's inequality
// E_P[f^2] >= ||f^ M||^2 behind the duality bound.

#include "lowdeg/advantage/advantage.hpp"
#include "lowdeg/basis/model_measures.hpp"
#include "lowdeg/certificate/xi.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace lowdeg {

struct LinearSystemReport {
    long rows = 0;
    double max_residual = 0;
    bool exact_zero = true;  // every residual compared equal to 0 exactly (exact scalars only)
    std::string worst_row;
};

// For each S in K_n with |E(S)| <= D evaluates
//   sum_sigma sum_{H subset S} u_{sigma,H} M_{S;(sigma,H)} - 1{S empty}
// with M from the closed-form cross moment under the table's step convention.
template <class T>
LinearSystemReport verify_linear_system(XiTable<T>& table, int D) {
    const ModelParams& m = table.params();
    if (m.n > 6 || D > 3) throw std::length_error("verify_linear_system: limited to n <= 6 and D <= 3");
    if (D > table.degree()) throw std::invalid_argument("verify_linear_system: table degree below D");
    EdgeSpace sp(m.n);
    const std::uint32_t labels = label_count(m.n, m.k);
    const T u_scale = half_power<T>(Rational(m.k), -m.n);
    LinearSystemReport rep;
    for (EdgeMask smask : submasks_up_to(sp.full(), D)) {
        const LabeledGraph s = sp.graph(smask);
        std::vector<std::pair<LabeledGraph, T>> terms;  // H with Xi(H) != 0
        for (EdgeMask hmask : submasks_up_to(smask, D)) {
            LabeledGraph h = sp.graph(hmask);
            T xi = table(h);
            if (!is_zero(xi)) terms.emplace_back(std::move(h), u_scale * xi);
        }
        T total = T(0);
        for (std::uint32_t li = 0; li < labels; ++li) {
            const auto sigma = decode_labels(li, m.n, m.k);
            for (const auto& [h, u] : terms) total = total + u * cross_moment_planted<T>(m, s, sigma, h, table.convention());
        }
        if (smask == 0) total = total - T(1);
        ++rep.rows;
        const double r = std::abs(as_double(total));
        if constexpr (is_exact_v<T>) {
            if (!is_zero(total)) rep.exact_zero = false;
        } else {
            rep.exact_zero = false;
        }
        if (rep.rows == 1 || r > rep.max_residual) {
            rep.max_residual = r;
            rep.worst_row = s.str();
        }
    }
    return rep;
}

// Exact sup over degree <= D polynomials in G of E_Q[f]/sqrt(E_P[f^2]) with Q = ER(lambda/n)
// and P the SBM: value^2 = (A^+)_{00} for the Gram matrix A of centered monomials under P.
inline AdvantageReport reversed_advantage_exact(const ModelParams& m, int D) {
    if (m.n > 5) throw std::length_error("reversed_advantage_exact: enumeration limited to n <= 5");
    EdgeSpace sp(m.n);
    const ExactMeasure p = sbm_joint_measure(m).marginal();
    const int deg = detail::clip_degree(D, sp.size());
    const auto masks = monomials_up_to(sp.size(), deg);
    const auto gram = CenteredMoments(p, std::vector<Rational>(static_cast<std::size_t>(sp.size()), m.lambda / m.n)).gram(masks);
    std::vector<Rational> c(masks.size(), Rational(0));
    c[0] = 1;  // E_Q of a centered monomial vanishes unless it is constant
    auto value = detail::psd_quadratic<Rational>(gram, c);
    AdvantageReport r;
    r.degree = deg;
    r.method = AdvantageMethod::rayleigh;
    if (!value) {
        r.unbounded = true;
        return r;
    }
    r.exact_squared = *value;
    r.squared = lowdeg::to_double(*value);
    return r;
}

struct DualityGap {
    Rational exact_squared;
    double exact = 0;
    double dual_norm = 0;          // certificate built with the exact cross moment
    double dual_norm_leading = 0;  // certificate built with the leading step
    bool holds = false;            // exact <= dual_norm + 1e-9
};

inline DualityGap duality_gap(const ModelParams& m, int D) {
    DualityGap g;
    const auto rev = reversed_advantage_exact(m, D);
    if (rev.unbounded) throw std::domain_error("reversed advantage unbounded");
    g.exact_squared = *rev.exact_squared;
    g.exact = rev.value();
    g.dual_norm = build_dual<Surd>(m, D, StepConvention::exact).norm();
    g.dual_norm_leading = build_dual<Surd>(m, D, StepConvention::leading).norm();
    g.holds = g.exact <= g.dual_norm + 1e-9;
    return g;
}

struct ParsevalCheck {
    Rational second_moment;  // E_P[g^2]
    Rational projected;      // sum over (sigma, H) of E_P[g psi_{sigma,H}]^2
};

// g = sum_S coeff[S] prod_{e in S} (G_e - lambda/n). The planted basis is taken
// over H with |E(H)| <= max_h; with every H included the two sides agree.
inline ParsevalCheck parseval_check(const ModelParams& m, const std::map<EdgeMask, Rational>& coeff, int max_h) {
    EdgeSpace sp(m.n);
    const ExactMeasure joint = sbm_joint_measure(m);
    const Rational center = m.lambda / m.n;
    auto g_of = [&](std::uint64_t bits) {
        Rational v = 0;
        for (const auto& [s, c] : coeff) {
            Rational prod = c;
            for (EdgeMask r = s; r; r &= r - 1)
                prod *= ((bits >> std::countr_zero(r)) & 1U ? 1 : 0) - center;
            v += prod;
        }
        return v;
    };
    ParsevalCheck out;
    std::map<std::uint64_t, Rational> gval;
    for (const auto& a : joint.atoms()) {
        auto [it, fresh] = gval.try_emplace(a.bits);
        if (fresh) it->second = g_of(a.bits);
        out.second_moment += a.weight * it->second * it->second;
    }
    const Rational kn = rational_pow(Rational(m.k), m.n);
    const std::uint32_t labels = label_count(m.n, m.k);
    for (std::uint32_t li = 0; li < labels; ++li) {
        const auto sigma = decode_labels(li, m.n, m.k);
        std::vector<Rational> pe(static_cast<std::size_t>(sp.size()));
        for (int e = 0; e < sp.size(); ++e)
            pe[static_cast<std::size_t>(e)] = m.sbm_prob(sigma[static_cast<std::size_t>(sp.edge(e).u)], sigma[static_cast<std::size_t>(sp.edge(e).v)]);
        for (EdgeMask h : submasks_up_to(sp.full(), max_h)) {
            // psi = k^{n/2} 1{sigma* = sigma} prod_H (G_e - p_e) / sqrt(p_e (1 - p_e))
            Rational raw = 0, var = 1;
            for (EdgeMask r = h; r; r &= r - 1) {
                const Rational& p = pe[static_cast<std::size_t>(std::countr_zero(r))];
                var *= p * (1 - p);
            }
            if (var == 0) continue;
            for (const auto& a : joint.atoms()) {
                if (a.hidden != li) continue;
                Rational prod = a.weight * gval[a.bits];
                for (EdgeMask r = h; r && prod != 0; r &= r - 1) {
                    const int e = std::countr_zero(r);
                    prod *= ((a.bits >> e) & 1U ? 1 : 0) - pe[static_cast<std::size_t>(e)];
                }
                raw += prod;
            }
            out.projected += kn * raw * raw / var;
        }
    }
    return out;
}

}  // namespace lowdeg
