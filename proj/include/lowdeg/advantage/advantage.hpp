#pragma once

// Low-degree advantage sup_{deg f <= D} E_p[f] / sqrt(E_q[f^2]) by three
// routes: the product basis (q an independent-coordinate law), Gram-Schmidt
// over monomials, and the Rayleigh quotient c^T A^+ c on the Gram matrix.
// Degree counts all coordinates of an outcome (|E1| + |E2| for pairs).

#include "lowdeg/basis/basis.hpp"
#include "lowdeg/basis/measure.hpp"
#include "lowdeg/basis/moments.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lowdeg {

enum class AdvantageMethod { product_basis, gram_schmidt, rayleigh };

inline const char* to_string(AdvantageMethod m) {
    switch (m) {
        case AdvantageMethod::product_basis: return "product_basis";
        case AdvantageMethod::gram_schmidt: return "gram_schmidt";
        default: return "rayleigh";
    }
}

inline AdvantageMethod parse_method(const std::string& s) {
    if (s == "product_basis" || s == "product") return AdvantageMethod::product_basis;
    if (s == "gram_schmidt" || s == "gs") return AdvantageMethod::gram_schmidt;
    if (s == "rayleigh") return AdvantageMethod::rayleigh;
    throw std::invalid_argument("unknown method '" + s + "'");
}

struct Contribution {
    EdgeMask index = 0;  // monomial coordinates (the feature that introduced the direction)
    double value = 0;
    std::optional<Rational> exact;
};

struct AdvantageReport {
    int degree = 0;
    AdvantageMethod method = AdvantageMethod::product_basis;
    bool unbounded = false;
    double squared = 1;
    std::optional<Rational> exact_squared;
    std::vector<Contribution> contributions;  // nonconstant directions with nonzero projection

    double value() const { return unbounded ? std::numeric_limits<double>::infinity() : std::sqrt(squared); }
};

namespace detail {

inline AdvantageReport exact_report(int D, AdvantageMethod method, const Rational& total) {
    AdvantageReport r;
    r.degree = D;
    r.method = method;
    r.exact_squared = total;
    r.squared = lowdeg::to_double(total);
    return r;
}

inline int clip_degree(int D, int width) {
    if (D < 0) throw std::invalid_argument("degree must be non-negative");
    return std::min(D, width);
}

template <class T>
bool is_null(const T& x, double tol) {
    if constexpr (std::is_floating_point_v<T>) return std::abs(x) <= tol;
    else return x == 0;
}

// c^T A^+ c for PSD A by symmetric elimination; nullopt when c leaves the range of A.
template <class T>
std::optional<T> psd_quadratic(std::vector<std::vector<T>> a, std::vector<T> c, double tol = 0) {
    const std::size_t F = c.size();
    double scale = 0;
    if constexpr (std::is_floating_point_v<T>)
        for (std::size_t i = 0; i < F; ++i) scale = std::max(scale, std::abs(a[i][i]));
    const double pivot_tol = tol * std::max(scale, 1.0);
    T total = T(0);
    for (std::size_t i = 0; i < F; ++i) {
        const T pivot = a[i][i];
        if (is_null(pivot, pivot_tol)) {
            if (!is_null(c[i], std::sqrt(pivot_tol) + tol)) return std::nullopt;
            continue;
        }
        total += c[i] * c[i] / pivot;
        std::vector<std::size_t> nz;
        for (std::size_t l = i + 1; l < F; ++l)
            if (!(a[i][l] == T(0))) nz.push_back(l);
        for (std::size_t j : nz) {
            const T f = a[j][i] / pivot;
            c[j] -= f * c[i];
            for (std::size_t l : nz) a[j][l] -= f * a[i][l];
        }
    }
    return total;
}

}  // namespace detail

// q must be the product of its coordinate marginals, each strictly inside (0,1).
inline AdvantageReport advantage_product_basis(const ExactMeasure& p, const ExactMeasure& q, int D) {
    if (p.width() != q.width()) throw std::invalid_argument("advantage: measures of different width");
    if (!is_product_measure(q)) throw std::invalid_argument("product_basis needs an independent-coordinate null; use gram_schmidt");
    const auto centers = coordinate_means(q);
    for (const auto& c : centers)
        if (c == 0 || c == 1) throw std::invalid_argument("product_basis: degenerate null coordinate");
    D = detail::clip_degree(D, p.width());
    const auto masks = monomials_up_to(p.width(), D);
    CenteredMoments mom(p, centers);
    const auto means = mom.means(masks);
    Rational total = 0;
    std::vector<Contribution> contrib;
    for (std::size_t i = 0; i < masks.size(); ++i) {
        if (means[i] == 0) continue;
        Rational c = means[i] * means[i] / mom.product_variance(masks[i]);
        total += c;
        if (masks[i] != 0) contrib.push_back({masks[i], lowdeg::to_double(c), c});
    }
    auto r = detail::exact_report(D, AdvantageMethod::product_basis, total);
    r.contributions = std::move(contrib);
    return r;
}

// Orthonormalizes the monomials of degree <= D under q, starting from 1.
// Directions that vanish q-a.s. are dropped, or make the advantage unbounded
// when p charges them.
template <class W>
AdvantageReport advantage_gram_schmidt(const DiscreteMeasure<W>& p_in, const DiscreteMeasure<W>& q_in, int D) {
    if (p_in.width() != q_in.width()) throw std::invalid_argument("advantage: measures of different width");
    const auto p = p_in.marginal(), q = q_in.marginal();
    D = detail::clip_degree(D, p.width());
    std::vector<std::uint64_t> support;
    for (const auto& a : p.atoms()) support.push_back(a.bits);
    for (const auto& a : q.atoms()) support.push_back(a.bits);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    const std::size_t N = support.size();
    auto slot = [&](std::uint64_t b) {
        return static_cast<std::size_t>(std::lower_bound(support.begin(), support.end(), b) - support.begin());
    };
    std::vector<W> qw(N, W(0)), pw(N, W(0));
    for (const auto& a : q.atoms()) qw[slot(a.bits)] = a.weight;
    for (const auto& a : p.atoms()) pw[slot(a.bits)] = a.weight;
    auto inner = [&](const std::vector<W>& x, const std::vector<W>& y) {
        W s = W(0);
        for (std::size_t i = 0; i < N; ++i)
            if (!(qw[i] == W(0))) s += qw[i] * x[i] * y[i];
        return s;
    };
    auto p_mean = [&](const std::vector<W>& x) {
        W s = W(0);
        for (std::size_t i = 0; i < N; ++i) s += pw[i] * x[i];
        return s;
    };
    constexpr bool exact = !std::is_floating_point_v<W>;
    std::vector<std::vector<W>> basis;
    std::vector<W> norms;
    AdvantageReport r;
    r.degree = D;
    r.method = AdvantageMethod::gram_schmidt;
    W total = W(0);
    for (EdgeMask mask : monomials_up_to(p.width(), D)) {
        std::vector<W> v(N);
        for (std::size_t i = 0; i < N; ++i) v[i] = (support[i] & mask) == mask ? W(1) : W(0);
        const W f2 = inner(v, v);
        for (int pass = 0; pass < (exact ? 1 : 2); ++pass)
            for (std::size_t j = 0; j < basis.size(); ++j) {
                const W coef = inner(v, basis[j]) / norms[j];
                if (coef == W(0)) continue;
                for (std::size_t i = 0; i < N; ++i) v[i] -= coef * basis[j][i];
            }
        const W nv = inner(v, v);
        const W ep = p_mean(v);
        if (detail::is_null(nv, 1e-10 * std::max(1.0, as_double(f2)))) {
            if (!detail::is_null(ep, 1e-9)) r.unbounded = true;
            continue;
        }
        const W c = ep * ep / nv;
        total += c;
        if (mask != 0 && !detail::is_null(c, 1e-15)) {
            Contribution ct{mask, as_double(c), std::nullopt};
            if constexpr (exact) ct.exact = c;
            r.contributions.push_back(std::move(ct));
        }
        basis.push_back(std::move(v));
        norms.push_back(nv);
    }
    r.squared = as_double(total);
    if constexpr (exact) r.exact_squared = total;
    return r;
}

// sup via c^T A^+ c, A = E_q[chi chi^T], c = E_p[chi], chi centered at q's coordinate means.
inline AdvantageReport advantage_rayleigh(const ExactMeasure& p, const ExactMeasure& q, int D) {
    if (p.width() != q.width()) throw std::invalid_argument("advantage: measures of different width");
    D = detail::clip_degree(D, p.width());
    const auto centers = coordinate_means(q);
    const auto masks = monomials_up_to(p.width(), D);
    const auto gram = CenteredMoments(q, centers).gram(masks);
    const auto c = CenteredMoments(p, centers).means(masks);
    auto value = detail::psd_quadratic<Rational>(gram, c);
    AdvantageReport r;
    r.degree = D;
    r.method = AdvantageMethod::rayleigh;
    if (!value) {
        r.unbounded = true;
        return r;
    }
    r.exact_squared = *value;
    r.squared = lowdeg::to_double(*value);
    return r;
}

inline AdvantageReport advantage(const ExactMeasure& p, const ExactMeasure& q, int D, AdvantageMethod method) {
    switch (method) {
        case AdvantageMethod::product_basis: return advantage_product_basis(p, q, D);
        case AdvantageMethod::gram_schmidt: return advantage_gram_schmidt(p, q, D);
        default: return advantage_rayleigh(p, q, D);
    }
}

// chi^2(p, q) = sum_x p(x)^2 / q(x) - 1; throws when p charges a q-null outcome.
inline Rational chi_square_divergence(const ExactMeasure& p_in, const ExactMeasure& q_in) {
    const auto p = p_in.marginal(), q = q_in.marginal();
    std::map<std::uint64_t, Rational> qm;
    for (const auto& a : q.atoms()) qm.emplace(a.bits, a.weight);
    Rational total = 0;
    for (const auto& a : p.atoms()) {
        auto it = qm.find(a.bits);
        if (it == qm.end()) throw std::domain_error("likelihood ratio undefined: p charges a q-null outcome");
        total += a.weight * a.weight / it->second;
    }
    return total - 1;
}

}  // namespace lowdeg
