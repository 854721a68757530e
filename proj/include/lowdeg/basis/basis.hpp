#pragma once

// Subgraph-indexed bases: phi_S on one graph, phi_{S1,S2} on a pair, and the
// planted psi_{sigma,S} on (sigma*, G). Values are exact as raw / sqrt(norm_sq)
// with both parts rational.

#include "lowdeg/basis/measure.hpp"
#include "lowdeg/basis/model_measures.hpp"
#include "lowdeg/basis/moments.hpp"
#include "lowdeg/graph/edge_space.hpp"
#include "lowdeg/graph/labeled_graph.hpp"
#include "lowdeg/models/params.hpp"
#include "lowdeg/numeric/scalar.hpp"
#include "lowdeg/numeric/surd.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lowdeg {

inline int omega(int k, int a, int b) {
    if (k < 2 || a < 0 || b < 0 || a >= k || b >= k) throw std::out_of_range("omega: label outside [k]");
    return a == b ? k - 1 : -1;
}

// Edge probability (1 + eps*omega) lambda / n for a label relation.
inline Rational planted_probability(const ModelParams& m, bool same) {
    Rational p = (1 + m.eps * (same ? m.k - 1 : -1)) * m.lambda / m.n;
    if (p < 0 || p > 1) throw std::domain_error("planted edge probability outside [0,1]");
    return p;
}

inline Rational h_weight_squared(const ModelParams& m, bool same) {
    const Rational base = m.lambda / m.n;
    if (base >= 1) throw std::domain_error("h: lambda/n must be below 1");
    const Rational factor = 1 + m.eps * (same ? m.k - 1 : -1);
    return (1 - planted_probability(m, same)) * factor / (1 - base);
}

template <class T>
T h_weight(const ModelParams& m, int a, int b) {
    return sqrt_rational<T>(h_weight_squared(m, omega(m.k, a, b) == m.k - 1));
}

inline double h_weight(int k, double eps, double lambda, double n, int a, int b) {
    const double w = 1 + eps * omega(k, a, b);
    const double p = w * lambda / n;
    if (p < 0 || p > 1 || lambda / n >= 1) throw std::domain_error("h: invalid probability");
    return std::sqrt((1 - p) * w / (1 - lambda / n));
}

// h = a + b*omega, solved from the two label classes.
template <class T>
struct HDecomposition {
    T a, b;
};

template <class T>
HDecomposition<T> h_decomposition(const ModelParams& m) {
    const T same = sqrt_rational<T>(h_weight_squared(m, true));
    const T diff = sqrt_rational<T>(h_weight_squared(m, false));
    const T k = from_rational<T>(Rational(m.k));
    return {(same + (k - T(1)) * diff) / k, (same - diff) / k};
}

enum class BasisKind { single, pair, planted };

struct BasisIndex {
    BasisKind kind = BasisKind::single;
    LabeledGraph s, s2;
    std::vector<int> sigma;

    static BasisIndex single_of(const LabeledGraph& g) { return {BasisKind::single, g.edge_induced(), {}, {}}; }
    static BasisIndex pair_of(const LabeledGraph& a, const LabeledGraph& b) {
        if (a.n() != b.n()) throw std::invalid_argument("pair index: ambient sizes differ");
        return {BasisKind::pair, a.edge_induced(), b.edge_induced(), {}};
    }
    static BasisIndex planted_of(std::vector<int> sigma, const LabeledGraph& g) {
        if (static_cast<int>(sigma.size()) != g.n()) throw std::invalid_argument("planted index: label vector length");
        return {BasisKind::planted, g.edge_induced(), {}, std::move(sigma)};
    }

    int degree() const { return s.num_edges() + (kind == BasisKind::pair ? s2.num_edges() : 0); }

    std::string str() const {
        std::ostringstream os;
        if (kind == BasisKind::pair) os << "(" << s.str() << ", " << s2.str() << ")";
        else os << s.str();
        if (kind == BasisKind::planted) {
            os << " @";
            for (int x : sigma) os << x;
        }
        return os.str();
    }
};

// value = raw / sqrt(norm_sq), norm_sq > 0.
struct BasisMoment {
    Rational raw = 0;
    Rational norm_sq = 1;

    Rational squared() const { return raw * raw / norm_sq; }
    double to_double() const { return lowdeg::to_double(raw) / std::sqrt(lowdeg::to_double(norm_sq)); }
    Surd to_surd() const { return Surd(raw) * Surd::sqrt_of(1 / norm_sq); }
    bool is_zero() const { return raw == 0; }
    bool is_one() const { return raw > 0 && raw * raw == norm_sq; }
};

namespace detail {

inline void check_index(const BasisIndex& idx, const ModelParams& m) {
    if (idx.s.n() != m.n || (idx.kind == BasisKind::pair && idx.s2.n() != m.n))
        throw std::invalid_argument("basis index does not live on K_n");
    if (idx.kind == BasisKind::planted) {
        if (static_cast<int>(idx.sigma.size()) != m.n) throw std::invalid_argument("planted index: label vector length");
        for (int x : idx.sigma)
            if (x < 0 || x >= m.k) throw std::out_of_range("planted index: label outside [k]");
    }
}

}  // namespace detail

// Coordinates carried by an index: EdgeSpace indices, with the second graph
// of a pair shifted by m.
inline EdgeMask coordinate_mask(const BasisIndex& idx, const EdgeSpace& sp) {
    EdgeMask m = sp.mask(idx.s);
    if (idx.kind == BasisKind::pair) m |= sp.mask(idx.s2) << sp.size();
    return m;
}

// Per-coordinate centers of the index's basis function.
inline std::vector<Rational> basis_centers(const BasisIndex& idx, const ModelParams& m) {
    EdgeSpace sp(m.n);
    if (idx.kind == BasisKind::single) return std::vector<Rational>(static_cast<std::size_t>(sp.size()), m.q);
    if (idx.kind == BasisKind::pair) return std::vector<Rational>(static_cast<std::size_t>(2 * sp.size()), m.q);
    std::vector<Rational> c;
    for (const Edge& e : sp.edges())
        c.push_back(planted_probability(m, idx.sigma[static_cast<std::size_t>(e.u)] == idx.sigma[static_cast<std::size_t>(e.v)]));
    return c;
}

// Exact value as raw / sqrt(norm_sq) at an outcome (bits) with hidden labels sigma_star.
inline BasisMoment basis_value(const BasisIndex& idx, std::uint64_t bits, const std::vector<int>* sigma_star,
                               const ModelParams& m) {
    detail::check_index(idx, m);
    EdgeSpace sp(m.n);
    const auto c = basis_centers(idx, m);
    BasisMoment out{1, 1};
    for (EdgeMask r = coordinate_mask(idx, sp); r; r &= r - 1) {
        const int e = std::countr_zero(r);
        const Rational& ce = c[static_cast<std::size_t>(e)];
        out.raw *= Rational((bits >> e) & 1U ? 1 : 0) - ce;
        out.norm_sq *= ce * (1 - ce);
    }
    if (out.norm_sq == 0) throw std::domain_error("basis function with a degenerate coordinate");
    if (idx.kind == BasisKind::planted) {
        if (!sigma_star) throw std::invalid_argument("planted basis needs sigma*");
        if (*sigma_star != idx.sigma) out.raw = 0;
        out.norm_sq /= rational_pow(Rational(m.k), m.n);
    }
    return out;
}

template <class T>
T evaluate_basis(const BasisIndex& idx, const LabeledGraph& g, const ModelParams& m) {
    if (idx.kind != BasisKind::single) throw std::invalid_argument("evaluate_basis: index is not a single-graph index");
    EdgeSpace sp(m.n);
    const BasisMoment v = basis_value(idx, sp.mask(g), nullptr, m);
    return from_rational<T>(v.raw) * sqrt_rational<T>(1 / v.norm_sq);
}

template <class T>
T evaluate_basis(const BasisIndex& idx, const LabeledGraph& a, const LabeledGraph& b, const ModelParams& m) {
    if (idx.kind != BasisKind::pair) throw std::invalid_argument("evaluate_basis: index is not a pair index");
    EdgeSpace sp(m.n);
    const BasisMoment v = basis_value(idx, sp.mask(a) | (sp.mask(b) << sp.size()), nullptr, m);
    return from_rational<T>(v.raw) * sqrt_rational<T>(1 / v.norm_sq);
}

template <class T>
T evaluate_basis(const BasisIndex& idx, const std::vector<int>& sigma_star, const LabeledGraph& g, const ModelParams& m) {
    if (idx.kind != BasisKind::planted) throw std::invalid_argument("evaluate_basis: index is not a planted index");
    if (static_cast<int>(sigma_star.size()) != m.n) throw std::invalid_argument("evaluate_basis: sigma* length");
    EdgeSpace sp(m.n);
    const BasisMoment v = basis_value(idx, sp.mask(g), &sigma_star, m);
    return from_rational<T>(v.raw) * sqrt_rational<T>(1 / v.norm_sq);
}

namespace detail {

inline void check_width(const ExactMeasure& mu, const BasisIndex& idx, const ModelParams& m) {
    const int e = m.n * (m.n - 1) / 2;
    if (mu.width() != (idx.kind == BasisKind::pair ? 2 * e : e)) throw std::invalid_argument("measure width does not match the index");
}

}  // namespace detail

// E_mu[f_idx], exact. Planted indices need the joint measure carrying sigma* as hidden.
inline BasisMoment exact_expectation(const ExactMeasure& mu, const BasisIndex& idx, const ModelParams& m) {
    detail::check_width(mu, idx, m);
    const std::uint32_t code = idx.kind == BasisKind::planted ? encode_labels(idx.sigma, m.k) : 0;
    BasisMoment out{0, 1};
    bool first = true;
    for (const auto& a : mu.atoms()) {
        if (idx.kind == BasisKind::planted && a.hidden != code) continue;
        const BasisMoment v = basis_value(idx, a.bits, idx.kind == BasisKind::planted ? &idx.sigma : nullptr, m);
        out.raw += a.weight * v.raw;
        if (first) out.norm_sq = v.norm_sq, first = false;
    }
    if (first) out.norm_sq = basis_value(idx, 0, idx.kind == BasisKind::planted ? &idx.sigma : nullptr, m).norm_sq;
    return out;
}

// E_mu[f_a f_b], exact.
inline BasisMoment exact_inner_product(const ExactMeasure& mu, const BasisIndex& a, const BasisIndex& b,
                                       const ModelParams& m) {
    detail::check_width(mu, a, m);
    detail::check_width(mu, b, m);
    BasisMoment out{0, 1};
    const std::vector<int>* sa = a.kind == BasisKind::planted ? &a.sigma : nullptr;
    const std::vector<int>* sb = b.kind == BasisKind::planted ? &b.sigma : nullptr;
    out.norm_sq = basis_value(a, 0, sa, m).norm_sq * basis_value(b, 0, sb, m).norm_sq;
    const bool planted = sa || sb;
    for (const auto& atom : mu.atoms()) {
        std::vector<int> sigma;
        if (planted) sigma = decode_labels(atom.hidden, m.n, m.k);
        const BasisMoment va = basis_value(a, atom.bits, planted ? &sigma : nullptr, m);
        if (va.raw == 0) continue;
        const BasisMoment vb = basis_value(b, atom.bits, planted ? &sigma : nullptr, m);
        out.raw += atom.weight * va.raw * vb.raw;
    }
    return out;
}

// Pair-basis coordinates with total degree <= D on K_n.
inline std::vector<EdgeMask> pair_basis_masks(int n, int D) { return monomials_up_to(n * (n - 1), D); }

struct OrthonormalityReport {
    std::size_t functions = 0;
    std::size_t pairs_checked = 0;
    std::size_t defects = 0;
};

// Checks E_mu[phi_a phi_b] = 1{a=b} exactly for centered monomials normalized
// by prod c(1-c) over the listed coordinate masks.
inline OrthonormalityReport check_orthonormality(const ExactMeasure& mu, const std::vector<Rational>& centers,
                                                 const std::vector<EdgeMask>& masks) {
    CenteredMoments mom(mu, centers);
    const auto g = mom.gram(masks);
    OrthonormalityReport r;
    r.functions = masks.size();
    for (std::size_t a = 0; a < masks.size(); ++a)
        for (std::size_t b = a; b < masks.size(); ++b) {
            ++r.pairs_checked;
            const Rational target = a == b ? mom.product_variance(masks[a]) : Rational(0);
            if (g[a][b] != target) ++r.defects;
        }
    return r;
}

// Squared per-edge factor for edges of S outside H in the cross moment. The
// exact moment carries eps^2 lambda / (n (1 - lambda/n)); the leading-order form
// drops the (1 - lambda/n), which is how the dual recursion is usually stated.
enum class StepConvention { exact, leading };

inline Rational cross_step_squared(const ModelParams& m, StepConvention c) {
    const Rational leading = m.eps * m.eps * m.lambda / m.n;
    return c == StepConvention::leading ? leading : Rational(leading / (1 - m.lambda / m.n));
}

// Closed-form E_P[phi_S psi_{sigma,H}] with phi centered at lambda/n.
template <class T>
T cross_moment_planted(const ModelParams& m, const LabeledGraph& s, const std::vector<int>& sigma, const LabeledGraph& h,
                       StepConvention conv = StepConvention::exact) {
    if (static_cast<int>(sigma.size()) != m.n || s.n() != m.n || h.n() != m.n)
        throw std::invalid_argument("cross_moment_planted: size mismatch");
    const LabeledGraph se = s.edge_induced(), he = h.edge_induced();
    if (!se.contains(he)) return T(0);
    const T hs = sqrt_rational<T>(h_weight_squared(m, true)), hd = sqrt_rational<T>(h_weight_squared(m, false));
    const T step = sqrt_rational<T>(cross_step_squared(m, conv));
    T out = T(1) / sqrt_rational<T>(rational_pow(Rational(m.k), m.n));
    for (const Edge& e : he.edges()) out = out * (sigma[static_cast<std::size_t>(e.u)] == sigma[static_cast<std::size_t>(e.v)] ? hs : hd);
    for (const Edge& e : edge_difference(se, he))
        out = out * from_rational<T>(Rational(omega(m.k, sigma[static_cast<std::size_t>(e.u)], sigma[static_cast<std::size_t>(e.v)]))) * step;
    return out;
}

// E_nu[prod_{i=1}^{l} (a + b omega(sigma_{i-1}, sigma_i)) | sigma_0, sigma_l] = a^l + b^l omega(sigma_0, sigma_l).
template <class T>
T path_expectation(int k, const T& a, const T& b, int l, int s0, int sl) {
    if (l < 1) throw std::invalid_argument("path_expectation: length must be positive");
    return scalar_pow(a, l) + scalar_pow(b, l) * T(omega(k, s0, sl));
}

// Direct enumeration of the l-1 interior labels.
template <class T>
T path_expectation_brute(int k, const T& a, const T& b, int l, int s0, int sl) {
    if (l < 1) throw std::invalid_argument("path_expectation: length must be positive");
    std::vector<int> lab(static_cast<std::size_t>(l + 1), 0);
    lab[0] = s0;
    lab[static_cast<std::size_t>(l)] = sl;
    T total = T(0);
    long count = 0;
    const long interior = static_cast<long>(std::pow(k, l - 1));
    for (long code = 0; code < interior; ++code) {
        long c = code;
        for (int i = 1; i < l; ++i) {
            lab[static_cast<std::size_t>(i)] = static_cast<int>(c % k);
            c /= k;
        }
        T prod = T(1);
        for (int i = 1; i <= l; ++i) prod = prod * (a + b * T(omega(k, lab[static_cast<std::size_t>(i - 1)], lab[static_cast<std::size_t>(i)])));
        total = total + prod;
        ++count;
    }
    return total / T(count);
}

// max over labelings of V(H) of |E_nu[prod_{E(S)\E(H)} omega | sigma on V(H)]|.
inline Rational leaf_cancellation_check(const LabeledGraph& s, const LabeledGraph& h, int k) {
    const LabeledGraph se = s.edge_induced(), he = h.edge_induced();
    if (!se.contains(he)) throw std::invalid_argument("leaf_cancellation_check: H is not a subgraph of S");
    const auto vs = se.vertices();
    if (vs.size() > 8) throw std::length_error("leaf_cancellation_check: more than 8 vertices");
    const auto hv = he.vertices();
    bool exposed = false;
    for (int leaf : se.leaves())
        if (!std::binary_search(hv.begin(), hv.end(), leaf)) exposed = true;
    if (!exposed) throw std::invalid_argument("leaf_cancellation_check: every leaf of S lies in V(H)");
    std::vector<int> free;
    for (int v : vs)
        if (!std::binary_search(hv.begin(), hv.end(), v)) free.push_back(v);
    const auto diff = edge_difference(se, he);
    std::vector<int> lab(static_cast<std::size_t>(se.n()), 0);
    const long outer = static_cast<long>(std::pow(k, hv.size())), inner = static_cast<long>(std::pow(k, free.size()));
    Rational worst = 0;
    for (long oc = 0; oc < outer; ++oc) {
        long c = oc;
        for (int v : hv) lab[static_cast<std::size_t>(v)] = static_cast<int>(c % k), c /= k;
        long sum = 0;
        for (long ic = 0; ic < inner; ++ic) {
            long d = ic;
            for (int v : free) lab[static_cast<std::size_t>(v)] = static_cast<int>(d % k), d /= k;
            long prod = 1;
            for (const Edge& e : diff) prod *= omega(k, lab[static_cast<std::size_t>(e.u)], lab[static_cast<std::size_t>(e.v)]);
            sum += prod;
        }
        worst = std::max(worst, rat(sum < 0 ? -sum : sum, inner));
    }
    return worst;
}

}  // namespace lowdeg
