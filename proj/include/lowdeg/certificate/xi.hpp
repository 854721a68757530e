#pragma once

// Xi recursion over leafless graphs and the dual vector u_{sigma,H} = k^{-n/2} Xi(H).
//   Xi(empty) = 1, Xi(S) = 0 when S has a leaf, and for leafless S
//   Xi(S) = -P(S)^{-1} sum_{H proper leafless subgraph of S} step^{|E(S)|-|E(H)|} Xi(H) Q(S,H).
// H ranges over edge subsets; a circular H = S term is excluded.

#include "lowdeg/certificate/label_expectation.hpp"
#include "lowdeg/graph/canonical.hpp"
#include "lowdeg/graph/enumerate.hpp"
#include "lowdeg/graph/structure.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace lowdeg {

template <class T>
class XiTable {
public:
    XiTable(ModelParams m, int D, StepConvention conv = StepConvention::leading, bool factorize = true)
        : m_(std::move(m)), D_(D), conv_(conv), factorize_(factorize), step_sq_(cross_step_squared(m_, conv)) {
        if (D < 0) throw std::invalid_argument("D must be non-negative");
    }

    const ModelParams& params() const noexcept { return m_; }
    int degree() const noexcept { return D_; }
    StepConvention convention() const noexcept { return conv_; }
    const std::map<std::string, T>& entries() const noexcept { return memo_; }

    T operator()(const LabeledGraph& s_in) {
        const LabeledGraph s = s_in.edge_induced();
        if (s.num_edges() == 0) return T(1);
        if (!s.is_leafless()) return T(0);
        if (s.num_edges() > D_) throw std::out_of_range("Xi requested above the table degree");
        const std::string key = canonicalize(s).form;
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        T value = compute(s);
        memo_.emplace(key, value);
        return value;
    }

    // Direct recursion, never using the factorization shortcut.
    T recurse(const LabeledGraph& s_in) {
        const LabeledGraph s = s_in.edge_induced();
        if (s.num_edges() == 0) return T(1);
        if (!s.is_leafless()) return T(0);
        T sum = T(0);
        const auto& es = s.edges();
        const int e = s.num_edges();
        for (std::uint32_t mask = 0; mask + 1 < (1U << e); ++mask) {
            std::vector<Edge> sub;
            for (int i = 0; i < e; ++i)
                if ((mask >> i) & 1U) sub.push_back(es[static_cast<std::size_t>(i)]);
            LabeledGraph h(s.n(), std::move(sub));
            if (!h.is_leafless()) continue;
            const T xh = (*this)(h);
            if (is_zero(xh)) continue;
            sum = sum + half_power<T>(step_sq_, e - h.num_edges()) * xh * Q_of<T>(s, h, m_);
        }
        return -sum / P_of<T>(s, m_);
    }

private:
    T compute(const LabeledGraph& s) {
        if (factorize_) {
            const auto comps = connected_components(s);
            if (comps.size() > 1) {
                T prod = T(1);
                for (const auto& c : comps) prod = prod * (*this)(c);
                return prod;
            }
        }
        return recurse(s);
    }

    ModelParams m_;
    int D_;
    StepConvention conv_;
    bool factorize_;
    Rational step_sq_;
    std::map<std::string, T> memo_;
};

template <class T>
struct DualClass {
    CanonicalGraph graph;
    BigInt copies;  // labeled copies in K_n
    T xi;
};

// u_{sigma,H} = k^{-n/2} Xi(H); stored per leafless class since it is sigma-independent.
template <class T>
struct DualVector {
    ModelParams params;
    int D = 0;
    StepConvention convention = StepConvention::leading;
    std::vector<DualClass<T>> classes;

    // ||u||^2 = sum over labeled leafless H of Xi(H)^2 (the k^n sigma-sum cancels k^{-n}).
    T norm_squared() const {
        T total = T(0);
        for (const auto& c : classes) total = total + from_rational<T>(Rational(c.copies)) * c.xi * c.xi;
        return total;
    }
    double norm() const { return std::sqrt(as_double(norm_squared())); }
};

// n!/((n-v)! aut)
inline BigInt labeled_copies(const CanonicalGraph& c, int n) {
    const int v = c.n_vertices - c.n_isolated;
    if (v == 0) return 1;
    if (v > n) return 0;
    if (c.aut == 0) throw std::length_error("automorphism count unavailable");
    BigInt falling = 1;
    for (int i = 0; i < v; ++i) falling *= n - i;
    return falling / BigInt(c.aut);
}

template <class T>
DualVector<T> build_dual(const ModelParams& m, int D, StepConvention conv = StepConvention::leading) {
    if (D > 6) throw std::length_error("build_dual: leafless class enumeration limited to D <= 6");
    XiTable<T> table(m, D, conv);
    DualVector<T> u{m, D, conv, {}};
    for (auto& c : leafless_classes(m.n, D)) {
        const T xi = table(c.representative);
        BigInt copies = labeled_copies(c, m.n);
        u.classes.push_back({std::move(c), std::move(copies), xi});
    }
    return u;
}

}  // namespace lowdeg
