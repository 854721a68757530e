#pragma once

// Expectations over uniform labels sigma in [k]^V of products of edge weights
// of the form a + b*omega(sigma_u, sigma_v). These weights form an algebra:
//   series   (1/k) sum_x w1(u,x) w2(x,w) = a1 a2 + b1 b2 omega(u,w)
//   parallel w1 w2 = (a1 a2 + (k-1) b1 b2) + (a1 b2 + a2 b1 + (k-2) b1 b2) omega
// since W = kI - J satisfies W^2 = kW and omega^2 = (k-2) omega + (k-1).
// Pendant vertices average to a, so leaves, paths and parallel classes are
// eliminated before the remaining core is enumerated.

#include "lowdeg/basis/basis.hpp"
#include "lowdeg/graph/labeled_graph.hpp"
#include "lowdeg/numeric/scalar.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace lowdeg {

template <class T>
struct EdgeWeight {
    T a, b;  // a + b * omega
};

inline constexpr long kLabelEnumerationBudget = 1L << 22;

namespace detail {

template <class T>
struct WeightedEdge {
    int u, v;
    EdgeWeight<T> w;
};

template <class T>
EdgeWeight<T> parallel(const EdgeWeight<T>& x, const EdgeWeight<T>& y, int k) {
    const T bb = x.b * y.b;
    return {x.a * y.a + T(k - 1) * bb, x.a * y.b + y.a * x.b + T(k - 2) * bb};
}

template <class T>
T brute_label_average(int k, const std::vector<int>& verts, const std::vector<WeightedEdge<T>>& edges) {
    const int v = static_cast<int>(verts.size());
    if (std::pow(static_cast<double>(k), v) > static_cast<double>(kLabelEnumerationBudget))
        throw std::length_error("label enumeration beyond budget");
    std::map<int, int> pos;
    for (int i = 0; i < v; ++i) pos[verts[static_cast<std::size_t>(i)]] = i;
    long total_codes = 1;
    for (int i = 0; i < v; ++i) total_codes *= k;
    std::vector<int> lab(static_cast<std::size_t>(v), 0);
    T sum = T(0);
    for (long code = 0; code < total_codes; ++code) {
        long c = code;
        for (int i = 0; i < v; ++i) lab[static_cast<std::size_t>(i)] = static_cast<int>(c % k), c /= k;
        T prod = T(1);
        for (const auto& e : edges) {
            const int w = omega(k, lab[static_cast<std::size_t>(pos[e.u])], lab[static_cast<std::size_t>(pos[e.v])]);
            prod = prod * (e.w.a + e.w.b * T(w));
        }
        sum = sum + prod;
    }
    return sum / T(total_codes);
}

}  // namespace detail

// E_sigma prod_e (a_e + b_e omega(sigma_u, sigma_v)) over labels of the edge endpoints.
template <class T>
T label_expectation(int k, std::vector<detail::WeightedEdge<T>> edges) {
    T factor = T(1);
    for (;;) {
        // merge parallel edges, resolve self-loops
        std::map<std::pair<int, int>, EdgeWeight<T>> merged;
        for (const auto& e : edges) {
            if (e.u == e.v) {
                factor = factor * (e.w.a + T(k - 1) * e.w.b);
                continue;
            }
            const auto key = std::minmax(e.u, e.v);
            auto it = merged.find(key);
            if (it == merged.end()) merged.emplace(key, e.w);
            else it->second = detail::parallel(it->second, e.w, k);
        }
        edges.clear();
        std::map<int, std::vector<std::size_t>> incident;
        for (const auto& [key, w] : merged) {
            incident[key.first].push_back(edges.size());
            incident[key.second].push_back(edges.size());
            edges.push_back({key.first, key.second, w});
        }
        bool reduced = false;
        for (const auto& [x, inc] : incident) {
            if (inc.size() == 1) {
                factor = factor * edges[inc[0]].w.a;
                edges.erase(edges.begin() + static_cast<long>(inc[0]));
                reduced = true;
                break;
            }
            if (inc.size() == 2) {
                const auto e1 = edges[inc[0]], e2 = edges[inc[1]];
                const int u = e1.u == x ? e1.v : e1.u, w = e2.u == x ? e2.v : e2.u;
                edges.erase(edges.begin() + static_cast<long>(inc[1]));
                edges.erase(edges.begin() + static_cast<long>(inc[0]));
                edges.push_back({u, w, {e1.w.a * e2.w.a, e1.w.b * e2.w.b}});
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            if (edges.empty()) return factor;
            std::vector<int> verts;
            for (const auto& [x, inc] : incident) verts.push_back(x);
            return factor * detail::brute_label_average(k, verts, edges);
        }
    }
}

// Plain enumeration over all endpoint labels, no reductions.
template <class T>
T label_expectation_brute(int k, const std::vector<detail::WeightedEdge<T>>& edges) {
    std::vector<int> verts;
    for (const auto& e : edges) verts.push_back(e.u), verts.push_back(e.v);
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    return detail::brute_label_average(k, verts, edges);
}

// E_nu prod_{e in S} h(e)
template <class T>
T P_of(const LabeledGraph& s, const ModelParams& m) {
    const auto hd = h_decomposition<T>(m);
    std::vector<detail::WeightedEdge<T>> edges;
    for (const Edge& e : s.edges()) edges.push_back({e.u, e.v, {hd.a, hd.b}});
    return label_expectation<T>(m.k, std::move(edges));
}

// E_nu prod_{e in H} h(e) prod_{e in S \ H} omega(e)
template <class T>
T Q_of(const LabeledGraph& s, const LabeledGraph& h, const ModelParams& m) {
    if (!s.edge_induced().contains(h.edge_induced())) throw std::invalid_argument("Q_of: H is not a subgraph of S");
    const auto hd = h_decomposition<T>(m);
    std::vector<detail::WeightedEdge<T>> edges;
    for (const Edge& e : h.edges()) edges.push_back({e.u, e.v, {hd.a, hd.b}});
    for (const Edge& e : edge_difference(s, h)) edges.push_back({e.u, e.v, {T(0), T(1)}});
    return label_expectation<T>(m.k, std::move(edges));
}

}  // namespace lowdeg
