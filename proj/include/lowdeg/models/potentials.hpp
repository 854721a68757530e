#pragma once

// Density potentials Phi (correlated ER) and Upsilon (SBM). Both have the form
// a^{|V|} b^{|E|}, so they are handled in log space as linear functionals.
// Subgraph searches range over edge-induced subgraphs with at least one edge.

#include "lowdeg/graph/enumerate.hpp"
#include "lowdeg/graph/labeled_graph.hpp"
#include "lowdeg/graph/structure.hpp"
#include "lowdeg/models/params.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace lowdeg {

struct LogPotential {
    double per_vertex = 0;
    double per_edge = 0;
    double operator()(int v, int e) const { return per_vertex * v + per_edge * e; }
    double operator()(const LabeledGraph& h) const { return (*this)(h.num_vertices(), h.num_edges()); }
};

// log of (n^{1+4/D} D^{20})^{|V|} (q D^6)^{|E|}
inline LogPotential phi_log(const ModelParams& m) {
    if (m.D < 1) throw std::invalid_argument("Phi needs D >= 1");
    const double ln_n = std::log(static_cast<double>(m.n)), ln_d = std::log(static_cast<double>(m.D));
    return {(1.0 + 4.0 / m.D) * ln_n + 20 * ln_d, std::log(to_double(m.q)) + 6 * ln_d};
}

// log of (2 lt^2 k^2 n / D^50)^{|V|} (1000 lt^20 k^20 D^50 / n)^{|E|}, lt = max(lambda, 1)
inline LogPotential upsilon_log(const ModelParams& m) {
    if (m.D < 1) throw std::invalid_argument("Upsilon needs D >= 1");
    const double ln_n = std::log(static_cast<double>(m.n)), ln_d = std::log(static_cast<double>(m.D));
    const double ln_lt = std::log(to_double(m.lambda_tilde())), ln_k = std::log(static_cast<double>(m.k));
    return {std::log(2.0) + 2 * ln_lt + 2 * ln_k + ln_n - 50 * ln_d,
            std::log(1000.0) + 20 * ln_lt + 20 * ln_k + 50 * ln_d - ln_n};
}

// A graph is bad when its potential is below 1/log n.
inline double log_bad_threshold(int n) { return -std::log(std::log(static_cast<double>(n))); }

inline double phi_potential(const LabeledGraph& h, const ModelParams& m) { return std::exp(phi_log(m)(h)); }
inline double upsilon_potential(const LabeledGraph& h, const ModelParams& m) { return std::exp(upsilon_log(m)(h)); }

inline bool is_bad_phi(const LabeledGraph& h, const ModelParams& m) { return phi_log(m)(h) < log_bad_threshold(m.n); }
inline bool is_bad_upsilon(const LabeledGraph& h, const ModelParams& m) {
    return upsilon_log(m)(h) < log_bad_threshold(m.n);
}

namespace detail {

struct Piece {
    std::vector<int> edges;  // indices into the host edge list
    std::vector<int> vertices;
    double value = 0;
};

inline std::vector<Piece> connected_pieces(const LabeledGraph& g, const LogPotential& f, int max_vertices,
                                           std::size_t budget) {
    std::vector<Piece> out;
    const int max_edges = max_vertices * (max_vertices - 1) / 2;
    for (auto& idx : connected_edge_sets(g, max_edges, max_vertices, budget)) {
        Piece p;
        for (int i : idx) {
            const Edge& e = g.edges()[static_cast<std::size_t>(i)];
            p.vertices.push_back(e.u);
            p.vertices.push_back(e.v);
        }
        std::sort(p.vertices.begin(), p.vertices.end());
        p.vertices.erase(std::unique(p.vertices.begin(), p.vertices.end()), p.vertices.end());
        p.value = f(static_cast<int>(p.vertices.size()), static_cast<int>(idx.size()));
        p.edges = std::move(idx);
        out.push_back(std::move(p));
    }
    return out;
}

inline bool disjoint_sorted(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return false;
        if (a[i] < b[j]) ++i;
        else ++j;
    }
    return true;
}

inline LabeledGraph union_of(const LabeledGraph& g, const std::vector<const Piece*>& chosen) {
    std::vector<int> idx;
    for (const Piece* p : chosen) idx.insert(idx.end(), p->edges.begin(), p->edges.end());
    std::sort(idx.begin(), idx.end());
    return graph_from_indices(g, idx);
}

// Visits every set of pairwise vertex-disjoint pieces (nonempty, total vertices
// <= max_vertices, pieces in index order) whose summed value is below threshold.
// The visitor returns false to stop. Pieces must all have negative value.
template <class Visit>
void disjoint_unions_below(const std::vector<Piece>& pieces, int max_vertices, double threshold, Visit&& visit,
                           std::size_t budget) {
    std::vector<const Piece*> chosen;
    std::vector<int> used;
    std::size_t nodes = 0;
    bool stop = false;
    // no extension can drop faster than the steepest per-vertex rate
    double rate = 0;
    for (const Piece& p : pieces) rate = std::min(rate, p.value / static_cast<double>(p.vertices.size()));
    std::function<void(std::size_t, double, int)> rec = [&](std::size_t from, double sum, int nverts) {
        if (sum + rate * (max_vertices - nverts) >= threshold) return;
        for (std::size_t i = from; i < pieces.size() && !stop; ++i) {
            const Piece& p = pieces[i];
            if (nverts + static_cast<int>(p.vertices.size()) > max_vertices) continue;
            if (!disjoint_sorted(used, p.vertices)) continue;
            if (++nodes > budget) throw std::length_error("disjoint union search budget exceeded");
            chosen.push_back(&p);
            std::vector<int> saved = used;
            std::vector<int> merged;
            std::merge(used.begin(), used.end(), p.vertices.begin(), p.vertices.end(), std::back_inserter(merged));
            used = std::move(merged);
            double s = sum + p.value;
            if (s < threshold && !visit(chosen)) stop = true;
            if (!stop) rec(i + 1, s, nverts + static_cast<int>(p.vertices.size()));
            used = std::move(saved);
            chosen.pop_back();
        }
    };
    rec(0, 0.0, 0);
}

}  // namespace detail

// Some edge-induced subgraph of g with >= 1 edge, at most max_vertices vertices
// and log-potential below threshold, if one exists.
inline std::optional<LabeledGraph> find_low_potential_subgraph(const LabeledGraph& g, const LogPotential& f,
                                                               double threshold, int max_vertices,
                                                               std::size_t budget = 2'000'000) {
    if (g.num_edges() == 0 || max_vertices < 2) return std::nullopt;
    // with both coefficients non-negative the single edge is optimal
    if (f.per_vertex >= 0 && f.per_edge >= 0) {
        if (f(2, 1) < threshold) return LabeledGraph(g.n(), std::vector<Edge>{g.edges().front()});
        return std::nullopt;
    }
    auto pieces = detail::connected_pieces(g, f, max_vertices, budget);
    std::vector<detail::Piece> negative;
    for (auto& p : pieces) {
        if (p.value < threshold) return graph_from_indices(g, p.edges);
        if (p.value < 0) negative.push_back(std::move(p));
    }
    std::optional<LabeledGraph> found;
    detail::disjoint_unions_below(
        negative, max_vertices, threshold,
        [&](const std::vector<const detail::Piece*>& chosen) {
            found = detail::union_of(g, chosen);
            return false;
        },
        budget);
    return found;
}

inline bool is_admissible_er(const LabeledGraph& h, const ModelParams& m) {
    if (h.num_edges() > 12) throw std::length_error("is_admissible_er: more than 12 edges");
    return !find_low_potential_subgraph(h, phi_log(m), log_bad_threshold(m.n), h.num_vertices()).has_value();
}

enum class Badness { good, bad, self_bad };

inline const char* to_string(Badness b) {
    switch (b) {
        case Badness::good: return "good";
        case Badness::bad: return "bad";
        default: return "self_bad";
    }
}

// True when f(h) is strictly below f of every edge-induced K ⊊ h (the empty graph counts, with value 0).
inline bool strictly_minimal(const LabeledGraph& h, const LogPotential& f, double value) {
    const int m = h.num_edges();
    if (m > 20) throw std::length_error("minimality check: more than 20 edges");
    if (!(value < 0)) return false;
    std::vector<std::uint32_t> vmask_of_edge(static_cast<std::size_t>(m));
    std::vector<int> vid(static_cast<std::size_t>(h.n()), -1);
    int nv = 0;
    for (int i = 0; i < m; ++i) {
        const Edge& e = h.edges()[static_cast<std::size_t>(i)];
        for (int x : {e.u, e.v})
            if (vid[static_cast<std::size_t>(x)] < 0) vid[static_cast<std::size_t>(x)] = nv++;
        vmask_of_edge[static_cast<std::size_t>(i)] =
            (1U << vid[static_cast<std::size_t>(e.u)]) | (1U << vid[static_cast<std::size_t>(e.v)]);
    }
    if (nv > 32) throw std::length_error("minimality check: too many vertices");
    const std::uint32_t full = m == 32 ? ~0U : (1U << m) - 1;
    for (std::uint32_t sub = 1; sub < full; ++sub) {
        std::uint32_t vm = 0;
        for (std::uint32_t r = sub; r; r &= r - 1) vm |= vmask_of_edge[static_cast<std::size_t>(std::countr_zero(r))];
        if (!(value < f(std::popcount(vm), std::popcount(sub)))) return false;
    }
    return true;
}

// Bad: Upsilon(h) < 1/log n with the declared vertex set. Self-bad: bad and strictly
// below every edge-induced proper subgraph, the empty graph included.
inline Badness classify_self_bad(const LabeledGraph& h, const ModelParams& m) {
    const LogPotential f = upsilon_log(m);
    const double value = f(h);
    if (!(value < log_bad_threshold(m.n))) return Badness::good;
    if (h.num_edges() > 12) throw std::length_error("classify_self_bad: minimality check beyond 12 edges");
    return strictly_minimal(h, f, value) ? Badness::self_bad : Badness::bad;
}

// All self-bad edge-induced subgraphs of g with at most max_vertices vertices,
// sorted lexicographically by edge list. A graph is self-bad exactly when it is
// bad and every connected component is strictly minimal on its own, so the
// search joins strictly minimal connected pieces into vertex-disjoint unions.
inline std::vector<LabeledGraph> self_bad_subgraphs(const LabeledGraph& g, const ModelParams& m, int max_vertices,
                                                    std::size_t budget = 2'000'000) {
    const LogPotential f = upsilon_log(m);
    const double thr = log_bad_threshold(m.n);
    std::vector<LabeledGraph> out;
    if (g.num_edges() == 0 || max_vertices < 2) return out;
    std::vector<detail::Piece> minimal;
    for (auto& p : detail::connected_pieces(g, f, max_vertices, budget)) {
        if (!(p.value < 0)) continue;
        if (p.edges.size() > 12) throw std::length_error("self-bad search: connected piece with more than 12 edges");
        if (strictly_minimal(graph_from_indices(g, p.edges), f, p.value)) minimal.push_back(std::move(p));
    }
    detail::disjoint_unions_below(
        minimal, max_vertices, thr,
        [&](const std::vector<const detail::Piece*>& chosen) {
            out.push_back(detail::union_of(g, chosen));
            if (out.size() > budget) throw std::length_error("self-bad search: output budget exceeded");
            return true;
        },
        budget);
    std::sort(out.begin(), out.end(), [](const LabeledGraph& a, const LabeledGraph& b) { return a.edges() < b.edges(); });
    return out;
}

}  // namespace lowdeg
