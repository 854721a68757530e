#pragma once

#include "lowdeg/graph/canonical.hpp"
#include "lowdeg/graph/edge_space.hpp"
#include "lowdeg/graph/labeled_graph.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

namespace lowdeg {

// Connected edge sets of g (indices into g.edges(), ascending) with at most
// max_edges edges spanning at most max_vertices vertices. Each set is produced
// once: the seed is its smallest edge, the rest is an include/exclude search
// over the frontier of larger-indexed edges.
inline std::vector<std::vector<int>> connected_edge_sets(const LabeledGraph& g, int max_edges, int max_vertices,
                                                         std::size_t budget = 2'000'000) {
    const auto& es = g.edges();
    const int m = static_cast<int>(es.size());
    std::vector<std::vector<int>> incident(static_cast<std::size_t>(g.n()));
    for (int i = 0; i < m; ++i) {
        incident[static_cast<std::size_t>(es[static_cast<std::size_t>(i)].u)].push_back(i);
        incident[static_cast<std::size_t>(es[static_cast<std::size_t>(i)].v)].push_back(i);
    }
    std::vector<std::vector<int>> out;
    if (max_edges < 1 || max_vertices < 2) return out;

    std::vector<char> in(static_cast<std::size_t>(m), 0), excluded(static_cast<std::size_t>(m), 0);
    std::vector<int> vcount(static_cast<std::size_t>(g.n()), 0);
    std::vector<int> cur, verts;
    int seed = 0;

    auto add = [&](int i, int delta) {
        const Edge& e = es[static_cast<std::size_t>(i)];
        for (int x : {e.u, e.v}) {
            int& c = vcount[static_cast<std::size_t>(x)];
            if (delta > 0 && c++ == 0) verts.push_back(x);
            if (delta < 0 && --c == 0) verts.erase(std::find(verts.begin(), verts.end(), x));
        }
        in[static_cast<std::size_t>(i)] = delta > 0;
        if (delta > 0) cur.push_back(i);
        else cur.pop_back();
    };
    auto pick = [&]() {
        if (static_cast<int>(cur.size()) >= max_edges) return -1;
        int best = -1;
        for (int x : verts)
            for (int i : incident[static_cast<std::size_t>(x)]) {
                if (i <= seed || in[static_cast<std::size_t>(i)] || excluded[static_cast<std::size_t>(i)]) continue;
                const Edge& e = es[static_cast<std::size_t>(i)];
                int fresh = (vcount[static_cast<std::size_t>(e.u)] == 0) + (vcount[static_cast<std::size_t>(e.v)] == 0);
                if (static_cast<int>(verts.size()) + fresh > max_vertices) continue;
                if (best < 0 || i < best) best = i;
            }
        return best;
    };
    std::function<void()> search = [&]() {
        int f = pick();
        if (f < 0) {
            if (out.size() >= budget) throw std::length_error("connected subgraph enumeration budget exceeded");
            auto sorted = cur;
            std::sort(sorted.begin(), sorted.end());
            out.push_back(std::move(sorted));
            return;
        }
        add(f, +1);
        search();
        add(f, -1);
        excluded[static_cast<std::size_t>(f)] = 1;
        search();
        excluded[static_cast<std::size_t>(f)] = 0;
    };
    for (seed = 0; seed < m; ++seed) {
        add(seed, +1);
        search();
        add(seed, -1);
    }
    return out;
}

inline LabeledGraph graph_from_indices(const LabeledGraph& g, const std::vector<int>& idx) {
    std::vector<Edge> es;
    es.reserve(idx.size());
    for (int i : idx) es.push_back(g.edges()[static_cast<std::size_t>(i)]);
    return LabeledGraph(g.n(), std::move(es));
}

// Every edge-induced subgraph of s (including the empty graph) with at most max_edges edges.
inline std::vector<LabeledGraph> edge_subgraphs(const LabeledGraph& s, int max_edges = -1) {
    const int m = s.num_edges();
    if (m > 24) throw std::length_error("edge_subgraphs: more than 24 edges");
    if (max_edges < 0) max_edges = m;
    std::vector<LabeledGraph> out;
    for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
        if (std::popcount(mask) > max_edges) continue;
        std::vector<Edge> es;
        for (int i = 0; i < m; ++i)
            if ((mask >> i) & 1U) es.push_back(s.edges()[static_cast<std::size_t>(i)]);
        out.emplace_back(s.n(), std::move(es));
    }
    return out;
}

// Isomorphism classes of graphs without isolated vertices, with at most
// max_vertices vertices and max_edges edges, filtered by pred. Sorted by edge
// count, then by canonical form. Representatives live on [max_vertices].
inline std::vector<CanonicalGraph> graph_classes(int max_vertices, int max_edges,
                                                 const std::function<bool(const LabeledGraph&)>& pred) {
    std::vector<CanonicalGraph> out;
    if (max_vertices < 2 || max_edges < 1) {
        LabeledGraph empty(std::max(max_vertices, 1));
        if (pred(empty)) out.push_back(canonicalize(empty));
        return out;
    }
    EdgeSpace sp(max_vertices);
    std::map<std::pair<int, std::string>, CanonicalGraph> seen;
    for (EdgeMask m : submasks_up_to(sp.full(), max_edges)) {
        LabeledGraph g = sp.graph(m);
        if (!pred(g)) continue;
        CanonicalGraph c = canonicalize(g);
        seen.emplace(std::make_pair(g.num_edges(), c.form), std::move(c));
    }
    for (auto& [key, c] : seen) out.push_back(std::move(c));
    return out;
}

// Leafless classes (cycles and denser graphs, plus the empty graph) fitting in K_n with at most max_edges edges.
inline std::vector<CanonicalGraph> leafless_classes(int n, int max_edges) {
    int vmax = std::min(n, max_edges);
    return graph_classes(vmax, max_edges, [](const LabeledGraph& g) { return g.is_leafless(); });
}

}  // namespace lowdeg
