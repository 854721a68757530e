#pragma once

#include "lowdeg/graph/labeled_graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace lowdeg {

// Adjacency lists over [n] for the edges of g.
inline std::vector<std::vector<int>> adjacency(const LabeledGraph& g) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.n()));
    for (const Edge& e : g.edges()) {
        adj[static_cast<std::size_t>(e.u)].push_back(e.v);
        adj[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
}

// Connected components of g over its declared vertex set, each sorted; ordered by smallest vertex.
inline std::vector<LabeledGraph> connected_components(const LabeledGraph& g) {
    auto adj = adjacency(g);
    std::vector<char> seen(static_cast<std::size_t>(g.n()), 0);
    std::vector<LabeledGraph> out;
    for (int s : g.vertices()) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        std::vector<int> comp{s};
        seen[static_cast<std::size_t>(s)] = 1;
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (int y : adj[static_cast<std::size_t>(comp[i])])
                if (!seen[static_cast<std::size_t>(y)]) {
                    seen[static_cast<std::size_t>(y)] = 1;
                    comp.push_back(y);
                }
        std::sort(comp.begin(), comp.end());
        std::vector<Edge> es;
        for (const Edge& e : g.edges())
            if (std::binary_search(comp.begin(), comp.end(), e.u)) es.push_back(e);
        out.emplace_back(g.n(), std::move(comp), std::move(es));
    }
    return out;
}

inline bool is_connected(const LabeledGraph& g) { return connected_components(g).size() <= 1; }

// True when g is a single cycle (connected, every vertex of degree 2, at least 3 vertices).
inline bool is_cycle_graph(const LabeledGraph& g) {
    if (g.num_vertices() < 3 || g.num_edges() != g.num_vertices()) return false;
    for (int x : g.vertices())
        if (g.degree(x) != 2) return false;
    return is_connected(g);
}

// Every simple cycle of g with length <= max_len, as edge-induced graphs, sorted lexicographically by edge list.
inline std::vector<LabeledGraph> simple_cycles(const LabeledGraph& g, int max_len) {
    auto adj = adjacency(g);
    std::set<std::vector<Edge>> found;
    std::vector<int> path;
    std::vector<char> on(static_cast<std::size_t>(g.n()), 0);
    // cycles are rooted at their smallest vertex; the second vertex is smaller than the last
    auto rec = [&](auto&& self, int root, int x) -> void {
        for (int y : adj[static_cast<std::size_t>(x)]) {
            if (y < root) continue;
            if (y == root && path.size() >= 3 && path[1] < path.back()) {
                std::vector<Edge> es;
                for (std::size_t i = 0; i < path.size(); ++i) es.emplace_back(path[i], path[(i + 1) % path.size()]);
                std::sort(es.begin(), es.end());
                found.insert(std::move(es));
                continue;
            }
            if (on[static_cast<std::size_t>(y)] || static_cast<int>(path.size()) >= max_len) continue;
            on[static_cast<std::size_t>(y)] = 1;
            path.push_back(y);
            self(self, root, y);
            path.pop_back();
            on[static_cast<std::size_t>(y)] = 0;
        }
    };
    for (int r : g.vertices()) {
        path = {r};
        on[static_cast<std::size_t>(r)] = 1;
        rec(rec, r, r);
        on[static_cast<std::size_t>(r)] = 0;
    }
    std::vector<LabeledGraph> out;
    for (const auto& es : found) out.emplace_back(g.n(), es);
    return out;
}

inline bool has_cycle_up_to(const LabeledGraph& g, int max_len) {
    return max_len >= 3 && !simple_cycles(g, max_len).empty();
}

// |𝔉C_m(S,H)| per length m: independent cycles of s (cycle components) avoiding V(h).
inline std::map<int, int> independent_cycle_census(const LabeledGraph& s, const LabeledGraph& h) {
    if (!s.contains(h)) throw std::invalid_argument("independent_cycle_census: h is not a subgraph of s");
    std::map<int, int> census;
    for (const auto& comp : connected_components(s)) {
        if (!is_cycle_graph(comp)) continue;
        bool avoids = true;
        for (int x : comp.vertices())
            if (h.has_vertex(x)) avoids = false;
        if (avoids) ++census[comp.num_vertices()];
    }
    return census;
}

inline int independent_cycle_total(const LabeledGraph& s, const LabeledGraph& h) {
    int total = 0;
    for (auto [len, c] : independent_cycle_census(s, h)) total += c;
    return total;
}

// =============================================================
// Path/cycle decompositions of E(S)\E(H)
// =============================================================

enum class DecompositionVariant { A2, A3 };

struct PathCycleDecomposition {
    std::vector<LabeledGraph> cycles;
    std::vector<std::vector<int>> cycle_vertices;  // cyclic order
    std::vector<LabeledGraph> paths;
    std::vector<std::vector<int>> path_vertices;  // walk from first to last endpoint
    std::vector<std::pair<int, int>> endpoints;   // EndP; equal entries for closed paths
    int t = 0;
    int m = 0;
};

// |L(S)\V(H)| + tau(S) - tau(H)
inline int excess_gap(const LabeledGraph& s, const LabeledGraph& h) {
    int exposed = 0;
    for (int x : s.leaves())
        if (!h.has_vertex(x)) ++exposed;
    return exposed + s.excess() - h.excess();
}

namespace detail {

struct RemainingEdges {
    std::set<Edge> edges;
    std::vector<std::set<int>> nb;

    RemainingEdges(int n, const std::vector<Edge>& es) : nb(static_cast<std::size_t>(n)) {
        for (const Edge& e : es) {
            edges.insert(e);
            nb[static_cast<std::size_t>(e.u)].insert(e.v);
            nb[static_cast<std::size_t>(e.v)].insert(e.u);
        }
    }
    void remove(int a, int b) {
        edges.erase(Edge(a, b));
        nb[static_cast<std::size_t>(a)].erase(b);
        nb[static_cast<std::size_t>(b)].erase(a);
    }
    bool empty() const { return edges.empty(); }
};

inline LabeledGraph walk_graph(int n, const std::vector<int>& walk, bool closed) {
    std::vector<Edge> es;
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) es.emplace_back(walk[i], walk[i + 1]);
    if (closed) es.emplace_back(walk.back(), walk.front());
    return LabeledGraph(n, std::move(es));
}

// Shortest path from `from` to any vertex with target[v], using remaining edges
// except (skip_a, skip_b), through vertices with !blocked[v]. Returns the vertex sequence.
inline std::vector<int> bfs_to_target(const RemainingEdges& r, int from, int skip_a, int skip_b,
                                      const std::vector<char>& target) {
    std::map<int, int> parent;
    std::queue<int> q;
    q.push(from);
    parent[from] = -1;
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (int y : r.nb[static_cast<std::size_t>(x)]) {
            if ((x == skip_a && y == skip_b) || (x == skip_b && y == skip_a)) continue;
            if (target[static_cast<std::size_t>(y)]) {
                std::vector<int> out{y};
                for (int z = x; z != -1; z = parent[z]) out.push_back(z);
                std::reverse(out.begin(), out.end());
                return out;  // from ... y
            }
            if (parent.count(y)) continue;
            parent[y] = x;
            q.push(y);
        }
    }
    return {};
}

inline PathCycleDecomposition decompose_a2(const LabeledGraph& s, const LabeledGraph& h) {
    const int n = s.n();
    PathCycleDecomposition out;
    RemainingEdges rem(n, edge_difference(s, h));
    std::vector<char> covered(static_cast<std::size_t>(n), 0);
    for (int x : h.vertices()) covered[static_cast<std::size_t>(x)] = 1;
    for (int x : s.leaves()) covered[static_cast<std::size_t>(x)] = 1;

    while (!rem.empty()) {
        bool extended = false;
        for (int u = 0; u < n && !extended; ++u) {
            if (!covered[static_cast<std::size_t>(u)]) continue;
            for (int x : std::vector<int>(rem.nb[static_cast<std::size_t>(u)].begin(), rem.nb[static_cast<std::size_t>(u)].end())) {
                std::vector<int> walk;
                if (covered[static_cast<std::size_t>(x)]) {
                    walk = {u, x};
                } else {
                    auto tail = bfs_to_target(rem, x, u, x, covered);
                    if (tail.empty()) continue;
                    walk.push_back(u);
                    walk.insert(walk.end(), tail.begin(), tail.end());
                }
                for (std::size_t i = 0; i + 1 < walk.size(); ++i) rem.remove(walk[i], walk[i + 1]);
                for (int y : walk) covered[static_cast<std::size_t>(y)] = 1;
                out.paths.push_back(walk_graph(n, walk, false));
                out.endpoints.emplace_back(walk.front(), walk.back());
                out.path_vertices.push_back(std::move(walk));
                extended = true;
                break;
            }
        }
        if (extended) continue;
        // No path can be attached: some uncovered block hangs off the covered set by
        // at most one edge and therefore contains a cycle. Seed it with one.
        std::vector<int> best;
        for (int v = 0; v < n && best.empty(); ++v) {
            if (covered[static_cast<std::size_t>(v)] || rem.nb[static_cast<std::size_t>(v)].empty()) continue;
            for (int y : rem.nb[static_cast<std::size_t>(v)]) {
                if (covered[static_cast<std::size_t>(y)]) continue;
                std::vector<char> target(static_cast<std::size_t>(n), 0);
                target[static_cast<std::size_t>(v)] = 1;
                // restrict the search to uncovered vertices
                RemainingEdges local = rem;
                for (int z = 0; z < n; ++z)
                    if (covered[static_cast<std::size_t>(z)])
                        for (int w : std::vector<int>(local.nb[static_cast<std::size_t>(z)].begin(), local.nb[static_cast<std::size_t>(z)].end()))
                            local.remove(z, w);
                auto back = bfs_to_target(local, y, v, y, target);
                if (back.empty()) continue;
                std::vector<int> cyc{v};
                cyc.insert(cyc.end(), back.begin(), back.end() - 1);
                if (best.empty() || cyc.size() < best.size()) best = std::move(cyc);
            }
        }
        if (best.empty()) throw std::logic_error("decompose_difference: no attachable path or cycle");
        for (std::size_t i = 0; i < best.size(); ++i) rem.remove(best[i], best[(i + 1) % best.size()]);
        for (int y : best) covered[static_cast<std::size_t>(y)] = 1;
        out.cycles.push_back(walk_graph(n, best, true));
        out.cycle_vertices.push_back(std::move(best));
    }
    out.t = static_cast<int>(out.paths.size());
    out.m = static_cast<int>(out.cycles.size());
    return out;
}

inline PathCycleDecomposition decompose_a3(const LabeledGraph& s, const LabeledGraph& h) {
    const int n = s.n();
    PathCycleDecomposition out;
    RemainingEdges rem(n, edge_difference(s, h));
    std::vector<char> branch(static_cast<std::size_t>(n), 0);
    for (int x : s.vertices())
        if (h.has_vertex(x) || s.degree(x) != 2) branch[static_cast<std::size_t>(x)] = 1;

    for (int u = 0; u < n; ++u) {
        if (!branch[static_cast<std::size_t>(u)]) continue;
        while (!rem.nb[static_cast<std::size_t>(u)].empty()) {
            std::vector<int> walk{u};
            int prev = u;
            int x = *rem.nb[static_cast<std::size_t>(u)].begin();
            rem.remove(u, x);
            walk.push_back(x);
            while (!branch[static_cast<std::size_t>(x)]) {
                // interior vertex of degree 2: continue along its other edge
                int y = *rem.nb[static_cast<std::size_t>(x)].begin();
                rem.remove(x, y);
                prev = x;
                x = y;
                walk.push_back(x);
            }
            (void)prev;
            out.paths.push_back(walk_graph(n, walk, false));
            out.endpoints.emplace_back(walk.front(), walk.back());
            out.path_vertices.push_back(std::move(walk));
        }
    }
    // whatever is left consists of cycle components of S avoiding every branch vertex
    while (!rem.empty()) {
        int v = rem.edges.begin()->u;
        std::vector<int> cyc{v};
        int prev = v;
        int x = *rem.nb[static_cast<std::size_t>(v)].begin();
        while (x != v) {
            cyc.push_back(x);
            int next = -1;
            for (int y : rem.nb[static_cast<std::size_t>(x)])
                if (y != prev) next = y;
            prev = x;
            x = next;
        }
        for (std::size_t i = 0; i < cyc.size(); ++i) rem.remove(cyc[i], cyc[(i + 1) % cyc.size()]);
        out.cycles.push_back(walk_graph(n, cyc, true));
        out.cycle_vertices.push_back(std::move(cyc));
    }
    out.t = static_cast<int>(out.paths.size());
    out.m = static_cast<int>(out.cycles.size());
    return out;
}

}  // namespace detail

inline PathCycleDecomposition decompose_difference(const LabeledGraph& s, const LabeledGraph& h,
                                                   DecompositionVariant variant) {
    if (!s.contains(h)) throw std::invalid_argument("decompose_difference: h is not a subgraph of s");
    return variant == DecompositionVariant::A2 ? detail::decompose_a2(s, h) : detail::decompose_a3(s, h);
}

// Checks the structural properties of a decomposition; returns an empty string when all hold,
// otherwise a description of the first violation.
inline std::string check_decomposition(const LabeledGraph& s, const LabeledGraph& h,
                                       const PathCycleDecomposition& d, DecompositionVariant variant) {
    // edge partition
    std::vector<Edge> all;
    for (const auto& c : d.cycles) all.insert(all.end(), c.edges().begin(), c.edges().end());
    for (const auto& p : d.paths) all.insert(all.end(), p.edges().begin(), p.edges().end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) return "pieces share an edge";
    if (all != edge_difference(s, h)) return "pieces do not reassemble E(S)\\E(H)";

    std::set<int> leaves_s;
    for (int x : s.leaves()) leaves_s.insert(x);
    std::set<int> cycle_vs;
    for (std::size_t i = 0; i < d.cycles.size(); ++i) {
        if (!is_cycle_graph(d.cycles[i])) return "cycle piece is not a cycle";
        for (int x : d.cycles[i].vertices()) {
            if (h.has_vertex(x)) return "cycle meets V(H)";
            if (!cycle_vs.insert(x).second) return "cycles share a vertex";
        }
        if (variant == DecompositionVariant::A3) {
            for (int x : d.cycles[i].vertices())
                if (s.degree(x) != 2) return "A3 cycle is not independent in S";
        }
    }
    std::set<int> earlier;
    for (std::size_t j = 0; j < d.paths.size(); ++j) {
        const auto& walk = d.path_vertices[j];
        if (walk.size() < 2) return "path without edges";
        const int a = walk.front(), b = walk.back();
        std::set<int> interior(walk.begin() + 1, walk.end() - 1);
        if (interior.size() != walk.size() - 2) return "path repeats an interior vertex";
        if (interior.count(a) || interior.count(b)) return "path endpoint repeated inside";
        auto in_base = [&](int x) { return h.has_vertex(x) || cycle_vs.count(x) || leaves_s.count(x); };
        for (int x : interior)
            if (in_base(x)) return "path interior meets V(H), a cycle or a leaf";
        if (variant == DecompositionVariant::A2) {
            for (int x : {a, b})
                if (!in_base(x) && !earlier.count(x)) return "A2 endpoint not previously covered";
            for (int x : interior)
                if (earlier.count(x)) return "A2 interior meets an earlier path";
        } else {
            for (std::size_t k = 0; k < d.paths.size(); ++k) {
                if (k == j) continue;
                for (int x : d.path_vertices[k])
                    if (interior.count(x)) return "A3 interior meets another path";
            }
        }
        earlier.insert(walk.begin(), walk.end());
    }
    const int gap = excess_gap(s, h);
    if (variant == DecompositionVariant::A2 && d.t != gap)
        return "A2 path count " + std::to_string(d.t) + " != " + std::to_string(gap);
    if (variant == DecompositionVariant::A3 && d.t > 5 * gap)
        return "A3 path count " + std::to_string(d.t) + " > 5*" + std::to_string(gap);
    return {};
}

}  // namespace lowdeg
