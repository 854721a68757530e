#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lowdeg {

struct Edge {
    int u = 0;
    int v = 0;

    Edge() = default;
    Edge(int a, int b) : u(std::min(a, b)), v(std::max(a, b)) {
        if (a == b) throw std::invalid_argument("self-loop " + std::to_string(a));
    }
    friend auto operator<=>(const Edge&, const Edge&) = default;
    bool touches(int w) const noexcept { return u == w || v == w; }
    int other(int w) const noexcept { return u == w ? v : u; }
};

// A subgraph of the complete graph on [n] with an explicit vertex set.
// Vertices without incident edges are the isolated vertices of the graph.
class LabeledGraph {
public:
    LabeledGraph() = default;
    explicit LabeledGraph(int n) : n_(check_n(n)) {}

    // Vertex set is the set of endpoints (no isolated vertices).
    LabeledGraph(int n, std::vector<Edge> edges) : n_(check_n(n)), edges_(std::move(edges)) {
        normalize_edges();
        vertices_ = endpoint_set();
    }
    LabeledGraph(int n, std::initializer_list<std::pair<int, int>> edges) : n_(check_n(n)) {
        for (auto [a, b] : edges) edges_.emplace_back(a, b);
        normalize_edges();
        vertices_ = endpoint_set();
    }

    // Explicit vertex set; it must contain every endpoint.
    LabeledGraph(int n, std::vector<int> vertices, std::vector<Edge> edges)
        : n_(check_n(n)), vertices_(std::move(vertices)), edges_(std::move(edges)) {
        normalize_edges();
        std::sort(vertices_.begin(), vertices_.end());
        vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
        for (int x : vertices_)
            if (x < 0 || x >= n_) throw std::out_of_range("vertex outside [n]");
        for (const Edge& e : edges_)
            if (!has_vertex(e.u) || !has_vertex(e.v))
                throw std::invalid_argument("edge endpoint missing from the declared vertex set");
    }

    static LabeledGraph complete(int n) {
        std::vector<Edge> es;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
        std::vector<int> vs(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) vs[static_cast<std::size_t>(i)] = i;
        return LabeledGraph(n, std::move(vs), std::move(es));
    }

    // Cycle through the listed vertices in order.
    static LabeledGraph cycle(int n, std::span<const int> order) {
        if (order.size() < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
        std::vector<Edge> es;
        for (std::size_t i = 0; i < order.size(); ++i) es.emplace_back(order[i], order[(i + 1) % order.size()]);
        return LabeledGraph(n, std::move(es));
    }
    static LabeledGraph cycle(int n, std::initializer_list<int> order) {
        return cycle(n, std::span<const int>(order.begin(), order.size()));
    }

    static LabeledGraph path(int n, std::span<const int> order) {
        std::vector<Edge> es;
        for (std::size_t i = 0; i + 1 < order.size(); ++i) es.emplace_back(order[i], order[i + 1]);
        if (order.size() == 1) return LabeledGraph(n, {order[0]}, {});
        return LabeledGraph(n, std::move(es));
    }
    static LabeledGraph path(int n, std::initializer_list<int> order) {
        return path(n, std::span<const int>(order.begin(), order.size()));
    }

    int n() const noexcept { return n_; }
    const std::vector<int>& vertices() const noexcept { return vertices_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    int num_vertices() const noexcept { return static_cast<int>(vertices_.size()); }
    int num_edges() const noexcept { return static_cast<int>(edges_.size()); }
    bool empty() const noexcept { return vertices_.empty() && edges_.empty(); }

    // tau = |E| - |V| over the declared vertex set.
    int excess() const noexcept { return num_edges() - num_vertices(); }

    bool has_vertex(int x) const { return std::binary_search(vertices_.begin(), vertices_.end(), x); }
    bool has_edge(int a, int b) const {
        if (a == b) return false;
        return std::binary_search(edges_.begin(), edges_.end(), Edge(a, b));
    }
    bool has_edge(const Edge& e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

    int degree(int x) const {
        int d = 0;
        for (const Edge& e : edges_) d += e.touches(x) ? 1 : 0;
        return d;
    }

    std::vector<int> neighbors(int x) const {
        std::vector<int> out;
        for (const Edge& e : edges_)
            if (e.touches(x)) out.push_back(e.other(x));
        std::sort(out.begin(), out.end());
        return out;
    }

    // Vertices of degree exactly one.
    std::vector<int> leaves() const {
        std::vector<int> out;
        for (int x : vertices_)
            if (degree(x) == 1) out.push_back(x);
        return out;
    }

    std::vector<int> isolated() const {
        std::vector<int> out;
        for (int x : vertices_)
            if (degree(x) == 0) out.push_back(x);
        return out;
    }

    bool is_leafless() const {
        for (int x : vertices_)
            if (degree(x) == 1) return false;
        return true;
    }

    // Drops isolated vertices.
    LabeledGraph edge_induced() const { return LabeledGraph(n_, edges_); }

    // H ⊂ *this: vertex and edge containment.
    bool contains(const LabeledGraph& h) const {
        if (h.n_ != n_) return false;
        return std::includes(vertices_.begin(), vertices_.end(), h.vertices_.begin(), h.vertices_.end()) &&
               std::includes(edges_.begin(), edges_.end(), h.edges_.begin(), h.edges_.end());
    }

    // Image under a permutation of [n] (perm[i] is the new label of i).
    LabeledGraph relabeled(std::span<const int> perm) const {
        if (static_cast<int>(perm.size()) != n_) throw std::invalid_argument("permutation size mismatch");
        std::vector<int> vs;
        vs.reserve(vertices_.size());
        for (int x : vertices_) vs.push_back(perm[static_cast<std::size_t>(x)]);
        std::vector<Edge> es;
        es.reserve(edges_.size());
        for (const Edge& e : edges_)
            es.emplace_back(perm[static_cast<std::size_t>(e.u)], perm[static_cast<std::size_t>(e.v)]);
        return LabeledGraph(n_, std::move(vs), std::move(es));
    }

    LabeledGraph with_extra_vertices(std::span<const int> extra) const {
        std::vector<int> vs = vertices_;
        vs.insert(vs.end(), extra.begin(), extra.end());
        return LabeledGraph(n_, std::move(vs), edges_);
    }

    friend bool operator==(const LabeledGraph&, const LabeledGraph&) = default;

    std::string str() const {
        std::string s = "{";
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            if (i) s += ",";
            s += "(" + std::to_string(edges_[i].u) + "," + std::to_string(edges_[i].v) + ")";
        }
        s += "}";
        auto iso = isolated();
        if (!iso.empty()) {
            s += "+iso[";
            for (std::size_t i = 0; i < iso.size(); ++i) s += (i ? "," : "") + std::to_string(iso[i]);
            s += "]";
        }
        return s;
    }

private:
    int n_ = 0;
    std::vector<int> vertices_;
    std::vector<Edge> edges_;

    static int check_n(int n) {
        if (n < 0) throw std::invalid_argument("negative vertex count");
        return n;
    }

    void normalize_edges() {
        std::sort(edges_.begin(), edges_.end());
        if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
            throw std::invalid_argument("duplicate edge");
        for (const Edge& e : edges_)
            if (e.u < 0 || e.v >= n_) throw std::out_of_range("edge endpoint outside [n]");
    }

    std::vector<int> endpoint_set() const {
        std::vector<int> vs;
        vs.reserve(edges_.size() * 2);
        for (const Edge& e : edges_) {
            vs.push_back(e.u);
            vs.push_back(e.v);
        }
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        return vs;
    }
};

struct EdgeInducedOps {
    LabeledGraph cap;
    LabeledGraph cup;
    LabeledGraph symdiff;
};

// Edge-induced intersection, union and symmetric difference (no isolated vertices).
inline EdgeInducedOps edge_induced_ops(const LabeledGraph& s, const LabeledGraph& t) {
    if (s.n() != t.n()) throw std::invalid_argument("edge_induced_ops: ambient sizes differ");
    std::vector<Edge> cap, cup, sym;
    const auto& a = s.edges();
    const auto& b = t.edges();
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(cap));
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(cup));
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(sym));
    return {LabeledGraph(s.n(), std::move(cap)), LabeledGraph(s.n(), std::move(cup)),
            LabeledGraph(s.n(), std::move(sym))};
}

// S ∪ T keeping both declared vertex sets.
inline LabeledGraph graph_union(const LabeledGraph& s, const LabeledGraph& t) {
    if (s.n() != t.n()) throw std::invalid_argument("graph_union: ambient sizes differ");
    std::vector<int> vs;
    std::set_union(s.vertices().begin(), s.vertices().end(), t.vertices().begin(), t.vertices().end(),
                   std::back_inserter(vs));
    std::vector<Edge> es;
    std::set_union(s.edges().begin(), s.edges().end(), t.edges().begin(), t.edges().end(), std::back_inserter(es));
    return LabeledGraph(s.n(), std::move(vs), std::move(es));
}

// Edges of s not in t.
inline std::vector<Edge> edge_difference(const LabeledGraph& s, const LabeledGraph& t) {
    std::vector<Edge> out;
    std::set_difference(s.edges().begin(), s.edges().end(), t.edges().begin(), t.edges().end(),
                        std::back_inserter(out));
    return out;
}

inline bool vertex_disjoint(const LabeledGraph& s, const LabeledGraph& t) {
    std::vector<int> common;
    std::set_intersection(s.vertices().begin(), s.vertices().end(), t.vertices().begin(), t.vertices().end(),
                          std::back_inserter(common));
    return common.empty();
}

inline int excess(const LabeledGraph& g) { return g.excess(); }

}  // namespace lowdeg
