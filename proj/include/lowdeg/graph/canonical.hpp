#pragma once

// Canonical forms by individualization/refinement, automorphism counting and
// subgraph embedding counts for small graphs.

#include "lowdeg/graph/labeled_graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace lowdeg {

inline constexpr int kCanonicalVertexBudget = 16;
inline constexpr int kAutomorphismVertexBudget = 16;

struct CanonicalGraph {
    std::string form;  // raw bytes, compared lexicographically
    int n_vertices = 0;
    int n_edges = 0;
    int n_isolated = 0;
    std::uint64_t aut = 0;  // automorphism count, 0 when not computed
    // Graph on [n_vertices] in canonical labeling; isolated vertices come last.
    LabeledGraph representative;

    std::string hex() const {
        static const char* digits = "0123456789abcdef";
        std::string out;
        out.reserve(form.size() * 2);
        for (unsigned char c : form) {
            out.push_back(digits[c >> 4]);
            out.push_back(digits[c & 15]);
        }
        return out;
    }

    friend bool operator==(const CanonicalGraph& a, const CanonicalGraph& b) { return a.form == b.form; }
    friend bool operator<(const CanonicalGraph& a, const CanonicalGraph& b) { return a.form < b.form; }
};

namespace detail {

struct SmallGraph {
    int v = 0;
    std::vector<std::uint32_t> adj;
    bool edge(int a, int b) const { return (adj[static_cast<std::size_t>(a)] >> b) & 1U; }
    int degree(int a) const { return std::popcount(adj[static_cast<std::size_t>(a)]); }
};

// Compact graph on the non-isolated vertices of g; `order` lists original labels.
inline SmallGraph compact(const LabeledGraph& g, std::vector<int>& order) {
    order.clear();
    for (int x : g.vertices())
        if (g.degree(x) > 0) order.push_back(x);
    if (static_cast<int>(order.size()) > 32) throw std::length_error("graph too large for compact form");
    std::map<int, int> pos;
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
    SmallGraph s;
    s.v = static_cast<int>(order.size());
    s.adj.assign(order.size(), 0);
    for (const Edge& e : g.edges()) {
        int a = pos[e.u], b = pos[e.v];
        s.adj[static_cast<std::size_t>(a)] |= 1U << b;
        s.adj[static_cast<std::size_t>(b)] |= 1U << a;
    }
    return s;
}

using Partition = std::vector<std::vector<int>>;

inline void refine(const SmallGraph& g, Partition& cells) {
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::uint32_t> masks;
        masks.reserve(cells.size());
        for (const auto& c : cells) {
            std::uint32_t m = 0;
            for (int x : c) m |= 1U << x;
            masks.push_back(m);
        }
        Partition next;
        next.reserve(cells.size());
        for (const auto& c : cells) {
            if (c.size() == 1) {
                next.push_back(c);
                continue;
            }
            std::vector<std::pair<std::vector<int>, int>> sig;
            sig.reserve(c.size());
            for (int x : c) {
                std::vector<int> counts(masks.size());
                for (std::size_t k = 0; k < masks.size(); ++k)
                    counts[k] = std::popcount(g.adj[static_cast<std::size_t>(x)] & masks[k]);
                sig.emplace_back(std::move(counts), x);
            }
            std::sort(sig.begin(), sig.end());
            std::size_t start = 0;
            for (std::size_t i = 1; i <= sig.size(); ++i) {
                if (i == sig.size() || sig[i].first != sig[start].first) {
                    std::vector<int> part;
                    for (std::size_t j = start; j < i; ++j) part.push_back(sig[j].second);
                    next.push_back(std::move(part));
                    start = i;
                }
            }
        }
        if (next.size() != cells.size()) changed = true;
        cells = std::move(next);
    }
}

inline std::string adjacency_code(const SmallGraph& g, const std::vector<int>& order) {
    std::string code;
    code.push_back(static_cast<char>(order.size()));
    unsigned char byte = 0;
    int bit = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            byte = static_cast<unsigned char>((byte << 1) | (g.edge(order[i], order[j]) ? 1 : 0));
            if (++bit == 8) {
                code.push_back(static_cast<char>(byte));
                byte = 0;
                bit = 0;
            }
        }
    if (bit) code.push_back(static_cast<char>(byte << (8 - bit)));
    return code;
}

struct CanonSearch {
    const SmallGraph& g;
    std::string best;
    std::vector<int> best_order;
    long leaves = 0;
    static constexpr long kLeafBudget = 4'000'000;

    void run(Partition cells) {
        refine(g, cells);
        std::size_t target = cells.size();
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (cells[i].size() > 1) {
                target = i;
                break;
            }
        if (target == cells.size()) {
            if (++leaves > kLeafBudget) throw std::length_error("canonical form search budget exceeded");
            std::vector<int> order;
            for (const auto& c : cells) order.push_back(c[0]);
            std::string code = adjacency_code(g, order);
            if (best_order.empty() || code > best) {
                best = std::move(code);
                best_order = std::move(order);
            }
            return;
        }
        const auto& cell = cells[target];
        std::vector<int> tried;
        for (int x : cell) {
            bool twin = false;
            for (int y : tried) {
                // swapping twins is an automorphism fixing the current partition
                if ((g.adj[static_cast<std::size_t>(x)] & ~(1U << y)) == (g.adj[static_cast<std::size_t>(y)] & ~(1U << x))) {
                    twin = true;
                    break;
                }
            }
            if (twin) continue;
            tried.push_back(x);
            Partition next;
            next.reserve(cells.size() + 1);
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i != target) {
                    next.push_back(cells[i]);
                    continue;
                }
                next.push_back({x});
                std::vector<int> rest;
                for (int y : cell)
                    if (y != x) rest.push_back(y);
                next.push_back(std::move(rest));
            }
            run(std::move(next));
        }
    }
};

inline std::vector<std::vector<int>> components(const SmallGraph& g) {
    std::vector<std::vector<int>> out;
    std::uint32_t seen = 0;
    for (int s = 0; s < g.v; ++s) {
        if ((seen >> s) & 1U) continue;
        std::vector<int> comp{s};
        seen |= 1U << s;
        for (std::size_t i = 0; i < comp.size(); ++i) {
            std::uint32_t nb = g.adj[static_cast<std::size_t>(comp[i])] & ~seen;
            for (; nb; nb &= nb - 1) {
                int y = std::countr_zero(nb);
                seen |= 1U << y;
                comp.push_back(y);
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

inline SmallGraph induced(const SmallGraph& g, const std::vector<int>& vs) {
    SmallGraph s;
    s.v = static_cast<int>(vs.size());
    s.adj.assign(vs.size(), 0);
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = 0; j < vs.size(); ++j)
            if (g.edge(vs[i], vs[j])) s.adj[i] |= 1U << j;
    return s;
}

inline std::uint64_t count_automorphisms(const SmallGraph& g) {
    if (g.v == 0) return 1;
    // BFS order keeps the adjacency constraints tight
    std::vector<int> order;
    std::uint32_t seen = 0;
    for (int s = 0; s < g.v; ++s) {
        if ((seen >> s) & 1U) continue;
        seen |= 1U << s;
        std::size_t head = order.size();
        order.push_back(s);
        for (; head < order.size(); ++head) {
            std::uint32_t nb = g.adj[static_cast<std::size_t>(order[head])] & ~seen;
            for (; nb; nb &= nb - 1) {
                int y = std::countr_zero(nb);
                seen |= 1U << y;
                order.push_back(y);
            }
        }
    }
    std::vector<int> image(static_cast<std::size_t>(g.v), -1);
    std::uint64_t count = 0;
    long nodes = 0;
    auto rec = [&](auto&& self, std::size_t i, std::uint32_t used) -> void {
        if (++nodes > 200'000'000) throw std::length_error("automorphism search budget exceeded");
        if (i == order.size()) {
            ++count;
            return;
        }
        int x = order[i];
        for (int y = 0; y < g.v; ++y) {
            if ((used >> y) & 1U) continue;
            if (g.degree(y) != g.degree(x)) continue;
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j)
                ok = g.edge(x, order[j]) == g.edge(y, image[static_cast<std::size_t>(order[j])]);
            if (!ok) continue;
            image[static_cast<std::size_t>(x)] = y;
            self(self, i + 1, used | (1U << y));
        }
    };
    rec(rec, 0, 0);
    return count;
}

inline std::uint64_t factorial_u64(int m) {
    std::uint64_t f = 1;
    for (int i = 2; i <= m; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

}  // namespace detail

// Original vertex labels listed in canonical order (non-isolated first, then isolated ascending).
inline std::vector<int> canonical_labeling(const LabeledGraph& g, std::string* form_out = nullptr) {
    std::vector<int> order;
    detail::SmallGraph sg = detail::compact(g, order);
    if (sg.v > kCanonicalVertexBudget)
        throw std::length_error("canonicalize: " + std::to_string(sg.v) + " non-isolated vertices exceeds budget " +
                                std::to_string(kCanonicalVertexBudget));
    struct Piece {
        std::string code;
        std::vector<int> labels;
    };
    std::vector<Piece> pieces;
    for (const auto& comp : detail::components(sg)) {
        detail::SmallGraph sub = detail::induced(sg, comp);
        detail::CanonSearch search{sub, {}, {}, 0};
        std::vector<int> all(comp.size());
        for (std::size_t i = 0; i < comp.size(); ++i) all[i] = static_cast<int>(i);
        search.run({all});
        Piece p;
        p.code = search.best;
        for (int local : search.best_order) p.labels.push_back(order[static_cast<std::size_t>(comp[static_cast<std::size_t>(local)])]);
        pieces.push_back(std::move(p));
    }
    std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
        return a.code.size() != b.code.size() ? a.code.size() > b.code.size() : a.code > b.code;
    });
    std::vector<int> labels;
    std::string form;
    auto iso = g.isolated();
    form.push_back(static_cast<char>(g.num_vertices()));
    form.push_back(static_cast<char>(iso.size()));
    form.push_back(static_cast<char>(pieces.size()));
    for (const auto& p : pieces) {
        form += p.code;
        labels.insert(labels.end(), p.labels.begin(), p.labels.end());
    }
    labels.insert(labels.end(), iso.begin(), iso.end());
    if (form_out) *form_out = std::move(form);
    return labels;
}

inline std::uint64_t automorphism_count(const LabeledGraph& g) {
    std::vector<int> order;
    detail::SmallGraph sg = detail::compact(g, order);
    if (sg.v > kAutomorphismVertexBudget)
        throw std::length_error("automorphism_count: " + std::to_string(sg.v) + " non-isolated vertices exceeds budget");
    const int iso = static_cast<int>(g.isolated().size());
    if (iso > 20) throw std::length_error("automorphism_count: too many isolated vertices");
    return detail::count_automorphisms(sg) * detail::factorial_u64(iso);
}

inline CanonicalGraph canonicalize(const LabeledGraph& g) {
    CanonicalGraph c;
    std::vector<int> labels = canonical_labeling(g, &c.form);
    c.n_vertices = g.num_vertices();
    c.n_edges = g.num_edges();
    c.n_isolated = static_cast<int>(g.isolated().size());
    std::vector<int> pos(static_cast<std::size_t>(g.n()), -1);
    for (std::size_t i = 0; i < labels.size(); ++i) pos[static_cast<std::size_t>(labels[i])] = static_cast<int>(i);
    std::vector<Edge> es;
    for (const Edge& e : g.edges()) es.emplace_back(pos[static_cast<std::size_t>(e.u)], pos[static_cast<std::size_t>(e.v)]);
    std::vector<int> vs(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) vs[i] = static_cast<int>(i);
    c.representative = LabeledGraph(c.n_vertices, std::move(vs), std::move(es));
    if (c.n_vertices - c.n_isolated <= 10) c.aut = automorphism_count(g);
    return c;
}

inline bool isomorphic(const LabeledGraph& a, const LabeledGraph& b) {
    return canonicalize(a).form == canonicalize(b).form;
}

// Number of subgraphs of s (vertex set and edge set) isomorphic to h.
inline std::uint64_t count_embeddings(const CanonicalGraph& h, const LabeledGraph& s) {
    if (h.n_vertices == 0) return 1;
    if (h.n_vertices > s.num_vertices()) return 0;
    if (s.num_vertices() > 32) throw std::length_error("count_embeddings: host too large");
    const LabeledGraph& rep = h.representative;
    std::vector<int> horder;
    detail::SmallGraph hg = detail::compact(rep, horder);
    std::vector<int> sorder = s.vertices();
    detail::SmallGraph sg;
    sg.v = static_cast<int>(sorder.size());
    sg.adj.assign(sorder.size(), 0);
    {
        std::map<int, int> pos;
        for (std::size_t i = 0; i < sorder.size(); ++i) pos[sorder[i]] = static_cast<int>(i);
        for (const Edge& e : s.edges()) {
            int a = pos[e.u], b = pos[e.v];
            sg.adj[static_cast<std::size_t>(a)] |= 1U << b;
            sg.adj[static_cast<std::size_t>(b)] |= 1U << a;
        }
    }
    std::vector<int> image(static_cast<std::size_t>(hg.v), -1);
    std::uint64_t maps = 0;
    auto rec = [&](auto&& self, int i, std::uint32_t used) -> void {
        if (i == hg.v) {
            // isolated vertices of h go to any unused host vertices
            std::uint64_t ways = 1;
            int free = sg.v - hg.v;
            for (int t = 0; t < h.n_isolated; ++t) ways *= static_cast<std::uint64_t>(free - t);
            maps += ways;
            return;
        }
        for (int y = 0; y < sg.v; ++y) {
            if ((used >> y) & 1U) continue;
            if (sg.degree(y) < hg.degree(i)) continue;
            bool ok = true;
            for (int j = 0; j < i && ok; ++j)
                if (hg.edge(i, j)) ok = sg.edge(y, image[static_cast<std::size_t>(j)]);
            if (!ok) continue;
            image[static_cast<std::size_t>(i)] = y;
            self(self, i + 1, used | (1U << y));
        }
    };
    rec(rec, 0, 0);
    std::uint64_t aut = h.aut ? h.aut : automorphism_count(rep);
    return maps / aut;
}

}  // namespace lowdeg
