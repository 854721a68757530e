#pragma once

// Bitmask view of the edge set of the complete graph on [n]: edge (i,j)
// with i<j gets a fixed index, so subgraphs of K_n become 64-bit masks.

#include "lowdeg/graph/labeled_graph.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace lowdeg {

using EdgeMask = std::uint64_t;

class EdgeSpace {
public:
    explicit EdgeSpace(int n) : n_(n) {
        if (n < 1 || n * (n - 1) / 2 > 64) throw std::length_error("EdgeSpace supports at most 11 vertices");
        index_.assign(static_cast<std::size_t>(n * n), -1);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                index_[static_cast<std::size_t>(i * n + j)] = static_cast<int>(edges_.size());
                index_[static_cast<std::size_t>(j * n + i)] = static_cast<int>(edges_.size());
                edges_.emplace_back(i, j);
            }
    }

    int n() const noexcept { return n_; }
    int size() const noexcept { return static_cast<int>(edges_.size()); }
    EdgeMask full() const noexcept { return size() == 64 ? ~EdgeMask{0} : (EdgeMask{1} << size()) - 1; }
    const Edge& edge(int idx) const { return edges_.at(static_cast<std::size_t>(idx)); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    int index(int i, int j) const {
        int idx = index_.at(static_cast<std::size_t>(i * n_ + j));
        if (idx < 0) throw std::invalid_argument("not an edge");
        return idx;
    }
    int index(const Edge& e) const { return index(e.u, e.v); }

    EdgeMask mask(const LabeledGraph& g) const {
        if (g.n() != n_) throw std::invalid_argument("EdgeSpace: ambient size mismatch");
        EdgeMask m = 0;
        for (const Edge& e : g.edges()) m |= EdgeMask{1} << index(e);
        return m;
    }

    // Edge-induced graph of a mask.
    LabeledGraph graph(EdgeMask m) const {
        std::vector<Edge> es;
        for (EdgeMask r = m; r; r &= r - 1) es.push_back(edges_[static_cast<std::size_t>(std::countr_zero(r))]);
        return LabeledGraph(n_, std::move(es));
    }

    // Bitmask of endpoints.
    std::uint32_t vertex_mask(EdgeMask m) const {
        std::uint32_t vs = 0;
        for (EdgeMask r = m; r; r &= r - 1) {
            const Edge& e = edges_[static_cast<std::size_t>(std::countr_zero(r))];
            vs |= (1U << e.u) | (1U << e.v);
        }
        return vs;
    }

    // Mask of the image of m under the vertex permutation perm.
    EdgeMask permute(EdgeMask m, const std::vector<int>& perm) const {
        EdgeMask out = 0;
        for (EdgeMask r = m; r; r &= r - 1) {
            const Edge& e = edges_[static_cast<std::size_t>(std::countr_zero(r))];
            out |= EdgeMask{1} << index(perm[static_cast<std::size_t>(e.u)], perm[static_cast<std::size_t>(e.v)]);
        }
        return out;
    }

private:
    int n_;
    std::vector<Edge> edges_;
    std::vector<int> index_;
};

// All masks with popcount <= max_edges among the bits of `universe`, grouped by increasing popcount.
inline std::vector<EdgeMask> submasks_up_to(EdgeMask universe, int max_edges) {
    std::vector<EdgeMask> out;
    std::vector<int> bits;
    for (EdgeMask r = universe; r; r &= r - 1) bits.push_back(std::countr_zero(r));
    const int m = static_cast<int>(bits.size());
    // enumerate by increasing size using combination indices
    for (int size = 0; size <= std::min(max_edges, m); ++size) {
        std::vector<int> pick(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i) pick[static_cast<std::size_t>(i)] = i;
        while (true) {
            EdgeMask mk = 0;
            for (int i : pick) mk |= EdgeMask{1} << bits[static_cast<std::size_t>(i)];
            out.push_back(mk);
            int i = size - 1;
            while (i >= 0 && pick[static_cast<std::size_t>(i)] == m - size + i) --i;
            if (i < 0) break;
            ++pick[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < size; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return out;
}

}  // namespace lowdeg
