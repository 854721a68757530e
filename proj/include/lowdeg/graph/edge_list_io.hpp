#pragma once

// Edge-list text format: "n m" on the first line, then m lines "u v" (0-based).

#include "lowdeg/graph/labeled_graph.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace lowdeg {

inline void write_edge_list(std::ostream& os, const LabeledGraph& g) {
    os << g.n() << ' ' << g.num_edges() << '\n';
    for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << '\n';
}

inline std::string to_edge_list(const LabeledGraph& g) {
    std::ostringstream os;
    write_edge_list(os, g);
    return os.str();
}

// All n vertices are declared, so isolated vertices survive a round trip.
inline LabeledGraph read_edge_list(std::istream& is) {
    long n = -1, m = -1;
    if (!(is >> n >> m) || n < 0 || m < 0) throw std::runtime_error("edge list: bad header");
    std::vector<Edge> es;
    es.reserve(static_cast<std::size_t>(m));
    for (long i = 0; i < m; ++i) {
        long u, v;
        if (!(is >> u >> v)) throw std::runtime_error("edge list: truncated at edge " + std::to_string(i));
        if (u < 0 || v < 0 || u >= n || v >= n) throw std::runtime_error("edge list: vertex out of range");
        es.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    std::vector<int> vs(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) vs[static_cast<std::size_t>(i)] = static_cast<int>(i);
    return LabeledGraph(static_cast<int>(n), std::move(vs), std::move(es));
}

inline LabeledGraph from_edge_list(const std::string& text) {
    std::istringstream is(text);
    return read_edge_list(is);
}

}  // namespace lowdeg
