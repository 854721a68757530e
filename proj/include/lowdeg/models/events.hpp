#pragma once

#include "lowdeg/models/potentials.hpp"
#include "lowdeg/models/samplers.hpp"

#include <stdexcept>

namespace lowdeg {

enum class GraphModel { ER, SBM };

// ER: no Phi-bad subgraph on at most D^2 vertices.
// SBM: no Upsilon-bad subgraph on at most D^3 vertices and no cycle of length <= N.
inline bool event_E_indicator(const LabeledGraph& g, const ModelParams& m, GraphModel model,
                              std::size_t budget = 2'000'000) {
    const LabeledGraph core = g.edge_induced();
    if (model == GraphModel::ER) {
        const int vmax = std::min(m.D * m.D, g.n());
        return !find_low_potential_subgraph(core, phi_log(m), log_bad_threshold(m.n), vmax, budget).has_value();
    }
    if (m.N >= 3 && has_cycle_up_to(core, m.N)) return false;
    const int vmax = static_cast<int>(std::min<long>(static_cast<long>(m.D) * m.D * m.D, g.n()));
    return !find_low_potential_subgraph(core, upsilon_log(m), log_bad_threshold(m.n), vmax, budget).has_value();
}

// Monte Carlo estimate of P*(E) over the parent graph G.
inline double event_E_rate(const ModelParams& m, GraphModel model, int trials, std::uint64_t seed) {
    if (trials <= 0) throw std::invalid_argument("event_E_rate: trials must be positive");
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
        Rng rng = stream(seed, static_cast<std::uint64_t>(t));
        LabeledGraph g = model == GraphModel::ER ? sample_erdos_renyi(m.n, to_double(m.p), rng) : sample_sbm(m, rng).graph;
        hits += event_E_indicator(g, m, model);
    }
    return static_cast<double>(hits) / trials;
}

}  // namespace lowdeg
