#pragma once

#include "lowdeg/graph/labeled_graph.hpp"
#include "lowdeg/graph/structure.hpp"
#include "lowdeg/models/params.hpp"
#include "lowdeg/models/potentials.hpp"
#include "lowdeg/models/rng.hpp"

#include <optional>
#include <set>
#include <vector>

namespace lowdeg {

// One draw (pi*, sigma*, G, A, B). A = G∘J, and B carries G through pi*:
// every edge (u,v) of G surviving K appears in B as (pi*(u), pi*(v)).
struct CorrelatedSample {
    std::vector<int> pi_star;
    std::optional<std::vector<int>> sigma_star;
    LabeledGraph parent;
    std::optional<LabeledGraph> pruned;  // G' of the modified SBM
    LabeledGraph left, right;
};

inline LabeledGraph on_all_vertices(int n, std::vector<Edge> edges) {
    std::vector<int> vs(static_cast<std::size_t>(n));
    std::iota(vs.begin(), vs.end(), 0);
    return LabeledGraph(n, std::move(vs), std::move(edges));
}

inline LabeledGraph sample_erdos_renyi(int n, double p, Rng& rng) {
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (bernoulli(rng, p)) es.emplace_back(i, j);
    return on_all_vertices(n, std::move(es));
}

inline std::vector<int> sample_labels(int n, int k, Rng& rng) {
    std::vector<int> sigma(static_cast<std::size_t>(n));
    for (int& x : sigma) x = uniform_int(rng, k);
    return sigma;
}

inline LabeledGraph sample_sbm_given_labels(const ModelParams& m, const std::vector<int>& sigma, Rng& rng) {
    const double pin = to_double(m.sbm_in()), pout = to_double(m.sbm_out());
    std::vector<Edge> es;
    for (int i = 0; i < m.n; ++i)
        for (int j = i + 1; j < m.n; ++j)
            if (bernoulli(rng, sigma[static_cast<std::size_t>(i)] == sigma[static_cast<std::size_t>(j)] ? pin : pout))
                es.emplace_back(i, j);
    return on_all_vertices(m.n, std::move(es));
}

// Draws pi*, then J and K over the edges of g in order.
inline void subsample_into(CorrelatedSample& out, const LabeledGraph& g, double s, Rng& rng) {
    const int n = g.n();
    out.pi_star = uniform_permutation(rng, n);
    std::vector<Edge> a, b;
    for (const Edge& e : g.edges())
        if (bernoulli(rng, s)) a.push_back(e);
    for (const Edge& e : g.edges())
        if (bernoulli(rng, s))
            b.emplace_back(out.pi_star[static_cast<std::size_t>(e.u)], out.pi_star[static_cast<std::size_t>(e.v)]);
    out.left = on_all_vertices(n, std::move(a));
    out.right = on_all_vertices(n, std::move(b));
}

inline CorrelatedSample sample_correlated_er(const ModelParams& m, Rng& rng) {
    CorrelatedSample out;
    out.parent = sample_erdos_renyi(m.n, to_double(m.p), rng);
    subsample_into(out, out.parent, to_double(m.s), rng);
    return out;
}

inline CorrelatedSample sample_correlated_er(const ModelParams& m, std::uint64_t seed, std::uint64_t trial = 0) {
    Rng rng = stream(seed, trial);
    return sample_correlated_er(m, rng);
}

struct SbmDraw {
    std::vector<int> sigma_star;
    LabeledGraph graph;
};

inline SbmDraw sample_sbm(const ModelParams& m, Rng& rng) {
    SbmDraw d;
    d.sigma_star = sample_labels(m.n, m.k, rng);
    d.graph = sample_sbm_given_labels(m, d.sigma_star, rng);
    return d;
}

inline SbmDraw sample_sbm(const ModelParams& m, std::uint64_t seed, std::uint64_t trial = 0) {
    Rng rng = stream(seed, trial);
    return sample_sbm(m, rng);
}

inline CorrelatedSample sample_correlated_sbm(const ModelParams& m, Rng& rng) {
    auto d = sample_sbm(m, rng);
    CorrelatedSample out;
    out.sigma_star = std::move(d.sigma_star);
    out.parent = std::move(d.graph);
    subsample_into(out, out.parent, to_double(m.s), rng);
    return out;
}

inline CorrelatedSample sample_correlated_sbm(const ModelParams& m, std::uint64_t seed, std::uint64_t trial = 0) {
    Rng rng = stream(seed, trial);
    return sample_correlated_sbm(m, rng);
}

struct ModifiedSbmOptions {
    // Skip a listed graph when one of its edges was already removed on behalf of
    // an earlier one. Default: removals are idempotent and every present graph draws.
    bool skip_already_deleted = false;
    std::size_t budget = 2'000'000;
};

// Self-bad subgraphs of g on at most D^3 vertices together with cycles of length
// <= N, deduplicated and ordered lexicographically by sorted edge list.
inline std::vector<LabeledGraph> removal_list(const LabeledGraph& g, const ModelParams& m, std::size_t budget) {
    const long cube = static_cast<long>(m.D) * m.D * m.D;
    const int vmax = static_cast<int>(std::min<long>(cube, g.n()));
    auto bad = self_bad_subgraphs(g.edge_induced(), m, vmax, budget);
    auto cycles = simple_cycles(g.edge_induced(), m.N);
    std::set<std::vector<Edge>> keys;
    std::vector<LabeledGraph> out;
    for (auto* list : {&bad, &cycles})
        for (auto& h : *list)
            if (keys.insert(h.edges()).second) out.push_back(h);
    std::sort(out.begin(), out.end(), [](const LabeledGraph& a, const LabeledGraph& b) { return a.edges() < b.edges(); });
    return out;
}

// G' from G: one uniform edge is removed for every listed graph present in G,
// drawing in list order.
inline LabeledGraph prune_listed(const LabeledGraph& g, const ModelParams& m, Rng& rng,
                                 const ModifiedSbmOptions& opt = {}) {
    std::set<Edge> removed;
    for (const LabeledGraph& b : removal_list(g, m, opt.budget)) {
        const auto& es = b.edges();
        if (opt.skip_already_deleted &&
            std::any_of(es.begin(), es.end(), [&](const Edge& e) { return removed.count(e) > 0; }))
            continue;
        removed.insert(es[static_cast<std::size_t>(uniform_int(rng, static_cast<int>(es.size())))]);
    }
    std::vector<Edge> kept;
    for (const Edge& e : g.edges())
        if (!removed.count(e)) kept.push_back(e);
    return LabeledGraph(g.n(), g.vertices(), std::move(kept));
}

inline CorrelatedSample sample_modified_sbm(const ModelParams& m, Rng& rng, const ModifiedSbmOptions& opt = {}) {
    auto d = sample_sbm(m, rng);
    CorrelatedSample out;
    out.sigma_star = std::move(d.sigma_star);
    out.parent = std::move(d.graph);
    out.pruned = prune_listed(out.parent, m, rng, opt);
    subsample_into(out, *out.pruned, to_double(m.s), rng);
    return out;
}

inline CorrelatedSample sample_modified_sbm(const ModelParams& m, std::uint64_t seed, std::uint64_t trial = 0,
                                            const ModifiedSbmOptions& opt = {}) {
    Rng rng = stream(seed, trial);
    return sample_modified_sbm(m, rng, opt);
}

}  // namespace lowdeg
