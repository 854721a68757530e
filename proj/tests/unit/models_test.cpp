#include "lowdeg/graph/edge_space.hpp"
#include "lowdeg/models/events.hpp"
#include "lowdeg/stats.hpp"

#include <catch_amalgamated.hpp>

#include <set>

using namespace lowdeg;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

bool edges_subset(const LabeledGraph& small, const LabeledGraph& big) {
    return std::includes(big.edges().begin(), big.edges().end(), small.edges().begin(), small.edges().end());
}

LabeledGraph preimage(const LabeledGraph& b, const std::vector<int>& pi) {
    return b.relabeled(inverse_permutation(pi));
}

LabeledGraph random_graph(Rng& rng, int n, double p) {
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (bernoulli(rng, p)) es.emplace_back(i, j);
    return LabeledGraph(n, std::move(es));
}

// Oracle: brute force over every edge subset of a small graph.
struct BruteSubgraphs {
    const LabeledGraph& g;
    template <class F>
    void each(F&& f) const {
        const int m = g.num_edges();
        for (std::uint32_t mask = 1; mask < (1U << m); ++mask) {
            std::vector<Edge> es;
            for (int i = 0; i < m; ++i)
                if ((mask >> i) & 1U) es.push_back(g.edges()[static_cast<std::size_t>(i)]);
            f(LabeledGraph(g.n(), std::move(es)));
        }
    }
};

}  // namespace

TEST_CASE("reparameterization round trip", "[models]") {
    auto a = ModelParams::correlated_er_ps(10, Rational(2, 7), Rational(3, 5));
    CHECK(a.q == Rational(6, 35));
    CHECK(a.rho == Rational(3, 5) * Rational(5, 7) / (1 - Rational(6, 35)));
    auto b = ModelParams::correlated_er_qrho(10, a.q, a.rho);
    CHECK(b.p == a.p);
    CHECK(b.s == a.s);
    Rng rng = stream(1);
    for (int t = 0; t < 200; ++t) {
        double p = 0.01 + 0.98 * uniform01(rng), s = 0.01 + 0.98 * uniform01(rng);
        double q = p * s, rho = s * (1 - p) / (1 - p * s);
        double s2 = q + rho * (1 - q), p2 = q / s2;
        REQUIRE_THAT(s2, WithinAbs(s, 1e-12));
        REQUIRE_THAT(p2, WithinAbs(p, 1e-12));
    }
}

TEST_CASE("parameter validation fails fast", "[models]") {
    CHECK_THROWS(ModelParams::correlated_er_ps(10, Rational(3, 2), Rational(1, 2)));
    CHECK_THROWS(ModelParams::correlated_er_ps(1, Rational(1, 2), Rational(1, 2)));
    CHECK_THROWS(ModelParams::sbm(4, 2, Rational(4), Rational(1, 2)));  // (1+eps)lambda/n > 1
    CHECK_THROWS(ModelParams::sbm(10, 1, Rational(1), Rational(1, 2)));
    auto m = ModelParams::sbm(100, 3, Rational(2), Rational(0));
    CHECK(m.sbm_in() == m.sbm_out());
    CHECK(m.sbm_in() == Rational(2, 100));
}

TEST_CASE("correlated ER structure", "[models][sampler]") {
    auto m = ModelParams::correlated_er_qrho(60, Rational(1, 5), Rational(1, 2));
    for (std::uint64_t t = 0; t < 20; ++t) {
        auto x = sample_correlated_er(m, 9, t);
        REQUIRE(is_permutation_of_n(x.pi_star));
        REQUIRE(edges_subset(x.left, x.parent));
        REQUIRE(edges_subset(preimage(x.right, x.pi_star), x.parent));
    }
    auto full = ModelParams::correlated_er_ps(30, Rational(1, 3), Rational(1));
    auto x = sample_correlated_er(full, 4);
    CHECK(x.left == x.parent);
    CHECK(x.right == x.parent.relabeled(x.pi_star));
    // same seed, same draw
    auto y = sample_correlated_er(m, 77, 3), z = sample_correlated_er(m, 77, 3);
    CHECK(y.right == z.right);
    CHECK(y.pi_star == z.pi_star);
}

TEST_CASE("correlated ER marginal density and correlation", "[models][sampler][mc]") {
    const double q = 0.3, rho = 0.5;
    auto m = ModelParams::correlated_er_qrho(300, rat("0.3"), rat("0.5"));
    RunningMoments density, corr;
    for (std::uint64_t t = 0; t < 60; ++t) {
        auto x = sample_correlated_er(m, 2024, t);
        const double pairs = 300.0 * 299 / 2;
        double na = x.left.num_edges(), nb = x.right.num_edges();
        double both = 0;
        auto pre = preimage(x.right, x.pi_star);
        std::set<Edge> bset(pre.edges().begin(), pre.edges().end());
        for (const Edge& e : x.left.edges()) both += bset.count(e);
        double pa = na / pairs, pb = nb / pairs, p11 = both / pairs;
        density.add(pa);
        corr.add((p11 - pa * pb) / std::sqrt(pa * (1 - pa) * pb * (1 - pb)));
    }
    CHECK(std::abs(density.mean - q) <= 3 * binomial_se(q, 60 * 300.0 * 299 / 2));
    CHECK(std::abs(corr.mean - rho) <= 3 * corr.stderr_of_mean());
}

TEST_CASE("SBM edge frequencies and mean degree", "[models][sampler][mc]") {
    auto m = ModelParams::sbm(300, 2, Rational(2), Rational(1, 2));
    const double pin = to_double(m.sbm_in()), pout = to_double(m.sbm_out());
    double in_pairs = 0, in_edges = 0, out_pairs = 0, out_edges = 0;
    RunningMoments degree;
    for (std::uint64_t t = 0; t < 100; ++t) {
        auto d = sample_sbm(m, 5, t);
        std::vector<long> per(2, 0);
        for (int x : d.sigma_star) ++per[static_cast<std::size_t>(x)];
        double same = per[0] * (per[0] - 1) / 2.0 + per[1] * (per[1] - 1) / 2.0;
        in_pairs += same;
        out_pairs += 300.0 * 299 / 2 - same;
        for (const Edge& e : d.graph.edges())
            (d.sigma_star[static_cast<std::size_t>(e.u)] == d.sigma_star[static_cast<std::size_t>(e.v)] ? in_edges : out_edges) += 1;
        degree.add(2.0 * d.graph.num_edges() / 300);
    }
    CHECK(within_binomial(in_edges / in_pairs, pin, in_pairs));
    CHECK(within_binomial(out_edges / out_pairs, pout, out_pairs));
    CHECK(std::abs(degree.mean - 2.0 * 299 / 300) <= 3 * degree.stderr_of_mean());
}

TEST_CASE("correlated SBM", "[models][sampler][mc]") {
    auto full = ModelParams::sbm(50, 3, Rational(3), Rational(1, 5), Rational(1));
    auto x = sample_correlated_sbm(full, 8);
    CHECK(x.left == x.parent);
    CHECK(x.right == x.parent.relabeled(x.pi_star));
    REQUIRE(x.sigma_star.has_value());

    auto m = ModelParams::sbm(200, 2, Rational(3), Rational(2, 5), Rational(1, 2));
    double a_edges = 0, trials = 150;
    double table[2][2] = {{0, 0}, {0, 0}};
    for (std::uint64_t t = 0; t < 150; ++t) {
        auto y = sample_correlated_sbm(m, 31, t);
        REQUIRE(edges_subset(y.left, y.parent));
        REQUIRE(edges_subset(preimage(y.right, y.pi_star), y.parent));
        a_edges += y.left.num_edges();
        auto pre = preimage(y.right, y.pi_star);
        for (const Edge& e : y.parent.edges()) table[y.left.has_edge(e)][pre.has_edge(e)] += 1;
    }
    const double pairs = trials * 200 * 199 / 2, target = to_double(m.lambda * m.s / m.n);
    CHECK(within_binomial(a_edges / pairs, target, pairs));
    CHECK(chi_square_2x2(table).p_value > 0.001);
}

TEST_CASE("SBM with eps=0 matches ER in law", "[models][sampler][mc]") {
    auto sbm = ModelParams::sbm(60, 2, Rational(3), Rational(0), Rational(1, 2));
    auto er = ModelParams::correlated_er_ps(60, Rational(3, 60), Rational(1, 2));
    std::vector<double> a, b;
    for (std::uint64_t t = 0; t < 2000; ++t) {
        a.push_back(sample_correlated_sbm(sbm, 100, t).left.num_edges());
        b.push_back(sample_correlated_er(er, 200, t).left.num_edges());
    }
    CHECK(ks_two_sample(a, b).p_value > 0.01);
}

TEST_CASE("Phi potential", "[models][potential]") {
    auto m = ModelParams::correlated_er_qrho(10'000, Rational(1, 1000), Rational(1, 2));
    m.D = 4;
    LabeledGraph empty(10'000);
    CHECK(phi_potential(empty, m) == 1.0);
    CHECK(is_admissible_er(empty, m));
    auto c4 = LabeledGraph::cycle(10'000, {0, 1, 2, 3});
    double by_hand = 4 * std::log(1e8 * std::pow(4.0, 20)) + 4 * std::log(1e-3 * std::pow(4.0, 6));
    CHECK_THAT(phi_log(m)(c4), WithinRel(by_hand, 1e-12));
    CHECK(phi_potential(c4, m) > 1);
    CHECK_FALSE(is_bad_phi(c4, m));
    CHECK(is_admissible_er(c4, m));

    // submodularity of Phi on random pairs
    auto small = ModelParams::correlated_er_qrho(50, Rational(1, 50), Rational(1, 2));
    small.D = 2;
    const auto f = phi_log(small);
    Rng rng = stream(3);
    for (int t = 0; t < 2000; ++t) {
        auto s = random_graph(rng, 8, 0.4), u = random_graph(rng, 8, 0.4);
        auto ops = edge_induced_ops(s, u);
        REQUIRE(f(graph_union(s, u)) + f(ops.cap) <= f(s) + f(u) + 1e-9);
    }
}

TEST_CASE("potentials multiply over vertex-disjoint unions", "[models][potential]") {
    auto m = ModelParams::sbm(40, 3, Rational(2), Rational(1, 3));
    m.D = 2;
    Rng rng = stream(12);
    for (int t = 0; t < 200; ++t) {
        auto a = random_graph(rng, 5, 0.5);
        auto b = random_graph(rng, 5, 0.5);
        std::vector<int> shift(40);
        std::iota(shift.begin(), shift.end(), 0);
        for (int i = 0; i < 5; ++i) std::swap(shift[static_cast<std::size_t>(i)], shift[static_cast<std::size_t>(i + 10)]);
        LabeledGraph a40(40, a.edges()), b40 = LabeledGraph(40, b.edges()).relabeled(shift);
        auto u = graph_union(a40, b40);
        REQUIRE_THAT(upsilon_log(m)(u), WithinAbs(upsilon_log(m)(a40) + upsilon_log(m)(b40), 1e-9));
        REQUIRE_THAT(phi_log(m)(u), WithinAbs(phi_log(m)(a40) + phi_log(m)(b40), 1e-9));
    }
}

TEST_CASE("Upsilon classification", "[models][potential]") {
    auto m = ModelParams::sbm(30, 2, Rational(1), Rational(1, 2));
    m.D = 3;
    CHECK(upsilon_potential(LabeledGraph(30), m) == 1.0);
    CHECK(classify_self_bad(LabeledGraph(30), m) == Badness::good);
    LabeledGraph edge(30, {{0, 1}}), p3(30, {{0, 1}, {1, 2}});
    CHECK(classify_self_bad(edge, m) == Badness::self_bad);
    CHECK(classify_self_bad(p3, m) == Badness::bad);  // its single edges are badder

    // regression fixture: K6 at n = 10^6, D = 3, lambda = 2, k = 2
    auto big = ModelParams::sbm(1'000'000, 2, Rational(2), Rational(1, 2));
    big.D = 3;
    auto k6 = LabeledGraph::complete(6);
    double per_v = std::log(2.0 * 4 * 4 * 1e6 / std::pow(3.0, 50));
    double per_e = std::log(1000.0 * std::pow(2.0, 20) * std::pow(2.0, 20) * std::pow(3.0, 50) / 1e6);
    CHECK_THAT(upsilon_log(big)(k6), WithinRel(6 * per_v + 15 * per_e, 1e-12));
    CHECK_THAT(upsilon_log(big)(k6), WithinAbs(910.335, 0.001));
    CHECK(classify_self_bad(k6, big) == Badness::good);
}

TEST_CASE("low-potential search matches brute force", "[models][potential]") {
    Rng rng = stream(77);
    for (int t = 0; t < 300; ++t) {
        auto g = random_graph(rng, 7, 0.35);
        if (g.num_edges() == 0 || g.num_edges() > 12) continue;
        LogPotential f{-3 + 6 * uniform01(rng), -3 + 6 * uniform01(rng)};
        double thr = -2 * uniform01(rng);
        int vmax = 2 + uniform_int(rng, 5);
        bool brute = false;
        BruteSubgraphs{g}.each([&](const LabeledGraph& h) {
            if (h.num_vertices() <= vmax && f(h) < thr) brute = true;
        });
        auto found = find_low_potential_subgraph(g, f, thr, vmax);
        REQUIRE(found.has_value() == brute);
        if (found) {
            REQUIRE(found->num_vertices() <= vmax);
            REQUIRE(f(*found) < thr);
            REQUIRE(edges_subset(*found, g));
        }
    }
}

TEST_CASE("self-bad listing matches brute force", "[models][potential]") {
    Rng rng = stream(78);
    int checked = 0;
    for (int t = 0; t < 400; ++t) {
        auto g = random_graph(rng, 7, 0.3);
        if (g.num_edges() == 0 || g.num_edges() > 10) continue;
        auto m = ModelParams::sbm(30, 2, Rational(1), Rational(1, 2));
        m.D = 2 + t % 2;
        int vmax = 3 + uniform_int(rng, 4);
        std::set<std::vector<Edge>> brute;
        BruteSubgraphs{g}.each([&](const LabeledGraph& h) {
            if (h.num_vertices() <= vmax && classify_self_bad(h, m) == Badness::self_bad) brute.insert(h.edges());
        });
        std::set<std::vector<Edge>> fast;
        for (auto& h : self_bad_subgraphs(g, m, vmax)) fast.insert(h.edges());
        REQUIRE(fast == brute);
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("modified SBM pruning", "[models][modified]") {
    auto m = ModelParams::sbm(30, 2, Rational(1), Rational(1, 2));
    m.D = 1;  // nothing is Upsilon-bad at D = 1
    m.N = 3;
    Rng rng = stream(1);
    auto tri = LabeledGraph::cycle(30, {4, 9, 17});
    auto pruned = prune_listed(tri, m, rng);
    CHECK(pruned.num_edges() == 2);
    CHECK(is_connected(pruned.edge_induced()));
    auto forest = LabeledGraph(30, {{0, 1}, {1, 2}, {2, 3}, {5, 6}});
    CHECK(prune_listed(forest, m, rng) == forest);

    auto dense = ModelParams::sbm(20, 2, Rational(4), Rational(3, 10));
    dense.D = 1;
    dense.N = 5;
    for (std::uint64_t t = 0; t < 500; ++t) {
        auto x = sample_modified_sbm(dense, 6, t);
        REQUIRE(x.pruned.has_value());
        REQUIRE_FALSE(has_cycle_up_to(x.pruned->edge_induced(), dense.N));
        REQUIRE(edges_subset(*x.pruned, x.parent));
        REQUIRE(x.parent.num_edges() - x.pruned->num_edges() <=
                static_cast<int>(removal_list(x.parent, dense, 2'000'000).size()));
        REQUIRE(edges_subset(x.left, *x.pruned));
        REQUIRE(edges_subset(preimage(x.right, x.pi_star), *x.pruned));
    }

    // at D = 2 every single edge is self-bad on 30 vertices, so G' loses everything
    auto degenerate = ModelParams::sbm(30, 2, Rational(1), Rational(1, 2));
    degenerate.D = 2;
    CHECK(prune_listed(LabeledGraph(30, {{0, 1}, {2, 3}}), degenerate, rng).num_edges() == 0);

    ModifiedSbmOptions skip;
    skip.skip_already_deleted = true;
    auto two_tri = LabeledGraph(30, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {0, 3}});
    m.N = 4;
    auto p_skip = prune_listed(two_tri, m, rng, skip);
    CHECK(p_skip.num_edges() >= 3);
}

TEST_CASE("event E", "[models][event]") {
    auto m = ModelParams::sbm(30, 2, Rational(1), Rational(1, 2));
    m.D = 1;
    m.N = 4;
    CHECK(event_E_indicator(LabeledGraph(30), m, GraphModel::SBM));
    CHECK_FALSE(event_E_indicator(LabeledGraph::cycle(30, {0, 1, 2, 3}), m, GraphModel::SBM));
    CHECK(event_E_indicator(LabeledGraph::cycle(30, {0, 1, 2, 3, 4}), m, GraphModel::SBM));

    auto er = ModelParams::correlated_er_qrho(500, Rational(1, 500), Rational(1, 2));
    er.D = 3;
    CHECK(event_E_rate(er, GraphModel::ER, 50, 3) >= 0.9);
}

TEST_CASE("N selection", "[models]") {
    auto m = ModelParams::sbm(100, 2, Rational(2), Rational(1, 2));
    m.delta = Rational(1, 100);
    int N = choose_N(m);
    CHECK(N >= 200);
    CHECK(satisfies_N_constraints(m, N));
    CHECK_FALSE(satisfies_N_constraints(m, N - 1));
}
