#include "lowdeg/graph/canonical.hpp"
#include "lowdeg/graph/edge_list_io.hpp"
#include "lowdeg/graph/edge_space.hpp"
#include "lowdeg/graph/rooted_trees.hpp"
#include "lowdeg/graph/structure.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

using namespace lowdeg;

namespace {

std::vector<int> identity_perm(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

// Oracle: minimum edge mask over all relabelings (isomorphism class of a graph on all n vertices).
EdgeMask brute_class(const EdgeSpace& sp, EdgeMask m) {
    auto p = identity_perm(sp.n());
    EdgeMask best = m;
    do {
        best = std::min(best, sp.permute(m, p));
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

LabeledGraph all_vertices(const EdgeSpace& sp, EdgeMask m) {
    return LabeledGraph(sp.n(), identity_perm(sp.n()), sp.graph(m).edges());
}

LabeledGraph random_graph(std::mt19937_64& rng, int n, double p) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) es.emplace_back(i, j);
    return LabeledGraph(n, std::move(es));
}

// Oracle for unlabeled rooted trees: grow by attaching leaves, dedupe by AHU strings.
std::string ahu(const std::vector<std::vector<int>>& kids, int v) {
    std::vector<std::string> parts;
    for (int c : kids[static_cast<std::size_t>(v)]) parts.push_back(ahu(kids, c));
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (auto& p : parts) s += p;
    return s + ")";
}

std::vector<long> brute_rooted_tree_counts(int max_n) {
    std::vector<long> counts;
    std::map<std::string, std::vector<int>> level{{"()", {-1}}};  // parent arrays
    counts.push_back(1);
    for (int n = 2; n <= max_n; ++n) {
        std::map<std::string, std::vector<int>> next;
        for (const auto& [key, parent] : level) {
            for (int attach = 0; attach < n - 1; ++attach) {
                auto p = parent;
                p.push_back(attach);
                std::vector<std::vector<int>> kids(p.size());
                for (std::size_t v = 1; v < p.size(); ++v) kids[static_cast<std::size_t>(p[v])].push_back(static_cast<int>(v));
                next.emplace(ahu(kids, 0), p);
            }
        }
        level = std::move(next);
        counts.push_back(static_cast<long>(level.size()));
    }
    return counts;
}

}  // namespace

TEST_CASE("excess uses the declared vertex set", "[graph]") {
    CHECK(LabeledGraph::cycle(3, {0, 1, 2}).excess() == 0);
    CHECK(LabeledGraph(2, {{0, 1}}).excess() == -1);
    CHECK(LabeledGraph::complete(4).excess() == 2);
    CHECK(LabeledGraph(5).excess() == 0);
    CHECK(LabeledGraph(5, {0, 1, 4}, {Edge(0, 1)}).excess() == -2);
}

TEST_CASE("graph invariants reject malformed input", "[graph]") {
    CHECK_THROWS(Edge(2, 2));
    CHECK_THROWS(LabeledGraph(3, {{0, 1}, {1, 0}}));
    CHECK_THROWS(LabeledGraph(3, {{0, 3}}));
    CHECK_THROWS(LabeledGraph(3, {0}, {Edge(0, 1)}));
}

TEST_CASE("edge-induced operations", "[graph]") {
    LabeledGraph s(3, {{0, 1}}), t(3, {{1, 2}});
    auto ops = edge_induced_ops(s, t);
    CHECK(ops.cap.empty());
    CHECK(ops.cup == LabeledGraph(3, {{0, 1}, {1, 2}}));
    CHECK(ops.symdiff == ops.cup);
    auto same = edge_induced_ops(s, s);
    CHECK(same.cap == s);
    CHECK(same.cup == s);
    CHECK(same.symdiff.empty());
    CHECK_THROWS(edge_induced_ops(s, LabeledGraph(4, {{0, 1}})));
}

TEST_CASE("union/intersection vertex and edge counts", "[graph][pair-counts]") {
    // exhaustive over pairs of edge sets of K5, randomized on K6
    EdgeSpace sp(5);
    for (EdgeMask a = 0; a <= sp.full(); ++a)
        for (EdgeMask b = 0; b <= sp.full(); ++b) {
            int v_cup = std::popcount(sp.vertex_mask(a) | sp.vertex_mask(b));
            int v_cap = std::popcount(sp.vertex_mask(a & b));
            int v_sum = std::popcount(sp.vertex_mask(a)) + std::popcount(sp.vertex_mask(b));
            REQUIRE(v_cup + v_cap <= v_sum);
            REQUIRE(std::popcount(a | b) + std::popcount(a & b) == std::popcount(a) + std::popcount(b));
        }
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        auto s = random_graph(rng, 6, 0.4), t = random_graph(rng, 6, 0.4);
        auto ops = edge_induced_ops(s, t);
        auto un = graph_union(s, t);
        CHECK(un.num_vertices() + ops.cap.num_vertices() <= s.num_vertices() + t.num_vertices());
        CHECK(ops.cup.num_edges() + ops.cap.num_edges() == s.num_edges() + t.num_edges());
    }
}

TEST_CASE("canonical forms identify relabelings", "[graph][canonical]") {
    auto p1 = LabeledGraph::path(3, {0, 1, 2});
    auto p2 = LabeledGraph::path(3, {2, 0, 1});
    CHECK(canonicalize(p1).form == canonicalize(p2).form);
    CHECK(canonicalize(LabeledGraph::cycle(4, {0, 1, 2})).form != canonicalize(LabeledGraph::path(4, {0, 1, 2, 3})).form);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 3 + trial % 10;
        auto g = random_graph(rng, n, 0.35);
        auto perm = identity_perm(n);
        std::shuffle(perm.begin(), perm.end(), rng);
        auto c1 = canonicalize(g), c2 = canonicalize(g.relabeled(perm));
        REQUIRE(c1.form == c2.form);
        REQUIRE(c1.representative == c2.representative);
    }
}

TEST_CASE("canonical forms separate isomorphism classes exhaustively", "[graph][canonical]") {
    for (int n : {4, 5}) {
        EdgeSpace sp(n);
        std::map<EdgeMask, std::string> by_class;
        std::set<std::string> forms;
        for (EdgeMask m = 0; m <= sp.full(); ++m) {
            std::string f = canonicalize(all_vertices(sp, m)).form;
            auto [it, inserted] = by_class.emplace(brute_class(sp, m), f);
            REQUIRE(it->second == f);
            forms.insert(f);
        }
        CHECK(forms.size() == by_class.size());
        CHECK(forms.size() == (n == 4 ? 11u : 34u));
    }
}

TEST_CASE("canonical forms on larger symmetric graphs", "[graph][canonical]") {
    // 16-vertex hypercube and an 8-edge matching stay within the search budget
    std::vector<Edge> cube;
    for (int v = 0; v < 16; ++v)
        for (int b = 0; b < 4; ++b)
            if (v < (v ^ (1 << b))) cube.emplace_back(v, v ^ (1 << b));
    LabeledGraph q4(16, cube);
    auto perm = identity_perm(16);
    std::reverse(perm.begin(), perm.end());
    CHECK(canonicalize(q4).form == canonicalize(q4.relabeled(perm)).form);
    CHECK(automorphism_count(q4) == 384);
    std::vector<Edge> matching;
    for (int i = 0; i < 8; ++i) matching.emplace_back(2 * i, 2 * i + 1);
    CHECK(automorphism_count(LabeledGraph(16, matching)) == 40320ull * 256ull);
    std::vector<Edge> star;
    for (int i = 1; i < 17; ++i) star.emplace_back(0, i);
    CHECK_THROWS_AS(canonicalize(LabeledGraph(17, star)), std::length_error);
}

TEST_CASE("automorphism counts", "[graph][aut]") {
    CHECK(automorphism_count(LabeledGraph::cycle(3, {0, 1, 2})) == 6);
    CHECK(automorphism_count(LabeledGraph::path(3, {0, 1, 2})) == 2);
    CHECK(automorphism_count(LabeledGraph(5, {0, 1, 2, 3, 4}, {Edge(0, 1), Edge(1, 2), Edge(0, 2)})) == 12);
    CHECK(automorphism_count(LabeledGraph(0)) == 1);
}

TEST_CASE("orbit-stabilizer: Aut times labeled copies equals |V|!", "[graph][aut]") {
    std::mt19937_64 rng(5);
    int checked = 0;
    while (checked < 60) {
        int v = 3 + checked % 5;  // 3..7 vertices
        auto g = random_graph(rng, v, 0.45);
        if (g.num_vertices() != v || !is_connected(g)) continue;
        EdgeSpace sp(v);
        EdgeMask m = sp.mask(g);
        std::set<EdgeMask> orbit;
        auto p = identity_perm(v);
        do {
            orbit.insert(sp.permute(m, p));
        } while (std::next_permutation(p.begin(), p.end()));
        std::uint64_t fact = 1;
        for (int i = 2; i <= v; ++i) fact *= static_cast<std::uint64_t>(i);
        auto aut = automorphism_count(g);
        REQUIRE(aut * orbit.size() == fact);
        REQUIRE(fact % canonicalize(g).aut == 0);
        ++checked;
    }
}

TEST_CASE("embedding counts", "[graph][embed]") {
    auto tri = LabeledGraph::cycle(3, {0, 1, 2});
    CHECK(count_embeddings(canonicalize(LabeledGraph(2, {{0, 1}})), tri) == 3);
    CHECK(count_embeddings(canonicalize(LabeledGraph::cycle(3, {0, 1, 2})), LabeledGraph::complete(4)) == 4);
    CHECK(count_embeddings(canonicalize(LabeledGraph(0)), tri) == 1);

    // oracle: count edge subsets of the host isomorphic to h
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 40; ++trial) {
        auto host = random_graph(rng, 6, 0.6).edge_induced();
        auto h = random_graph(rng, 4, 0.5).edge_induced();
        auto ch = canonicalize(h);
        EdgeSpace sp(6);
        EdgeMask hm = sp.mask(host);
        std::uint64_t brute = 0;
        for (EdgeMask sub : submasks_up_to(hm, h.num_edges()))
            if (std::popcount(sub) == h.num_edges() && canonicalize(sp.graph(sub)).form == ch.form) ++brute;
        REQUIRE(count_embeddings(ch, host) == brute);
    }
}

TEST_CASE("independent cycle census", "[graph][cycles]") {
    LabeledGraph tri_sq(7, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {5, 6}, {3, 6}});
    CHECK(independent_cycle_census(tri_sq, LabeledGraph(7)) == std::map<int, int>{{3, 1}, {4, 1}});
    LabeledGraph pendant(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
    CHECK(independent_cycle_census(pendant, LabeledGraph(4)).empty());
    LabeledGraph two(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    CHECK(independent_cycle_census(two, LabeledGraph(6, {{0, 1}, {1, 2}, {0, 2}})) == std::map<int, int>{{3, 1}});
}

TEST_CASE("simple cycles up to a length", "[graph][cycles]") {
    auto k4 = LabeledGraph::complete(4);
    CHECK(simple_cycles(k4, 3).size() == 4);
    CHECK(simple_cycles(k4, 4).size() == 7);
    CHECK(simple_cycles(LabeledGraph::path(5, {0, 1, 2, 3, 4}), 5).empty());
    auto k5 = LabeledGraph::complete(5);
    CHECK(simple_cycles(k5, 5).size() == 10 + 15 + 12);
}

TEST_CASE("decompositions on fixed instances", "[graph][decomposition]") {
    auto tri = LabeledGraph::cycle(3, {0, 1, 2});
    auto d = decompose_difference(tri, LabeledGraph(3), DecompositionVariant::A2);
    CHECK(d.m == 1);
    CHECK(d.t == 0);
    CHECK(d.t == excess_gap(tri, LabeledGraph(3)));

    auto same = decompose_difference(tri, tri, DecompositionVariant::A2);
    CHECK(same.m == 0);
    CHECK(same.t == 0);

    // theta graph: vertices 0 and 1 joined by three 2-paths
    LabeledGraph theta(5, {{0, 2}, {2, 1}, {0, 3}, {3, 1}, {0, 4}, {4, 1}});
    CHECK(theta.excess() == 1);
    auto dt = decompose_difference(theta, LabeledGraph(5), DecompositionVariant::A2);
    CHECK(dt.t == 1);
    CHECK(dt.t == excess_gap(theta, LabeledGraph(5)));
    CHECK(check_decomposition(theta, LabeledGraph(5), dt, DecompositionVariant::A2).empty());

    CHECK_THROWS(decompose_difference(LabeledGraph(3, {{0, 1}}), tri, DecompositionVariant::A2));
}

TEST_CASE("decomposition properties on random pairs", "[graph][decomposition]") {
    std::mt19937_64 rng(21);
    int done = 0;
    while (done < 600) {
        int n = 4 + done % 5;
        auto s = random_graph(rng, n, 0.45);
        if (s.num_edges() == 0) continue;
        // random H ⊂ S: random edge subset plus random extra vertices of S
        std::vector<Edge> he;
        std::bernoulli_distribution coin(0.4);
        for (const Edge& e : s.edges())
            if (coin(rng)) he.push_back(e);
        std::vector<int> hv;
        for (const Edge& e : he) {
            hv.push_back(e.u);
            hv.push_back(e.v);
        }
        for (int x : s.vertices())
            if (coin(rng) && coin(rng)) hv.push_back(x);
        LabeledGraph h(n, hv, he);
        for (auto variant : {DecompositionVariant::A2, DecompositionVariant::A3}) {
            auto d = decompose_difference(s, h, variant);
            INFO("S=" << s.str() << " H=" << h.str());
            REQUIRE(check_decomposition(s, h, d, variant).empty());
            if (variant == DecompositionVariant::A2) REQUIRE(d.t == excess_gap(s, h));
            else REQUIRE(d.t <= 5 * excess_gap(s, h));
        }
        ++done;
    }
}

TEST_CASE("subgraph counts by edge deficit", "[graph][pair-counts]") {
    // #{T' ⋐ S : |E(S)|-|E(T')| = k} <= |E(S)|^k
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        auto s = random_graph(rng, 6, 0.5).edge_induced();
        if (s.num_edges() > 7 || s.num_edges() == 0) continue;
        EdgeSpace sp(6);
        EdgeMask sm = sp.mask(s);
        std::map<int, long> by_deficit;
        for (EdgeMask sub : submasks_up_to(sm, s.num_edges())) ++by_deficit[s.num_edges() - std::popcount(sub)];
        for (auto [k, count] : by_deficit) {
            double bound = std::pow(static_cast<double>(s.num_edges()), k);
            REQUIRE(static_cast<double>(count) <= bound);
        }
    }
}

TEST_CASE("automorphisms of nested classes", "[graph][pair-counts]") {
    // Aut(S) <= Aut(T) |V(T)|^{2(|E(T)|-|E(S)|)} for S ⊂ T, both edge-induced, |V(T)| <= 6
    EdgeSpace sp(6);
    std::set<std::string> seen;
    long pairs = 0;
    for (EdgeMask tm = 1; tm <= sp.full(); ++tm) {
        auto t = sp.graph(tm);
        auto ct = canonicalize(t);
        if (!seen.insert(ct.form).second) continue;
        const double aut_t = static_cast<double>(automorphism_count(t));
        for (EdgeMask sm : submasks_up_to(tm, std::popcount(tm))) {
            auto s = sp.graph(sm);
            double rhs = aut_t * std::pow(static_cast<double>(t.num_vertices()), 2 * (t.num_edges() - s.num_edges()));
            REQUIRE(static_cast<double>(automorphism_count(s)) <= rhs);
            ++pairs;
        }
    }
    CHECK(seen.size() == 155);  // nonempty graphs on <= 6 vertices without isolated vertices
    CHECK(pairs > 0);
}

TEST_CASE("rooted tree counts and the Otter constant", "[graph][trees]") {
    auto r = rooted_tree_counts(9);
    std::vector<long> expected{1, 1, 2, 4, 9, 20, 48, 115, 286};
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(r[i] == expected[i]);
    auto brute = brute_rooted_tree_counts(9);
    for (std::size_t i = 0; i < brute.size(); ++i) CHECK(r[i] == brute[i]);

    auto est = otter_constant_estimate(50);
    CHECK(est.converged);
    CHECK_THAT(est.alpha, Catch::Matchers::WithinAbs(0.3383, 0.001));
    auto crude = otter_constant_estimate(2);
    CHECK_FALSE(crude.converged);
    CHECK(crude.alpha == 0.5);
}

TEST_CASE("edge list round trip", "[graph][io]") {
    LabeledGraph g(6, {0, 1, 2, 3, 4, 5}, {Edge(0, 1), Edge(2, 5)});
    auto text = to_edge_list(g);
    CHECK(text == "6 2\n0 1\n2 5\n");
    CHECK(from_edge_list(text) == g);
    CHECK_THROWS(from_edge_list("3 2\n0 1\n"));
    CHECK_THROWS(from_edge_list("3 1\n0 3\n"));
}
