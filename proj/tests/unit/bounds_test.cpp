#include "lowdeg/bounds/bounds.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace lowdeg;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

BoundParams desk(double n, int D, double rho = 0.3, double delta = 0.02) { return {n, D, delta, rho, 2}; }

int failures(const std::vector<BoundAudit>& audits) {
    int bad = 0;
    for (const auto& a : audits)
        if (!a.holds) {
            ++bad;
            UNSCOPED_INFO(a.suite << " " << a.instance << " lhs=" << a.lhs << " rhs=" << a.rhs);
        }
    return bad;
}

}  // namespace

TEST_CASE("audit record") {
    CHECK(make_audit("x", "", 1, 1).holds);
    CHECK(make_audit("x", "", 1 + 1e-14, 1).holds);
    CHECK_FALSE(make_audit("x", "", 1.001, 1).holds);
    const auto a = make_audit("x", "", 3, 2, 2);
    CHECK(a.holds);
    CHECK(a.slack() == 1);
}

TEST_CASE("F bound") {
    const auto b = desk(50, 3);
    const LabeledGraph none(8);
    CHECK(F_bound(none, none, b) == 1);
    const LabeledGraph edge(8, {{0, 1}});
    const LabeledGraph tri(8, {{2, 3}, {3, 4}, {2, 4}});
    // classes in both: empty (E=0, aut 1) and a single edge (aut 2)
    const double hand = std::pow(50.0, -2.5) * (std::pow(3.0, -24) + 0.3 * std::pow(3.0, -12) * 2);
    CHECK_THAT(F_bound(edge, tri, b), WithinRel(hand, 1e-12));
    CHECK(F_bound(edge, tri, desk(50, 3, 0.1)) < F_bound(edge, tri, desk(50, 3, 0.3)));
    CHECK(F_bound(tri, edge, b) == F_bound(edge, tri, b));
    CHECK_THROWS_AS(F_bound(LabeledGraph(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}), edge, b), std::invalid_argument);
}

TEST_CASE("M and N pair bounds") {
    const auto b = desk(1e4, 3);
    const LabeledGraph c4(8, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    const LabeledGraph none(8);
    CHECK(N_pair(c4, c4, b) == 1);
    CHECK(M_pair(c4, c4, b) == 1);
    // no leaves, tau(C4) = tau(empty) = 0: only the (1 - delta/2)^4 factor survives
    CHECK_THAT(N_pair(c4, none, b), WithinRel(0.96059601, 1e-12));
    const LabeledGraph path(8, {{0, 1}, {1, 2}});
    // |L| = 2, tau = -1: exponent (2 - 1) / 2
    CHECK_THAT(M_pair(path, none, b), WithinRel(std::sqrt(std::pow(3.0, 8) / std::pow(1e4, 0.1)) * 0.99 * 0.99, 1e-12));
    CHECK_THROWS_AS(M_pair(none, c4, b), std::invalid_argument);
}

TEST_CASE("M and N factor over vertex-disjoint unions") {
    const auto b = desk(1e6, 4, 0.4);
    const LabeledGraph s1(10, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}), h1(10, {{0, 1}});
    const LabeledGraph s2(10, {{5, 6}, {6, 7}}), h2(10, std::vector<int>{5}, {});
    const LabeledGraph s = graph_union(s1, s2), h = graph_union(h1, h2);
    CHECK_THAT(M_pair(s, h, b), WithinRel(M_pair(s1, h1, b) * M_pair(s2, h2, b), 1e-12));
    CHECK_THAT(N_pair(s, h, b), WithinRel(N_pair(s1, h1, b) * N_pair(s2, h2, b), 1e-12));
    const LabeledGraph t1(10, {{0, 1}, {1, 2}}), t2(10, {{5, 6}});
    CHECK_THAT(M_triple(h, s, graph_union(t1, t2), b),
               WithinRel(M_triple(h1, s1, t1, b) * M_triple(h2, s2, t2, b), 1e-12));
}

TEST_CASE("P sum") {
    const LabeledGraph tri(12, {{0, 1}, {1, 2}, {0, 2}});
    const LabeledGraph two(12, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    CHECK(P_sum(two, two, desk(100, 6)) == 1);
    CHECK(independent_cycle_total(two, LabeledGraph(12)) == 2);
    // far in the asymptotic regime only the leafless K survive: empty, either triangle, both
    const auto far = desk(1e300, 6, 0.3, 0.1);
    CHECK_THAT(P_sum(two, LabeledGraph(12), far), WithinRel(4 * std::pow(0.95, 6), 1e-9));
    CHECK(audit_P_sum(two, LabeledGraph(12), far).holds);
    CHECK(audit_P_sum(tri, LabeledGraph(12), far).holds);
    const LabeledGraph tail(12, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
    CHECK(audit_P_sum(tail, tri, far).holds);
    CHECK(audit_P_sum(tail, LabeledGraph(12, std::vector<int>{0}, {}), far).holds);
}

TEST_CASE("conditional moment audit") {
    auto m = ModelParams::correlated_er_qrho(4, rat(1, 4), rat(1, 3));
    m.D = 3;
    const LabeledGraph none(4);
    const auto trivial = audit_prop_B1(none, none, m);
    CHECK(trivial.lhs == 1);
    CHECK(trivial.holds);
    const LabeledGraph e01(4, {{0, 1}});
    const auto pinned = audit_prop_B1(e01, e01, m);
    CHECK(pinned.holds);
    CHECK(pinned.slack_factor == kDeskSlack);
    auto indep = ModelParams::correlated_er_qrho(4, rat(1, 4), rat(0));
    indep.D = 3;
    const LabeledGraph path(4, {{0, 1}, {1, 2}});
    CHECK(audit_prop_B1(e01, path, indep).lhs == 0);
    CHECK(audit_prop_B1(path, path, indep).lhs == 0);
    // exchangeability: swapping the two graphs keeps the conditioned moment
    EdgeSpace sp(4);
    const LabeledGraph tri(4, {{0, 1}, {1, 2}, {0, 2}});
    for (const auto& [a, b] : std::vector<std::pair<LabeledGraph, LabeledGraph>>{{e01, path}, {tri, path}, {e01, tri}})
        CHECK(grouped_conditional_moment(m, sp.mask(a), sp.mask(b), 0, 0) ==
              grouped_conditional_moment(m, sp.mask(b), sp.mask(a), 0, 0));
}

TEST_CASE("enumeration lemma counts") {
    const LabeledGraph none(6);
    const auto trivial = audit_supergraph_counts(6, none, 0);
    CHECK(trivial[0].lhs == 1);
    CHECK(trivial[0].rhs == 1);
    // one extra edge on an existing edge: the 4 + 4 + 1 ways split by new vertices
    const auto one = supergraph_counts(5, LabeledGraph(5, {{0, 1}}), 1);
    CHECK(one.at(1) == 6);
    CHECK(one.at(2) == 3);
    CHECK(one.count(0) == 0);

    // N = D leaves every cycle length allowed. p = q = 3 with H empty means three
    // edges spanning three vertices, the triangles of K_6
    const auto census = superset_census(6, none, 3, 3);
    CHECK(census.at({0, 3, 3}) == 20);
    CHECK(census.at({1, 1, 2}) == 15);
    // N = 2 forbids independent cycles avoiding H
    CHECK(superset_census(6, none, 3, 2).count({0, 3, 3}) == 0);

    // a path has no cycles; m = 0 happens only for H = S
    const LabeledGraph p3(7, {{0, 1}, {1, 2}, {2, 3}});
    const auto sub = subset_census(p3, 3, 2);
    CHECK(sub.at({0, {0}}) == 1);
    CHECK(failures(audit_subset_census(p3, 3, 2)) == 0);
    // a triangle tracked at N = 3 would merge H = empty with H = S
    CHECK_THROWS_AS(audit_subset_census(LabeledGraph(7, {{0, 1}, {1, 2}, {0, 2}}), 3, 3), std::invalid_argument);
    const auto tri = subset_census(LabeledGraph(7, {{0, 1}, {1, 2}, {0, 2}}), 3, 2);
    CHECK(tri.at({0, {1}}) == 1);
    CHECK(tri.at({0, {0}}) == 1);

    CHECK(failures(audit_enumeration_lemmas()) == 0);
}

TEST_CASE("pair count inequalities on K5") {
    auto m = ModelParams::correlated_er_qrho(5, rat(1, 4), rat(1, 3));
    m.D = 3;
    const auto r = check_pair_count_identities(m, 5);
    CHECK(r.pairs == 1024L * 1025 / 2);
    CHECK(r.chains == 59049);  // 3^10
    CHECK(r.ok());
    INFO(r.first_failure);
}

TEST_CASE("Xi magnitude bounds") {
    const auto m = ModelParams::sbm(12, 2, rat(3, 2), rat(1, 10));
    CHECK(lambda_choice_condition(m));
    CHECK(below_ks(m));
    const auto audits = audit_xi_bounds(m, 5);
    CHECK(failures(audits) == 0);
    CHECK(audits.size() >= 4);
    const auto trend = audit_dual_trend(ModelParams::sbm(6, 2, rat(1), rat(3, 10)), {6, 8, 10, 12}, 3);
    CHECK(trend.size() == 4);
    CHECK(failures(trend) == 0);
}
