#pragma once

// The end-to-end invariant suite behind `lowdeg verify` and the acceptance test.
// Each check returns a pass flag plus a one-line detail; exceptions count as failures.

#include "lowdeg/advantage/advantage.hpp"
#include "lowdeg/advantage/conditional.hpp"
#include "lowdeg/advantage/hidden_sample.hpp"
#include "lowdeg/basis/basis.hpp"
#include "lowdeg/bounds/bounds.hpp"
#include "lowdeg/certificate/duality.hpp"
#include "lowdeg/certificate/xi.hpp"
#include "lowdeg/graph/rooted_trees.hpp"
#include "lowdeg/graph/structure.hpp"
#include "lowdeg/models/samplers.hpp"
#include "lowdeg/reduction/reduction.hpp"
#include "lowdeg/stats.hpp"

#include <chrono>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace lowdeg {

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

namespace checks {

inline CheckResult phi_orthonormality() {
    const Rational q = rat(1, 3);
    const auto single = check_orthonormality(er_measure(4, q), std::vector<Rational>(6, q), monomials_up_to(6, 3));
    const auto pair = check_orthonormality(independent_pair_measure(4, q), std::vector<Rational>(12, q), pair_basis_masks(4, 3));
    std::ostringstream os;
    os << "single " << single.pairs_checked << " pairs, pair " << pair.pairs_checked << " pairs, defects "
       << single.defects + pair.defects;
    return {0, "", single.defects + pair.defects == 0, os.str()};
}

inline CheckResult psi_orthonormality() {
    std::size_t defects = 0, pairs = 0;
    for (const Rational& eps : {rat(1, 2), rat(1, 5)}) {
        const auto m = ModelParams::sbm(3, 2, rat(1), eps);
        const auto joint = sbm_joint_measure(m);
        EdgeSpace sp(3);
        std::vector<BasisIndex> idx;
        for (std::uint32_t s = 0; s < label_count(3, 2); ++s)
            for (EdgeMask g : monomials_up_to(3, 2)) idx.push_back(BasisIndex::planted_of(decode_labels(s, 3, 2), sp.graph(g)));
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = a; b < idx.size(); ++b) {
                ++pairs;
                const auto v = exact_inner_product(joint, idx[a], idx[b], m);
                if (a == b ? !v.is_one() : !v.is_zero()) ++defects;
            }
    }
    return {0, "", defects == 0, std::to_string(pairs) + " pairs, " + std::to_string(defects) + " defects"};
}

inline CheckResult cross_moment() {
    Rng rng = stream(2024);
    double worst = 0;
    int instances = 0;
    for (const Rational& eps : {rat(2, 5), rat(1, 5)}) {
        const auto m = ModelParams::sbm(3, 2, rat(3, 2), eps);
        const auto joint = sbm_joint_measure(m);
        EdgeSpace sp(3);
        for (int t = 0; t < 120; ++t) {
            const auto s = static_cast<EdgeMask>(uniform_int(rng, 8));
            auto h = static_cast<EdgeMask>(uniform_int(rng, 8));
            if (t % 3 != 0) h &= s;
            const auto sigma = decode_labels(static_cast<std::uint32_t>(uniform_int(rng, 8)), 3, 2);
            const auto brute = exact_inner_product(joint, BasisIndex::single_of(sp.graph(s)),
                                                   BasisIndex::planted_of(sigma, sp.graph(h)), m);
            const double closed = cross_moment_planted<double>(m, sp.graph(s), sigma, sp.graph(h));
            worst = std::max(worst, std::abs(closed - brute.to_surd().to_double()));
            ++instances;
        }
    }
    std::ostringstream os;
    os << instances << " instances, max |diff| " << worst;
    return {0, "", instances >= 200 && worst <= 1e-12, os.str()};
}

inline CheckResult parseval() {
    bool ok = true;
    std::ostringstream os;
    for (const Rational& rho : {rat(1, 2), rat(1, 5)}) {
        const auto m = ModelParams::correlated_er_qrho(3, rat(1, 3), rho);
        const auto p = correlated_er_measure(m).marginal();
        const auto q = independent_pair_measure(3, m.q);
        const auto adv = advantage_product_basis(p, q, 6);
        const Rational chi = chi_square_divergence(p, q);
        ok = ok && adv.exact_squared && *adv.exact_squared == 1 + chi;
        os << "rho=" << rho << " Adv^2=" << *adv.exact_squared << " 1+chi2=" << 1 + chi << "; ";
    }
    return {0, "", ok, os.str()};
}

inline CheckResult hidden_sample() {
    const auto q = bernoulli_product({rat(1, 2)}), p = bernoulli_product({rat(4, 5)});
    const Rational base = *advantage_product_basis(p, q, 1).exact_squared;
    bool ok = true;
    std::ostringstream os;
    Rational previous = base + 1;
    for (int M : {1, 2, 4, 8}) {
        const Rational adv = *hidden_sample_advantage(build_hidden_sample(q, p, M), 1).exact_squared;
        ok = ok && (adv - 1) * M == base - 1;
        // trend: Adv^2 <= 1 + (base^2 - 1)/M and decreasing in M
        ok = ok && adv <= 1 + (base - 1) / M && adv < previous;
        previous = adv;
        os << "M=" << M << ":" << adv << " ";
    }
    return {0, "", ok, os.str()};
}

inline CheckResult xi_recursion() {
    bool ok = true;
    double worst_c3 = 0;
    int leafless = 0, unions = 0;
    for (int k : {2, 3}) {
        const auto m = ModelParams::sbm(6, k, rat(3, 2), rat(3, 10));
        XiTable<Surd> fact(m, 6), plain(m, 6, StepConvention::leading, false);
        XiTable<double> fl(m, 6);
        ok = ok && fact(LabeledGraph(6)) == Surd(1);
        ok = ok && is_zero(fact(LabeledGraph(6, {{0, 1}, {1, 2}, {0, 2}, {2, 3}})));
        ok = ok && is_zero(fact(LabeledGraph(6, {{0, 1}, {1, 2}})));

        const auto hd = h_decomposition<Surd>(m);
        const Surd k1(Rational(k - 1));
        const Surd c3 = -(k1 * half_power<Surd>(cross_step_squared(m, StepConvention::leading), 3)) /
                        (scalar_pow(hd.a, 3) + k1 * scalar_pow(hd.b, 3));
        const LabeledGraph t1(6, {{0, 1}, {1, 2}, {0, 2}}), t2(6, {{3, 4}, {4, 5}, {3, 5}});
        worst_c3 = std::max(worst_c3, std::abs(fl(t1) - c3.to_double()));
        ok = ok && fact(t1) == c3;
        ok = ok && plain.recurse(graph_union(t1, t2)) == fact(t1) * fact(t2);

        for (const auto& c : leafless_classes(6, 6)) {
            ++leafless;
            ok = ok && fact(c.representative) == plain.recurse(c.representative);
        }
        // every disjoint union with <= 6 edges, leafy ones included (both sides vanish there)
        for (const auto& c : graph_classes(6, 6, [](const LabeledGraph& g) { return connected_components(g).size() > 1; })) {
            ++unions;
            Surd prod(1);
            for (const auto& piece : connected_components(c.representative)) prod = prod * fact(piece);
            ok = ok && plain.recurse(c.representative) == prod;
        }
    }
    ok = ok && worst_c3 <= 1e-12;
    std::ostringstream os;
    os << leafless << " leafless classes, " << unions << " disjoint unions, C3 float |diff| " << worst_c3;
    return {0, "", ok, os.str()};
}

inline CheckResult linear_system() {
    const auto m = ModelParams::sbm(5, 2, rat(3, 2), rat(2, 5));
    bool ok = true;
    std::ostringstream os;
    for (auto conv : {StepConvention::leading, StepConvention::exact}) {
        XiTable<Surd> table(m, 3, conv);
        const auto rep = verify_linear_system(table, 3);
        ok = ok && rep.exact_zero;
        os << (conv == StepConvention::leading ? "leading" : "exact") << ": " << rep.rows << " rows, max residual "
           << rep.max_residual << "; ";
    }
    return {0, "", ok, os.str()};
}

inline CheckResult duality() {
    bool ok = true;
    int fixtures = 0, leading_below = 0;
    double tightest = 1e300;
    for (const Rational& eps : {rat(0), rat(1, 5), rat(2, 5)})
        for (const Rational& lambda : {rat(1, 2), rat(1)})
            for (int D = 0; D <= 3; ++D) {
                const auto gap = duality_gap(ModelParams::sbm(4, 2, lambda, eps), D);
                ++fixtures;
                ok = ok && gap.holds;
                tightest = std::min(tightest, gap.dual_norm - gap.exact);
                leading_below += gap.exact > gap.dual_norm_leading + 1e-9 ? 1 : 0;
            }
    std::ostringstream os;
    os << fixtures << " fixtures, min(||u|| - Adv) " << tightest << "; leading-step certificate below Adv on "
       << leading_below;
    return {0, "", ok, os.str()};
}

inline CheckResult structural_lemmas() {
    std::ostringstream os;
    auto pm = ModelParams::correlated_er_qrho(6, rat(1, 4), rat(1, 3));
    pm.D = 3;
    const auto a1 = check_pair_count_identities(pm, 6);
    bool ok = a1.ok();
    os << "pair counts " << a1.pairs << " pairs/" << a1.chains << " chains" << (a1.ok() ? "" : " " + a1.first_failure) << "; ";

    std::mt19937_64 rng(99);
    int decomp = 0;
    while (decomp < 500) {
        const int n = 4 + decomp % 5;
        std::vector<Edge> es;
        std::bernoulli_distribution dense(0.45), coin(0.4);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (dense(rng)) es.emplace_back(i, j);
        const LabeledGraph s(n, es);
        if (s.num_edges() == 0) continue;
        std::vector<Edge> he;
        std::vector<int> hv;
        for (const Edge& e : s.edges())
            if (coin(rng)) he.push_back(e), hv.push_back(e.u), hv.push_back(e.v);
        for (int x : s.vertices())
            if (coin(rng) && coin(rng)) hv.push_back(x);
        const LabeledGraph h(n, hv, he);
        const auto d2 = decompose_difference(s, h, DecompositionVariant::A2);
        const auto d3 = decompose_difference(s, h, DecompositionVariant::A3);
        ok = ok && check_decomposition(s, h, d2, DecompositionVariant::A2).empty() && d2.t == excess_gap(s, h);
        ok = ok && check_decomposition(s, h, d3, DecompositionVariant::A3).empty() && d3.t <= 5 * excess_gap(s, h);
        ++decomp;
    }
    os << "decompositions " << decomp << " pairs; ";

    long paths = 0;
    const Rational grid[] = {rat(0), rat(1, 3), rat(-1, 2), rat(7, 10), rat(2)};
    for (int k = 2; k <= 4; ++k)
        for (int l = 1; l <= 5; ++l)
            for (const auto& a : grid)
                for (const auto& b : grid)
                    for (int s0 = 0; s0 < k; ++s0)
                        for (int sl = 0; sl < k; ++sl) {
                            ++paths;
                            ok = ok && path_expectation(k, a, b, l, s0, sl) == path_expectation_brute(k, a, b, l, s0, sl);
                        }
    os << "path moments " << paths << " cases; ";

    Rng r2 = stream(5);
    int leaves = 0;
    for (int t = 0; leaves < 200 && t < 50000; ++t) {
        const int n = 3 + uniform_int(r2, 4);
        std::vector<Edge> es;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (bernoulli(r2, 0.45)) es.emplace_back(i, j);
        const LabeledGraph s(n, es);
        if (s.num_edges() == 0 || s.leaves().empty()) continue;
        std::vector<Edge> hs;
        for (const Edge& e : s.edges())
            if (bernoulli(r2, 0.5)) hs.push_back(e);
        const LabeledGraph h(n, hs);
        bool exposed = false;
        for (int leaf : s.leaves()) exposed |= !h.has_vertex(leaf);
        if (!exposed) continue;
        ok = ok && leaf_cancellation_check(s, h, 2 + leaves % 3) == 0;
        ++leaves;
    }
    ok = ok && leaves >= 200;
    os << "leaf cancellation " << leaves << " instances";
    return {0, "", ok, os.str()};
}

inline CheckResult enumeration_audits() {
    const auto audits = audit_enumeration_lemmas();
    int bad = 0;
    std::string first;
    for (const auto& a : audits)
        if (!a.holds && bad++ == 0) first = a.suite + " " + a.instance;
    return {0, "", bad == 0 && !audits.empty(), std::to_string(audits.size()) + " audits, " + std::to_string(bad) + " failures" + (first.empty() ? "" : " first: " + first)};
}

inline CheckResult model_statistics() {
    bool ok = true;
    std::ostringstream os;
    {
        const auto m = ModelParams::correlated_er_qrho(1000, rat(1, 100), rat(1, 2));
        const double pairs = 1000.0 * 999 / 2;
        double edges = 0;
        RunningMoments corr;
        for (std::uint64_t t = 0; t < 200; ++t) {
            const auto x = sample_correlated_er(m, 11, t);
            const auto inv = inverse_permutation(x.pi_star);
            std::set<Edge> pre;
            for (const Edge& e : x.right.edges())
                pre.emplace(inv[static_cast<std::size_t>(e.u)], inv[static_cast<std::size_t>(e.v)]);
            double both = 0;
            for (const Edge& e : x.left.edges()) both += pre.count(e) ? 1 : 0;
            const double pa = x.left.num_edges() / pairs, pb = x.right.num_edges() / pairs;
            edges += x.left.num_edges();
            corr.add((both / pairs - pa * pb) / std::sqrt(pa * (1 - pa) * pb * (1 - pb)));
        }
        const bool dens = within_binomial(edges / (200 * pairs), 0.01, 200 * pairs);
        const bool rho = std::abs(corr.mean - 0.5) <= 3 * corr.stderr_of_mean();
        ok = ok && dens && rho;
        os << "corr-ER q=" << edges / (200 * pairs) << " rho=" << corr.mean << "; ";
    }
    {
        const auto m = ModelParams::sbm(1000, 2, rat(3), rat(1, 2));
        double in_pairs = 0, in_edges = 0, out_pairs = 0, out_edges = 0;
        for (std::uint64_t t = 0; t < 200; ++t) {
            const auto d = sample_sbm(m, 12, t);
            std::vector<double> per(2, 0);
            for (int x : d.sigma_star) per[static_cast<std::size_t>(x)] += 1;
            const double same = per[0] * (per[0] - 1) / 2 + per[1] * (per[1] - 1) / 2;
            in_pairs += same;
            out_pairs += 1000.0 * 999 / 2 - same;
            for (const Edge& e : d.graph.edges())
                (d.sigma_star[static_cast<std::size_t>(e.u)] == d.sigma_star[static_cast<std::size_t>(e.v)] ? in_edges : out_edges) += 1;
        }
        ok = ok && within_binomial(in_edges / in_pairs, to_double(m.sbm_in()), in_pairs) &&
             within_binomial(out_edges / out_pairs, to_double(m.sbm_out()), out_pairs);
        os << "SBM in=" << in_edges / in_pairs << " out=" << out_edges / out_pairs << "; ";
    }
    {
        const auto sbm = ModelParams::sbm(60, 2, rat(3), rat(0), rat(1, 2));
        const auto er = ModelParams::correlated_er_ps(60, rat(3, 60), rat(1, 2));
        std::vector<double> a, b;
        for (std::uint64_t t = 0; t < 2000; ++t) {
            a.push_back(sample_correlated_sbm(sbm, 100, t).left.num_edges());
            b.push_back(sample_correlated_er(er, 200, t).left.num_edges());
        }
        const auto ks = ks_two_sample(a, b);
        ok = ok && ks.p_value > 0.01;
        os << "eps=0 KS p=" << ks.p_value;
    }
    return {0, "", ok, os.str()};
}

inline CheckResult otter() {
    const auto r = rooted_tree_counts(9);
    const long expected[] = {1, 1, 2, 4, 9, 20, 48, 115, 286};
    bool ok = true;
    for (std::size_t i = 0; i < 9; ++i) ok = ok && r[i] == expected[i];
    const auto est = otter_constant_estimate(50);
    ok = ok && est.alpha >= 0.337 && est.alpha <= 0.340;
    std::ostringstream os;
    os << "alpha=" << est.alpha;
    return {0, "", ok, os.str()};
}

inline CheckResult conditional() {
    bool ok = true;
    std::ostringstream os;
    for (const Rational& rho : {rat(0), rat(1, 5), rat(7, 20)}) {
        const auto m = ModelParams::correlated_er_qrho(4, rat(1, 4), rho);
        const auto joint = correlated_er_measure(m);
        const auto null = independent_pair_measure(4, m.q);
        const auto r = conditional_advantage(joint, null, 4, 2, 0, 0);
        const auto gs = conditional_advantage(joint, null, 4, 2, 0, 0, AdvantageMethod::gram_schmidt);
        ok = ok && !r.unbounded && std::isfinite(r.squared) && r.squared >= 1 - 1e-15;
        if (rho == 0) ok = ok && r.exact_squared && *r.exact_squared == 1;
        ok = ok && std::abs(gs.squared - r.squared) <= 1e-9;
        os << "rho=" << rho << ":" << r.squared << " ";
    }
    return {0, "", ok, os.str()};
}

inline CheckResult reduction_harness() {
    bool ok = true;
    Rng rng = stream(77);
    const double pool[] = {0, 1, 0.5, 2, -1};
    for (int t = 0; t < 10000; ++t) {
        IndicatorFamily f(2 + uniform_int(rng, 5));
        const bool perm = uniform01(rng) < 0.3;
        if (perm) f = indicators_from_permutation(uniform_permutation(rng, f.n));
        else
            for (double& x : f.h) x = uniform01(rng) < 0.7 ? (uniform01(rng) < 0.5 ? 0 : 1) : pool[uniform_int(rng, 5)];
        const auto g = truncate_family(f);
        ok = ok && is_regular(g) && (!is_permutation_family(f) || g.h == f.h);
    }
    const auto m = ModelParams::correlated_er_qrho(40, rat(1, 10), rat(3, 5));
    const auto sampler = correlated_er_sampler(m);
    for (const char* name : {"identity", "random", "greedy"}) {
        const auto est = make_estimator(name, 3);
        for (int t = 0; t < 30; ++t) {
            const auto s = sampler(rng);
            const auto pihat = est(s.a, s.b);
            ok = ok && Rational(static_cast<long>(matched_mass(indicators_from_permutation(pihat), s.pi))) ==
                           Rational(40) * overlap(pihat, s.pi);
        }
    }
    const auto null = independent_er_sampler(30, 0.1);
    const auto same = one_sided_test(oracle_edge_agreement, 0.1, null, null, 2000, 5);
    const bool complementary = within_binomial(same.p_reject_rate, 1 - same.q_accept_rate, 2000, 3 * std::sqrt(2.0));
    ok = ok && complementary;
    std::ostringstream os;
    os << "P=Q reject " << same.p_reject_rate << " vs 1-accept " << 1 - same.q_accept_rate;
    return {0, "", ok, os.str()};
}

}  // namespace checks

struct CheckSpec {
    int id;
    const char* name;
    std::function<CheckResult()> run;
};

inline std::vector<CheckSpec> invariant_suite() {
    return {
        {1, "phi-basis orthonormality", checks::phi_orthonormality},
        {2, "psi-basis orthonormality", checks::psi_orthonormality},
        {3, "cross-moment closed form", checks::cross_moment},
        {4, "Parseval completeness", checks::parseval},
        {5, "hidden-sample identity", checks::hidden_sample},
        {6, "Xi recursion", checks::xi_recursion},
        {7, "linear system residuals", checks::linear_system},
        {8, "duality sandwich", checks::duality},
        {9, "structural lemma suite", checks::structural_lemmas},
        {10, "enumeration-bound audits", checks::enumeration_audits},
        {11, "model statistics", checks::model_statistics},
        {12, "Otter constant", checks::otter},
        {13, "conditional advantage", checks::conditional},
        {14, "reduction harness", checks::reduction_harness},
    };
}

inline CheckResult run_check(const CheckSpec& spec) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    try {
        r = spec.run();
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.id = spec.id;
    r.name = spec.name;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace lowdeg
