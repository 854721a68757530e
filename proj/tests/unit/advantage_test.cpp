#include "lowdeg/advantage/advantage.hpp"
#include "lowdeg/advantage/conditional.hpp"
#include "lowdeg/advantage/hidden_sample.hpp"
#include "lowdeg/basis/model_measures.hpp"

#include <catch_amalgamated.hpp>

#include <numbers>

using namespace lowdeg;
using Catch::Matchers::WithinAbs;

namespace {

ExactMeasure two_point(const Rational& p1) { return bernoulli_product({p1}); }

ExactMeasure sbm_marginal(int n, int k, const Rational& lambda, const Rational& eps) {
    return sbm_joint_measure(ModelParams::sbm(n, k, lambda, eps)).marginal();
}

}  // namespace

TEST_CASE("degree zero and p = q give advantage one") {
    const auto q = er_measure(3, rat(1, 3));
    const auto p = sbm_marginal(3, 2, rat(3, 2), rat(1, 2));
    for (auto method : {AdvantageMethod::product_basis, AdvantageMethod::gram_schmidt, AdvantageMethod::rayleigh}) {
        CHECK(*advantage(p, q, 0, method).exact_squared == 1);
        const auto same = advantage(q, q, 3, method);
        CHECK(*same.exact_squared == 1);
        CHECK(same.contributions.empty());
    }
}

TEST_CASE("two-point measures against a direct sup over affine tests") {
    const auto q = two_point(rat(1, 2)), p = two_point(rat(4, 5));
    const auto r = advantage_gram_schmidt(p, q, 1);
    CHECK(*r.exact_squared == rat(136, 100));
    CHECK(*advantage_product_basis(p, q, 1).exact_squared == rat(136, 100));
    // f = cos t + sin t x: E_p f = cos t + 0.8 sin t, E_q f^2 = cos^2 t + cos t sin t + sin^2 t / 2
    double best = 0;
    for (int i = 0; i < 200000; ++i) {
        const double t = std::numbers::pi * 2 * i / 200000.0, c = std::cos(t), s = std::sin(t);
        best = std::max(best, (c + 0.8 * s) / std::sqrt(c * c + c * s + s * s / 2));
    }
    CHECK_THAT(best * best, WithinAbs(1.36, 1e-8));
}

TEST_CASE("full degree advantage equals one plus chi-square") {
    const auto m = ModelParams::correlated_er_qrho(3, rat(1, 3), rat(1, 2));
    const auto p = correlated_er_measure(m).marginal();
    const auto q = independent_pair_measure(3, m.q);
    const Rational chi = chi_square_divergence(p, q);
    const auto r = advantage_product_basis(p, q, 6);
    CHECK(*r.exact_squared == 1 + chi);
    Rational sum = 1;
    for (const auto& c : r.contributions) sum += *c.exact;
    CHECK(sum == *r.exact_squared);
    CHECK(*advantage_rayleigh(p, q, 6).exact_squared == 1 + chi);
}

TEST_CASE("the three routes agree and grow with D") {
    struct Instance {
        ExactMeasure p, q;
        int max_d;
    };
    std::vector<Instance> cases;
    for (int n : {3, 4}) {
        cases.push_back({sbm_marginal(n, 2, rat(3, 2), rat(1, 2)), er_measure(n, rat(3, 2) / n), 4});
        cases.push_back({sbm_marginal(n, 3, rat(1), rat(2, 5)), er_measure(n, rat(1) / n), 3});
    }
    const auto cm = ModelParams::correlated_er_qrho(3, rat(1, 4), rat(3, 10));
    cases.push_back({correlated_er_measure(cm).marginal(), independent_pair_measure(3, cm.q), 3});
    for (const auto& c : cases) {
        double prev = 1;
        for (int D = 0; D <= c.max_d; ++D) {
            const auto pb = advantage_product_basis(c.p, c.q, D);
            const auto ray = advantage_rayleigh(c.p, c.q, D);
            CHECK(*pb.exact_squared == *ray.exact_squared);
            const auto gs = advantage_gram_schmidt(c.p.convert<double>(), c.q.convert<double>(), D);
            CHECK_THAT(gs.squared, WithinAbs(pb.squared, 1e-9));
            CHECK(pb.value() >= 1);
            CHECK(pb.squared >= prev - 1e-12);
            prev = pb.squared;
        }
    }
    // exact Gram-Schmidt on the smallest case
    const auto& c = cases.front();
    for (int D = 0; D <= 3; ++D)
        CHECK(*advantage_gram_schmidt(c.p, c.q, D).exact_squared == *advantage_product_basis(c.p, c.q, D).exact_squared);
}

TEST_CASE("null directions are dropped or make the advantage unbounded") {
    // under q the two coordinates coincide, so x1 - x2 vanishes q-a.s.
    const ExactMeasure q(2, {{0b00, 0, rat(1, 2)}, {0b11, 0, rat(1, 2)}});
    const ExactMeasure p_in(2, {{0b00, 0, rat(1, 4)}, {0b11, 0, rat(3, 4)}});
    const ExactMeasure p_out(2, {{0b01, 0, rat(1, 4)}, {0b11, 0, rat(3, 4)}});
    CHECK_THROWS_AS(advantage_product_basis(p_in, q, 2), std::invalid_argument);
    const auto gs = advantage_gram_schmidt(p_in, q, 2);
    CHECK_FALSE(gs.unbounded);
    CHECK(*gs.exact_squared == 1 + chi_square_divergence(p_in, q));
    CHECK(*advantage_rayleigh(p_in, q, 2).exact_squared == *gs.exact_squared);
    CHECK(advantage_gram_schmidt(p_out, q, 1).unbounded);
    CHECK(advantage_rayleigh(p_out, q, 1).unbounded);
    CHECK(advantage_gram_schmidt(p_out.convert<double>(), q.convert<double>(), 1).unbounded);
    CHECK_THROWS_AS(chi_square_divergence(p_out, q), std::domain_error);
}

TEST_CASE("conditional advantage on n = 4 pairs") {
    const Rational q = rat(1, 4);
    for (const Rational& rho : {rat(0), rat(1, 5), rat(7, 20), rat(3, 10)}) {
        const auto m = ModelParams::correlated_er_qrho(4, q, rho);
        const auto joint = correlated_er_measure(m);
        const auto null = independent_pair_measure(4, q);
        const auto cond = conditional_advantage(joint, null, 4, 2, 0, 0);
        REQUIRE(cond.exact_squared);
        CHECK(cond.value() >= 1);
        if (rho == 0) CHECK(*cond.exact_squared == 1);
        CHECK(*grouped_conditional_advantage(m, 2, 0, 0).exact_squared == *cond.exact_squared);
        CHECK(grouped_decomposition_defect(m, 2, 0, 0) == 0);
        const auto gs = conditional_advantage(joint, null, 4, 2, 0, 0, AdvantageMethod::gram_schmidt);
        CHECK_THAT(gs.squared, WithinAbs(cond.squared, 1e-9));
        // exchangeability of the planted permutation
        CHECK(*conditional_advantage(joint, null, 4, 2, 0, 1).exact_squared == *cond.exact_squared);
        const auto uncond = advantage_product_basis(joint.marginal(), null, 2);
        CHECK(cond.squared >= uncond.squared - 1e-12);
    }
}

TEST_CASE("grouped conditional moments at n = 5") {
    const auto m = ModelParams::correlated_er_qrho(5, rat(1, 4), rat(3, 10));
    const auto r = conditional_advantage(m, 2, 0, 0);
    CHECK(r.value() >= 1);
    CHECK(*r.exact_squared == *conditional_advantage(m, 2, 2, 3).exact_squared);
    CHECK(*conditional_advantage(ModelParams::correlated_er_qrho(5, rat(1, 4), rat(0)), 2, 0, 0).exact_squared == 1);
    CHECK_THROWS_AS(conditional_advantage(m, 2, 0, 0, AdvantageMethod::rayleigh), std::invalid_argument);
    // single edge pair {0,1} -> {0,1} given pi(0)=0: pi(1)=1 in 1/4 of the cases
    EdgeSpace sp(5);
    const EdgeMask e01 = EdgeMask{1} << sp.index(0, 1);
    CHECK(grouped_conditional_moment(m, e01, e01, 0, 0) == rat(3, 10) * rat(1, 4));
}

TEST_CASE("hidden sample likelihood ratio") {
    CHECK(hidden_block_count(100, 0.01) == 10);
    CHECK(hidden_block_count(5, 0.01) == 5);
    CHECK(hidden_block_count(100, 0.05) == 5);
    const auto q = two_point(rat(1, 2)), p = two_point(rat(4, 5));
    const auto one = build_hidden_sample(q, p, 1);
    CHECK(hidden_likelihood_ratio(one, 1) == rat(8, 5));
    CHECK(hidden_likelihood_ratio(one, 0) == rat(2, 5));
    const auto flat = build_hidden_sample(q, q, 3);
    for (std::uint64_t y = 0; y < 8; ++y) CHECK(hidden_likelihood_ratio(flat, y) == 1);
    const auto pr = build_hidden_sample(q, p, 3);
    REQUIRE(pr.null.size() == 8);
    for (std::uint64_t y = 0; y < 8; ++y)
        CHECK(hidden_likelihood_ratio(pr, y) == pr.alt.probability_of(y) / pr.null.probability_of(y));
    const auto point = bernoulli_product({rat(0)});
    CHECK_THROWS_AS(hidden_likelihood_ratio(build_hidden_sample(point, q, 2), 0b01), std::domain_error);
}

TEST_CASE("hidden sample dilutes the advantage by M") {
    const auto q = two_point(rat(1, 2)), p = two_point(rat(4, 5));
    for (int M : {1, 2, 4, 8}) {
        const auto r = hidden_sample_advantage(build_hidden_sample(q, p, M), 1);
        CHECK((*r.exact_squared - 1) * M == rat(36, 100));
    }
    CHECK(*hidden_sample_advantage(build_hidden_sample(q, p, 4), 1).exact_squared == rat(109, 100));
    const auto gs = advantage_gram_schmidt(build_hidden_sample(q, p, 4).alt, build_hidden_sample(q, p, 4).null, 4);
    CHECK(*gs.exact_squared == rat(109, 100));
    CHECK(*hidden_sample_advantage(build_hidden_sample(q, q, 4), 2).exact_squared == 1);
    // a two-coordinate base whose planted factor is correlated
    const ExactMeasure base_alt(2, {{0b00, 0, rat(2, 5)}, {0b11, 0, rat(2, 5)}, {0b01, 0, rat(1, 10)}, {0b10, 0, rat(1, 10)}});
    const auto base_null = bernoulli_product({rat(1, 2), rat(1, 2)});
    const Rational base = *advantage_product_basis(base_alt, base_null, 2).exact_squared;
    for (int M : {1, 2, 3})
        CHECK((*hidden_sample_advantage(build_hidden_sample(base_null, base_alt, M), 2).exact_squared - 1) * M == base - 1);
}
