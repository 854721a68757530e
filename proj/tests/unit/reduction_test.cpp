#include "lowdeg/reduction/reduction.hpp"
#include "lowdeg/stats.hpp"

#include <catch_amalgamated.hpp>

using namespace lowdeg;
using Catch::Matchers::WithinAbs;

TEST_CASE("overlap") {
    const std::vector<int> id{0, 1, 2, 3}, swap{1, 0, 2, 3};
    CHECK(overlap(id, id) == 1);
    CHECK(overlap(id, swap) == rat(1, 2));
    CHECK_THROWS_AS(overlap(id, {0, 1, 2}), std::invalid_argument);
    // a uniform permutation matches each coordinate with probability 1/n
    const int n = 10, draws = 10000;
    RunningMoments ov;
    Rng rng = stream(3);
    std::vector<int> fixed(n);
    std::iota(fixed.begin(), fixed.end(), 0);
    for (int t = 0; t < draws; ++t) ov.add(to_double(overlap(fixed, uniform_permutation(rng, n))));
    CHECK(std::abs(ov.mean - 0.1) <= 3 * ov.stderr_of_mean());
}

TEST_CASE("indicator families from estimators") {
    const auto m = ModelParams::correlated_er_qrho(30, rat(1, 5), rat(1, 2));
    const auto sampler = correlated_er_sampler(m);
    Rng rng = stream(5);
    const auto rnd = random_estimator(9);
    for (int t = 0; t < 40; ++t) {
        const auto s = sampler(rng);
        for (const Estimator& est : {Estimator(identity_estimator), rnd, Estimator(greedy_estimator)}) {
            const auto pihat = est(s.a, s.b);
            const auto f = indicators_from_permutation(pihat);
            CHECK(is_permutation_family(f));
            CHECK(matched_mass(f, s.pi) == 30 * to_double(overlap(pihat, s.pi)));
        }
    }
    const std::vector<int> id{0, 1, 2, 3, 4};
    CHECK(matched_mass(indicators_from_permutation(id), id) == 5);
    CHECK_THROWS_AS(indicators_from_permutation({0, 0, 1}), std::invalid_argument);

    // a fixed guess against a uniform latent matching scores 1 on average
    RunningMoments mass;
    const LabeledGraph empty(12);
    for (int t = 0; t < 4000; ++t) mass.add(matched_mass(estimator_to_indicators(identity_estimator, empty, empty),
                                                         uniform_permutation(rng, 12)));
    CHECK(std::abs(mass.mean - 1) <= 3 * mass.stderr_of_mean());
}

TEST_CASE("greedy matching on a relabeled copy") {
    // vertices 0 and 2 have unique degree profiles, so their images are forced
    const LabeledGraph a(6, std::vector<int>{0, 1, 2, 3, 4, 5}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {2, 3}, {4, 5}});
    const std::vector<int> pi{3, 5, 0, 1, 4, 2};
    const LabeledGraph b = a.relabeled(pi);
    const auto guess = greedy_estimator(a, b);
    for (int x : {0, 2}) CHECK(guess[static_cast<std::size_t>(x)] == pi[static_cast<std::size_t>(x)]);
    CHECK(is_permutation_of_n(guess));
}

TEST_CASE("truncation") {
    IndicatorFamily ok(3);
    ok.at(0, 1) = ok.at(1, 0) = ok.at(2, 2) = 1;
    CHECK(truncate_family(ok).h == ok.h);
    IndicatorFamily twice = ok;
    twice.at(0, 2) = 1;
    const auto cut = truncate_family(twice);
    CHECK(is_regular(cut));
    CHECK(std::all_of(cut.h.begin(), cut.h.end(), [](double x) { return x == 0; }));
    // fuzzed inputs: entries drawn from {0, 1, 1/2, 2, -1}
    Rng rng = stream(17);
    const double pool[] = {0, 1, 0.5, 2, -1};
    for (int t = 0; t < 2000; ++t) {
        IndicatorFamily f(2 + uniform_int(rng, 4));
        for (double& x : f.h) x = uniform01(rng) < 0.7 ? (uniform01(rng) < 0.5 ? 0 : 1) : pool[uniform_int(rng, 5)];
        const auto g = truncate_family(f);
        CHECK(is_regular(g));
        if (is_permutation_family(f)) CHECK(g.h == f.h);
    }
}

TEST_CASE("mixing") {
    const auto flat = mix_statistic(std::vector<double>{0, 1, 0, 0}, 0.0);
    for (double g : flat) CHECK(g == 0.25);
    const auto e1 = mix_statistic(std::vector<double>{1, 0, 0}, 1.0);
    CHECK(e1 == std::vector<double>{1, 0, 0});
    const auto g = mix_statistic(std::vector<Rational>{0, 1, 0, 0}, rat(1, 2));
    CHECK(g == std::vector<Rational>{rat(1, 8), rat(5, 8), rat(1, 8), rat(1, 8)});
    CHECK_THROWS_AS(mix_statistic(std::vector<double>{1}, 1.5), std::invalid_argument);
    CHECK(aggregate_statistic(mix_statistic(std::vector<double>{0, 1, 0, 0}, 0.3)) == Catch::Approx(1.0));
    CHECK(row_square_identity({0, 0, 1, 0}));
    CHECK(row_square_identity({0, 0, 0}));
    CHECK_FALSE(row_square_identity({1, 1, 0}));

    // the loss averages within the bound when E f_{pi*} = c
    Rng rng = stream(21);
    const int n = 20;
    const double c = 0.3, lam = 0.4;
    RunningMoments loss;
    for (int t = 0; t < 20000; ++t) {
        const int target = uniform_int(rng, n);
        std::vector<double> row(n, 0.0);
        const double u = uniform01(rng);
        if (u < c) row[static_cast<std::size_t>(target)] = 1;
        else if (u < 0.8) row[static_cast<std::size_t>((target + 1 + uniform_int(rng, n - 1)) % n)] = 1;
        loss.add(mixing_loss(row, target, lam));
    }
    CHECK(loss.mean <= mixing_loss_bound(c, lam, n) + 3 * loss.stderr_of_mean());
    // a hit at n = 4, lambda = 1/2: three misses of size g_j and one of 1 - lambda - g_j
    std::vector<double> hit(4, 0.0);
    hit[2] = 1;
    const double gj = 0.5 / 4;
    CHECK_THAT(mixing_loss(hit, 2, 0.5), WithinAbs(3 * gj * gj + (1 - 0.5 - gj) * (1 - 0.5 - gj), 1e-15));
}

TEST_CASE("Lambda set") {
    const auto s = lambda_set({0.01, 0.01, 0.2, 0.3, 0.01, 0.02, 0.05, 0.1}, 0.25);
    CHECK(s.holds);
    CHECK(s.guaranteed == 1);
    CHECK(s.members.size() == 6);  // threshold (1 - 1/8)/8
    CHECK_THROWS_AS(lambda_set({0.5, 0.5}, 0.1), std::invalid_argument);
    Rng rng = stream(2);
    for (int t = 0; t < 500; ++t) {
        const int n = 3 + uniform_int(rng, 20);
        const double c = 0.05 + 0.9 * uniform01(rng);
        std::vector<double> e(static_cast<std::size_t>(n));
        double total = 0;
        for (double& x : e) total += (x = uniform01(rng));
        for (double& x : e) x *= (1 - c) / total;
        CHECK(lambda_set(e, c).holds);
    }
}

TEST_CASE("one-sided test harness") {
    const auto null = independent_er_sampler(20, 0.2);
    const auto zero = [](const PairSample&) { return 0.0; };
    const auto r0 = one_sided_test(zero, 0.5, null, null, 50, 1);
    CHECK(r0.q_accept_rate == 1);
    CHECK(r0.p_reject_rate == 0);
    CHECK(r0.classification == TestClass::powerless);
    CHECK_THROWS_AS(one_sided_test(zero, 0.5, null, null, 0, 1), std::invalid_argument);

    // P = Q: rejection and acceptance rates are complementary up to noise
    const auto same = one_sided_test(oracle_edge_agreement, 0.2, null, null, 600, 4);
    CHECK(within_binomial(same.p_reject_rate, 1 - same.q_accept_rate, 600, 3 * std::sqrt(2.0)));
    CHECK(same.q_accept.lower <= same.q_accept_rate);
    CHECK(same.q_accept.upper >= same.q_accept_rate);

    // the cheating statistic separates strongly correlated pairs
    const auto planted = correlated_er_sampler(ModelParams::correlated_er_ps(20, rat(1, 5), rat(19, 20)));
    const auto cheat = one_sided_test(oracle_edge_agreement, 0.6, planted, null, 200, 8);
    CHECK(cheat.p_reject_rate > 0.95);
    CHECK(cheat.q_accept_rate > 0.95);
    CHECK(cheat.classification == TestClass::strong_detect);

    // thread count does not change the draws
    const auto threaded = one_sided_test(oracle_edge_agreement, 0.6, planted, null, 200, 8, {}, 3);
    CHECK(threaded.p_values == cheat.p_values);
    CHECK(threaded.q_values == cheat.q_values);
}
