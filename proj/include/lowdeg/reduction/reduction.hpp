#pragma once

// From matching estimators to detection statistics: overlap, the indicator
// family h_{i,j} = 1{pihat(i) = j}, truncation to families with {0,1} rows,
// lambda-mixing with the uniform guess, and an empirical one-sided test harness.

#include "lowdeg/graph/labeled_graph.hpp"
#include "lowdeg/models/params.hpp"
#include "lowdeg/models/rng.hpp"
#include "lowdeg/models/samplers.hpp"
#include "lowdeg/numeric/rational.hpp"

#include <boost/math/distributions/binomial.hpp>

#include <algorithm>
#include <atomic>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace lowdeg {

// (1/n) #{i : pi(i) = pi'(i)}
inline Rational overlap(const std::vector<int>& pi, const std::vector<int>& pi_prime) {
    if (pi.size() != pi_prime.size()) throw std::invalid_argument("overlap: size mismatch");
    if (pi.empty()) throw std::invalid_argument("overlap: empty permutation");
    long same = 0;
    for (std::size_t i = 0; i < pi.size(); ++i) same += pi[i] == pi_prime[i] ? 1 : 0;
    return Rational(same, static_cast<long>(pi.size()));
}

// Row-major n x n family of statistics evaluated on one sample.
struct IndicatorFamily {
    int n = 0;
    std::vector<double> h;

    IndicatorFamily() = default;
    explicit IndicatorFamily(int size) : n(size), h(static_cast<std::size_t>(size) * static_cast<std::size_t>(size), 0.0) {}

    double& at(int i, int j) { return h[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; }
    double at(int i, int j) const {
        return h[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
    }
    double row_sum(int i) const {
        double s = 0;
        for (int j = 0; j < n; ++j) s += at(i, j);
        return s;
    }
    std::vector<double> row(int i) const {
        return {h.begin() + static_cast<long>(i) * n, h.begin() + static_cast<long>(i + 1) * n};
    }
};

inline bool is_binary(double x) { return x == 0.0 || x == 1.0; }

// Entries in {0,1} and every row sum in {0,1}.
inline bool is_regular(const IndicatorFamily& f) {
    for (double x : f.h)
        if (!is_binary(x)) return false;
    for (int i = 0; i < f.n; ++i)
        if (!is_binary(f.row_sum(i))) return false;
    return true;
}

// Entries in {0,1} with every row summing to exactly 1.
inline bool is_permutation_family(const IndicatorFamily& f) {
    for (double x : f.h)
        if (!is_binary(x)) return false;
    for (int i = 0; i < f.n; ++i)
        if (f.row_sum(i) != 1.0) return false;
    return true;
}

using Estimator = std::function<std::vector<int>(const LabeledGraph&, const LabeledGraph&)>;

inline IndicatorFamily indicators_from_permutation(const std::vector<int>& pihat) {
    if (!is_permutation_of_n(pihat)) throw std::invalid_argument("estimator did not return a permutation");
    IndicatorFamily f(static_cast<int>(pihat.size()));
    for (int i = 0; i < f.n; ++i) f.at(i, pihat[static_cast<std::size_t>(i)]) = 1.0;
    return f;
}

inline IndicatorFamily estimator_to_indicators(const Estimator& est, const LabeledGraph& a, const LabeledGraph& b) {
    return indicators_from_permutation(est(a, b));
}

// sum_i h_{i, pi*(i)}; equals n OV(pihat, pi*) for permutation families.
inline double matched_mass(const IndicatorFamily& f, const std::vector<int>& pi_star) {
    if (static_cast<int>(pi_star.size()) != f.n) throw std::invalid_argument("matched_mass: size mismatch");
    double s = 0;
    for (int i = 0; i < f.n; ++i) s += f.at(i, pi_star[static_cast<std::size_t>(i)]);
    return s;
}

// f' = f 1_A where A asks every entry to be in {0,1} and every row to sum to 1.
inline IndicatorFamily truncate_family(const IndicatorFamily& f) {
    if (is_permutation_family(f)) return f;
    return IndicatorFamily(f.n);
}

// g_j = (1 - lambda)/n + lambda f_j
inline std::vector<double> mix_statistic(const std::vector<double>& f_row, double lambda_mix) {
    if (!(lambda_mix >= 0 && lambda_mix <= 1)) throw std::invalid_argument("mix_statistic: lambda outside [0,1]");
    if (f_row.empty()) throw std::invalid_argument("mix_statistic: empty row");
    const double n = static_cast<double>(f_row.size());
    std::vector<double> g(f_row.size());
    for (std::size_t j = 0; j < f_row.size(); ++j) g[j] = (1 - lambda_mix) / n + lambda_mix * f_row[j];
    return g;
}

inline std::vector<Rational> mix_statistic(const std::vector<Rational>& f_row, const Rational& lambda_mix) {
    if (lambda_mix < 0 || lambda_mix > 1) throw std::invalid_argument("mix_statistic: lambda outside [0,1]");
    if (f_row.empty()) throw std::invalid_argument("mix_statistic: empty row");
    const Rational base = (1 - lambda_mix) / static_cast<long>(f_row.size());
    std::vector<Rational> g;
    for (const auto& x : f_row) g.push_back(base + lambda_mix * x);
    return g;
}

inline double aggregate_statistic(const std::vector<double>& g) {
    double s = 0;
    for (double x : g) s += x;
    return s;
}

// sum_j f_j^2 = (sum_j f_j)^2 pointwise for a {0,1} row with at most one 1.
inline bool row_square_identity(const std::vector<double>& f_row) {
    double sq = 0, s = 0;
    for (double x : f_row) sq += x * x, s += x;
    return sq == s * s;
}

// sum_j (1{pi*(i)=j} - g_j)^2 for one sample.
inline double mixing_loss(const std::vector<double>& f_row, int target, double lambda_mix) {
    const auto g = mix_statistic(f_row, lambda_mix);
    double s = 0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double d = (static_cast<int>(j) == target ? 1.0 : 0.0) - g[j];
        s += d * d;
    }
    return s;
}

// Upper bound on E sum_j (1{pi*(i)=j} - g_j)^2 for regular rows with
// E f_{pi*(i)} >= c: 1 + lambda^2 - 2 c lambda + (1 - lambda)^2 / n.
inline double mixing_loss_bound(double c, double lambda_mix, int n) {
    return 1 + lambda_mix * lambda_mix - 2 * c * lambda_mix + (1 - lambda_mix) * (1 - lambda_mix) / n;
}

struct LambdaSet {
    std::vector<int> members;  // j with mean squared error <= (1 - c/2)/n
    double guaranteed = 0;     // c n / 2
    bool holds = false;
};

// From per-j mean squared errors with total <= 1 - c, Markov gives |Lambda| >= c n / 2.
inline LambdaSet lambda_set(const std::vector<double>& errors, double c) {
    if (errors.empty()) throw std::invalid_argument("lambda_set: no errors");
    if (!(c > 0 && c < 1)) throw std::invalid_argument("lambda_set: c outside (0,1)");
    const double n = static_cast<double>(errors.size());
    double total = 0;
    for (double e : errors) total += e;
    if (total > 1 - c + 1e-12) throw std::invalid_argument("lambda_set: total error exceeds 1 - c");
    LambdaSet out;
    for (std::size_t j = 0; j < errors.size(); ++j)
        if (errors[j] <= (1 - c / 2) / n) out.members.push_back(static_cast<int>(j));
    out.guaranteed = c * n / 2;
    out.holds = static_cast<double>(out.members.size()) >= out.guaranteed;
    return out;
}

// ----- baseline estimators -----

inline std::vector<int> identity_estimator(const LabeledGraph& a, const LabeledGraph&) {
    std::vector<int> p(static_cast<std::size_t>(a.n()));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

inline Estimator random_estimator(std::uint64_t seed) {
    auto counter = std::make_shared<std::atomic<std::uint64_t>>(0);
    return [seed, counter](const LabeledGraph& a, const LabeledGraph&) {
        Rng rng = stream(seed, counter->fetch_add(1));
        return uniform_permutation(rng, a.n());
    };
}

namespace detail {

// (degree, neighbour degrees in decreasing order) per vertex
inline std::vector<std::vector<int>> degree_profiles(const LabeledGraph& g) {
    const auto n = static_cast<std::size_t>(g.n());
    std::vector<std::vector<int>> nb(n);
    for (const Edge& e : g.edges()) {
        nb[static_cast<std::size_t>(e.u)].push_back(e.v);
        nb[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    std::vector<std::vector<int>> prof(n);
    for (std::size_t x = 0; x < n; ++x) {
        prof[x].push_back(static_cast<int>(nb[x].size()));
        for (int y : nb[x]) prof[x].push_back(static_cast<int>(nb[static_cast<std::size_t>(y)].size()));
        std::sort(prof[x].begin() + 1, prof[x].end(), std::greater<>());
    }
    return prof;
}

inline long profile_distance(const std::vector<int>& p, const std::vector<int>& q) {
    long d = 0;
    const std::size_t len = std::max(p.size(), q.size());
    for (std::size_t i = 0; i < len; ++i) d += std::abs((i < p.size() ? p[i] : 0) - (i < q.size() ? q[i] : 0));
    return d;
}

}  // namespace detail

// Greedy degree-profile matching: vertices of A by decreasing degree, each taking
// the free vertex of B with the closest profile (ties to the smaller index).
inline std::vector<int> greedy_estimator(const LabeledGraph& a, const LabeledGraph& b) {
    if (a.n() != b.n()) throw std::invalid_argument("greedy_estimator: size mismatch");
    const auto pa = detail::degree_profiles(a), pb = detail::degree_profiles(b);
    const int n = a.n();
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return pa[static_cast<std::size_t>(x)][0] > pa[static_cast<std::size_t>(y)][0]; });
    std::vector<int> out(static_cast<std::size_t>(n), -1);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    for (int x : order) {
        int best = -1;
        long best_d = 0;
        for (int y = 0; y < n; ++y) {
            if (used[static_cast<std::size_t>(y)]) continue;
            const long d = detail::profile_distance(pa[static_cast<std::size_t>(x)], pb[static_cast<std::size_t>(y)]);
            if (best < 0 || d < best_d) best = y, best_d = d;
        }
        out[static_cast<std::size_t>(x)] = best;
        used[static_cast<std::size_t>(best)] = 1;
    }
    return out;
}

inline Estimator make_estimator(const std::string& name, std::uint64_t seed = 0) {
    if (name == "identity") return identity_estimator;
    if (name == "random") return random_estimator(seed);
    if (name == "greedy") return greedy_estimator;
    throw std::invalid_argument("unknown estimator '" + name + "'");
}

// ----- one-sided test harness -----

struct PairSample {
    LabeledGraph a, b;
    std::vector<int> pi;  // latent matching; a decoy uniform permutation under the null
};

using PairSampler = std::function<PairSample(Rng&)>;
using PairStatistic = std::function<double(const PairSample&)>;

inline PairSampler correlated_er_sampler(const ModelParams& m) {
    return [m](Rng& rng) {
        auto s = sample_correlated_er(m, rng);
        return PairSample{std::move(s.left), std::move(s.right), std::move(s.pi_star)};
    };
}

// Two independent G(n, q) with a uniform decoy permutation.
inline PairSampler independent_er_sampler(int n, double q) {
    return [n, q](Rng& rng) {
        PairSample s;
        s.a = sample_erdos_renyi(n, q, rng);
        s.b = sample_erdos_renyi(n, q, rng);
        s.pi = uniform_permutation(rng, n);
        return s;
    };
}

struct RateInterval {
    double rate = 0, lower = 0, upper = 1;
};

// Clopper-Pearson interval at the given two-sided level.
inline RateInterval binomial_interval(long successes, long trials, double level = 0.95) {
    if (trials <= 0) throw std::invalid_argument("binomial_interval: zero trials");
    using boost::math::binomial_distribution;
    const double alpha = (1 - level) / 2;
    const double t = static_cast<double>(trials), k = static_cast<double>(successes);
    return {k / t, binomial_distribution<>::find_lower_bound_on_p(t, k, alpha),
            binomial_distribution<>::find_upper_bound_on_p(t, k, alpha)};
}

struct TestThresholds {
    double strong_error = 0.05;     // both error rates below this: strong detection candidate
    double null_error = 0.05;       // Q(reject) below this for a one-sided test
    double min_power = 0.1;         // P(reject) at least this for a one-sided test
};

enum class TestClass { strong_detect, one_sided, powerless };

inline std::string to_string(TestClass c) {
    switch (c) {
        case TestClass::strong_detect: return "strong-detect candidate";
        case TestClass::one_sided: return "one-sided candidate";
        case TestClass::powerless: return "powerless";
    }
    return "?";
}

struct OneSidedTestReport {
    double q_accept_rate = 0;  // Q(statistic <= threshold)
    double p_reject_rate = 0;  // P(statistic > threshold)
    RateInterval q_accept, p_reject;
    long trials = 0;
    std::uint64_t seed = 0;
    std::vector<double> q_values, p_values;
    TestClass classification = TestClass::powerless;
};

inline TestClass classify(double q_accept, double p_reject, const TestThresholds& t) {
    if (1 - q_accept <= t.strong_error && 1 - p_reject <= t.strong_error) return TestClass::strong_detect;
    if (1 - q_accept <= t.null_error && p_reject >= t.min_power) return TestClass::one_sided;
    return TestClass::powerless;
}

// Rejects when the statistic exceeds the threshold. Null trials use streams 2t,
// planted trials 2t + 1, so results do not depend on the thread count.
inline OneSidedTestReport one_sided_test(const PairStatistic& stat, double threshold, const PairSampler& p_sampler,
                                         const PairSampler& q_sampler, long trials, std::uint64_t seed,
                                         const TestThresholds& th = {}, unsigned threads = 1) {
    if (trials <= 0) throw std::invalid_argument("one_sided_test: zero trials");
    OneSidedTestReport r;
    r.trials = trials;
    r.seed = seed;
    r.q_values.assign(static_cast<std::size_t>(trials), 0.0);
    r.p_values.assign(static_cast<std::size_t>(trials), 0.0);
    auto work = [&](long begin, long end) {
        for (long t = begin; t < end; ++t) {
            Rng rq = stream(seed, 2 * static_cast<std::uint64_t>(t));
            Rng rp = stream(seed, 2 * static_cast<std::uint64_t>(t) + 1);
            r.q_values[static_cast<std::size_t>(t)] = stat(q_sampler(rq));
            r.p_values[static_cast<std::size_t>(t)] = stat(p_sampler(rp));
        }
    };
    threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
    if (threads == 1) {
        work(0, trials);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back(work, trials * w / threads, trials * (w + 1) / threads);
        for (auto& th_ : pool) th_.join();
    }
    long accept = 0, reject = 0;
    for (double v : r.q_values) accept += v <= threshold ? 1 : 0;
    for (double v : r.p_values) reject += v > threshold ? 1 : 0;
    r.q_accept = binomial_interval(accept, trials);
    r.p_reject = binomial_interval(reject, trials);
    r.q_accept_rate = r.q_accept.rate;
    r.p_reject_rate = r.p_reject.rate;
    r.classification = classify(r.q_accept_rate, r.p_reject_rate, th);
    return r;
}

// Fraction of edges of A carried onto edges of B by the latent permutation.
// Reads the planted matching directly, so it only serves to validate the harness.
inline double oracle_edge_agreement(const PairSample& s) {
    if (s.a.num_edges() == 0) return 0;
    long hit = 0;
    for (const Edge& e : s.a.edges())
        hit += s.b.has_edge(s.pi[static_cast<std::size_t>(e.u)], s.pi[static_cast<std::size_t>(e.v)]) ? 1 : 0;
    return static_cast<double>(hit) / s.a.num_edges();
}

// Same agreement through an estimated matching.
inline PairStatistic estimated_edge_agreement(Estimator est) {
    return [est = std::move(est)](const PairSample& s) {
        PairSample view{s.a, s.b, est(s.a, s.b)};
        return oracle_edge_agreement(view);
    };
}

}  // namespace lowdeg
