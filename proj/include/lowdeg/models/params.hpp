#pragma once

#include "lowdeg/numeric/rational.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lowdeg {

// 1/alpha is the growth rate of unlabeled rooted trees (Otter).
inline constexpr double kOtterAlpha = 0.3383218568992077;

// All model parameters. Probabilities are exact rationals; samplers convert to double.
// The correlated-ER pair (p,s) and (q,rho) are kept consistent by the factories.
struct ModelParams {
    int n = 2;
    Rational p = 0, s = 1, q = 0, rho = 0;
    Rational lambda = 1;
    int k = 2;
    Rational eps = 0;
    Rational delta = Rational(1, 100);
    int D = 1;
    int N = 0;

    static ModelParams correlated_er_ps(int n, const Rational& p, const Rational& s) {
        ModelParams m;
        m.n = n;
        m.p = p;
        m.s = s;
        m.q = p * s;
        m.rho = m.q == 1 ? Rational(0) : Rational(s * (1 - p) / (1 - p * s));
        m.validate();
        return m;
    }

    // Inverse map: s = q + rho(1-q), p = q/s.
    static ModelParams correlated_er_qrho(int n, const Rational& q, const Rational& rho) {
        ModelParams m;
        m.n = n;
        m.q = q;
        m.rho = rho;
        m.s = q + rho * (1 - q);
        if (m.s == 0) throw std::invalid_argument("q and rho cannot both vanish");
        m.p = q / m.s;
        m.validate();
        return m;
    }

    static ModelParams sbm(int n, int k, const Rational& lambda, const Rational& eps, const Rational& s = 1) {
        ModelParams m;
        m.n = n;
        m.k = k;
        m.lambda = lambda;
        m.eps = eps;
        m.s = s;
        m.p = lambda / n;
        m.q = m.p * s;
        m.rho = m.q == 1 ? Rational(0) : Rational(s * (1 - m.p) / (1 - m.p * s));
        m.validate();
        return m;
    }

    Rational sbm_in() const { return (1 + (k - 1) * eps) * lambda / n; }
    Rational sbm_out() const { return (1 - eps) * lambda / n; }
    // Edge probability between labels a and b.
    Rational sbm_prob(int a, int b) const { return a == b ? sbm_in() : sbm_out(); }
    Rational lambda_tilde() const { return lambda > 1 ? lambda : Rational(1); }

    void validate() const {
        auto unit = [](const Rational& x, const char* name) {
            if (x < 0 || x > 1) throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
        };
        if (n < 2) throw std::invalid_argument("n must be at least 2");
        unit(p, "p");
        unit(s, "s");
        unit(q, "q");
        unit(rho, "rho");
        if (s == 0) throw std::invalid_argument("s must be positive");
        if (q != p * s) throw std::invalid_argument("q != p*s");
        if (q != 1 && rho != s * (1 - p) / (1 - p * s)) throw std::invalid_argument("rho inconsistent with (p,s)");
        if (k < 2) throw std::invalid_argument("k must be at least 2");
        if (lambda <= 0) throw std::invalid_argument("lambda must be positive");
        if (eps < 0 || eps >= 1) throw std::invalid_argument("eps must lie in [0,1)");
        if (delta <= 0 || delta > Rational(1, 100)) throw std::invalid_argument("delta must lie in (0, 0.01]");
        if (D < 0) throw std::invalid_argument("D must be non-negative");
        if (sbm_in() > 1 || sbm_out() > 1) throw std::invalid_argument("SBM edge probability exceeds 1");
    }
};

// The four constraints on N together with N >= 2/delta.
inline bool satisfies_N_constraints(const ModelParams& m, int N) {
    const double d = to_double(m.delta), e = to_double(m.eps), sa = std::sqrt(kOtterAlpha);
    const double k = m.k;
    if (N < 2.0 / d) return false;
    bool c1 = (sa - d) * (1 + std::pow(e, N) * k) <= sa - d / 2;
    bool c2 = 10 * k * std::pow(1 - d, N) <= std::pow(1 - d / 2, N);
    bool c3 = (sa - d / 2) * std::pow(1 + std::pow(1 - d / 2, N), 2) <= sa - d / 4;
    bool c4 = std::pow(1 - d / 2, N) * (N + 1) <= 1;
    return c1 && c2 && c3 && c4;
}

// Smallest admissible N.
inline int choose_N(const ModelParams& m, int limit = 1'000'000) {
    for (int N = static_cast<int>(std::ceil(2.0 / to_double(m.delta))); N <= limit; ++N)
        if (satisfies_N_constraints(m, N)) return N;
    throw std::runtime_error("no N up to the search limit satisfies the constraints");
}

}  // namespace lowdeg
