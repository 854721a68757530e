#pragma once

// Exact arithmetic in the field Q(sqrt p1, sqrt p2, ...): values are finite
// sums  c_1 sqrt(d_1) + ... + c_r sqrt(d_r)  with rational c_i and distinct
// squarefree d_i. Square roots of distinct squarefree integers are linearly
// independent over Q, so the sorted term list is a canonical form and zero
// testing is exact.

#include "lowdeg/numeric/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lowdeg {

namespace detail {

inline constexpr std::uint64_t kTrialLimit = 1'000'000;

// Splits a positive integer x into square * squarefree, returning (root, squarefree).
inline std::pair<BigInt, BigInt> split_square(BigInt x) {
    if (x <= 0) throw std::domain_error("split_square needs a positive integer");
    BigInt root = 1;
    BigInt free = 1;
    for (std::uint64_t p = 2; p <= kTrialLimit && BigInt(p) * p <= x; p += (p == 2 ? 1 : 2)) {
        int e = 0;
        while (x % p == 0) {
            x /= p;
            ++e;
        }
        for (int i = 0; i + 1 < e; i += 2) root *= p;
        if (e % 2) free *= p;
    }
    if (x > 1) {
        BigInt s = boost::multiprecision::sqrt(x);
        if (s * s == x) {
            root *= s;
        } else if (x < BigInt(kTrialLimit) * kTrialLimit) {
            free *= x;  // no factor below the trial limit, so x is prime
        } else {
            throw std::domain_error("radicand too large to factor: " + x.str());
        }
    }
    return {root, free};
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t d) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p <= kTrialLimit && p * p <= d; p += (p == 2 ? 1 : 2)) {
        if (d % p == 0) {
            out.push_back(p);
            while (d % p == 0) d /= p;
        }
    }
    if (d > 1) {
        if (d >= kTrialLimit * kTrialLimit) throw std::domain_error("radicand too large to factor");
        out.push_back(d);
    }
    return out;
}

inline std::uint64_t to_u64(const BigInt& v) {
    if (v > BigInt(std::numeric_limits<std::uint64_t>::max() / 4))
        throw std::domain_error("radicand exceeds 64-bit range");
    return v.convert_to<std::uint64_t>();
}

}  // namespace detail

class Surd {
public:
    struct Term {
        std::uint64_t radicand;
        Rational coeff;
        friend bool operator==(const Term&, const Term&) = default;
    };

    Surd() = default;
    Surd(int v) : Surd(Rational(v)) {}
    Surd(const Rational& r) {
        if (r != 0) terms_.push_back({1, r});
    }

    // sqrt(r) for a non-negative rational r.
    static Surd sqrt_of(const Rational& r) {
        if (r < 0) throw std::domain_error("square root of a negative rational");
        if (r == 0) return {};
        auto [rn, fn] = detail::split_square(boost::multiprecision::numerator(r));
        auto [rd, fd] = detail::split_square(boost::multiprecision::denominator(r));
        // sqrt(fn/fd) = sqrt(fn*fd)/fd; fn, fd are coprime squarefree
        Surd out;
        out.terms_.push_back({detail::to_u64(fn * fd), Rational(rn, rd * fd)});
        return out;
    }

    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_rational() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].radicand == 1); }

    Rational rational_value() const {
        if (!is_rational()) throw std::domain_error("surd is irrational: " + str());
        return terms_.empty() ? Rational(0) : terms_[0].coeff;
    }

    double to_double() const {
        long double acc = 0;
        for (const auto& t : terms_)
            acc += static_cast<long double>(t.coeff.convert_to<double>()) *
                   std::sqrt(static_cast<long double>(t.radicand));
        return static_cast<double>(acc);
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& t : terms_) {
            if (!first) os << " + ";
            first = false;
            os << t.coeff.str();
            if (t.radicand != 1) os << "*sqrt(" << t.radicand << ")";
        }
        return os.str();
    }

    Surd operator-() const {
        Surd out = *this;
        for (auto& t : out.terms_) t.coeff = -t.coeff;
        return out;
    }

    Surd& operator+=(const Surd& o) { return *this = merge(*this, o, 1); }
    Surd& operator-=(const Surd& o) { return *this = merge(*this, o, -1); }
    Surd& operator*=(const Surd& o) { return *this = multiply(*this, o); }
    Surd& operator/=(const Surd& o) { return *this = multiply(*this, o.inverse()); }

    friend Surd operator+(Surd a, const Surd& b) { return a += b; }
    friend Surd operator-(Surd a, const Surd& b) { return a -= b; }
    friend Surd operator*(const Surd& a, const Surd& b) { return multiply(a, b); }
    friend Surd operator/(const Surd& a, const Surd& b) { return multiply(a, b.inverse()); }
    friend bool operator==(const Surd& a, const Surd& b) { return a.terms_ == b.terms_; }

    Surd inverse() const {
        if (is_zero()) throw std::domain_error("division by zero surd");
        // Multiply by Galois conjugates until the value becomes rational.
        Surd numerator = 1;
        Surd y = *this;
        for (std::uint64_t p : primes_in()) {
            Surd c = y.conjugate(p);
            numerator = multiply(numerator, c);
            y = multiply(y, c);
        }
        return multiply(numerator, Surd(Rational(1) / y.rational_value()));
    }

    // Flips the sign of every term whose radicand is divisible by p.
    Surd conjugate(std::uint64_t p) const {
        Surd out = *this;
        for (auto& t : out.terms_)
            if (t.radicand % p == 0) t.coeff = -t.coeff;
        return out;
    }

private:
    std::vector<Term> terms_;

    std::vector<std::uint64_t> primes_in() const {
        std::vector<std::uint64_t> ps;
        for (const auto& t : terms_)
            for (auto p : detail::prime_factors(t.radicand)) ps.push_back(p);
        std::sort(ps.begin(), ps.end());
        ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
        return ps;
    }

    static Surd merge(const Surd& a, const Surd& b, int sign) {
        Surd out;
        out.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].radicand < b.terms_[j].radicand)) {
                out.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || b.terms_[j].radicand < a.terms_[i].radicand) {
                Term t = b.terms_[j++];
                if (sign < 0) t.coeff = -t.coeff;
                out.terms_.push_back(std::move(t));
            } else {
                Rational c = sign < 0 ? Rational(a.terms_[i].coeff - b.terms_[j].coeff)
                                      : Rational(a.terms_[i].coeff + b.terms_[j].coeff);
                if (c != 0) out.terms_.push_back({a.terms_[i].radicand, std::move(c)});
                ++i;
                ++j;
            }
        }
        return out;
    }

    static Surd multiply(const Surd& a, const Surd& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Term> raw;
        raw.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& x : a.terms_) {
            for (const auto& y : b.terms_) {
                std::uint64_t g = std::gcd(x.radicand, y.radicand);
                unsigned __int128 r = static_cast<unsigned __int128>(x.radicand / g) * (y.radicand / g);
                if (r > std::numeric_limits<std::uint64_t>::max() / 4)
                    throw std::domain_error("surd radicand overflow");
                raw.push_back({static_cast<std::uint64_t>(r), x.coeff * y.coeff * g});
            }
        }
        std::sort(raw.begin(), raw.end(), [](const Term& l, const Term& r) { return l.radicand < r.radicand; });
        Surd out;
        for (auto& t : raw) {
            if (!out.terms_.empty() && out.terms_.back().radicand == t.radicand) {
                out.terms_.back().coeff += t.coeff;
            } else {
                if (!out.terms_.empty() && out.terms_.back().coeff == 0) out.terms_.pop_back();
                out.terms_.push_back(std::move(t));
            }
        }
        if (!out.terms_.empty() && out.terms_.back().coeff == 0) out.terms_.pop_back();
        return out;
    }
};

inline double to_double(const Surd& s) { return s.to_double(); }

}  // namespace lowdeg
