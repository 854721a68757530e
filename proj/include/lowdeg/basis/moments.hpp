#pragma once

// Exact moments of centered monomials chi_a(x) = prod_{e in a} (x_e - c_e)
// under an enumerated rational measure. Weights and centered coordinates are
// scaled to integers so accumulation runs in __int128 when an a-priori bound
// rules out overflow, and in GMP integers otherwise.

#include "lowdeg/basis/measure.hpp"
#include "lowdeg/graph/edge_space.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace lowdeg {

namespace detail {

inline BigInt from_i128(__int128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    BigInt out = BigInt(static_cast<std::uint64_t>(u >> 64));
    out <<= 64;
    out += BigInt(static_cast<std::uint64_t>(u));
    return neg ? BigInt(-out) : out;
}

inline double log2_abs(const BigInt& x) {
    if (x == 0) return -1e9;
    return static_cast<double>(boost::multiprecision::msb(boost::multiprecision::abs(x))) + 1;
}

}  // namespace detail

class CenteredMoments {
public:
    CenteredMoments(const ExactMeasure& measure, std::vector<Rational> centers) : centers_(std::move(centers)) {
        const ExactMeasure m = measure.marginal();
        if (static_cast<int>(centers_.size()) != m.width()) throw std::invalid_argument("one center per coordinate");
        scale_ = 1;
        for (const auto& a : m.atoms()) scale_ = boost::multiprecision::lcm(scale_, boost::multiprecision::denominator(a.weight));
        for (const auto& a : m.atoms()) {
            bits_.push_back(a.bits);
            weights_.push_back(boost::multiprecision::numerator(a.weight) * (scale_ / boost::multiprecision::denominator(a.weight)));
        }
        for (const auto& c : centers_) {
            const BigInt num = boost::multiprecision::numerator(c), den = boost::multiprecision::denominator(c);
            den_.push_back(den);
            one_.push_back(den - num);
            zero_.push_back(-num);
        }
        double wmax = 0, vmax = 0;
        bool small = true;
        for (const auto& w : weights_) wmax = std::max(wmax, detail::log2_abs(w));
        for (std::size_t e = 0; e < centers_.size(); ++e)
            vmax = std::max({vmax, detail::log2_abs(one_[e]), detail::log2_abs(zero_[e])});
        small = wmax <= 62 && vmax <= 30;
        log_weight_ = wmax;
        log_value_ = vmax;
        log_atoms_ = std::log2(static_cast<double>(std::max<std::size_t>(bits_.size(), 1))) + 1;
        small_ = small;
        if (small_) {
            for (std::size_t e = 0; e < centers_.size(); ++e) {
                one64_.push_back(one_[e].convert_to<long long>());
                zero64_.push_back(zero_[e].convert_to<long long>());
            }
            for (const auto& w : weights_) w64_.push_back(w.convert_to<long long>());
        }
    }

    int width() const noexcept { return static_cast<int>(centers_.size()); }
    const std::vector<Rational>& centers() const noexcept { return centers_; }

    // prod_{e in a} c_e (1 - c_e): E[chi_a^2] under the product law with these means.
    Rational product_variance(EdgeMask a) const {
        Rational v = 1;
        for (EdgeMask r = a; r; r &= r - 1) {
            const Rational& c = centers_[static_cast<std::size_t>(std::countr_zero(r))];
            v *= c * (1 - c);
        }
        return v;
    }

    std::vector<Rational> means(const std::vector<EdgeMask>& masks) const {
        const int deg = max_degree(masks);
        std::vector<Rational> out(masks.size());
        if (small_ && fits(deg)) {
            for (std::size_t f = 0; f < masks.size(); ++f) {
                __int128 acc = 0;
                for (std::size_t x = 0; x < bits_.size(); ++x) acc += static_cast<__int128>(w64_[x]) * value64(masks[f], bits_[x]);
                out[f] = Rational(detail::from_i128(acc), scale_ * den_product(masks[f]));
            }
            return out;
        }
        for (std::size_t f = 0; f < masks.size(); ++f) {
            BigInt acc = 0;
            for (std::size_t x = 0; x < bits_.size(); ++x) acc += weights_[x] * value_big(masks[f], bits_[x]);
            out[f] = Rational(acc, scale_ * den_product(masks[f]));
        }
        return out;
    }

    // Full symmetric matrix G[a][b] = E[chi_a chi_b].
    std::vector<std::vector<Rational>> gram(const std::vector<EdgeMask>& masks) const {
        const std::size_t F = masks.size();
        const int deg = max_degree(masks);
        std::vector<std::vector<Rational>> g(F, std::vector<Rational>(F));
        std::vector<BigInt> dens(F);
        for (std::size_t f = 0; f < F; ++f) dens[f] = den_product(masks[f]);
        if (small_ && fits(2 * deg) && deg * log_value_ <= 62) {
            std::vector<__int128> acc(F * F, 0);
            std::vector<long long> v(F);
            for (std::size_t x = 0; x < bits_.size(); ++x) {
                for (std::size_t f = 0; f < F; ++f) v[f] = static_cast<long long>(value64(masks[f], bits_[x]));
                for (std::size_t a = 0; a < F; ++a) {
                    if (v[a] == 0) continue;
                    const __int128 wa = static_cast<__int128>(w64_[x]) * v[a];
                    __int128* row = &acc[a * F];
                    for (std::size_t b = a; b < F; ++b) row[b] += wa * v[b];
                }
            }
            for (std::size_t a = 0; a < F; ++a)
                for (std::size_t b = a; b < F; ++b) {
                    g[a][b] = Rational(detail::from_i128(acc[a * F + b]), scale_ * dens[a] * dens[b]);
                    g[b][a] = g[a][b];
                }
            return g;
        }
        std::vector<BigInt> acc(F * F, BigInt(0));
        std::vector<BigInt> v(F);
        for (std::size_t x = 0; x < bits_.size(); ++x) {
            for (std::size_t f = 0; f < F; ++f) v[f] = value_big(masks[f], bits_[x]);
            for (std::size_t a = 0; a < F; ++a) {
                if (v[a] == 0) continue;
                const BigInt wa = weights_[x] * v[a];
                for (std::size_t b = a; b < F; ++b) acc[a * F + b] += wa * v[b];
            }
        }
        for (std::size_t a = 0; a < F; ++a)
            for (std::size_t b = a; b < F; ++b) {
                g[a][b] = Rational(acc[a * F + b], scale_ * dens[a] * dens[b]);
                g[b][a] = g[a][b];
            }
        return g;
    }

private:
    static int max_degree(const std::vector<EdgeMask>& masks) {
        int d = 0;
        for (EdgeMask m : masks) d = std::max(d, std::popcount(m));
        return d;
    }

    bool fits(int degree) const { return log_atoms_ + log_weight_ + degree * log_value_ <= 124; }

    __int128 value64(EdgeMask a, std::uint64_t x) const {
        __int128 v = 1;
        for (EdgeMask r = a; r; r &= r - 1) {
            const int e = std::countr_zero(r);
            v *= (x >> e) & 1U ? one64_[static_cast<std::size_t>(e)] : zero64_[static_cast<std::size_t>(e)];
        }
        return v;
    }

    BigInt value_big(EdgeMask a, std::uint64_t x) const {
        BigInt v = 1;
        for (EdgeMask r = a; r; r &= r - 1) {
            const int e = std::countr_zero(r);
            v *= (x >> e) & 1U ? one_[static_cast<std::size_t>(e)] : zero_[static_cast<std::size_t>(e)];
        }
        return v;
    }

    BigInt den_product(EdgeMask a) const {
        BigInt d = 1;
        for (EdgeMask r = a; r; r &= r - 1) d *= den_[static_cast<std::size_t>(std::countr_zero(r))];
        return d;
    }

    std::vector<Rational> centers_;
    BigInt scale_;
    std::vector<std::uint64_t> bits_;
    std::vector<BigInt> weights_, den_, one_, zero_;
    std::vector<long long> w64_, one64_, zero64_;
    double log_weight_ = 0, log_value_ = 0, log_atoms_ = 0;
    bool small_ = false;
};

// Coordinate means of a measure (the product-law centers).
inline std::vector<Rational> coordinate_means(const ExactMeasure& m) {
    std::vector<Rational> out(static_cast<std::size_t>(m.width()));
    for (const auto& a : m.atoms())
        for (std::uint64_t r = a.bits; r; r &= r - 1) out[static_cast<std::size_t>(std::countr_zero(r))] += a.weight;
    return out;
}

// Whether m is exactly the product of its coordinate marginals.
inline bool is_product_measure(const ExactMeasure& measure) {
    const ExactMeasure m = measure.marginal();
    const auto q = coordinate_means(m);
    std::size_t expected = 1;
    for (const auto& c : q) expected *= (c == 0 || c == 1) ? 1 : 2;
    if (m.size() != expected) return false;
    for (const auto& a : m.atoms()) {
        Rational w = 1;
        for (int e = 0; e < m.width(); ++e) w *= (a.bits >> e) & 1U ? q[static_cast<std::size_t>(e)] : 1 - q[static_cast<std::size_t>(e)];
        if (w != a.weight) return false;
    }
    return true;
}

// Masks over `width` coordinates with popcount <= degree, grouped by degree.
inline std::vector<EdgeMask> monomials_up_to(int width, int degree) {
    if (width > 64) throw std::length_error("monomials_up_to: width above 64");
    const EdgeMask all = width == 64 ? ~EdgeMask{0} : (EdgeMask{1} << width) - 1;
    return submasks_up_to(all, degree);
}

}  // namespace lowdeg
