#pragma once

// Exact enumerated laws of the models on tiny instances. Edge (i,j) of K_n
// occupies bit EdgeSpace(n).index(i,j); pair outcomes put A in the low m bits
// and B in the next m bits.

#include "lowdeg/basis/measure.hpp"
#include "lowdeg/graph/edge_space.hpp"
#include "lowdeg/models/params.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace lowdeg {

inline std::vector<std::vector<int>> all_permutations(int n) {
    if (n < 0 || n > 8) throw std::length_error("permutation enumeration limited to n <= 8");
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline std::vector<int> decode_labels(std::uint32_t index, int n, int k) {
    std::vector<int> sigma(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        sigma[static_cast<std::size_t>(v)] = static_cast<int>(index % static_cast<std::uint32_t>(k));
        index /= static_cast<std::uint32_t>(k);
    }
    return sigma;
}

inline std::uint32_t encode_labels(const std::vector<int>& sigma, int k) {
    std::uint32_t index = 0;
    for (std::size_t v = sigma.size(); v-- > 0;) index = index * static_cast<std::uint32_t>(k) + static_cast<std::uint32_t>(sigma[v]);
    return index;
}

inline std::uint32_t label_count(int n, int k) {
    double total = std::pow(static_cast<double>(k), n);
    if (total > 1 << 20) throw std::length_error("label enumeration exceeds 2^20");
    return static_cast<std::uint32_t>(total);
}

namespace detail {

inline std::vector<Rational> power_table(const Rational& x, int up_to) {
    std::vector<Rational> t(static_cast<std::size_t>(up_to + 1));
    t[0] = 1;
    for (int i = 1; i <= up_to; ++i) t[static_cast<std::size_t>(i)] = t[static_cast<std::size_t>(i - 1)] * x;
    return t;
}

inline void check_unit(const Rational& p) {
    if (p < 0 || p > 1) throw std::invalid_argument("probability outside [0,1]");
}

}  // namespace detail

// Independent Bernoulli coordinates.
inline ExactMeasure bernoulli_product(const std::vector<Rational>& probs) {
    const int w = static_cast<int>(probs.size());
    if (w > 22) throw std::length_error("bernoulli_product: more than 22 coordinates");
    for (const auto& p : probs) detail::check_unit(p);
    std::vector<Atom<Rational>> atoms;
    atoms.reserve(std::size_t{1} << w);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << w); ++x) {
        Rational weight = 1;
        for (int e = 0; e < w && weight != 0; ++e) weight *= (x >> e) & 1U ? probs[static_cast<std::size_t>(e)] : 1 - probs[static_cast<std::size_t>(e)];
        if (weight != 0) atoms.push_back({x, 0, std::move(weight)});
    }
    return ExactMeasure(w, std::move(atoms));
}

inline ExactMeasure er_measure(int n, const Rational& q) {
    EdgeSpace sp(n);
    return bernoulli_product(std::vector<Rational>(static_cast<std::size_t>(sp.size()), q));
}

// Null law of the correlated pair: A and B independent G(n,q).
inline ExactMeasure independent_pair_measure(int n, const Rational& q) {
    EdgeSpace sp(n);
    return bernoulli_product(std::vector<Rational>(static_cast<std::size_t>(2 * sp.size()), q));
}

// Joint law of (pi*, A, B) for the correlated ER model; hidden = rank of pi*
// in all_permutations(n). B_{pi(i)pi(j)} = G_ij K_ij. When parent_filter is set
// the parent G is conditioned on it.
inline ExactMeasure correlated_er_measure(const ModelParams& m,
                                          const std::function<bool(std::uint64_t)>& parent_filter = {}) {
    if (m.n > 4) throw std::length_error("correlated_er_measure: enumeration limited to n <= 4");
    EdgeSpace sp(m.n);
    const int e = sp.size();
    const auto perms = all_permutations(m.n);
    std::vector<std::vector<int>> image(perms.size());
    for (std::size_t r = 0; r < perms.size(); ++r)
        for (int i = 0; i < e; ++i) {
            const Edge& ed = sp.edge(i);
            image[r].push_back(sp.index(perms[r][static_cast<std::size_t>(ed.u)], perms[r][static_cast<std::size_t>(ed.v)]));
        }
    std::vector<Atom<Rational>> atoms;
    if (!parent_filter) {
        // per edge the pair (A_e, B_pi(e)) takes states 11, 10, 01, 00
        const Rational w[4] = {m.p * m.s * m.s, m.p * m.s * (1 - m.s), m.p * m.s * (1 - m.s),
                               1 - 2 * m.p * m.s + m.p * m.s * m.s};
        std::vector<std::vector<Rational>> pw;
        for (const auto& x : w) pw.push_back(detail::power_table(x, e));
        const Rational inv = Rational(1, static_cast<long>(perms.size()));
        std::vector<Rational> table;  // weight by state counts, indexed c11*(e+1)^2 + c10*(e+1) + c01
        const int b = e + 1;
        table.resize(static_cast<std::size_t>(b * b * b));
        for (int c11 = 0; c11 <= e; ++c11)
            for (int c10 = 0; c10 + c11 <= e; ++c10)
                for (int c01 = 0; c01 + c10 + c11 <= e; ++c01)
                    table[static_cast<std::size_t>((c11 * b + c10) * b + c01)] =
                        inv * pw[0][static_cast<std::size_t>(c11)] * pw[1][static_cast<std::size_t>(c10)] *
                        pw[2][static_cast<std::size_t>(c01)] * pw[3][static_cast<std::size_t>(e - c11 - c10 - c01)];
        const std::uint64_t states = std::uint64_t{1} << (2 * e);
        atoms.reserve(perms.size() * states);
        for (std::size_t r = 0; r < perms.size(); ++r)
            for (std::uint64_t code = 0; code < states; ++code) {
                std::uint64_t bits = 0;
                int c[4] = {0, 0, 0, 0};
                for (int i = 0; i < e; ++i) {
                    const unsigned st = static_cast<unsigned>((code >> (2 * i)) & 3U);  // bit0: A, bit1: B
                    const bool a = st & 1U, bb = st & 2U;
                    if (a) bits |= std::uint64_t{1} << i;
                    if (bb) bits |= std::uint64_t{1} << (e + image[r][static_cast<std::size_t>(i)]);
                    ++c[a && bb ? 0 : a ? 1 : bb ? 2 : 3];
                }
                const Rational& wt = table[static_cast<std::size_t>((c[0] * b + c[1]) * b + c[2])];
                if (wt != 0) atoms.push_back({bits, static_cast<std::uint32_t>(r), wt});
            }
        return ExactMeasure(2 * e, std::move(atoms));
    }
    const auto pp = detail::power_table(m.p, e), qp = detail::power_table(1 - m.p, e);
    const auto sp_ = detail::power_table(m.s, e), sq = detail::power_table(1 - m.s, e);
    for (std::uint64_t g = 0; g < (std::uint64_t{1} << e); ++g) {
        if (!parent_filter(g)) continue;
        const int gs = std::popcount(g);
        const Rational wg = pp[static_cast<std::size_t>(gs)] * qp[static_cast<std::size_t>(e - gs)];
        if (wg == 0) continue;
        std::vector<int> gi;
        for (std::uint64_t r = g; r; r &= r - 1) gi.push_back(std::countr_zero(r));
        for (std::size_t r = 0; r < perms.size(); ++r)
            for (std::uint64_t a = 0; a < (std::uint64_t{1} << gs); ++a)
                for (std::uint64_t bsub = 0; bsub < (std::uint64_t{1} << gs); ++bsub) {
                    std::uint64_t bits = 0;
                    for (int t = 0; t < gs; ++t) {
                        if ((a >> t) & 1U) bits |= std::uint64_t{1} << gi[static_cast<std::size_t>(t)];
                        if ((bsub >> t) & 1U)
                            bits |= std::uint64_t{1} << (e + image[r][static_cast<std::size_t>(gi[static_cast<std::size_t>(t)])]);
                    }
                    const int na = std::popcount(a), nb = std::popcount(bsub);
                    atoms.push_back({bits, static_cast<std::uint32_t>(r),
                                     wg * sp_[static_cast<std::size_t>(na)] * sq[static_cast<std::size_t>(gs - na)] *
                                         sp_[static_cast<std::size_t>(nb)] * sq[static_cast<std::size_t>(gs - nb)]});
                }
    }
    return ExactMeasure(2 * e, std::move(atoms), true);
}

// Joint law of (sigma*, G) for the SBM; hidden = encode_labels(sigma*).
inline ExactMeasure sbm_joint_measure(const ModelParams& m) {
    EdgeSpace sp(m.n);
    const int e = sp.size();
    if (e > 16) throw std::length_error("sbm_joint_measure: enumeration limited to n <= 6");
    const std::uint32_t labels = label_count(m.n, m.k);
    const Rational pin = m.sbm_in(), pout = m.sbm_out();
    detail::check_unit(pin);
    detail::check_unit(pout);
    const auto in1 = detail::power_table(pin, e), in0 = detail::power_table(1 - pin, e);
    const auto out1 = detail::power_table(pout, e), out0 = detail::power_table(1 - pout, e);
    const Rational prior = Rational(1, static_cast<long>(labels));
    std::vector<Atom<Rational>> atoms;
    for (std::uint32_t li = 0; li < labels; ++li) {
        const auto sigma = decode_labels(li, m.n, m.k);
        std::uint64_t same = 0;
        for (int i = 0; i < e; ++i)
            if (sigma[static_cast<std::size_t>(sp.edge(i).u)] == sigma[static_cast<std::size_t>(sp.edge(i).v)])
                same |= std::uint64_t{1} << i;
        const int ns = std::popcount(same);
        for (std::uint64_t g = 0; g < (std::uint64_t{1} << e); ++g) {
            const int a = std::popcount(g & same), b = std::popcount(g & ~same);
            Rational w = prior * in1[static_cast<std::size_t>(a)] * in0[static_cast<std::size_t>(ns - a)] *
                         out1[static_cast<std::size_t>(b)] * out0[static_cast<std::size_t>(e - ns - b)];
            if (w != 0) atoms.push_back({g, li, std::move(w)});
        }
    }
    return ExactMeasure(e, std::move(atoms));
}

}  // namespace lowdeg
