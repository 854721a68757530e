#pragma once

// Finite distributions over bit-vector outcomes. An outcome packs observed
// edge indicators into `bits`; `hidden` carries a latent variable (a
// permutation rank or a label vector index) so planted and conditional
// measures can be built by surgery on the joint and then marginalized.

#include "lowdeg/numeric/rational.hpp"
#include "lowdeg/numeric/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace lowdeg {

inline constexpr int kMaxMeasureWidth = 24;
inline constexpr std::size_t kMaxAtoms = std::size_t{1} << 22;

template <class W>
struct Atom {
    std::uint64_t bits = 0;
    std::uint32_t hidden = 0;
    W weight{};
};

template <class W>
class DiscreteMeasure {
public:
    DiscreteMeasure() = default;

    // Merges repeated outcomes and drops zero weights. The total must be 1
    // (exactly for rationals, within 1e-12 for doubles) unless normalize is set.
    DiscreteMeasure(int width, std::vector<Atom<W>> atoms, bool normalize = false) : width_(width) {
        if (width < 0 || width > 64) throw std::invalid_argument("measure width out of range");
        std::sort(atoms.begin(), atoms.end(), [](const Atom<W>& a, const Atom<W>& b) {
            return std::tie(a.hidden, a.bits) < std::tie(b.hidden, b.bits);
        });
        W total{};
        for (auto& a : atoms) {
            if (a.weight < 0) throw std::invalid_argument("negative weight");
            if (width < 64 && (a.bits >> width) != 0) throw std::invalid_argument("outcome exceeds measure width");
            total += a.weight;
            if (!atoms_.empty() && atoms_.back().bits == a.bits && atoms_.back().hidden == a.hidden)
                atoms_.back().weight += a.weight;
            else
                atoms_.push_back(std::move(a));
        }
        atoms_.erase(std::remove_if(atoms_.begin(), atoms_.end(), [](const Atom<W>& a) { return a.weight == 0; }),
                     atoms_.end());
        if (atoms_.size() > kMaxAtoms) throw std::length_error("measure support exceeds 2^22 atoms");
        if (normalize) {
            if (total == 0) throw std::domain_error("measure has zero mass");
            for (auto& a : atoms_) a.weight /= total;
        } else if (!unit_total(total)) {
            throw std::invalid_argument("weights do not sum to 1");
        }
    }

    int width() const noexcept { return width_; }
    const std::vector<Atom<W>>& atoms() const noexcept { return atoms_; }
    std::size_t size() const noexcept { return atoms_.size(); }

    // Law of the observed bits alone, sorted by bits.
    DiscreteMeasure marginal() const {
        std::vector<Atom<W>> out;
        out.reserve(atoms_.size());
        for (const auto& a : atoms_) out.push_back({a.bits, 0, a.weight});
        return DiscreteMeasure(width_, std::move(out), false);
    }

    // Conditional law given the event keep(atom); throws on a null event.
    template <class Pred>
    DiscreteMeasure condition(Pred keep) const {
        std::vector<Atom<W>> out;
        for (const auto& a : atoms_)
            if (keep(a)) out.push_back(a);
        return DiscreteMeasure(width_, std::move(out), true);
    }

    W probability_of(std::uint64_t bits) const {
        W total{};
        for (const auto& a : atoms_)
            if (a.bits == bits) total += a.weight;
        return total;
    }

    template <class F>
    auto expect(F f) const {
        using R = decltype(f(atoms_.front()) * atoms_.front().weight);
        R acc{};
        for (const auto& a : atoms_) acc += f(a) * a.weight;
        return acc;
    }

    template <class V>
    DiscreteMeasure<V> convert() const {
        std::vector<Atom<V>> out;
        out.reserve(atoms_.size());
        for (const auto& a : atoms_) out.push_back({a.bits, a.hidden, from_rational_like<V>(a.weight)});
        return DiscreteMeasure<V>(width_, std::move(out), !std::is_same_v<V, W>);
    }

    // Independent product; b's bits sit above a's. Hidden parts must be empty.
    friend DiscreteMeasure product(const DiscreteMeasure& a, const DiscreteMeasure& b) {
        if (a.width_ + b.width_ > kMaxMeasureWidth) throw std::length_error("product measure too wide");
        std::vector<Atom<W>> out;
        out.reserve(a.size() * b.size());
        for (const auto& x : a.atoms_)
            for (const auto& y : b.atoms_) out.push_back({x.bits | (y.bits << a.width_), 0, x.weight * y.weight});
        return DiscreteMeasure(a.width_ + b.width_, std::move(out), false);
    }

    // Convex combination of measures of equal width.
    static DiscreteMeasure mixture(const std::vector<DiscreteMeasure>& parts, const std::vector<W>& mix) {
        if (parts.empty() || parts.size() != mix.size()) throw std::invalid_argument("mixture: size mismatch");
        std::vector<Atom<W>> out;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (parts[i].width_ != parts[0].width_) throw std::invalid_argument("mixture: width mismatch");
            for (const auto& a : parts[i].atoms_) out.push_back({a.bits, a.hidden, a.weight * mix[i]});
        }
        return DiscreteMeasure(parts[0].width_, std::move(out), false);
    }

private:
    template <class V, class U>
    static V from_rational_like(const U& w) {
        if constexpr (std::is_same_v<U, Rational> && std::is_same_v<V, double>) return lowdeg::to_double(w);
        else return V(w);
    }

    static bool unit_total(const W& total) {
        if constexpr (std::is_floating_point_v<W>) return std::abs(total - 1) <= 1e-12;
        else return total == 1;
    }

    int width_ = 0;
    std::vector<Atom<W>> atoms_;
};

using ExactMeasure = DiscreteMeasure<Rational>;
using FloatMeasure = DiscreteMeasure<double>;

}  // namespace lowdeg
