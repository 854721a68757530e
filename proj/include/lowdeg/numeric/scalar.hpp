#pragma once

// Uniform access to the three scalar backends: double (float mode),
// Rational (exact, no square roots) and Surd (exact with square roots).

#include "lowdeg/numeric/rational.hpp"
#include "lowdeg/numeric/surd.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace lowdeg {

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static double from(const Rational& r) { return lowdeg::to_double(r); }
    static double sqrt(const Rational& r) { return std::sqrt(lowdeg::to_double(r)); }
    static double to_double(double x) { return x; }
    static bool is_zero(double x) { return x == 0.0; }
    static std::string str(double x) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return buf;
    }
};

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static Rational from(const Rational& r) { return r; }
    static Rational sqrt(const Rational& r) {
        Surd s = Surd::sqrt_of(r);
        if (!s.is_rational()) throw std::domain_error("irrational square root in rational mode");
        return s.rational_value();
    }
    static double to_double(const Rational& x) { return lowdeg::to_double(x); }
    static bool is_zero(const Rational& x) { return x == 0; }
    static std::string str(const Rational& x) { return x.str(); }
};

template <>
struct ScalarTraits<Surd> {
    static constexpr bool exact = true;
    static Surd from(const Rational& r) { return Surd(r); }
    static Surd sqrt(const Rational& r) { return Surd::sqrt_of(r); }
    static double to_double(const Surd& x) { return x.to_double(); }
    static bool is_zero(const Surd& x) { return x.is_zero(); }
    static std::string str(const Surd& x) { return x.str(); }
};

template <class T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

template <class T>
T from_rational(const Rational& r) {
    return ScalarTraits<T>::from(r);
}

template <class T>
T sqrt_rational(const Rational& r) {
    return ScalarTraits<T>::sqrt(r);
}

template <class T>
double as_double(const T& x) {
    return ScalarTraits<T>::to_double(x);
}

template <class T>
bool is_zero(const T& x) {
    return ScalarTraits<T>::is_zero(x);
}

template <class T>
std::string scalar_str(const T& x) {
    return ScalarTraits<T>::str(x);
}

template <class T>
T scalar_pow(const T& base, int exponent) {
    if (exponent < 0) return T(1) / scalar_pow(base, -exponent);
    T result = T(1);
    T b = base;
    for (unsigned e = static_cast<unsigned>(exponent); e; e >>= 1) {
        if (e & 1U) result = result * b;
        if (e > 1) b = b * b;
    }
    return result;
}

// r^(e/2) for integer e (possibly negative or odd).
template <class T>
T half_power(const Rational& r, int e) {
    if (e == 0) return T(1);
    const bool negative = e < 0;
    const int m = negative ? -e : e;
    T value = from_rational<T>(rational_pow(r, m / 2));
    if (m % 2) value = value * sqrt_rational<T>(r);
    return negative ? T(1) / value : value;
}

}  // namespace lowdeg
