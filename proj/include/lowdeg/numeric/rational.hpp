#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <algorithm>
#include <string>
#include <string_view>

namespace lowdeg {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

// Parses "a/b", integers, and decimals with an optional exponent ("0.35", "1e-3").
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
    std::size_t start = s.find_first_not_of(" \t");
    if (start == std::string::npos) throw std::invalid_argument("empty number");
    s = s.substr(start);

    if (auto slash = s.find('/'); slash != std::string::npos) {
        Rational num = parse_rational(s.substr(0, slash));
        Rational den = parse_rational(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
        return num / den;
    }

    bool negative = false;
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') {
        negative = s[i] == '-';
        ++i;
    }
    std::string digits;
    int frac_digits = 0;
    bool seen_point = false;
    for (; i < s.size() && s[i] != 'e' && s[i] != 'E'; ++i) {
        char c = s[i];
        if (c == '.') {
            if (seen_point) throw std::invalid_argument("bad number '" + s + "'");
            seen_point = true;
        } else if (c >= '0' && c <= '9') {
            digits.push_back(c);
            if (seen_point) ++frac_digits;
        } else {
            throw std::invalid_argument("bad number '" + s + "'");
        }
    }
    if (digits.empty()) throw std::invalid_argument("bad number '" + s + "'");
    long exponent = 0;
    if (i < s.size()) {
        std::string e = s.substr(i + 1);
        if (e.empty()) throw std::invalid_argument("bad exponent in '" + s + "'");
        std::size_t used = 0;
        exponent = std::stol(e, &used);
        if (used != e.size()) throw std::invalid_argument("bad exponent in '" + s + "'");
    }
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));  // no octal
    BigInt mantissa(digits);
    long shift = exponent - frac_digits;
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(shift < 0 ? -shift : shift));
    Rational r = shift < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
    return negative ? Rational(-r) : r;
}

inline Rational rat(std::string_view text) { return parse_rational(text); }

inline Rational rat(long long num, long long den = 1) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(BigInt(num), BigInt(den));
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational rational_pow(const Rational& base, int exponent) {
    if (exponent < 0) {
        if (base == 0) throw std::domain_error("zero to a negative power");
        return rational_pow(Rational(1) / base, -exponent);
    }
    Rational result = 1;
    Rational b = base;
    for (unsigned e = static_cast<unsigned>(exponent); e; e >>= 1) {
        if (e & 1U) result *= b;
        if (e > 1) b *= b;
    }
    return result;
}

inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace lowdeg
