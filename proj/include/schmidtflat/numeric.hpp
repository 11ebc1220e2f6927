#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace schmidtflat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double x) { return x; }

inline Rational rational_pow(const Rational& base, int exp) {
    if (exp < 0) return Rational(1) / rational_pow(base, -exp);
    Rational acc(1), b = base;
    int e = exp;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

// floor(sqrt(n)) for n >= 0, exact.
inline BigInt isqrt(const BigInt& n) {
    if (n < 0) throw std::domain_error("isqrt of negative");
    if (n == 0) return 0;
    BigInt x = BigInt(1) << (static_cast<unsigned>(boost::multiprecision::msb(n)) / 2 + 1);
    while (true) {
        BigInt y = (x + n / x) / 2;
        if (y >= x) break;
        x = y;
    }
    return x;
}

inline BigInt floor_rational(const Rational& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    BigInt q = num / den;
    if (num < 0 && q * den != num) --q;
    return q;
}

// Decimal integer parse; strips signs and leading zeros (cpp_int would read
// a leading 0 as an octal prefix).
inline std::optional<BigInt> parse_bigint(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i >= s.size()) return std::nullopt;
    std::string digits;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
        digits += s[i];
    }
    std::size_t nz = digits.find_first_not_of('0');
    digits = (nz == std::string::npos) ? "0" : digits.substr(nz);
    BigInt v(digits);
    return neg ? BigInt(-v) : v;
}

// Parses "p/q" or "p", or a plain decimal like "0.25" / "-3e-2".
inline std::optional<Rational> parse_rational(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        auto p = parse_bigint(s.substr(0, slash));
        auto q = parse_bigint(s.substr(slash + 1));
        if (!p || !q || *q == 0) return std::nullopt;
        return Rational(*p, *q);
    }
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find('E') == std::string::npos) {
        auto p = parse_bigint(s);
        if (!p) return std::nullopt;
        return Rational(*p);
    }
    // Decimal fallback: mantissa/10^k scaled by exponent.
    std::string body = s;
    int expo = 0;
    if (auto e = body.find_first_of("eE"); e != std::string::npos) {
        try {
            expo = std::stoi(body.substr(e + 1));
        } catch (const std::exception&) {
            return std::nullopt;
        }
        body = body.substr(0, e);
    }
    auto dot = body.find('.');
    std::string digits = body;
    int frac = 0;
    if (dot != std::string::npos) {
        frac = static_cast<int>(body.size() - dot - 1);
        digits = body.substr(0, dot) + body.substr(dot + 1);
    }
    auto mant = parse_bigint(digits);
    if (!mant) return std::nullopt;
    Rational r(*mant, 1);
    int shift = expo - frac;
    if (shift > 0) r *= rational_pow(Rational(10), shift);
    if (shift < 0) r /= rational_pow(Rational(10), -shift);
    return r;
}

inline std::string format_rational(const Rational& r) {
    std::string s = boost::multiprecision::numerator(r).str();
    if (boost::multiprecision::denominator(r) != 1)
        s += "/" + boost::multiprecision::denominator(r).str();
    return s;
}

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline constexpr double kPi = std::numbers::pi_v<double>;

}  // namespace schmidtflat
