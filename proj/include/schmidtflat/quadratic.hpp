#pragma once

#include "schmidtflat/numeric.hpp"

#include <compare>
#include <ostream>

namespace schmidtflat {

// Element a + b*sqrt(d) of the real quadratic field Q(sqrt(d)), d a fixed
// nonsquare positive integer (d == 0 degenerates to plain rationals).
// All arithmetic and comparisons are exact.
class QuadExt {
public:
    QuadExt() : a_(0), b_(0), d_(0) {}
    QuadExt(Rational a) : a_(std::move(a)), b_(0), d_(0) {}
    QuadExt(Rational a, Rational b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
        if (d_ < 0) throw std::domain_error("QuadExt: negative discriminant");
        if (b_ == 0) d_ = 0;
        if (d_ == 0 && b_ != 0) throw std::domain_error("QuadExt: sqrt(0) coefficient");
    }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    long d() const { return d_; }
    bool is_rational() const { return b_ == 0; }

    friend QuadExt operator-(const QuadExt& x) { return QuadExt(-x.a_, -x.b_, x.d_); }

    friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
        long d = merge_d(x, y);
        return QuadExt(x.a_ + y.a_, x.b_ + y.b_, d);
    }
    friend QuadExt operator-(const QuadExt& x, const QuadExt& y) { return x + (-y); }
    friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
        long d = merge_d(x, y);
        return QuadExt(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d);
    }
    friend QuadExt operator/(const QuadExt& x, const QuadExt& y) {
        Rational norm = y.a_ * y.a_ - y.b_ * y.b_ * Rational(y.d_);
        if (norm == 0) throw std::domain_error("QuadExt: division by zero");
        QuadExt conj(y.a_, -y.b_, y.d_);
        QuadExt num = x * conj;
        return QuadExt(num.a_ / norm, num.b_ / norm, num.d_);
    }

    QuadExt& operator+=(const QuadExt& y) { return *this = *this + y; }
    QuadExt& operator-=(const QuadExt& y) { return *this = *this - y; }
    QuadExt& operator*=(const QuadExt& y) { return *this = *this * y; }

    // Sign of a + b*sqrt(d), exact.
    int sign() const {
        int sa = a_ == 0 ? 0 : (a_ > 0 ? 1 : -1);
        int sb = b_ == 0 ? 0 : (b_ > 0 ? 1 : -1);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        Rational lhs = a_ * a_, rhs = b_ * b_ * Rational(d_);
        if (lhs == rhs) return 0;
        return (lhs > rhs) ? sa : sb;
    }

    QuadExt abs() const { return sign() >= 0 ? *this : -*this; }

    friend bool operator==(const QuadExt& x, const QuadExt& y) { return (x - y).sign() == 0; }
    friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }
    friend bool operator<(const QuadExt& x, const QuadExt& y) { return (x - y).sign() < 0; }
    friend bool operator<=(const QuadExt& x, const QuadExt& y) { return (x - y).sign() <= 0; }
    friend bool operator>(const QuadExt& x, const QuadExt& y) { return (x - y).sign() > 0; }
    friend bool operator>=(const QuadExt& x, const QuadExt& y) { return (x - y).sign() >= 0; }

    double to_double() const {
        return schmidtflat::to_double(a_) + schmidtflat::to_double(b_) * std::sqrt(double(d_));
    }

    // floor(a + b*sqrt(d)), exact via integer square roots.
    BigInt floor() const {
        if (b_ == 0) return floor_rational(a_);
        // Bracket b*sqrt(d) between consecutive rationals with denominator den(b)*2^k.
        BigInt lo = floor_quad_part_lo();
        // value in [a + lo/scale, a + (lo+1)/scale); take floor of both ends and resolve.
        Rational scale = part_scale();
        Rational low = a_ + Rational(lo) / scale;
        BigInt f = floor_rational(low);
        // At most one boundary correction is ever needed: check f+1 <= value.
        if ((*this - QuadExt(Rational(f + 1))).sign() >= 0) ++f;
        return f;
    }

    std::string str() const {
        if (b_ == 0) return format_rational(a_);
        return "(" + format_rational(a_) + ")+(" + format_rational(b_) + ")*sqrt(" +
               std::to_string(d_) + ")";
    }

    friend std::ostream& operator<<(std::ostream& os, const QuadExt& x) { return os << x.str(); }

private:
    static long merge_d(const QuadExt& x, const QuadExt& y) {
        if (x.d_ == 0) return y.d_;
        if (y.d_ == 0) return x.d_;
        if (x.d_ != y.d_) throw std::domain_error("QuadExt: mixed discriminants");
        return x.d_;
    }

    Rational part_scale() const {
        // scale chosen so b*sqrt(d)*scale has integer floor computable by isqrt
        return Rational(boost::multiprecision::denominator(b_)) * 1024;
    }

    BigInt floor_quad_part_lo() const {
        // floor(b*sqrt(d) * scale) with scale = den(b)*1024
        Rational scale = part_scale();
        Rational bs = b_ * scale;  // integer-valued times 1024/den adjust: bs = p*1024
        BigInt p = boost::multiprecision::numerator(bs);
        if (boost::multiprecision::denominator(bs) != 1)
            throw std::logic_error("QuadExt: scale not integral");
        // floor(p*sqrt(d)) = sign-aware isqrt(p^2 d)
        BigInt sq = p * p * d_;
        BigInt r = isqrt(sq);
        if (p >= 0) return r;
        return (r * r == sq) ? BigInt(-r) : BigInt(-r - 1);
    }

    Rational a_, b_;
    long d_;
};

// Parses "p/q", "p", or "(a+b*sqrt(d))/c" with a,b,c,d integers (c optional).
inline std::optional<QuadExt> parse_quadext(const std::string& text) {
    auto strip = [](std::string s) {
        std::string t;
        for (char c : s)
            if (!std::isspace(static_cast<unsigned char>(c))) t += c;
        return t;
    };
    std::string s = strip(text);
    if (s.empty()) return std::nullopt;
    if (s.front() != '(') {
        auto r = parse_rational(s);
        if (!r) return std::nullopt;
        return QuadExt(*r);
    }
    std::size_t close = std::string::npos;
    for (std::size_t i = 0, depth = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')' && --depth == 0) {
            close = i;
            break;
        }
    }
    if (close == std::string::npos) return std::nullopt;
    std::string inner = s.substr(1, close - 1);
    Rational c(1);
    if (close + 1 < s.size()) {
        if (s[close + 1] != '/') return std::nullopt;
        auto cr = parse_rational(s.substr(close + 2));
        if (!cr || *cr == 0) return std::nullopt;
        c = *cr;
    }
    // inner: a+b*sqrt(d) | a-b*sqrt(d) | a
    auto sq = inner.find("sqrt(");
    if (sq == std::string::npos) {
        auto r = parse_rational(inner);
        if (!r) return std::nullopt;
        return QuadExt(*r / c);
    }
    auto dend = inner.find(')', sq);
    if (dend == std::string::npos) return std::nullopt;
    long d = 0;
    try {
        d = std::stol(inner.substr(sq + 5, dend - sq - 5));
    } catch (const std::exception&) {
        return std::nullopt;
    }
    // locate the split between the a-term and b-term: last +/- before "b*sqrt"
    std::string head = inner.substr(0, sq);
    if (!head.empty() && head.back() == '*') head.pop_back();
    size_t split = std::string::npos;
    for (size_t i = head.size(); i-- > 1;) {
        if ((head[i] == '+' || head[i] == '-') && head[i - 1] != 'e' && head[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    Rational a(0), b(1);
    if (split == std::string::npos) {
        if (!head.empty() && head != "+") {
            if (head == "-") {
                b = -1;
            } else {
                auto br = parse_rational(head);
                if (!br) return std::nullopt;
                b = *br;
            }
        }
    } else {
        auto ar = parse_rational(head.substr(0, split));
        if (!ar) return std::nullopt;
        a = *ar;
        std::string bpart = head.substr(split);
        if (bpart == "+") {
            b = 1;
        } else if (bpart == "-") {
            b = -1;
        } else {
            auto br = parse_rational(bpart);
            if (!br) return std::nullopt;
            b = *br;
        }
    }
    return QuadExt(a / c, b / c, d);
}

}  // namespace schmidtflat
