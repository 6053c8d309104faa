#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "lrlab/errors.hpp"

namespace lrlab {

// Exact rational with 64-bit numerator/denominator, always normalized
// (gcd 1, denominator > 0). Radii, rates and rate gaps are carried exactly;
// floating point never enters threshold computations.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(long long n) : num_(n) {}

    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    // Accepts "a/b" or a bare integer "a". Decimal notation is rejected:
    // thresholds derived from radii must stay exact.
    static Rational parse(const std::string& text);

    long long num() const { return num_; }
    long long den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    // Canonical text form, always "num/den" (e.g. "1/4", "3/1").
    std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

    bool is_integer() const { return den_ == 1; }

    // floor(this * s) and ceil(this * s) in exact integer arithmetic.
    long long floor_mul(long long s) const;
    long long ceil_mul(long long s) const;

    long long floor() const { return floor_mul(1); }
    long long ceil() const { return ceil_mul(1); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(checked(static_cast<__int128>(a.num_) * b.den_ +
                                static_cast<__int128>(b.num_) * a.den_),
                        checked(static_cast<__int128>(a.den_) * b.den_));
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + Rational(-b.num_, b.den_); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(checked(static_cast<__int128>(a.num_) * b.num_),
                        checked(static_cast<__int128>(a.den_) * b.den_));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw domain_error("rational division by zero");
        return Rational(checked(static_cast<__int128>(a.num_) * b.den_),
                        checked(static_cast<__int128>(a.den_) * b.num_));
    }
    Rational operator-() const { return Rational(-num_, den_); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

private:
    static long long checked(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN) throw domain_error("rational arithmetic overflow");
        return static_cast<long long>(v);
    }

    void normalize() {
        if (den_ == 0) throw domain_error("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    long long num_ = 0;
    long long den_ = 1;
};

inline long long Rational::floor_mul(long long s) const {
    __int128 t = static_cast<__int128>(num_) * s;
    __int128 d = den_;
    __int128 q = t / d;
    if (t % d != 0 && ((t < 0) != (d < 0))) --q;
    return checked(q);
}

inline long long Rational::ceil_mul(long long s) const {
    __int128 t = static_cast<__int128>(num_) * s;
    __int128 d = den_;
    __int128 q = t / d;
    if (t % d != 0 && ((t < 0) == (d < 0))) ++q;
    return checked(q);
}

inline Rational Rational::parse(const std::string& text) {
    auto parse_int = [](const std::string& s) -> long long {
        if (s.empty()) throw usage_error("empty integer in rational \"" + s + "\"");
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(s, &pos);
        } catch (const std::exception&) {
            throw usage_error("cannot parse rational component \"" + s + "\"");
        }
        if (pos != s.size())
            throw usage_error("rational must be \"num/den\" with integer parts, got \"" + s + "\"");
        return v;
    };
    auto slash = text.find('/');
    if (text.find('.') != std::string::npos)
        throw usage_error("decimal rationals are rejected, use \"num/den\": \"" + text + "\"");
    if (slash == std::string::npos) return Rational(parse_int(text));
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

} // namespace lrlab
