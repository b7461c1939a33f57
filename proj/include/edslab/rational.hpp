#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "edslab/bigint.hpp"

namespace edslab {

// Exact rational, always fully reduced with positive denominator. The
// positive-denominator invariant is what makes denominator extraction
// (D_nP from x = A/D^2) well defined.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

    // Accepts "p", "p/q", and decimal literals like "-3.25".
    static Rational parse(std::string_view s) {
        auto slash = s.find('/');
        if (slash != std::string_view::npos) {
            return Rational(BigInt::from_decimal(s.substr(0, slash)),
                            BigInt::from_decimal(s.substr(slash + 1)));
        }
        auto dot = s.find('.');
        if (dot == std::string_view::npos) return Rational(BigInt::from_decimal(s));
        std::string digits(s.substr(0, dot));
        std::string frac(s.substr(dot + 1));
        BigInt den = BigInt::pow(BigInt(10), static_cast<unsigned long>(frac.size()));
        bool neg = !digits.empty() && digits[0] == '-';
        BigInt whole = BigInt::from_decimal(digits.empty() || digits == "-" || digits == "+"
                                                ? std::string("0")
                                                : digits);
        BigInt fpart = frac.empty() ? BigInt(0) : BigInt::from_decimal(frac);
        BigInt num = whole.abs() * den + fpart;
        if (neg) num.negate();
        return Rational(num, den);
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    int sign() const { return num_.sign(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_ == BigInt(1); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw InvalidInput("rational division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational operator-() const {
        Rational r = *this;
        r.num_.negate();
        return r;
    }
    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }

    std::string to_string() const {
        if (is_integer()) return num_.to_decimal();
        return num_.to_decimal() + "/" + den_.to_decimal();
    }

private:
    BigInt num_, den_;

    void reduce() {
        if (den_.is_zero()) throw InvalidInput("rational with zero denominator");
        if (num_.is_zero()) {
            den_ = BigInt(1);
            return;
        }
        if (den_.sign() < 0) {
            num_.negate();
            den_.negate();
        }
        BigInt g = BigInt::gcd(num_, den_);
        if (g != BigInt(1)) {
            num_ = BigInt::exact_div(num_, g);
            den_ = BigInt::exact_div(den_, g);
        }
    }
};

}  // namespace edslab
