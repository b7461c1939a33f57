#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <utility>

#include "edslab/bigint.hpp"

namespace edslab {

// Arbitrary-precision binary floating point: value = mant * 2^exp2 with the
// mantissa truncated to `prec` bits after every operation. Each value carries
// its precision; binary operations work at the larger of the two, so there is
// no global rounding state. Truncation costs at most one ulp per operation,
// which the guard bits used by the callers absorb.
class Real {
public:
    Real() = default;
    explicit Real(long long v, int prec = 256) : mant_(v), prec_(prec) { normalize(); }

    static Real from_bigint(const BigInt& v, int prec) {
        Real r;
        r.mant_ = v;
        r.prec_ = prec;
        r.normalize();
        return r;
    }

    // Exact representation regardless of size; used when comparing against
    // exactly generated integers.
    static Real exact(const BigInt& v) {
        int prec = static_cast<int>(std::max<size_t>(v.bit_length(), 64));
        return from_bigint(v, prec);
    }

    static Real pow2(long long e, int prec) {
        Real r(1, prec);
        r.exp2_ = e;
        return r;
    }

    int precision() const { return prec_; }
    int sign() const { return mant_.sign(); }
    bool is_zero() const { return mant_.is_zero(); }
    const BigInt& mantissa() const { return mant_; }
    long long exponent2() const { return exp2_; }

    Real with_precision(int prec) const {
        Real r = *this;
        r.prec_ = prec;
        r.normalize();
        return r;
    }

    Real operator-() const {
        Real r = *this;
        r.mant_.negate();
        return r;
    }

    Real abs() const {
        Real r = *this;
        r.mant_ = r.mant_.abs();
        return r;
    }

    friend Real operator+(const Real& a, const Real& b) {
        if (a.is_zero()) return b.with_precision(std::max(a.prec_, b.prec_));
        if (b.is_zero()) return a.with_precision(std::max(a.prec_, b.prec_));
        int prec = std::max(a.prec_, b.prec_);
        // Far-apart operands: the small one is below the result's last bit.
        long long atop = a.exp2_ + static_cast<long long>(a.mant_.bit_length());
        long long btop = b.exp2_ + static_cast<long long>(b.mant_.bit_length());
        if (atop - btop > prec + 4) return a.with_precision(prec);
        if (btop - atop > prec + 4) return b.with_precision(prec);
        long long e = std::min(a.exp2_, b.exp2_);
        BigInt ma = a.mant_ << static_cast<size_t>(a.exp2_ - e);
        BigInt mb = b.mant_ << static_cast<size_t>(b.exp2_ - e);
        Real r;
        r.mant_ = ma + mb;
        r.exp2_ = e;
        r.prec_ = prec;
        r.normalize();
        return r;
    }

    friend Real operator-(const Real& a, const Real& b) { return a + (-b); }

    friend Real operator*(const Real& a, const Real& b) {
        Real r;
        r.mant_ = a.mant_ * b.mant_;
        r.exp2_ = a.exp2_ + b.exp2_;
        r.prec_ = std::max(a.prec_, b.prec_);
        r.normalize();
        return r;
    }

    friend Real operator/(const Real& a, const Real& b) {
        if (b.is_zero()) throw InvalidInput("real division by zero");
        if (a.is_zero()) return Real(0, std::max(a.prec_, b.prec_));
        Real r;
        r.prec_ = std::max(a.prec_, b.prec_);
        long long k = static_cast<long long>(b.mant_.bit_length()) -
                      static_cast<long long>(a.mant_.bit_length()) + r.prec_ + 8;
        if (k < 0) k = 0;
        r.mant_ = (a.mant_ << static_cast<size_t>(k)) / b.mant_;
        r.exp2_ = a.exp2_ - b.exp2_ - k;
        r.normalize();
        return r;
    }

    Real& operator+=(const Real& b) { return *this = *this + b; }
    Real& operator-=(const Real& b) { return *this = *this - b; }
    Real& operator*=(const Real& b) { return *this = *this * b; }
    Real& operator/=(const Real& b) { return *this = *this / b; }

    Real mul_pow2(long long e) const {
        Real r = *this;
        if (!r.is_zero()) r.exp2_ += e;
        return r;
    }

    Real mul_int(long long v) const {
        Real r;
        r.mant_ = mant_ * BigInt(v);
        r.exp2_ = exp2_;
        r.prec_ = prec_;
        r.normalize();
        return r;
    }

    static int cmp(const Real& a, const Real& b) {
        if (a.sign() != b.sign()) return a.sign() < b.sign() ? -1 : 1;
        if (a.is_zero()) return 0;
        Real d = a - b;
        return d.sign();
    }
    friend bool operator<(const Real& a, const Real& b) { return cmp(a, b) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return cmp(a, b) >= 0; }

    static Real sqrt(const Real& x) {
        if (x.sign() < 0) throw InvalidInput("sqrt of negative real");
        if (x.is_zero()) return x;
        int prec = x.prec_;
        long long t = 2 * (prec + 8) - static_cast<long long>(x.mant_.bit_length());
        if (t < 0) t = 0;
        if ((x.exp2_ - t) & 1) ++t;  // even exponent for the halved result
        Real r;
        r.mant_ = BigInt::isqrt(x.mant_ << static_cast<size_t>(t));
        r.exp2_ = (x.exp2_ - t) / 2;
        r.prec_ = prec;
        r.normalize();
        return r;
    }

    BigInt floor() const {
        if (is_zero()) return BigInt(0);
        if (exp2_ >= 0) return mant_ << static_cast<size_t>(exp2_);
        size_t shift = static_cast<size_t>(-exp2_);
        if (shift >= mant_.bit_length()) return mant_.sign() > 0 ? BigInt(0) : BigInt(-1);
        BigInt q = mant_.abs() >> shift;
        if (mant_.sign() > 0) return q;
        // Negative value: round down when any dropped bit was set.
        if ((q << shift) != mant_.abs()) q += BigInt(1);
        return -q;
    }

    // Distance to the nearest integer, in [0, 1/2].
    Real dist_to_integer() const {
        Real f = *this - from_bigint(floor(), prec_);
        Real half = Real(1, prec_).mul_pow2(-1);
        if (f > half) return Real(1, prec_) - f;
        return f;
    }

    double to_double() const {
        if (is_zero()) return 0.0;
        // Keep the top 53 bits and apply the exponent with ldexp.
        size_t bits = mant_.bit_length();
        long long drop = static_cast<long long>(bits) - 62;
        BigInt top = drop > 0 ? (mant_ >> static_cast<size_t>(drop)) : mant_;
        double m = static_cast<double>(top.to_int64());
        return std::ldexp(m, static_cast<int>((drop > 0 ? drop : 0) + exp2_));
    }

    // Round-half-up decimal rendering with `digits` significant digits.
    std::string to_decimal(int digits = 30) const {
        if (is_zero()) return "0";
        // First decimal-exponent estimate from the binary magnitude.
        long long bin_top = exp2_ + static_cast<long long>(mant_.bit_length());
        long long k = static_cast<long long>(
            std::floor(static_cast<double>(bin_top) * 0.30102999566398119521));
        for (int attempt = 0; attempt < 4; ++attempt) {
            BigInt d = scaled_integer(digits - 1 - k);
            std::string s = d.to_decimal();
            if (static_cast<int>(s.size()) > digits) {
                ++k;
                continue;
            }
            if (static_cast<int>(s.size()) < digits) {
                --k;
                continue;
            }
            return format_decimal(s, k);
        }
        throw Error("decimal rendering failed to settle");
    }

    static Real parse(std::string_view sv, int prec) {
        std::string s(sv);
        int sign = 1;
        size_t i = 0;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sign = -1;
            ++i;
        }
        std::string digits;
        long long dec_exp = 0;
        bool seen_dot = false;
        for (; i < s.size(); ++i) {
            char c = s[i];
            if (c == '.') {
                if (seen_dot) throw InvalidInput("bad real literal: " + s);
                seen_dot = true;
            } else if (c == 'e' || c == 'E') {
                try {
                    dec_exp += std::stoll(s.substr(i + 1));
                } catch (const std::exception&) {
                    throw InvalidInput("bad exponent in real literal: " + s);
                }
                break;
            } else if (c >= '0' && c <= '9') {
                digits.push_back(c);
                if (seen_dot) --dec_exp;
            } else {
                throw InvalidInput("bad real literal: " + s);
            }
        }
        if (digits.empty()) throw InvalidInput("bad real literal: " + s);
        BigInt n = BigInt::from_decimal(digits);
        if (sign < 0) n.negate();
        Real r = from_bigint(n, prec + 16);
        if (dec_exp > 0) r = r * from_bigint(BigInt::pow(BigInt(10), static_cast<unsigned long>(dec_exp)), prec + 16);
        if (dec_exp < 0) r = r / from_bigint(BigInt::pow(BigInt(10), static_cast<unsigned long>(-dec_exp)), prec + 16);
        return r.with_precision(prec);
    }

private:
    BigInt mant_;
    long long exp2_ = 0;
    int prec_ = 256;

    void normalize() {
        if (mant_.is_zero()) {
            exp2_ = 0;
            return;
        }
        size_t bits = mant_.bit_length();
        if (static_cast<long long>(bits) > prec_) {
            size_t drop = bits - static_cast<size_t>(prec_);
            mant_ = mant_ >> drop;
            exp2_ += static_cast<long long>(drop);
        }
        // Strip trailing zero bits to keep mantissas small.
        size_t tz = 0;
        while (!mant_.bit(tz)) ++tz;
        if (tz) {
            mant_ = mant_ >> tz;
            exp2_ += static_cast<long long>(tz);
        }
    }

    // |x| * 10^s as an integer, rounded half-up.
    BigInt scaled_integer(long long s) const {
        BigInt m = mant_.abs();
        long long e = exp2_;
        if (s >= 0) m = m * BigInt::pow(BigInt(10), static_cast<unsigned long>(s));
        if (s < 0) {
            BigInt den = BigInt::pow(BigInt(10), static_cast<unsigned long>(-s));
            if (e >= 0) {
                m = m << static_cast<size_t>(e);
                e = 0;
            }
            BigInt d2 = den << static_cast<size_t>(1 - e);
            return ((m << 1) + (d2 >> 1)) / d2;
        }
        if (e >= 0) return m << static_cast<size_t>(e);
        size_t sh = static_cast<size_t>(-e);
        if (sh > 1) m = m >> (sh - 1);
        return (m + BigInt(1)) >> 1;
    }

    std::string format_decimal(const std::string& s, long long k) const {
        std::string body;
        if (k >= 0 && k < 21) {
            if (k + 1 >= static_cast<long long>(s.size())) {
                body = s + std::string(k + 1 - s.size(), '0');
            } else {
                body = s.substr(0, k + 1) + "." + s.substr(k + 1);
            }
        } else if (k < 0 && k > -7) {
            body = "0." + std::string(-k - 1, '0') + s;
        } else {
            body = s.substr(0, 1) + "." + s.substr(1) + "e" + std::to_string(k);
        }
        // Trim trailing zeros in the fraction part.
        auto dot = body.find('.');
        if (dot != std::string::npos && body.find('e') == std::string::npos) {
            size_t last = body.find_last_not_of('0');
            if (body[last] == '.') --last;
            body.erase(last + 1);
        }
        return (sign() < 0 ? "-" : "") + body;
    }
};

}  // namespace edslab
