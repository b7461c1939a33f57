#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "edslab/errors.hpp"

namespace edslab {

// Signed arbitrary-precision integer on 64-bit limbs (little-endian
// magnitude, separate sign). Multiplication is schoolbook with a Karatsuba
//路 above ~32 limbs; division is Knuth's algorithm D. Everything the
// sequence generators need -- exact division, gcd, isqrt, powers, decimal
// I/O -- lives here.
class BigInt {
public:
    BigInt() = default;

    BigInt(long long v) {
        if (v == 0) return;
        sign_ = v < 0 ? -1 : 1;
        // Avoid UB negating LLONG_MIN.
        unsigned long long m = v < 0 ? ~static_cast<unsigned long long>(v) + 1ULL
                                     : static_cast<unsigned long long>(v);
        mag_.push_back(m);
    }
    BigInt(int v) : BigInt(static_cast<long long>(v)) {}

    static BigInt from_decimal(std::string_view s) {
        size_t i = 0;
        int sign = 1;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        }
        if (i == s.size()) throw InvalidInput("empty integer literal");
        BigInt r;
        BigInt chunk_base(1000000000000000000LL);  // 10^18
        unsigned long long acc = 0;
        int acc_digits = 0;
        for (; i < s.size(); ++i) {
            char c = s[i];
            if (c < '0' || c > '9')
                throw InvalidInput("bad digit in integer literal: " + std::string(s));
            acc = acc * 10 + static_cast<unsigned long long>(c - '0');
            if (++acc_digits == 18) {
                r = r * chunk_base + BigInt(static_cast<long long>(acc));
                acc = 0;
                acc_digits = 0;
            }
        }
        if (acc_digits > 0) {
            unsigned long long p10 = 1;
            for (int k = 0; k < acc_digits; ++k) p10 *= 10;
            r = r * BigInt(static_cast<long long>(p10)) + BigInt(static_cast<long long>(acc));
        }
        if (sign < 0) r.negate();
        return r;
    }

    int sign() const { return sign_; }
    bool is_zero() const { return sign_ == 0; }
    bool odd() const { return sign_ != 0 && (mag_[0] & 1); }
    bool even() const { return !odd(); }

    // Number of significant bits of |x|; 0 for x = 0.
    size_t bit_length() const {
        if (sign_ == 0) return 0;
        uint64_t top = mag_.back();
        size_t bits = (mag_.size() - 1) * 64;
        while (top) {
            ++bits;
            top >>= 1;
        }
        return bits;
    }

    bool bit(size_t i) const {
        size_t limb = i / 64;
        if (limb >= mag_.size()) return false;
        return (mag_[limb] >> (i % 64)) & 1;
    }

    size_t limb_count() const { return mag_.size(); }

    void negate() { sign_ = -sign_; }

    BigInt operator-() const {
        BigInt r = *this;
        r.negate();
        return r;
    }

    BigInt abs() const {
        BigInt r = *this;
        if (r.sign_ < 0) r.sign_ = 1;
        return r;
    }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.sign_ == b.sign_ && a.mag_ == b.mag_;
    }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
    friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return cmp(a, b) >= 0; }

    static int cmp(const BigInt& a, const BigInt& b) {
        if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
        int c = cmp_mag(a.mag_, b.mag_);
        return a.sign_ >= 0 ? c : -c;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        BigInt r;
        if (a.sign_ == b.sign_) {
            r.mag_ = add_mag(a.mag_, b.mag_);
            r.sign_ = a.sign_;
        } else {
            int c = cmp_mag(a.mag_, b.mag_);
            if (c == 0) return BigInt();
            if (c > 0) {
                r.mag_ = sub_mag(a.mag_, b.mag_);
                r.sign_ = a.sign_;
            } else {
                r.mag_ = sub_mag(b.mag_, a.mag_);
                r.sign_ = b.sign_;
            }
        }
        return r;
    }

    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    BigInt& operator+=(const BigInt& b) { return *this = *this + b; }
    BigInt& operator-=(const BigInt& b) { return *this = *this - b; }
    BigInt& operator*=(const BigInt& b) { return *this = *this * b; }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
        BigInt r;
        r.mag_ = mul_mag(a.mag_, b.mag_);
        r.sign_ = a.sign_ * b.sign_;
        return r;
    }

    // Truncated division: quotient rounds toward zero, remainder has the
    // dividend's sign. |r| < |b| always.
    static std::pair<BigInt, BigInt> divmod(const BigInt& a, const BigInt& b) {
        if (b.sign_ == 0) throw InvalidInput("division by zero");
        if (a.sign_ == 0) return {BigInt(), BigInt()};
        int c = cmp_mag(a.mag_, b.mag_);
        if (c < 0) return {BigInt(), a};
        BigInt q, r;
        divmod_mag(a.mag_, b.mag_, q.mag_, r.mag_);
        q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
        r.sign_ = r.mag_.empty() ? 0 : a.sign_;
        return {q, r};
    }

    friend BigInt operator/(const BigInt& a, const BigInt& b) { return divmod(a, b).first; }
    friend BigInt operator%(const BigInt& a, const BigInt& b) { return divmod(a, b).second; }

    // Division that must be exact; anything else means corrupt input data.
    static BigInt exact_div(const BigInt& a, const BigInt& b) {
        if (b.sign_ == 0) throw InexactDivision("exact division by zero");
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw InexactDivision("division left a remainder");
        return q;
    }

    bool divisible_by(const BigInt& b) const {
        if (b.sign_ == 0) return sign_ == 0;
        return (*this % b).is_zero();
    }

    BigInt operator<<(size_t bits) const {
        if (sign_ == 0 || bits == 0) return *this;
        BigInt r;
        size_t limbs = bits / 64, sh = bits % 64;
        r.mag_.assign(limbs, 0);
        if (sh == 0) {
            r.mag_.insert(r.mag_.end(), mag_.begin(), mag_.end());
        } else {
            uint64_t carry = 0;
            for (uint64_t limb : mag_) {
                r.mag_.push_back((limb << sh) | carry);
                carry = limb >> (64 - sh);
            }
            if (carry) r.mag_.push_back(carry);
        }
        r.sign_ = sign_;
        return r;
    }

    // Arithmetic shift of the magnitude (truncation toward zero).
    BigInt operator>>(size_t bits) const {
        if (sign_ == 0) return *this;
        size_t limbs = bits / 64, sh = bits % 64;
        if (limbs >= mag_.size()) return BigInt();
        BigInt r;
        r.mag_.assign(mag_.begin() + static_cast<long>(limbs), mag_.end());
        if (sh != 0) {
            uint64_t carry = 0;
            for (size_t i = r.mag_.size(); i-- > 0;) {
                uint64_t limb = r.mag_[i];
                r.mag_[i] = (limb >> sh) | carry;
                carry = limb << (64 - sh);
            }
        }
        r.trim();
        r.sign_ = r.mag_.empty() ? 0 : sign_;
        return r;
    }

    static BigInt pow(const BigInt& base, unsigned long e) {
        BigInt r(1), b = base;
        while (e) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    static BigInt gcd(BigInt a, BigInt b) {
        a.sign_ = a.mag_.empty() ? 0 : 1;
        b.sign_ = b.mag_.empty() ? 0 : 1;
        while (!b.is_zero()) {
            BigInt r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a;
    }

    // Integer square root of a nonnegative value (floor).
    static BigInt isqrt(const BigInt& n) {
        if (n.sign_ < 0) throw InvalidInput("isqrt of negative value");
        if (n.sign_ == 0) return BigInt();
        size_t bits = n.bit_length();
        BigInt x = BigInt(1) << (bits / 2 + 1);
        for (;;) {
            BigInt y = (x + n / x) >> 1;
            if (y >= x) break;
            x = std::move(y);
        }
        return x;
    }

    static bool is_perfect_square(const BigInt& n, BigInt* root = nullptr) {
        if (n.sign_ < 0) return false;
        BigInt r = isqrt(n);
        if (r * r == n) {
            if (root) *root = r;
            return true;
        }
        return false;
    }

    bool fits_int64() const {
        if (mag_.size() > 1) return false;
        if (mag_.empty()) return true;
        if (sign_ > 0) return mag_[0] <= 0x7fffffffffffffffULL;
        return mag_[0] <= 0x8000000000000000ULL;
    }

    long long to_int64() const {
        if (!fits_int64()) throw InvalidInput("value does not fit in 64 bits");
        if (mag_.empty()) return 0;
        if (sign_ > 0) return static_cast<long long>(mag_[0]);
        return -static_cast<long long>(mag_[0] - 1) - 1;
    }

    // Approximate conversion, exact when the value fits a double mantissa.
    double to_double() const {
        if (sign_ == 0) return 0.0;
        double v = 0.0;
        size_t start = mag_.size() > 2 ? mag_.size() - 2 : 0;
        for (size_t i = mag_.size(); i-- > start;) v = v * 18446744073709551616.0 + static_cast<double>(mag_[i]);
        v = v * std::pow(2.0, 64.0 * static_cast<double>(start));
        return sign_ < 0 ? -v : v;
    }

    std::string to_decimal() const {
        if (sign_ == 0) return "0";
        std::vector<uint64_t> work = mag_;
        std::vector<uint64_t> chunks;  // least significant first
        const uint64_t chunk = 10000000000000000000ULL;  // 10^19
        while (!work.empty()) chunks.push_back(div_small_inplace(work, chunk));
        std::string out = sign_ < 0 ? "-" : "";
        out += std::to_string(chunks.back());
        for (size_t i = chunks.size() - 1; i-- > 0;) {
            std::string part = std::to_string(chunks[i]);
            out += std::string(19 - part.size(), '0') + part;
        }
        return out;
    }

private:
    int sign_ = 0;
    std::vector<uint64_t> mag_;

    void trim() {
        while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
        if (mag_.empty()) sign_ = 0;
    }

    static int cmp_mag(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (size_t i = a.size(); i-- > 0;) {
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        }
        return 0;
    }

    static std::vector<uint64_t> add_mag(const std::vector<uint64_t>& a,
                                         const std::vector<uint64_t>& b) {
        const auto& big = a.size() >= b.size() ? a : b;
        const auto& small = a.size() >= b.size() ? b : a;
        std::vector<uint64_t> r(big.size() + 1, 0);
        unsigned __int128 carry = 0;
        for (size_t i = 0; i < big.size(); ++i) {
            unsigned __int128 s = carry + big[i];
            if (i < small.size()) s += small[i];
            r[i] = static_cast<uint64_t>(s);
            carry = s >> 64;
        }
        r[big.size()] = static_cast<uint64_t>(carry);
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    // Requires |a| >= |b|.
    static std::vector<uint64_t> sub_mag(const std::vector<uint64_t>& a,
                                         const std::vector<uint64_t>& b) {
        std::vector<uint64_t> r(a.size(), 0);
        long long borrow = 0;
        for (size_t i = 0; i < a.size(); ++i) {
            unsigned __int128 av = a[i];
            unsigned __int128 sub = (i < b.size() ? b[i] : 0);
            sub += static_cast<unsigned long long>(borrow);
            if (av >= sub) {
                r[i] = static_cast<uint64_t>(av - sub);
                borrow = 0;
            } else {
                r[i] = static_cast<uint64_t>((av + (static_cast<unsigned __int128>(1) << 64)) - sub);
                borrow = 1;
            }
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    static std::vector<uint64_t> mul_school(const uint64_t* a, size_t na, const uint64_t* b,
                                            size_t nb) {
        std::vector<uint64_t> r(na + nb, 0);
        for (size_t i = 0; i < na; ++i) {
            if (a[i] == 0) continue;
            unsigned __int128 carry = 0;
            for (size_t j = 0; j < nb; ++j) {
                unsigned __int128 cur =
                    static_cast<unsigned __int128>(a[i]) * b[j] + r[i + j] + carry;
                r[i + j] = static_cast<uint64_t>(cur);
                carry = cur >> 64;
            }
            size_t k = i + nb;
            while (carry) {
                unsigned __int128 cur = carry + r[k];
                r[k] = static_cast<uint64_t>(cur);
                carry = cur >> 64;
                ++k;
            }
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    static constexpr size_t kKaratsubaThreshold = 32;

    static std::vector<uint64_t> mul_mag(const std::vector<uint64_t>& a,
                                         const std::vector<uint64_t>& b) {
        if (a.size() < kKaratsubaThreshold || b.size() < kKaratsubaThreshold)
            return mul_school(a.data(), a.size(), b.data(), b.size());
        return karatsuba(a, b);
    }

    static std::vector<uint64_t> karatsuba(std::vector<uint64_t> a, std::vector<uint64_t> b) {
        size_t half = (std::max(a.size(), b.size()) + 1) / 2;
        auto split = [half](const std::vector<uint64_t>& v) {
            std::vector<uint64_t> lo(v.begin(), v.begin() + static_cast<long>(std::min(half, v.size())));
            std::vector<uint64_t> hi;
            if (v.size() > half) hi.assign(v.begin() + static_cast<long>(half), v.end());
            while (!lo.empty() && lo.back() == 0) lo.pop_back();
            return std::pair(lo, hi);
        };
        auto [a0, a1] = split(a);
        auto [b0, b1] = split(b);
        std::vector<uint64_t> z0 = mul_mag(a0, b0);
        std::vector<uint64_t> z2 = mul_mag(a1, b1);
        std::vector<uint64_t> sa = add_mag(a0, a1);
        std::vector<uint64_t> sb = add_mag(b0, b1);
        std::vector<uint64_t> z1 = mul_mag(sa, sb);
        z1 = sub_mag(z1, add_mag(z0, z2));  // z1 >= z0 + z2 always
        // r = z0 + z1 << (64*half) + z2 << (128*half)
        std::vector<uint64_t> r(std::max({z0.size(), z1.size() + half, z2.size() + 2 * half}) + 1, 0);
        auto acc = [&r](const std::vector<uint64_t>& v, size_t off) {
            unsigned __int128 carry = 0;
            size_t i = 0;
            for (; i < v.size(); ++i) {
                unsigned __int128 s = carry + r[off + i] + v[i];
                r[off + i] = static_cast<uint64_t>(s);
                carry = s >> 64;
            }
            while (carry) {
                unsigned __int128 s = carry + r[off + i];
                r[off + i] = static_cast<uint64_t>(s);
                carry = s >> 64;
                ++i;
            }
        };
        acc(z0, 0);
        acc(z1, half);
        acc(z2, 2 * half);
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    static uint64_t div_small_inplace(std::vector<uint64_t>& a, uint64_t d) {
        unsigned __int128 rem = 0;
        for (size_t i = a.size(); i-- > 0;) {
            unsigned __int128 cur = (rem << 64) | a[i];
            a[i] = static_cast<uint64_t>(cur / d);
            rem = cur % d;
        }
        while (!a.empty() && a.back() == 0) a.pop_back();
        return static_cast<uint64_t>(rem);
    }

    // Knuth algorithm D on normalized limbs.
    static void divmod_mag(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b,
                           std::vector<uint64_t>& q, std::vector<uint64_t>& r) {
        if (b.size() == 1) {
            std::vector<uint64_t> work = a;
            uint64_t rem = div_small_inplace(work, b[0]);
            q = std::move(work);
            r.clear();
            if (rem) r.push_back(rem);
            return;
        }
        // Normalize so the divisor's top bit is set.
        int shift = 0;
        uint64_t top = b.back();
        while (!(top & 0x8000000000000000ULL)) {
            top <<= 1;
            ++shift;
        }
        auto shl = [](const std::vector<uint64_t>& v, int sh) {
            std::vector<uint64_t> out(v.size() + 1, 0);
            if (sh == 0) {
                std::copy(v.begin(), v.end(), out.begin());
            } else {
                uint64_t carry = 0;
                for (size_t i = 0; i < v.size(); ++i) {
                    out[i] = (v[i] << sh) | carry;
                    carry = v[i] >> (64 - sh);
                }
                out[v.size()] = carry;
            }
            return out;
        };
        std::vector<uint64_t> u = shl(a, shift);
        std::vector<uint64_t> v = shl(b, shift);
        while (!v.empty() && v.back() == 0) v.pop_back();
        size_t n = v.size();
        size_t m = u.size() - n;  // u has one extra limb from shl
        q.assign(m, 0);
        const unsigned __int128 base = static_cast<unsigned __int128>(1) << 64;
        for (size_t j = m; j-- > 0;) {
            unsigned __int128 num =
                (static_cast<unsigned __int128>(u[j + n]) << 64) | u[j + n - 1];
            unsigned __int128 qhat = num / v[n - 1];
            unsigned __int128 rhat = num % v[n - 1];
            if (qhat >= base) {
                qhat = base - 1;
                rhat = num - qhat * v[n - 1];
            }
            while (rhat < base &&
                   qhat * v[n - 2] > ((rhat << 64) | u[j + n - 2])) {
                --qhat;
                rhat += v[n - 1];
            }
            // Multiply-subtract qhat * v from u[j .. j+n].
            unsigned __int128 borrow = 0, carry = 0;
            for (size_t i = 0; i < n; ++i) {
                unsigned __int128 prod = qhat * v[i] + carry;
                carry = prod >> 64;
                uint64_t plo = static_cast<uint64_t>(prod);
                unsigned __int128 sub = static_cast<unsigned __int128>(plo) + borrow;
                if (u[i + j] >= sub) {
                    u[i + j] = static_cast<uint64_t>(u[i + j] - sub);
                    borrow = 0;
                } else {
                    u[i + j] = static_cast<uint64_t>(base + u[i + j] - sub);
                    borrow = 1;
                }
            }
            unsigned __int128 subtop = carry + borrow;
            if (u[j + n] >= subtop) {
                u[j + n] = static_cast<uint64_t>(u[j + n] - subtop);
                borrow = 0;
            } else {
                u[j + n] = static_cast<uint64_t>(base + u[j + n] - subtop);
                borrow = 1;
            }
            if (borrow) {
                // qhat was one too large; add v back.
                --qhat;
                unsigned __int128 c2 = 0;
                for (size_t i = 0; i < n; ++i) {
                    unsigned __int128 s = c2 + u[i + j] + v[i];
                    u[i + j] = static_cast<uint64_t>(s);
                    c2 = s >> 64;
                }
                u[j + n] = static_cast<uint64_t>(u[j + n] + c2);
            }
            q[j] = static_cast<uint64_t>(qhat);
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        u.resize(n);
        // Denormalize the remainder.
        if (shift) {
            uint64_t carry = 0;
            for (size_t i = u.size(); i-- > 0;) {
                uint64_t limb = u[i];
                u[i] = (limb >> shift) | carry;
                carry = limb << (64 - shift);
            }
        }
        while (!u.empty() && u.back() == 0) u.pop_back();
        r = std::move(u);
    }
};

inline BigInt operator*(long long a, const BigInt& b) { return BigInt(a) * b; }

inline std::string to_string(const BigInt& v) { return v.to_decimal(); }

}  // namespace edslab
