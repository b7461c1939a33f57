#pragma once

#include <cstdlib>
#include <utility>

#include "edslab/real.hpp"

namespace edslab {

// AGM-based constants and elementary functions on Real, plus Carlson's R_F,
// which is the workhorse for periods and elliptic logarithms. All functions
// take the target precision explicitly and work with internal guard bits.

inline Real agm(Real a, Real b) {
    int prec = std::max(a.precision(), b.precision());
    Real tol = Real::pow2(-(prec - 4), prec);
    for (int i = 0; i < 4 * prec; ++i) {
        Real mid = (a + b).mul_pow2(-1);
        Real g = Real::sqrt(a * b);
        a = mid;
        b = g;
        Real diff = (a - b).abs();
        if (diff < tol * a.abs()) break;
    }
    return (a + b).mul_pow2(-1);
}

inline Real pi(int prec) {
    int wp = prec + 32;
    Real a(1, wp);
    Real b = Real::sqrt(Real(1, wp).mul_pow2(-1));  // 1/sqrt(2)
    Real t = Real(1, wp).mul_pow2(-2);
    Real p(1, wp);
    int iters = 1;
    for (int bits = prec; bits > 1; bits /= 2) ++iters;
    for (int i = 0; i < iters + 2; ++i) {
        Real an = (a + b).mul_pow2(-1);
        Real bn = Real::sqrt(a * b);
        Real d = a - an;
        t = t - p * d * d;
        p = p.mul_pow2(1);
        a = an;
        b = bn;
    }
    Real s = a + b;
    return (s * s / t.mul_pow2(2)).with_precision(prec);
}

namespace detail {

// ln(s) = pi/(2 AGM(1, 4/s)) + O(ln(s)/s^2), valid once s^2 dwarfs the target.
inline Real ln_big(const Real& s, const Real& pi_val, int wp) {
    Real four(4, wp);
    return pi_val / agm(Real(1, wp), four / s).mul_pow2(1);
}

}  // namespace detail

inline Real ln2(int prec) {
    int wp = prec + 32;
    long long m = wp / 2 + 8;
    Real s = Real::pow2(m, wp);
    Real v = detail::ln_big(s, pi(wp), wp);
    return (v / Real(m, wp)).with_precision(prec);
}

inline Real ln(const Real& x, int prec) {
    if (x.sign() <= 0) throw InvalidInput("ln of nonpositive value");
    int wp = prec + 32;
    Real xw = x.with_precision(wp);
    // Scale into the asymptotic range s >= 2^(wp/2 + 8).
    long long top = xw.exponent2() + static_cast<long long>(xw.mantissa().bit_length());
    long long m = wp / 2 + 8 - top + 1;
    if (m < 0) m = 0;
    Real s = xw.mul_pow2(m);
    Real v = detail::ln_big(s, pi(wp), wp);
    if (m != 0) v = v - Real(m, wp) * ln2(wp);
    return v.with_precision(prec);
}

inline Real exp(const Real& x, int prec) {
    int wp = prec + 48;
    if (x.is_zero()) return Real(1, prec);
    Real xw = x.with_precision(wp);
    Real l2 = ln2(wp);
    // x = n ln2 + r, |r| <= ln2/2.
    BigInt n = (xw / l2 + Real(1, wp).mul_pow2(-1)).floor();
    Real r = xw - Real::from_bigint(n, wp) * l2;
    const int halvings = 16;
    r = r.mul_pow2(-halvings);
    // Taylor on the reduced argument.
    Real sum(1, wp);
    Real term(1, wp);
    Real tol = Real::pow2(-(wp + 8), wp);
    for (int k = 1; k < 1000; ++k) {
        term = term * r / Real(k, wp);
        sum = sum + term;
        if (term.abs() < tol) break;
    }
    for (int i = 0; i < halvings; ++i) sum = sum * sum;
    long long nll = n.to_int64();
    return sum.mul_pow2(nll).with_precision(prec);
}

inline Real pow_int(const Real& base, unsigned long e) {
    Real r(1, base.precision());
    Real b = base;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

// Real cube root by Newton iteration; sign follows the argument.
inline Real cbrt(const Real& x, int prec) {
    if (x.is_zero()) return Real(0, prec);
    int wp = prec + 32;
    bool neg = x.sign() < 0;
    Real a = x.abs().with_precision(wp);
    // Seed from the binary magnitude: 2^(top/3).
    long long top = a.exponent2() + static_cast<long long>(a.mantissa().bit_length());
    Real y = Real::pow2(top / 3, wp);
    Real third = Real(1, wp) / Real(3, wp);
    for (int i = 0; i < 4 * wp; ++i) {
        Real yn = third * (y.mul_pow2(1) + a / (y * y));
        if ((yn - y).abs() < Real::pow2(-(wp - 8), wp) * y) {
            y = yn;
            break;
        }
        y = yn;
    }
    if (neg) y = -y;
    return y.with_precision(prec);
}

// Minimal complex value for the connected-case Carlson arguments.
struct Complex {
    Real re, im;

    bool is_real() const { return im.is_zero(); }

    friend Complex operator+(const Complex& a, const Complex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    Complex mul_pow2(long long e) const { return {re.mul_pow2(e), im.mul_pow2(e)}; }

    Real abs() const {
        if (im.is_zero()) return re.abs();
        return Real::sqrt(re * re + im * im);
    }

    // Principal square root (branch cut on the negative real axis).
    static Complex sqrt(const Complex& w) {
        if (w.im.is_zero()) {
            if (w.re.sign() >= 0) return {Real::sqrt(w.re), Real(0, w.re.precision())};
            return {Real(0, w.re.precision()), Real::sqrt(-w.re)};
        }
        Real r = w.abs();
        Real p = Real::sqrt((r + w.re).mul_pow2(-1));
        Real q = Real::sqrt((r - w.re).mul_pow2(-1));
        if (w.im.sign() < 0) q = -q;
        return {p, q};
    }
};

// Carlson's symmetric integral of the first kind,
//   R_F(x,y,z) = (1/2) int_0^inf dt / sqrt((t+x)(t+y)(t+z)),
// by the duplication theorem with the fifth-order tail expansion. Arguments
// may be complex (conjugate pairs keep the value real); none may lie on the
// negative real axis.
inline Complex rf(Complex x, Complex y, Complex z, int prec) {
    int wp = prec + 32;
    auto up = [wp](Complex& c) {
        c.re = c.re.with_precision(wp);
        c.im = c.im.with_precision(wp);
    };
    up(x);
    up(y);
    up(z);
    Real tol = Real::pow2(-(wp / 6 + 4), wp);
    Complex a;
    for (int i = 0; i < 4 * wp; ++i) {
        a = {(x.re + y.re + z.re) / Real(3, wp), (x.im + y.im + z.im) / Real(3, wp)};
        Real scale = a.abs();
        Real spread = (Complex{x.re - a.re, x.im - a.im}).abs();
        Real sy = (Complex{y.re - a.re, y.im - a.im}).abs();
        Real sz = (Complex{z.re - a.re, z.im - a.im}).abs();
        if (sy > spread) spread = sy;
        if (sz > spread) spread = sz;
        if (spread < tol * scale) break;
        Complex sx = Complex::sqrt(x), sy2 = Complex::sqrt(y), sz2 = Complex::sqrt(z);
        Complex lambda = sx * sy2 + sy2 * sz2 + sz2 * sx;
        x = (x + lambda).mul_pow2(-2);
        y = (y + lambda).mul_pow2(-2);
        z = (z + lambda).mul_pow2(-2);
    }
    // Tail: 1 - E2/10 + E3/14 + E2^2/24 - 3 E2 E3/44, error O(eps^6).
    Complex inv_a_num{a.re, Real(0, wp) - a.im};
    Real a2 = a.re * a.re + a.im * a.im;
    auto div_a = [&](const Complex& c) {
        Complex t = c * inv_a_num;
        return Complex{t.re / a2, t.im / a2};
    };
    Complex X = div_a({a.re - x.re, a.im - x.im});
    Complex Y = div_a({a.re - y.re, a.im - y.im});
    Complex Z{Real(0, wp) - X.re - Y.re, Real(0, wp) - X.im - Y.im};
    Complex E2 = X * Y + Complex{-(Z * Z).re, -(Z * Z).im};
    Complex E3 = X * Y * Z;
    Real c2 = Real(1, wp) / Real(10, wp);
    Real c3 = Real(1, wp) / Real(14, wp);
    Real c4 = Real(1, wp) / Real(24, wp);
    Real c5 = Real(3, wp) / Real(44, wp);
    Complex series{Real(1, wp) - c2 * E2.re + c3 * E3.re + c4 * (E2 * E2).re - c5 * (E2 * E3).re,
                   Real(0, wp) - c2 * E2.im + c3 * E3.im + c4 * (E2 * E2).im - c5 * (E2 * E3).im};
    // 1/sqrt(a)
    Complex sa = Complex::sqrt(a);
    Real sa2 = sa.re * sa.re + sa.im * sa.im;
    Complex inv_sa{sa.re / sa2, (Real(0, wp) - sa.im) / sa2};
    Complex out = series * inv_sa;
    out.re = out.re.with_precision(prec);
    out.im = out.im.with_precision(prec);
    return out;
}

inline Real rf_real(const Real& x, const Real& y, const Real& z, int prec) {
    Real zero(0, prec);
    Complex r = rf({x, zero}, {y, zero}, {z, zero}, prec);
    return r.re;
}

// R_F with one real argument and a complex-conjugate pair; the result is real.
inline Real rf_conjugate_pair(const Real& x, const Real& re, const Real& im, int prec) {
    Real zero(0, prec);
    Complex r = rf({x, zero}, {re, im}, {re, -im}, prec);
    return r.re;
}

}  // namespace edslab
