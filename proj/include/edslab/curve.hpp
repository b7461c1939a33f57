#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edslab/eds.hpp"
#include "edslab/rational.hpp"

namespace edslab {

// Point on a Weierstrass curve: affine exact rationals or the origin.
struct RationalPoint {
    std::optional<std::pair<Rational, Rational>> affine;

    static RationalPoint infinity() { return {}; }
    static RationalPoint at(Rational x, Rational y) {
        return {std::make_pair(std::move(x), std::move(y))};
    }
    bool is_infinity() const { return !affine.has_value(); }
    const Rational& x() const { return affine->first; }
    const Rational& y() const { return affine->second; }

    friend bool operator==(const RationalPoint& a, const RationalPoint& b) {
        return a.affine == b.affine;
    }

    std::string to_string() const {
        if (is_infinity()) return "O";
        return x().to_string() + "," + y().to_string();
    }
};

// General five-coefficient model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
class WeierstrassCurve {
public:
    WeierstrassCurve(Rational a1, Rational a2, Rational a3, Rational a4, Rational a6)
        : a1_(std::move(a1)), a2_(std::move(a2)), a3_(std::move(a3)), a4_(std::move(a4)),
          a6_(std::move(a6)) {
        Rational b2 = a1_ * a1_ + Rational(4) * a2_;
        Rational b4 = Rational(2) * a4_ + a1_ * a3_;
        Rational b6 = a3_ * a3_ + Rational(4) * a6_;
        Rational b8 = a1_ * a1_ * a6_ + Rational(4) * a2_ * a6_ - a1_ * a3_ * a4_ +
                      a2_ * a3_ * a3_ - a4_ * a4_;
        disc_ = -(b2 * b2 * b8) - Rational(8) * b4 * b4 * b4 - Rational(27) * b6 * b6 +
                Rational(9) * b2 * b4 * b6;
        if (disc_.is_zero()) throw SingularSequence("curve discriminant vanishes");
    }

    static WeierstrassCurve parse(const std::string& s) {
        std::vector<Rational> c;
        size_t pos = 0;
        while (pos <= s.size()) {
            size_t comma = s.find(',', pos);
            c.push_back(Rational::parse(
                s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (c.size() != 5) throw InvalidInput("curve literal needs a1,a2,a3,a4,a6");
        return WeierstrassCurve(c[0], c[1], c[2], c[3], c[4]);
    }

    const Rational& a1() const { return a1_; }
    const Rational& a2() const { return a2_; }
    const Rational& a3() const { return a3_; }
    const Rational& a4() const { return a4_; }
    const Rational& a6() const { return a6_; }
    const Rational& discriminant() const { return disc_; }

    bool contains(const RationalPoint& p) const {
        if (p.is_infinity()) return true;
        const Rational& x = p.x();
        const Rational& y = p.y();
        Rational lhs = y * y + a1_ * x * y + a3_ * y;
        Rational rhs = x * x * x + a2_ * x * x + a4_ * x + a6_;
        return lhs == rhs;
    }

    RationalPoint negate(const RationalPoint& p) const {
        if (p.is_infinity()) return p;
        return RationalPoint::at(p.x(), -p.y() - a1_ * p.x() - a3_);
    }

    // Chord-tangent addition on the general model.
    RationalPoint add(const RationalPoint& p, const RationalPoint& q) const {
        if (p.is_infinity()) return q;
        if (q.is_infinity()) return p;
        const Rational &x1 = p.x(), &y1 = p.y(), &x2 = q.x(), &y2 = q.y();
        Rational lambda, nu;
        if (x1 == x2) {
            if (y2 == -y1 - a1_ * x1 - a3_) return RationalPoint::infinity();
            // Tangent line at p.
            Rational den = Rational(2) * y1 + a1_ * x1 + a3_;
            lambda = (Rational(3) * x1 * x1 + Rational(2) * a2_ * x1 + a4_ - a1_ * y1) / den;
            nu = (-(x1 * x1 * x1) + a4_ * x1 + Rational(2) * a6_ - a3_ * y1) / den;
        } else {
            lambda = (y2 - y1) / (x2 - x1);
            nu = (y1 * x2 - y2 * x1) / (x2 - x1);
        }
        Rational x3 = lambda * lambda + a1_ * lambda - a2_ - x1 - x2;
        Rational y3 = -(lambda + a1_) * x3 - nu - a3_;
        return RationalPoint::at(std::move(x3), std::move(y3));
    }

    RationalPoint mul(const RationalPoint& p, long long n) const {
        if (n == 0) return RationalPoint::infinity();
        if (n < 0) return negate(mul(p, -n));
        RationalPoint acc = RationalPoint::infinity();
        RationalPoint base = p;
        unsigned long long k = static_cast<unsigned long long>(n);
        while (k) {
            if (k & 1) acc = add(acc, base);
            k >>= 1;
            if (k) base = add(base, base);
        }
        return acc;
    }

private:
    Rational a1_, a2_, a3_, a4_, a6_;
    Rational disc_;
};

// Short-model curve and point built from a sequence's defining quadruple:
// with W_2 = alpha, W_3 = beta, W_4 = alpha*gamma,
//   E: Y^2 = X^3 + A X + B,  P = (x, y),  disc = 4A^3 + 27B^2.
struct CurveData {
    BigInt A, B, x, y, disc;
    BigInt alpha, beta3, gamma;  // alpha = W_2, beta3 = W_3^3, gamma = W_4/W_2
};

inline CurveData associated_curve(const EDS& eds) {
    if (!eds.nonsingular()) throw SingularSequence("sequence is singular");
    const BigInt& a = eds.w2();
    const BigInt& b = eds.w3();
    BigInt g = BigInt::exact_div(eds.w4(), a);
    BigInt a4 = BigInt::pow(a, 4);
    BigInt a8 = a4 * a4, a12 = a8 * a4, a16 = a8 * a8, a20 = a16 * a4, a24 = a16 * a8;
    BigInt b3 = b * b * b;
    BigInt b6 = b3 * b3, b9 = b6 * b3;
    BigInt g2 = g * g, g3 = g2 * g, g4 = g2 * g2, g5 = g4 * g, g6 = g4 * g2;

    CurveData cd;
    cd.alpha = a;
    cd.beta3 = b3;
    cd.gamma = g;
    cd.A = BigInt(27) * (-a16 - BigInt(4) * g * a12 + (BigInt(16) * b3 - BigInt(6) * g2) * a8 +
                         (BigInt(8) * g * b3 - BigInt(4) * g3) * a4 -
                         (BigInt(16) * b6 + BigInt(8) * g2 * b3 + g4));
    cd.B = BigInt(54) *
           (a24 + BigInt(6) * g * a20 - (BigInt(24) * b3 - BigInt(15) * g2) * a16 -
            (BigInt(60) * g * b3 - BigInt(20) * g3) * a12 +
            (BigInt(120) * b6 - BigInt(36) * g2 * b3 + BigInt(15) * g4) * a8 +
            (BigInt(-48) * g * b6 + BigInt(12) * g3 * b3 + BigInt(6) * g5) * a4 +
            (BigInt(64) * b9 + BigInt(48) * g2 * b6 + BigInt(12) * g4 * b3 + g6));
    cd.x = BigInt(3) * (a8 + BigInt(2) * g * a4 + BigInt(4) * b3 + g2);
    cd.y = BigInt(-108) * b3 * a4;
    cd.disc = BigInt(4) * cd.A * cd.A * cd.A + BigInt(27) * cd.B * cd.B;
    // Construction identities, checked exactly.
    if (cd.y * cd.y != cd.x * cd.x * cd.x + cd.A * cd.x + cd.B)
        throw Error("associated point fails the curve equation");
    BigInt bracket = g * a12 + (BigInt(3) * g2 - b3) * a8 +
                     (BigInt(3) * g3 - BigInt(20) * g * b3) * a4 +
                     (BigInt(16) * b6 + BigInt(8) * g2 * b3 + g4);
    if (cd.disc != BigInt(256) * BigInt::pow(BigInt(3), 12) * b9 * a8 * bracket)
        throw Error("discriminant factorization failed");
    return cd;
}

// Positive D with x(nP) = A / D^2 in lowest terms, for n = 1..N. Requires an
// integral model so the denominators are perfect squares.
inline std::vector<BigInt> denominator_sequence(const WeierstrassCurve& E,
                                                const RationalPoint& P, long long N) {
    for (const Rational* a : {&E.a1(), &E.a2(), &E.a3(), &E.a4(), &E.a6()}) {
        if (!a->is_integer()) throw FormMismatch("denominator sequence needs an integral model");
    }
    if (!E.contains(P)) throw FormMismatch("point is not on the curve");
    std::vector<BigInt> out;
    out.reserve(static_cast<size_t>(N));
    RationalPoint cur = P;
    for (long long n = 1; n <= N; ++n) {
        if (cur.is_infinity()) throw TorsionPoint("nP = O at n = " + std::to_string(n));
        BigInt d2 = cur.x().den();
        BigInt d;
        if (!BigInt::is_perfect_square(d2, &d))
            throw Error("x-denominator is not a square on an integral model");
        out.push_back(d);
        cur = E.add(cur, P);
    }
    return out;
}

// Signed sequence from the denominator data of P = (0,0) on
// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x: W_1 = 1, W_2 = a3, |W_n| = D_nP,
// Sign(W_{n-2} W_n) = -Sign(A_{(n-1)P}); the result must satisfy the
// recursion or the curve/point pair is rejected.
inline std::vector<BigInt> shipsey_signs(const WeierstrassCurve& E, const RationalPoint& P,
                                         long long N) {
    for (const Rational* a : {&E.a1(), &E.a2(), &E.a3(), &E.a4()}) {
        if (!a->is_integer()) throw FormMismatch("sign rule needs integer coefficients");
    }
    if (!E.a6().is_zero()) throw FormMismatch("sign rule needs a6 = 0");
    if (P.is_infinity() || !P.x().is_zero() || !P.y().is_zero())
        throw FormMismatch("sign rule needs P = (0,0)");
    if (E.a3().is_zero()) throw FormMismatch("sign rule needs a3 != 0, else P is 2-torsion");
    if (N < 1) return {};

    std::vector<BigInt> d = denominator_sequence(E, P, N);
    std::vector<BigInt> w(static_cast<size_t>(N) + 1);
    w[0] = BigInt(0);
    w[1] = BigInt(1);
    if (N >= 2) w[2] = E.a3().num();
    RationalPoint cur = E.mul(P, 2);
    for (long long n = 3; n <= N; ++n) {
        // cur = (n-1)P here.
        int sign_a = cur.x().sign();
        if (sign_a == 0) throw Error("x((n-1)P) = 0 cannot happen for n >= 3");
        int sign_prev = w[static_cast<size_t>(n - 2)].sign();
        int sign_n = -sign_a * sign_prev;
        w[static_cast<size_t>(n)] = d[static_cast<size_t>(n - 1)];
        if (sign_n < 0) w[static_cast<size_t>(n)].negate();
        cur = E.add(cur, P);
    }

    long long check_n = N / 2;
    auto rc = verify_recursion(w, check_n);
    if (!rc.ok)
        throw RecursionFailure("signed sequence fails the recursion at (m,n) = (" +
                               std::to_string(rc.m) + "," + std::to_string(rc.n) + ")");
    return std::vector<BigInt>(w.begin() + 1, w.end());
}

inline RationalPoint parse_point(const std::string& s) {
    if (s == "O" || s == "o" || s == "inf") return RationalPoint::infinity();
    auto comma = s.find(',');
    if (comma == std::string::npos) throw InvalidInput("point literal needs x,y or O");
    return RationalPoint::at(Rational::parse(s.substr(0, comma)),
                             Rational::parse(s.substr(comma + 1)));
}

}  // namespace edslab
