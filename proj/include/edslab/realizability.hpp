#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "edslab/eds.hpp"
#include "edslab/real.hpp"

namespace edslab {

inline int mobius(long long n) {
    if (n < 1) throw InvalidInput("mobius needs n >= 1");
    int primes = 0;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            ++primes;
        }
    }
    if (n > 1) ++primes;
    return (primes & 1) ? -1 : 1;
}

// (U * mu)(n) = sum_{d | n} U(d) mu(n/d); U is 1-indexed and must cover the
// divisors of n.
inline BigInt dirichlet_mobius(const std::vector<BigInt>& U, long long n) {
    if (n < 1 || n > static_cast<long long>(U.size()))
        throw InvalidInput("dirichlet_mobius needs U defined up to n");
    BigInt acc;
    for (long long d = 1; d <= n; ++d) {
        if (n % d) continue;
        int mu = mobius(n / d);
        if (mu == 1) acc += U[static_cast<size_t>(d - 1)];
        else if (mu == -1) acc -= U[static_cast<size_t>(d - 1)];
    }
    return acc;
}

enum class ViolationKind { Negative, NotDivisible };

inline std::string to_string(ViolationKind k) {
    return k == ViolationKind::Negative ? "negative" : "not-divisible";
}

struct Violation {
    long long n = 0;
    ViolationKind kind = ViolationKind::Negative;
    BigInt value;  // the offending (U*mu)(n)
};

struct RealizabilityReport {
    long long checked_bound = 0;
    std::vector<BigInt> convolution;  // (U*mu)(n), n = 1..N
    std::vector<Violation> violations;

    // Empty violations only means "no obstruction up to the bound".
    bool realizable_up_to_bound() const { return violations.empty(); }
};

// Fixed-point counting criterion on an initial segment: (U*mu)(n) >= 0 and
// n | (U*mu)(n) for every n <= N.
inline RealizabilityReport realizability_check(const std::vector<BigInt>& U, long long N) {
    if (N < 1 || N > static_cast<long long>(U.size()))
        throw InvalidInput("realizability_check needs U defined up to N");
    for (long long n = 1; n <= N; ++n) {
        if (U[static_cast<size_t>(n - 1)].sign() <= 0)
            throw InvalidInput("realizability_check needs positive terms");
    }
    RealizabilityReport rep;
    rep.checked_bound = N;
    for (long long n = 1; n <= N; ++n) {
        BigInt v = dirichlet_mobius(U, n);
        if (v.sign() < 0) rep.violations.push_back({n, ViolationKind::Negative, v});
        else if (!v.divisible_by(BigInt(n)))
            rep.violations.push_back({n, ViolationKind::NotDivisible, v});
        rep.convolution.push_back(std::move(v));
    }
    return rep;
}

// U(p^k) = U(p^(k-1)) mod p^k for k = 1..kmax; a consequence of the
// realizability congruences at prime powers.
inline std::vector<bool> prime_power_congruence(const std::vector<BigInt>& U, long long p,
                                                int kmax) {
    std::vector<bool> out;
    long long pk = 1;
    for (int k = 1; k <= kmax; ++k) {
        pk *= p;
        if (pk > static_cast<long long>(U.size()))
            throw InvalidInput("prime_power_congruence needs U up to p^kmax");
        BigInt diff = U[static_cast<size_t>(pk - 1)] - U[static_cast<size_t>(pk / p - 1)];
        out.push_back(diff.divisible_by(BigInt(pk)));
    }
    return out;
}

struct PeriodicityReport {
    int modulus_exponent = 0;         // e, modulus 2^e
    bool period_found = false;
    long long preperiod = 0;          // K
    long long period = 0;             // r
    std::vector<uint64_t> residues;   // W_{2^k} mod 2^e, k = 0..kmax
};

namespace detail {

// Inverse of an odd unit mod 2^e by Newton lifting.
inline uint64_t inv_mod_pow2(uint64_t a, uint64_t mask) {
    uint64_t x = 1;
    for (int i = 0; i < 6; ++i) {
        x = (x * (2 - a * x));  // correct bits double each round
    }
    return x & mask;
}

struct Pow2State {
    uint64_t a, b, c, d;  // W_d, W_2d, W_3d, W_4d mod 2^e
    friend bool operator<(const Pow2State& s, const Pow2State& t) {
        return std::tie(s.a, s.b, s.c, s.d) < std::tie(t.a, t.b, t.c, t.d);
    }
};

inline uint64_t reduce_mod(const BigInt& v, uint64_t mask) {
    BigInt m = v % BigInt(static_cast<long long>(mask) + 1);
    long long r = m.to_int64();
    if (r < 0) r += static_cast<long long>(mask) + 1;
    return static_cast<uint64_t>(r) & mask;
}

// One doubling step of the modular state map: the stride-6 and stride-8
// formulas only ever divide by W_d and W_2d, which stay odd.
inline Pow2State advance_pow2_state(const Pow2State& s, uint64_t mask) {
    auto mul = [mask](uint64_t x, uint64_t y) { return (x * y) & mask; };
    auto sub = [mask](uint64_t x, uint64_t y) { return (x - y) & mask; };
    if (!(s.a & 1) || !(s.b & 1)) throw EvenTerm("state map hit an even W_{2^k}");
    uint64_t a2 = mul(s.a, s.a), a4 = mul(a2, a2), a5 = mul(a4, s.a), a8 = mul(a4, a4);
    uint64_t b2 = mul(s.b, s.b), b4 = mul(b2, b2), b5 = mul(b4, s.b), b8 = mul(b4, b4);
    uint64_t c3 = mul(mul(s.c, s.c), s.c), c6 = mul(c3, c3);
    uint64_t d2 = mul(s.d, s.d);
    // W_6d = W_3d (W_2d^5 W_4d - W_d W_2d^2 W_3d^3 - W_d^4 W_4d^2) / (W_d^5 W_2d)
    uint64_t num6 = sub(sub(mul(b5, s.d), mul(mul(s.a, b2), c3)), mul(a4, d2));
    uint64_t w6 = mul(mul(s.c, num6), inv_mod_pow2(mul(a5, s.b), mask));
    // W_8d = W_4d (-2 W_d^2 W_2d^2 W_3d^6 + 3 W_d W_2d^5 W_3d^3 W_4d
    //              - W_d^5 W_3d^3 W_4d^2 - W_2d^8 W_4d^2) / (W_d^8 W_2d^2)
    uint64_t t1 = mul(2, mul(mul(a2, b2), c6));
    uint64_t t2 = mul(3, mul(mul(s.a, b5), mul(c3, s.d)));
    uint64_t t3 = mul(mul(a5, c3), d2);
    uint64_t t4 = mul(b8, d2);
    uint64_t num8 = sub(sub(sub(t2, t1), t3), t4);
    uint64_t w8 = mul(mul(s.d, num8), inv_mod_pow2(mul(a8, b2), mask));
    return {s.b, s.d, w6, w8};
}

}  // namespace detail

// Residues W_{2^k} mod 2^e driven entirely by the modular state map
// F(k) = (W_{2^k}, W_{2 2^k}, W_{3 2^k}, W_{4 2^k}) mod 2^e, with (K, r)
// detected by state repetition. Requires W_2 and W_4 odd.
inline PeriodicityReport pow2_mod_periodicity(EDS& eds, int e, int kmax) {
    if (e < 1 || e > 62) throw InvalidInput("modulus exponent out of range");
    if (eds.term(2).even() || eds.term(4).even())
        throw EvenTerm("periodicity machinery needs W_2 and W_4 odd");
    uint64_t mask = (e == 62) ? ((1ULL << 62) - 1) : ((1ULL << e) - 1);
    detail::Pow2State st{detail::reduce_mod(eds.term(1), mask),
                         detail::reduce_mod(eds.term(2), mask),
                         detail::reduce_mod(eds.term(3), mask),
                         detail::reduce_mod(eds.term(4), mask)};
    PeriodicityReport rep;
    rep.modulus_exponent = e;
    std::map<detail::Pow2State, long long> seen;
    for (long long k = 0; k <= kmax; ++k) {
        if (!(st.a & 1)) throw EvenTerm("W_{2^k} turned even; hypothesis violated");
        rep.residues.push_back(st.a);
        auto [it, inserted] = seen.emplace(st, k);
        if (!inserted && !rep.period_found) {
            rep.period_found = true;
            rep.preperiod = it->second;
            rep.period = k - it->second;
        }
        st = detail::advance_pow2_state(st, mask);
    }
    return rep;
}

struct WitnessSearch {
    std::optional<Violation> witness;
    long long checked_bound = 0;
};

// Witness hunt for the non-realizability of (|W_n|): first the power-of-two
// ladder, where the obstruction shows up soonest, then a full scan of every
// index up to 2^kmax. An empty result is inconclusive, never a
// claim of realizability.
inline WitnessSearch nonrealizability_witness(EDS& eds, int kmax) {
    if (kmax < 1 || kmax > 12) throw InvalidInput("witness exponent out of range");
    long long bound = 1LL << kmax;
    WitnessSearch out;
    out.checked_bound = bound;
    // Phase 1: n = 2^k. (U*mu)(2^k) = U(2^k) - U(2^(k-1)).
    for (int k = 1; k <= kmax; ++k) {
        long long n = 1LL << k;
        BigInt v = eds.term(n).abs() - eds.term(n / 2).abs();
        if (v.sign() < 0) {
            out.witness = Violation{n, ViolationKind::Negative, v};
            return out;
        }
        if (!v.divisible_by(BigInt(n))) {
            out.witness = Violation{n, ViolationKind::NotDivisible, v};
            return out;
        }
    }
    // Phase 2: every n up to the bound.
    eds.generate(bound);
    std::vector<BigInt> U;
    U.reserve(static_cast<size_t>(bound));
    for (long long n = 1; n <= bound; ++n) U.push_back(eds.term(n).abs());
    for (long long n = 2; n <= bound; ++n) {
        BigInt v = dirichlet_mobius(U, n);
        if (v.sign() < 0) {
            out.witness = Violation{n, ViolationKind::Negative, v};
            return out;
        }
        if (!v.divisible_by(BigInt(n))) {
            out.witness = Violation{n, ViolationKind::NotDivisible, v};
            return out;
        }
    }
    return out;
}

struct BitPeriodicity {
    bool eventually_periodic = false;
    long long preperiod = 0;
    long long period = 0;
    long long checked_bits = 0;
};

// Binary digits of the fractional part: the parity of floor(2^k beta) is the
// k-th bit, so eventual periodicity of those parities means beta is rational.
inline BitPeriodicity bit_periodicity(const Real& beta, int kmax) {
    if (beta.precision() < kmax + 32)
        throw PrecisionExhausted("bit extraction needs kmax + 32 bits of beta");
    Real frac = beta - Real::from_bigint(beta.floor(), beta.precision());
    BigInt window = frac.mul_pow2(kmax).floor();
    std::vector<int> bits(static_cast<size_t>(kmax) + 1, 0);
    for (int k = 1; k <= kmax; ++k)
        bits[static_cast<size_t>(k)] = window.bit(static_cast<size_t>(kmax - k)) ? 1 : 0;
    BitPeriodicity out;
    out.checked_bits = kmax;
    for (long long r = 1; 4 * r <= kmax; ++r) {
        for (long long K = 1; K <= kmax / 2; ++K) {
            long long window_len = kmax - r - K + 1;
            if (window_len < std::max<long long>(2 * r, 16)) break;
            bool match = true;
            for (long long k = K; k + r <= kmax; ++k) {
                if (bits[static_cast<size_t>(k)] != bits[static_cast<size_t>(k + r)]) {
                    match = false;
                    break;
                }
            }
            if (match) {
                out.eventually_periodic = true;
                out.preperiod = K;
                out.period = r;
                return out;
            }
        }
    }
    return out;
}

}  // namespace edslab
