#pragma once

#include <cstdlib>
#include <string>
#include <unordered_map>
#include <vector>

#include "edslab/bigint.hpp"

namespace edslab {

// Parity as an exponent: Sign(x) = (-1)^Parity(x) for nonzero x.
struct ParityValue {
    int bit = 0;

    int sign() const { return bit ? -1 : 1; }

    static ParityValue of_sign(int s) {
        if (s == 0) throw InvalidInput("parity of zero is undefined");
        return {s < 0 ? 1 : 0};
    }
    static ParityValue of(const BigInt& x) { return of_sign(x.sign()); }
    friend bool operator==(ParityValue a, ParityValue b) { return a.bit == b.bit; }
};

namespace detail {

// W_{6d} from (W_d, W_2d, W_3d, W_4d), everything over the common denominator
// W_d^5 W_2d so a single exact division suffices.
inline BigInt w6d_term(const BigInt& wd, const BigInt& w2d, const BigInt& w3d,
                       const BigInt& w4d) {
    BigInt wd2 = wd * wd;
    BigInt wd4 = wd2 * wd2;
    BigInt w2d2 = w2d * w2d;
    BigInt w3d3 = w3d * w3d * w3d;
    BigInt num = w2d2 * w2d2 * w2d * w4d - wd * w2d2 * w3d3 - wd4 * w4d * w4d;
    return BigInt::exact_div(w3d * num, wd4 * wd * w2d);
}

// W_{8d} over the common denominator W_d^8 W_2d^2.
inline BigInt w8d_term(const BigInt& wd, const BigInt& w2d, const BigInt& w3d,
                       const BigInt& w4d) {
    BigInt wd2 = wd * wd;
    BigInt wd4 = wd2 * wd2;
    BigInt wd5 = wd4 * wd;
    BigInt wd8 = wd4 * wd4;
    BigInt w2d2 = w2d * w2d;
    BigInt w2d4 = w2d2 * w2d2;
    BigInt w3d3 = w3d * w3d * w3d;
    BigInt w4d2 = w4d * w4d;
    BigInt num = BigInt(-2) * wd2 * w2d2 * w3d3 * w3d3 +
                 BigInt(3) * wd * w2d4 * w2d * w3d3 * w4d - wd5 * w3d3 * w4d2 -
                 w2d4 * w2d4 * w4d2;
    return BigInt::exact_div(w4d * num, wd8 * w2d2);
}

}  // namespace detail

// An elliptic divisibility sequence held by its defining quadruple with a
// dense cache of consecutive terms and a sparse memo for isolated large
// indices. Terms are immutable once computed; generation is single-writer.
class EDS {
public:
    static EDS from_initial(BigInt w1, BigInt w2, BigInt w3, BigInt w4) {
        if (!(w1 == BigInt(1) || w1 == BigInt(-1)))
            throw InvalidInput("W_1 must be 1 or -1");
        if (w1 == BigInt(-1)) {
            // Normalize by W_n -> W_n * W_1^(n^2); only odd indices flip.
            w3.negate();
        }
        EDS e;
        e.degenerate_ = (w2.is_zero() || w3.is_zero());
        if (!w4.is_zero() || !w2.is_zero()) {
            if (w2.is_zero() || !w4.divisible_by(w2))
                throw NotDivisible("W_2 does not divide W_4");
        }
        e.dense_ = {BigInt(0), BigInt(1), std::move(w2), std::move(w3), std::move(w4)};
        return e;
    }

    static EDS from_initial(long long w1, long long w2, long long w3, long long w4) {
        return from_initial(BigInt(w1), BigInt(w2), BigInt(w3), BigInt(w4));
    }

    bool degenerate() const { return degenerate_; }
    const BigInt& w2() const { return dense_[2]; }
    const BigInt& w3() const { return dense_[3]; }
    const BigInt& w4() const { return dense_[4]; }

    // W_n for any signed index, via W_{-n} = -W_n.
    BigInt term(long long n) {
        if (n < 0) return -term(-n);
        if (n <= kDenseLimit) {
            generate(n);
            return dense_[static_cast<size_t>(n)];
        }
        return sparse_term(n);
    }

    // Extends the dense cache to hold W_0..W_N.
    void generate(long long N) {
        if (N < static_cast<long long>(dense_.size())) return;
        dense_.reserve(static_cast<size_t>(N) + 1);
        for (long long k = static_cast<long long>(dense_.size()); k <= N; ++k) {
            if (k & 1) {
                long long n = (k - 1) / 2;
                dense_.push_back(dense_[n + 2] * cube(dense_[n]) -
                                 dense_[n - 1] * cube(dense_[n + 1]));
            } else {
                long long n = k / 2;
                if (dense_[2].is_zero())
                    throw InexactDivision("even-index rule needs W_2 != 0");
                BigInt num = dense_[n] * (dense_[n + 2] * sq(dense_[n - 1]) -
                                          dense_[n - 2] * sq(dense_[n + 1]));
                dense_.push_back(BigInt::exact_div(num, dense_[2]));
            }
        }
    }

    // Dense cache W_0..W_k as currently generated.
    const std::vector<BigInt>& terms() const { return dense_; }

    // Disc(W), the degree-16 form in W_2, W_3, W_4 whose vanishing marks the
    // singular sequences.
    BigInt discriminant() const {
        const BigInt &a = dense_[2], &b = dense_[3], &c = dense_[4];
        BigInt a2 = a * a, a4 = a2 * a2;
        BigInt a5 = a4 * a, a7 = a5 * a2, a10 = a5 * a5, a12 = a10 * a2, a15 = a10 * a5;
        BigInt b3 = cube(b);
        BigInt b6 = b3 * b3;
        BigInt c2 = c * c, c3 = c2 * c, c4 = c2 * c2;
        return c * a15 - b3 * a12 + BigInt(3) * c2 * a10 - BigInt(20) * c * b3 * a7 +
               BigInt(3) * c3 * a5 + BigInt(16) * b6 * a4 + BigInt(8) * c2 * b3 * a2 + c4;
    }

    bool nonsingular() const {
        return !dense_[2].is_zero() && !dense_[3].is_zero() && !discriminant().is_zero();
    }

    // The inverse sequence ((-1)^(n-1) W_n); starts [1, -a, b, -c].
    EDS inverse() const {
        return from_initial(BigInt(1), -dense_[2], dense_[3], -dense_[4]);
    }

    // W_d, W_2d, ..., W_Nd through the d-step recurrence, with each division
    // checked exact. Callers cross-check against term(n*d).
    std::vector<BigInt> subsequence(long long d, long long N) {
        if (d < 1) throw InvalidInput("subsequence needs d >= 1");
        std::vector<BigInt> out;
        out.reserve(static_cast<size_t>(N));
        for (long long n = 1; n <= std::min<long long>(N, 4); ++n) out.push_back(term(n * d));
        for (long long n = 5; n <= N; ++n) {
            // W_d^2 W_(n)d W_(n-4)d = W_2d^2 W_(n-1)d W_(n-3)d - W_d W_3d W_(n-2)d^2
            BigInt num = sq(out[1]) * out[static_cast<size_t>(n) - 2] *
                             out[static_cast<size_t>(n) - 4] -
                         out[0] * out[2] * sq(out[static_cast<size_t>(n) - 3]);
            out.push_back(BigInt::exact_div(num, sq(out[0]) * out[static_cast<size_t>(n) - 5]));
        }
        return out;
    }

private:
    static constexpr long long kDenseLimit = 1200;

    std::vector<BigInt> dense_;  // W_0 .. W_k, contiguous
    std::unordered_map<long long, BigInt> sparse_;
    bool degenerate_ = false;

    static BigInt sq(const BigInt& x) { return x * x; }
    static BigInt cube(const BigInt& x) { return x * x * x; }

    BigInt sparse_term(long long n) {
        if (n <= kDenseLimit) {
            generate(n);
            return dense_[static_cast<size_t>(n)];
        }
        auto it = sparse_.find(n);
        if (it != sparse_.end()) return it->second;
        BigInt value;
        if (n & 1) {
            long long k = (n - 1) / 2;
            BigInt a = sparse_term(k + 2), b = sparse_term(k);
            BigInt c = sparse_term(k - 1), d = sparse_term(k + 1);
            value = a * cube(b) - c * cube(d);
        } else {
            long long k = n / 2;
            if (dense_[2].is_zero()) throw InexactDivision("even-index rule needs W_2 != 0");
            BigInt a = sparse_term(k), b = sparse_term(k + 2);
            BigInt c = sparse_term(k - 1), d = sparse_term(k - 2), f = sparse_term(k + 1);
            value = BigInt::exact_div(a * (b * sq(c) - d * sq(f)), dense_[2]);
        }
        sparse_.emplace(n, value);
        return value;
    }
};

// Result of scanning the defining recursion over a term table.
struct RecursionCheck {
    bool ok = true;
    long long m = 0, n = 0;  // first violation when !ok
};

// Checks W_{m+n} W_{m-n} = W_{m+1} W_{m-1} W_n^2 - W_{n+1} W_{n-1} W_m^2 for
// all N >= m >= n >= 1 over an explicit table w[0..2N] with w[i] = W_i.
inline RecursionCheck verify_recursion(const std::vector<BigInt>& w, long long N) {
    if (static_cast<long long>(w.size()) < 2 * N + 1)
        throw InvalidInput("verify_recursion needs terms up to index 2N");
    for (long long m = 1; m <= N; ++m) {
        for (long long n = 1; n <= m; ++n) {
            const BigInt& lhs_a = w[static_cast<size_t>(m + n)];
            const BigInt& lhs_b = w[static_cast<size_t>(m - n)];
            BigInt lhs = lhs_a * lhs_b;
            BigInt rhs = w[static_cast<size_t>(m + 1)] * w[static_cast<size_t>(m - 1)] *
                             w[static_cast<size_t>(n)] * w[static_cast<size_t>(n)] -
                         w[static_cast<size_t>(n + 1)] * w[static_cast<size_t>(n - 1)] *
                             w[static_cast<size_t>(m)] * w[static_cast<size_t>(m)];
            if (lhs != rhs) return {false, m, n};
        }
    }
    return {true, 0, 0};
}

inline RecursionCheck verify_recursion(EDS& e, long long N) {
    e.generate(2 * N);
    return verify_recursion(e.terms(), N);
}

// Parses "1,1,-1,1" style comma-separated signed decimal quadruples/lists.
inline std::vector<BigInt> parse_integer_list(const std::string& s) {
    std::vector<BigInt> out;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos
                                                                   : comma - pos);
        // Trim spaces.
        size_t b = tok.find_first_not_of(" \t");
        size_t e = tok.find_last_not_of(" \t");
        if (b == std::string::npos) throw InvalidInput("empty entry in integer list");
        out.push_back(BigInt::from_decimal(tok.substr(b, e - b + 1)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

inline EDS eds_from_literal(const std::string& s) {
    auto v = parse_integer_list(s);
    if (v.size() != 4) throw InvalidInput("initial data must be four integers W_1..W_4");
    return EDS::from_initial(v[0], v[1], v[2], v[3]);
}

}  // namespace edslab
