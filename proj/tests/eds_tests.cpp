#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "edslab/eds.hpp"

using edslab::BigInt;
using edslab::EDS;

namespace {

// The five sequences of the worked examples, as listed.
const std::vector<long long> kSeq37 = {1, 1, -1, 1, 2, -1, -3, -5, 7, -4,
                                       -23, 29, 59, 129, -314, -65, 1529, -3689, -8209, -16264};
const std::vector<long long> kSeq43 = {1, 1, 1, -1, -2, -3, -1, 7, 11, 20,
                                       -19, -87, -191, -197, 1018, 2681, 8191, -5841, -81289, -261080};
const std::vector<long long> kSeq58 = {1, 1, 2, 1, -7, -16, -57, -113, 670, 3983,
                                       23647, 140576, -833503, -14871471, -147165662,
                                       -2273917871, 11396432249, 808162720720,
                                       14252325989831, 503020937289311};
const std::vector<long long> kSeq61 = {1, 1, 1, 2, 1, -3, -7, -8, -25, -37,
                                       47, 318, 559, 2023, 7039, -496, -90431, -314775,
                                       -1139599, -8007614};
const std::vector<long long> kSeq710 = {1, 2, 2, -2, -24, -100, -176, 1552, 28448, 248448,
                                        433024, -47795200, -1682842624, -30121422848,
                                        218738737152};

void check_prefix(EDS& e, const std::vector<long long>& want) {
    for (size_t i = 0; i < want.size(); ++i) {
        CHECK(e.term(static_cast<long long>(i) + 1) == BigInt(want[i]));
    }
}

// Independent oracle: evaluate Disc(W) term by term, no shared code with
// EDS::discriminant beyond BigInt itself.
BigInt disc_oracle(long long a, long long b, long long c) {
    auto P = [](long long base, unsigned long e) { return BigInt::pow(BigInt(base), e); };
    return BigInt(c) * P(a, 15) - P(b, 3) * P(a, 12) + BigInt(3) * P(c, 2) * P(a, 10) -
           BigInt(20) * BigInt(c) * P(b, 3) * P(a, 7) + BigInt(3) * P(c, 3) * P(a, 5) +
           BigInt(16) * P(b, 6) * P(a, 4) + BigInt(8) * P(c, 2) * P(b, 3) * P(a, 2) + P(c, 4);
}

double log2_abs(const BigInt& x) {
    size_t b = x.bit_length();
    BigInt t = b > 60 ? (x.abs() >> (b - 60)) : x.abs();
    return std::log2(t.to_double()) + static_cast<double>(b > 60 ? b - 60 : 0);
}

}  // namespace

TEST_CASE("from_initial gates") {
    EDS e1 = EDS::from_initial(1, 1, -1, 1);
    CHECK(e1.term(1) == BigInt(1));
    CHECK_FALSE(e1.degenerate());
    CHECK_NOTHROW(EDS::from_initial(1, 1, 1, 1));
    CHECK_THROWS_AS(EDS::from_initial(1, 2, 1, 1), edslab::NotDivisible);
    CHECK_THROWS_AS(EDS::from_initial(2, 1, 1, 1), edslab::InvalidInput);
    CHECK(EDS::from_initial(1, 0, 1, 0).degenerate());
    CHECK_THROWS_AS(EDS::from_initial(1, 0, 1, 2), edslab::NotDivisible);
}

TEST_CASE("W_1 = -1 normalization keeps the recursion") {
    // W_n -> W_n * W_1^(n^2): odd indices flip, so [-1, 1, -1, 1] ~ [1, 1, 1, 1].
    EDS e = EDS::from_initial(-1, 1, -1, 1);
    EDS f = EDS::from_initial(1, 1, 1, 1);
    for (long long n = 1; n <= 12; ++n) CHECK(e.term(n) == f.term(n));
    CHECK(edslab::verify_recursion(e, 10).ok);
}

TEST_CASE("reference sequences reproduce exactly") {
    EDS e37 = EDS::from_initial(1, 1, -1, 1);
    check_prefix(e37, kSeq37);
    EDS e43 = EDS::from_initial(1, 1, 1, -1);
    check_prefix(e43, kSeq43);
    EDS e58 = EDS::from_initial(1, 1, 2, 1);
    check_prefix(e58, kSeq58);
    EDS e61 = EDS::from_initial(1, 1, 1, 2);
    check_prefix(e61, kSeq61);
    EDS e710 = EDS::from_initial(1, 2, 2, -2);
    check_prefix(e710, kSeq710);
    // Spot values named in the operation contracts.
    CHECK(e37.term(8) == BigInt(-5));
    CHECK(e37.term(-5) == BigInt(-2));
    CHECK(e58.term(20) == BigInt::from_decimal("503020937289311"));
}

TEST_CASE("negative indices and zero") {
    EDS e = EDS::from_initial(1, 1, -1, 1);
    CHECK(e.term(0) == BigInt(0));
    for (long long n = 1; n <= 30; ++n) CHECK(e.term(-n) == -e.term(n));
}

TEST_CASE("recursion verified exhaustively for the examples") {
    EDS e37 = EDS::from_initial(1, 1, -1, 1);
    auto r = edslab::verify_recursion(e37, 20);
    CHECK(r.ok);
    EDS e61 = EDS::from_initial(1, 1, 1, 2);
    CHECK(edslab::verify_recursion(e61, 20).ok);
    // Eq-check at the duplication indices (m,n) = (n+1,n) and (n+1,n-1) is
    // implied; re-assert explicitly for a few n.
    e37.generate(40);
    const auto& w = e37.terms();
    for (long long n = 2; n <= 18; ++n) {
        CHECK(w[2 * n + 1] == w[n + 2] * w[n] * w[n] * w[n] - w[n - 1] * w[n + 1] * w[n + 1] * w[n + 1]);
        CHECK(w[2 * n] * w[2] == w[n] * (w[n + 2] * w[n - 1] * w[n - 1] - w[n - 2] * w[n + 1] * w[n + 1]));
    }
}

TEST_CASE("recursion violation is located") {
    // 1,1,1,1,5,... is not an EDS; the recursion fails first at (m,n) = (3,2).
    std::vector<BigInt> w = {BigInt(0), BigInt(1), BigInt(1), BigInt(1), BigInt(1),
                             BigInt(5), BigInt(1), BigInt(1), BigInt(1), BigInt(1),
                             BigInt(1), BigInt(1), BigInt(1)};
    auto r = edslab::verify_recursion(w, 6);
    CHECK_FALSE(r.ok);
    CHECK(r.m == 3);
    CHECK(r.n == 2);
}

TEST_CASE("discriminant matches the term-by-term oracle") {
    EDS e37 = EDS::from_initial(1, 1, -1, 1);
    CHECK(e37.discriminant() == BigInt(37));
    CHECK(e37.discriminant() == disc_oracle(1, -1, 1));
    EDS e43 = EDS::from_initial(1, 1, 1, -1);
    CHECK(e43.discriminant() == disc_oracle(1, 1, -1));
    CHECK(e43.discriminant() == BigInt(43));
    // The singular sequence W_n = n.
    EDS lin = EDS::from_initial(1, 2, 3, 4);
    CHECK(lin.discriminant() == BigInt(0));
    CHECK(lin.discriminant() == disc_oracle(2, 3, 4));
    std::mt19937_64 rng(101);
    for (int i = 0; i < 60; ++i) {
        long long a = static_cast<long long>(rng() % 19) - 9;
        long long b = static_cast<long long>(rng() % 19) - 9;
        long long g = static_cast<long long>(rng() % 19) - 9;
        if (a == 0) a = 1;
        EDS e = EDS::from_initial(1, a, b, a * g);
        CHECK(e.discriminant() == disc_oracle(a, b, a * g));
    }
}

TEST_CASE("nonsingularity gate") {
    CHECK(EDS::from_initial(1, 1, -1, 1).nonsingular());
    CHECK_FALSE(EDS::from_initial(1, 2, 3, 4).nonsingular());
    CHECK_FALSE(EDS::from_initial(1, 0, 1, 0).nonsingular());
}

TEST_CASE("inverse sequence") {
    EDS e = EDS::from_initial(1, 1, -1, 1);
    EDS inv = e.inverse();
    CHECK(inv.term(2) == BigInt(-1));
    CHECK(inv.term(3) == BigInt(-1));
    CHECK(inv.term(4) == BigInt(-1));
    for (long long n = 1; n <= 25; ++n) {
        BigInt expect = e.term(n);
        if (n % 2 == 0) expect.negate();
        CHECK(inv.term(n) == expect);
        CHECK(inv.term(n).abs() == e.term(n).abs());
    }
    // Involution and discriminant preservation.
    EDS back = inv.inverse();
    for (long long n = 1; n <= 10; ++n) CHECK(back.term(n) == e.term(n));
    CHECK(inv.nonsingular());
    CHECK(edslab::verify_recursion(inv, 12).ok);
}

TEST_CASE("index-doubling formulas W_6d and W_8d") {
    EDS e = EDS::from_initial(1, 1, -1, 1);
    CHECK(edslab::detail::w6d_term(e.term(1), e.term(2), e.term(3), e.term(4)) == BigInt(-1));
    CHECK(edslab::detail::w8d_term(e.term(1), e.term(2), e.term(3), e.term(4)) == BigInt(-5));
    // At a shifted stride the same formulas must land on the exact terms.
    for (long long d : {2LL, 3LL, 5LL}) {
        CHECK(edslab::detail::w6d_term(e.term(d), e.term(2 * d), e.term(3 * d), e.term(4 * d)) ==
              e.term(6 * d));
        CHECK(edslab::detail::w8d_term(e.term(d), e.term(2 * d), e.term(3 * d), e.term(4 * d)) ==
              e.term(8 * d));
    }
}

TEST_CASE("subsequence agrees with direct terms") {
    EDS e = EDS::from_initial(1, 1, -1, 1);
    auto sub2 = e.subsequence(2, 4);
    CHECK(sub2 == std::vector<BigInt>{BigInt(1), BigInt(1), BigInt(-1), BigInt(-5)});
    for (long long d = 1; d <= 8; ++d) {
        auto sub = e.subsequence(d, 12);
        for (long long n = 1; n <= 12; ++n) CHECK(sub[static_cast<size_t>(n - 1)] == e.term(n * d));
    }
    EDS e61 = EDS::from_initial(1, 1, 1, 2);
    for (long long d = 1; d <= 6; ++d) {
        auto sub = e61.subsequence(d, 10);
        for (long long n = 1; n <= 10; ++n) CHECK(sub[static_cast<size_t>(n - 1)] == e61.term(n * d));
    }
}

TEST_CASE("random nonsingular quadruples satisfy the recursion broadly") {
    std::mt19937_64 rng(2024);
    int found = 0;
    while (found < 8) {
        long long a = static_cast<long long>(rng() % 99) - 49;
        long long b = static_cast<long long>(rng() % 99) - 49;
        long long g = static_cast<long long>(rng() % 9) - 4;
        if (a == 0 || b == 0) continue;
        EDS e = EDS::from_initial(1, a, b, a * g);
        if (!e.nonsingular()) continue;
        ++found;
        CHECK(edslab::verify_recursion(e, 25).ok);
    }
}

TEST_CASE("sparse large-index terms match dense generation") {
    EDS a = EDS::from_initial(1, 1, -1, 1);
    EDS b = EDS::from_initial(1, 1, -1, 1);
    b.generate(1200);  // reach the dense/sparse watershed honestly
    // Dense path value computed independently through the d-step subsequence.
    auto sub = a.subsequence(256, 8);  // W_256 ... W_2048 via strides
    CHECK(sub[7] == a.term(2048));
    CHECK(a.term(1300) * BigInt(1) == a.subsequence(650, 2)[1]);
}

TEST_CASE("growth of log|W_n|/n^2 settles") {
    // The fast-growing example: past n = 20 the quadratic height term
    // dominates and log|W_n|/n^2 is flat to within 10%, with isolated small
    // terms smoothed out by octave averaging.
    EDS e = EDS::from_initial(1, 1, 2, 1);
    e.generate(160);
    auto h = [&](long long n) { return log2_abs(e.term(n)) / static_cast<double>(n * n); };
    auto window_mean = [&](long long lo, long long hi) {
        double s = 0;
        for (long long n = lo; n < hi; ++n) s += h(n);
        return s / static_cast<double>(hi - lo);
    };
    double tail = window_mean(80, 160);
    CHECK(std::fabs(window_mean(20, 40) - tail) < 0.10 * tail);
    CHECK(std::fabs(window_mean(40, 80) - tail) < 0.10 * tail);
    // Successive window differences shrink: the sequence of normalized logs
    // converges rather than drifts.
    CHECK(std::fabs(window_mean(40, 80) - tail) < std::fabs(window_mean(20, 40) - tail));
    // Per-index band once the early dips are out of range.
    for (long long n = 30; n <= 160; ++n) CHECK(std::fabs(h(n) - tail) < 0.10 * tail);
}
