// Acceptance suite: every release criterion, one line each, with the
// tolerances and runtime bounds pinned here. Exit code is the number of
// failed criteria.

#include <array>
#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "edslab/bundle.hpp"

using edslab::AnalyticData;
using edslab::BigInt;
using edslab::EDS;
using edslab::PrecisionContext;
using edslab::Real;

namespace {

using clk = std::chrono::steady_clock;

double seconds_since(clk::time_point t0) {
    return std::chrono::duration<double>(clk::now() - t0).count();
}

struct Example {
    const char* name;
    std::array<long long, 4> init;
    std::vector<long long> listed;
    const char* q;
    const char* u;
    const char* beta;
};

const Example kExamples[] = {
    {"cond37", {1, 1, -1, 1},
     {1, 1, -1, 1, 2, -1, -3, -5, 7, -4, -23, 29, 59, 129, -314, -65, 1529, -3689, -8209,
      -16264},
     "0.0004654203923", "-0.09230562888", "0.310541358720"},
    {"cond43", {1, 1, 1, -1},
     {1, 1, 1, -1, -2, -3, -1, 7, 11, 20, -19, -87, -191, -197, 1018, 2681, 8191, -5841,
      -81289, -261080},
     "-0.001833413287", "0.02931619135", "0.2800581462"},
    {"cond58", {1, 1, 2, 1},
     {1, 1, 2, 1, -7, -16, -57, -113, 670, 3983, 23647, 140576, -833503, -14871471,
      -147165662, -2273917871, 11396432249, 808162720720, 14252325989831, 503020937289311},
     "-0.0004429838967", "0.02529988312", "0.2380838117"},
    {"cond61", {1, 1, 1, 2},
     {1, 1, 1, 2, 1, -3, -7, -8, -25, -37, 47, 318, 559, 2023, 7039, -496, -90431, -314775,
      -1139599, -8007614},
     "-0.00006372107969", "0.02660268122", "0.1877002949"},
    {"cond710", {1, 2, 2, -2},
     {1, 2, 2, -2, -24, -100, -176, 1552, 28448, 248448, 433024, -47795200, -1682842624,
      -30121422848, 218738737152},
     "0.00002987174044", "0.0004951251683", "0.7304917812"},
};

EDS make(const Example& ex) {
    return EDS::from_initial(ex.init[0], ex.init[1], ex.init[2], ex.init[3]);
}

bool rel_within(const Real& got, const char* want, const char* tol) {
    Real w = Real::parse(want, got.precision());
    return (got - w).abs() < w.abs() * Real::parse(tol, got.precision());
}

int failures = 0;

void report(int idx, const char* what, bool ok, const std::string& detail = "") {
    std::printf("%s  criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", idx, what,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

void criterion1_sequences() {
    auto t0 = clk::now();
    bool ok = true;
    for (const Example& ex : kExamples) {
        EDS e = make(ex);
        for (size_t i = 0; i < ex.listed.size(); ++i) {
            if (e.term(static_cast<long long>(i) + 1) != BigInt(ex.listed[i])) ok = false;
        }
    }
    double dt = seconds_since(t0);
    ok = ok && dt < 1.0;
    report(1, "exact reproduction of all listed terms of the five examples", ok,
           "runtime " + std::to_string(dt) + "s (< 1s)");
}

void criterion2_analytic() {
    bool ok = true;
    double worst = 0;
    for (const Example& ex : kExamples) {
        EDS e = make(ex);
        auto t0 = clk::now();
        AnalyticData ad = edslab::analyze(e, PrecisionContext(256));
        double dt = seconds_since(t0);
        worst = std::max(worst, dt);
        ok = ok && rel_within(ad.q, ex.q, "1e-9") && rel_within(ad.u, ex.u, "1e-9") &&
             rel_within(ad.beta, ex.beta, "1e-9") && dt < 5.0;
    }
    report(2, "q, u, beta match the reference values to 1e-9 at 256 bits", ok,
           "slowest curve " + std::to_string(worst) + "s (< 5s)");
}

void criterion3_signs() {
    auto t0 = clk::now();
    long long checked = 0, matched = 0;
    for (const Example& ex : kExamples) {
        EDS e = make(ex);
        AnalyticData ad = edslab::analyze(e, PrecisionContext(256));
        e.generate(1000);
        for (long long n = 1; n <= 1000; ++n) {
            ++checked;
            if (edslab::predict_parity(ad, n).sign() == e.term(n).sign()) ++matched;
        }
    }
    double dt = seconds_since(t0);
    bool ok = checked == 5000 && matched == checked && dt < 60.0;
    report(3, "flip-resolved parity matches every sign for 1 <= n <= 1000", ok,
           std::to_string(matched) + "/" + std::to_string(checked) + ", runtime " +
               std::to_string(dt) + "s (< 60s)");
}

void criterion4_theta() {
    bool ok = true;
    for (int which : {0, 1}) {
        EDS e = make(kExamples[which]);
        AnalyticData ad = edslab::analyze(e, PrecisionContext(256));
        Real tol = Real::parse("1e-20", 320);
        for (long long n = 1; n <= 50; ++n) {
            Real recon = edslab::reconstruct_magnitude(ad, n);
            Real exact = Real::exact(e.term(n).abs());
            if (!((recon - exact).abs() < tol * exact)) ok = false;
        }
    }
    report(4, "theta-product magnitudes within 1e-20 of exact terms for n <= 50", ok);
}

void criterion5_curve() {
    bool ok = true;
    EDS e = make(kExamples[0]);
    edslab::CurveData cd = edslab::associated_curve(e);
    ok = ok && cd.A == BigInt(-1296) && cd.B == BigInt(11664) && cd.x == BigInt(0) &&
         cd.y == BigInt(108) && cd.disc == BigInt::from_decimal("-5033809152");
    ok = ok && cd.y * cd.y == cd.x * cd.x * cd.x + cd.A * cd.x + cd.B;
    ok = ok && cd.disc == BigInt(4) * cd.A * cd.A * cd.A + BigInt(27) * cd.B * cd.B;
    // 2^8 3^12 beta^9 alpha^8 * 37 with alpha = 1, beta = -1.
    ok = ok && cd.disc == BigInt(-256) * BigInt::pow(BigInt(3), 12) * BigInt(37);
    std::mt19937_64 rng(20260808);
    int found = 0;
    while (found < 100) {
        long long a = static_cast<long long>(rng() % 1999) - 999;
        long long b = static_cast<long long>(rng() % 1999) - 999;
        long long g = static_cast<long long>(rng() % 39) - 19;
        if (a == 0 || b == 0) continue;
        EDS r = EDS::from_initial(1, a, b, a * g);
        if (!r.nonsingular()) continue;
        ++found;
        // associated_curve checks the two disc routes exactly and throws on
        // any mismatch; also tie the curve disc to Disc(W) directly.
        edslab::CurveData rd = edslab::associated_curve(r);
        BigInt beta9 = BigInt::pow(BigInt(b), 9);
        BigInt expected = BigInt(256) * BigInt::pow(BigInt(3), 12) * beta9 *
                          BigInt::pow(BigInt(a), 4) * r.discriminant();
        if (rd.disc != expected) ok = false;
    }
    report(5, "curve association exact for cond37 and 100 random quadruples", ok);
}

void criterion6_denominators() {
    bool ok = true;
    struct Pair {
        const char* curve;
        const char* point;
        int example;
    };
    const Pair pairs[] = {
        {"0,0,1,-1,0", "0,0", 0},
        {"0,1,1,0,0", "0,0", 1},
        {"1,-1,0,-1,1", "1,0", 2},
        {"1,0,0,-2,1", "1,0", 3},
    };
    for (const Pair& p : pairs) {
        auto E = edslab::WeierstrassCurve::parse(p.curve);
        auto d = edslab::denominator_sequence(E, edslab::parse_point(p.point), 50);
        EDS e = make(kExamples[p.example]);
        for (long long n = 1; n <= 50; ++n) {
            if (e.term(n).abs() != d[static_cast<size_t>(n - 1)]) ok = false;
        }
    }
    auto E5 = edslab::WeierstrassCurve::parse("1,1,1,-416,3009");
    auto d5 = edslab::denominator_sequence(
        E5, edslab::RationalPoint::at(edslab::Rational(21), edslab::Rational(53)), 30);
    EDS e5 = make(kExamples[4]);
    for (long long n = 1; n <= 30; ++n) {
        BigInt w = e5.term(n).abs();
        const BigInt& dn = d5[static_cast<size_t>(n - 1)];
        BigInt big = w >= dn ? w : dn, small = w >= dn ? dn : w;
        if (!big.divisible_by(small)) {
            ok = false;
            continue;
        }
        BigInt q = BigInt::exact_div(big, small);
        while (q.even()) q = q >> 1;
        if (q != BigInt(1)) ok = false;
    }
    report(6, "|W_n| = D_nP for the first four pairs; W/D a 2-power for cond710", ok);
}

void criterion7_realizability() {
    bool ok = true;
    EDS e37 = make(kExamples[0]);
    auto w37 = edslab::nonrealizability_witness(e37, 6);
    ok = ok && w37.witness && w37.witness->n == 8 && w37.witness->value == BigInt(4);
    for (const Example& ex : kExamples) {
        EDS e = make(ex);
        auto w = edslab::nonrealizability_witness(e, 6);
        if (!w.witness) ok = false;
    }
    std::vector<BigInt> lucas = {BigInt(1), BigInt(3)};
    while (lucas.size() < 50) lucas.push_back(lucas[lucas.size() - 1] + lucas[lucas.size() - 2]);
    ok = ok && edslab::realizability_check(lucas, 50).realizable_up_to_bound();
    std::vector<BigInt> mersenne;
    for (unsigned long n = 1; n <= 50; ++n)
        mersenne.push_back(BigInt::pow(BigInt(2), n) - BigInt(1));
    ok = ok && edslab::realizability_check(mersenne, 50).realizable_up_to_bound();
    report(7, "witness n=8 (value 4) for cond37, witnesses for all five, clean controls", ok);
}

void criterion8_periodicity() {
    // cond61 has W_4 = 2, so the W_2/W_4-odd hypothesis excludes it; the three
    // sequences satisfying the hypothesis are checked, and the even case must
    // hit the gate.
    bool ok = true;
    for (int which : {0, 1, 2}) {
        EDS e = make(kExamples[which]);
        auto rep = edslab::pow2_mod_periodicity(e, 2, 20);
        if (!rep.period_found) ok = false;
        for (long long k = rep.preperiod; k + rep.period <= 20 && rep.period_found; ++k) {
            if (rep.residues[static_cast<size_t>(k)] !=
                rep.residues[static_cast<size_t>(k + rep.period)])
                ok = false;
        }
        for (int k = 0; k <= 12; ++k) {
            BigInt exact = e.term(1LL << k) % BigInt(4);
            long long r = exact.to_int64();
            if (r < 0) r += 4;
            if (rep.residues[static_cast<size_t>(k)] != static_cast<uint64_t>(r)) ok = false;
        }
    }
    try {
        EDS e4 = make(kExamples[3]);
        edslab::pow2_mod_periodicity(e4, 2, 20);
        ok = false;  // even W_4 must be rejected
    } catch (const edslab::EvenTerm&) {
    }
    report(8, "verified (K, r) at e=2 for the odd-hypothesis examples; exact residues k <= 12",
           ok);
}

void criterion9_recursion() {
    bool ok = true;
    std::mt19937_64 rng(97531);
    int found = 0;
    while (found < 20) {
        long long a = static_cast<long long>(rng() % 101) - 50;
        long long b = static_cast<long long>(rng() % 101) - 50;
        long long w4 = static_cast<long long>(rng() % 101) - 50;
        if (a == 0 || b == 0 || w4 % a != 0) continue;
        EDS e = EDS::from_initial(1, a, b, w4);
        if (!e.nonsingular()) continue;
        ++found;
        if (!edslab::verify_recursion(e, 60).ok) ok = false;
    }
    try {
        auto E = edslab::WeierstrassCurve::parse("0,28,27,27,0");
        edslab::shipsey_signs(E, edslab::RationalPoint::at(edslab::Rational(0), edslab::Rational(0)), 12);
        ok = false;  // must not produce a consistent sequence
    } catch (const edslab::RecursionFailure&) {
    }
    report(9, "recursion exact on 20 random sequences to m=60; sign rule fails on the 27-curve",
           ok);
}

}  // namespace

int main() {
    criterion1_sequences();
    criterion2_analytic();
    criterion3_signs();
    criterion4_theta();
    criterion5_curve();
    criterion6_denominators();
    criterion7_realizability();
    criterion8_periodicity();
    criterion9_recursion();
    std::printf("%s: %d criterion(s) failed\n", failures ? "FAILURE" : "SUCCESS", failures);
    return failures;
}
