#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "edslab/analytic.hpp"
#include "edslab/realizability.hpp"

namespace edslab {

using Json = nlohmann::ordered_json;

struct SignStats {
    long long checked = 0;
    long long matched = 0;

    double match_pct() const {
        return checked ? 100.0 * static_cast<double>(matched) / static_cast<double>(checked)
                       : 0.0;
    }
};

// Everything one full pipeline pass produces. A stage that failed leaves its
// field empty and its error message under `errors`.
struct AnalysisBundle {
    std::vector<BigInt> initial;  // normalized W_1..W_4
    std::vector<BigInt> terms;    // W_1..W_N
    bool degenerate = false;
    bool nonsingular = false;
    BigInt disc_w;
    std::optional<CurveData> curve;
    std::optional<AnalyticData> analytic;
    std::optional<SignStats> signs;
    std::optional<WitnessSearch> realizability;
    std::vector<std::pair<std::string, std::string>> errors;  // stage -> message
};

namespace jsonio {

inline Json integers(const std::vector<BigInt>& v) {
    Json arr = Json::array();
    for (const BigInt& x : v) arr.push_back(x.to_decimal());
    return arr;
}

inline std::vector<BigInt> integers(const Json& arr) {
    std::vector<BigInt> v;
    for (const auto& x : arr) v.push_back(BigInt::from_decimal(x.get<std::string>()));
    return v;
}

inline Json curve_json(const CurveData& cd) {
    return Json{{"A", cd.A.to_decimal()},         {"B", cd.B.to_decimal()},
                {"x", cd.x.to_decimal()},         {"y", cd.y.to_decimal()},
                {"disc", cd.disc.to_decimal()},   {"alpha", cd.alpha.to_decimal()},
                {"beta3", cd.beta3.to_decimal()}, {"gamma", cd.gamma.to_decimal()}};
}

inline CurveData curve_from_json(const Json& j) {
    CurveData cd;
    cd.A = BigInt::from_decimal(j.at("A").get<std::string>());
    cd.B = BigInt::from_decimal(j.at("B").get<std::string>());
    cd.x = BigInt::from_decimal(j.at("x").get<std::string>());
    cd.y = BigInt::from_decimal(j.at("y").get<std::string>());
    cd.disc = BigInt::from_decimal(j.at("disc").get<std::string>());
    cd.alpha = BigInt::from_decimal(j.at("alpha").get<std::string>());
    cd.beta3 = BigInt::from_decimal(j.at("beta3").get<std::string>());
    cd.gamma = BigInt::from_decimal(j.at("gamma").get<std::string>());
    return cd;
}

inline ComponentCase case_from_string(const std::string& s) {
    if (s == "connected") return ComponentCase::Connected;
    if (s == "identity-component") return ComponentCase::IdentityComponent;
    if (s == "nonidentity-component") return ComponentCase::NonidentityComponent;
    throw InvalidInput("unknown component case: " + s);
}

inline Json analytic_json(const AnalyticData& ad) {
    int digits = PrecisionContext(ad.precision_bits).decimal_digits();
    return Json{{"q", ad.q.to_decimal(digits)},
                {"u", ad.u.to_decimal(digits)},
                {"beta", ad.beta.to_decimal(digits)},
                {"case", to_string(ad.case_tag)},
                {"flip", ad.flip},
                {"precision_bits", ad.precision_bits}};
}

inline AnalyticData analytic_from_json(const Json& j) {
    AnalyticData ad;
    ad.precision_bits = j.at("precision_bits").get<int>();
    int wp = ad.precision_bits + 64;
    ad.q = Real::parse(j.at("q").get<std::string>(), wp);
    ad.u = Real::parse(j.at("u").get<std::string>(), wp);
    ad.beta = Real::parse(j.at("beta").get<std::string>(), wp);
    ad.case_tag = case_from_string(j.at("case").get<std::string>());
    ad.flip = j.at("flip").get<int>();
    return ad;
}

inline Json witness_json(const WitnessSearch& ws) {
    Json witnesses = Json::array();
    if (ws.witness) {
        witnesses.push_back(Json{{"n", ws.witness->n},
                                 {"kind", to_string(ws.witness->kind)},
                                 {"value", ws.witness->value.to_decimal()}});
    }
    return Json{{"verdict", ws.witness ? "not-realizable" : "inconclusive"},
                {"witnesses", witnesses},
                {"checked_bound", ws.checked_bound}};
}

inline WitnessSearch witness_from_json(const Json& j) {
    WitnessSearch ws;
    ws.checked_bound = j.at("checked_bound").get<long long>();
    for (const auto& w : j.at("witnesses")) {
        Violation v;
        v.n = w.at("n").get<long long>();
        v.kind = w.at("kind").get<std::string>() == "negative" ? ViolationKind::Negative
                                                               : ViolationKind::NotDivisible;
        v.value = BigInt::from_decimal(w.at("value").get<std::string>());
        ws.witness = v;
    }
    return ws;
}

inline Json report_json(const RealizabilityReport& rep) {
    Json witnesses = Json::array();
    for (const auto& v : rep.violations) {
        witnesses.push_back(Json{{"n", v.n},
                                 {"kind", to_string(v.kind)},
                                 {"value", v.value.to_decimal()}});
    }
    return Json{{"verdict", rep.violations.empty() ? "realizable-up-to-bound" : "not-realizable"},
                {"witnesses", witnesses},
                {"checked_bound", rep.checked_bound},
                {"convolution", integers(rep.convolution)}};
}

}  // namespace jsonio

inline Json to_json(const AnalysisBundle& b) {
    Json j{{"schema", "eds-lab/1"}};
    j["eds"] = Json{{"initial", jsonio::integers(b.initial)},
                    {"terms", jsonio::integers(b.terms)},
                    {"degenerate", b.degenerate},
                    {"nonsingular", b.nonsingular},
                    {"disc_w", b.disc_w.to_decimal()}};
    if (b.curve) j["curve"] = jsonio::curve_json(*b.curve);
    if (b.analytic) j["analytic"] = jsonio::analytic_json(*b.analytic);
    if (b.signs) {
        j["signs"] = Json{{"checked", b.signs->checked},
                          {"matched", b.signs->matched},
                          {"match_pct", b.signs->match_pct()}};
    }
    if (b.realizability) j["realizability"] = jsonio::witness_json(*b.realizability);
    if (!b.errors.empty()) {
        Json errs = Json::object();
        for (const auto& [stage, msg] : b.errors) errs[stage] = msg;
        j["errors"] = errs;
    }
    return j;
}

inline AnalysisBundle bundle_from_json(const Json& j) {
    if (j.at("schema").get<std::string>() != "eds-lab/1")
        throw InvalidInput("unknown schema version");
    AnalysisBundle b;
    const Json& eds = j.at("eds");
    b.initial = jsonio::integers(eds.at("initial"));
    b.terms = jsonio::integers(eds.at("terms"));
    b.degenerate = eds.at("degenerate").get<bool>();
    b.nonsingular = eds.at("nonsingular").get<bool>();
    b.disc_w = BigInt::from_decimal(eds.at("disc_w").get<std::string>());
    if (j.contains("curve")) b.curve = jsonio::curve_from_json(j.at("curve"));
    if (j.contains("analytic")) b.analytic = jsonio::analytic_from_json(j.at("analytic"));
    if (j.contains("signs")) {
        SignStats s;
        s.checked = j.at("signs").at("checked").get<long long>();
        s.matched = j.at("signs").at("matched").get<long long>();
        b.signs = s;
    }
    if (j.contains("realizability"))
        b.realizability = jsonio::witness_from_json(j.at("realizability"));
    if (j.contains("errors")) {
        for (const auto& [k, v] : j.at("errors").items())
            b.errors.emplace_back(k, v.get<std::string>());
    }
    return b;
}

// Semantic equality: integer data exact, reals to the shared precision's
// printable resolution (decimal round trips cost a few final bits).
inline bool bundles_equal(const AnalysisBundle& a, const AnalysisBundle& b) {
    auto reals_close = [](const Real& x, const Real& y, int bits) {
        Real scale = y.abs();
        if (scale.is_zero()) return x.is_zero();
        return (x - y).abs() < scale.mul_pow2(-(bits - 16));
    };
    if (a.initial != b.initial || a.terms != b.terms || a.degenerate != b.degenerate ||
        a.nonsingular != b.nonsingular || a.disc_w != b.disc_w)
        return false;
    if (a.curve.has_value() != b.curve.has_value()) return false;
    if (a.curve) {
        const CurveData &x = *a.curve, &y = *b.curve;
        if (x.A != y.A || x.B != y.B || x.x != y.x || x.y != y.y || x.disc != y.disc ||
            x.alpha != y.alpha || x.beta3 != y.beta3 || x.gamma != y.gamma)
            return false;
    }
    if (a.analytic.has_value() != b.analytic.has_value()) return false;
    if (a.analytic) {
        const AnalyticData &x = *a.analytic, &y = *b.analytic;
        int bits = std::min(x.precision_bits, y.precision_bits);
        if (x.case_tag != y.case_tag || x.flip != y.flip ||
            x.precision_bits != y.precision_bits)
            return false;
        if (!reals_close(x.q, y.q, bits) || !reals_close(x.u, y.u, bits) ||
            !reals_close(x.beta, y.beta, bits))
            return false;
    }
    if (a.signs.has_value() != b.signs.has_value()) return false;
    if (a.signs && (a.signs->checked != b.signs->checked || a.signs->matched != b.signs->matched))
        return false;
    if (a.realizability.has_value() != b.realizability.has_value()) return false;
    if (a.realizability) {
        const WitnessSearch &x = *a.realizability, &y = *b.realizability;
        if (x.checked_bound != y.checked_bound) return false;
        if (x.witness.has_value() != y.witness.has_value()) return false;
        if (x.witness && (x.witness->n != y.witness->n || x.witness->kind != y.witness->kind ||
                          x.witness->value != y.witness->value))
            return false;
    }
    return a.errors == b.errors;
}

// Full pipeline: generate, associate, analyze, verify signs, hunt a witness.
// Stage failures are recorded, not thrown; the bundle always comes back.
inline AnalysisBundle run_analysis(EDS& eds, const PrecisionContext& ctx, long long terms,
                                   int witness_kmax = 6) {
    AnalysisBundle b;
    b.initial = {BigInt(1), eds.w2(), eds.w3(), eds.w4()};
    eds.generate(terms);
    for (long long n = 1; n <= terms; ++n) b.terms.push_back(eds.term(n));
    b.degenerate = eds.degenerate();
    b.nonsingular = eds.nonsingular();
    b.disc_w = eds.discriminant();
    if (!b.nonsingular) {
        b.errors.emplace_back("curve", "sequence is singular; curve stage skipped");
        return b;
    }
    b.curve = associated_curve(eds);
    try {
        b.analytic = analyze(eds, ctx);
        SignStats stats;
        for (long long n = 1; n <= terms; ++n) {
            BigInt w = eds.term(n);
            if (w.is_zero()) continue;
            ++stats.checked;
            if (predict_parity(*b.analytic, n).sign() == w.sign()) ++stats.matched;
        }
        b.signs = stats;
    } catch (const Error& e) {
        b.errors.emplace_back("analytic", e.what());
    }
    try {
        b.realizability = nonrealizability_witness(eds, witness_kmax);
    } catch (const Error& e) {
        b.errors.emplace_back("realizability", e.what());
    }
    return b;
}

}  // namespace edslab
