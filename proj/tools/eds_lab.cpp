// Command-line front end: exact elliptic divisibility sequences, their
// curves, real-analytic sign prediction, and realizability testing.
//
// Exit codes: 0 success, 2 input rejected, 3 precision exhausted,
// 4 internal inconsistency (recursion violation).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "edslab/bundle.hpp"

namespace {

using edslab::AnalysisBundle;
using edslab::BigInt;
using edslab::EDS;
using edslab::Json;
using edslab::PrecisionContext;
using edslab::Real;

struct SequenceInput {
    std::string initial_literal;
    std::string file;

    void add_options(CLI::App* cmd, bool required = true) {
        auto* a = cmd->add_option("--initial", initial_literal,
                                  "initial quadruple W_1,W_2,W_3,W_4, e.g. 1,1,-1,1");
        auto* b = cmd->add_option("--sequence-file", file,
                                  "JSON file with {\"initial\":[...]} or {\"terms\":[...]}");
        if (required) {
            a->excludes(b);
            cmd->require_option(1, 0);
        }
    }

    Json load_file() const {
        std::ifstream in(file);
        if (!in) throw edslab::InvalidInput("cannot open " + file);
        Json j;
        in >> j;
        return j;
    }

    EDS make_eds() const {
        if (!initial_literal.empty()) return edslab::eds_from_literal(initial_literal);
        Json j = load_file();
        if (j.contains("initial")) {
            auto v = edslab::jsonio::integers(j.at("initial"));
            if (v.size() != 4) throw edslab::InvalidInput("initial must have four entries");
            return EDS::from_initial(v[0], v[1], v[2], v[3]);
        }
        throw edslab::InvalidInput("sequence file has no \"initial\" field");
    }

    // Raw positive terms, for realizability control sequences.
    std::optional<std::vector<BigInt>> raw_terms() const {
        if (initial_literal.empty() && !file.empty()) {
            Json j = load_file();
            if (j.contains("terms") && !j.contains("initial"))
                return edslab::jsonio::integers(j.at("terms"));
        }
        return std::nullopt;
    }
};

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int run_generate(const SequenceInput& in, long long terms, bool as_json) {
    EDS eds = in.make_eds();
    eds.generate(terms);
    if (as_json) {
        Json j{{"schema", "eds-lab/1"},
               {"initial", edslab::jsonio::integers(
                               {BigInt(1), eds.w2(), eds.w3(), eds.w4()})},
               {"terms", Json::array()}};
        for (long long n = 1; n <= terms; ++n) j["terms"].push_back(eds.term(n).to_decimal());
        emit(j);
    } else {
        for (long long n = 1; n <= terms; ++n)
            std::cout << n << " " << eds.term(n).to_decimal() << "\n";
    }
    return 0;
}

int run_analyze(const SequenceInput& in, int precision, long long terms, int kmax) {
    EDS eds = in.make_eds();
    AnalysisBundle b = edslab::run_analysis(eds, PrecisionContext(precision), terms, kmax);
    emit(edslab::to_json(b));
    return 0;
}

int run_predict(const SequenceInput& in, int precision, long long terms, bool csv) {
    EDS eds = in.make_eds();
    auto ad = edslab::analyze(eds, PrecisionContext(precision));
    eds.generate(terms);
    if (csv) {
        std::cout << "n,W_n,predicted_sign,actual_sign\n";
        for (long long n = 1; n <= terms; ++n) {
            BigInt w = eds.term(n);
            int predicted = edslab::predict_parity(ad, n).sign();
            std::cout << n << "," << w.to_decimal() << "," << predicted << "," << w.sign()
                      << "\n";
        }
    } else {
        Json rows = Json::array();
        long long matched = 0;
        for (long long n = 1; n <= terms; ++n) {
            BigInt w = eds.term(n);
            int predicted = edslab::predict_parity(ad, n).sign();
            matched += predicted == w.sign();
            rows.push_back(Json{{"n", n},
                                {"W_n", w.to_decimal()},
                                {"predicted_sign", predicted},
                                {"actual_sign", w.sign()}});
        }
        emit(Json{{"schema", "eds-lab/1"},
                  {"analytic", edslab::jsonio::analytic_json(ad)},
                  {"rows", rows},
                  {"matched", matched},
                  {"checked", terms}});
    }
    return 0;
}

std::pair<edslab::WeierstrassCurve, edslab::RationalPoint> load_curve_file(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw edslab::InvalidInput("cannot open " + path);
    Json j;
    in >> j;
    if (!j.contains("curve") || !j.contains("point"))
        throw edslab::InvalidInput("curve file needs {\"curve\":{a1..a6}, \"point\":[x,y]}");
    const Json& c = j.at("curve");
    auto coeff = [&c](const char* k) {
        return edslab::Rational::parse(c.at(k).get<std::string>());
    };
    edslab::WeierstrassCurve E(coeff("a1"), coeff("a2"), coeff("a3"), coeff("a4"),
                               coeff("a6"));
    const Json& p = j.at("point");
    edslab::RationalPoint P =
        p.is_string() && p.get<std::string>() == "O"
            ? edslab::RationalPoint::infinity()
            : edslab::RationalPoint::at(edslab::Rational::parse(p.at(0).get<std::string>()),
                                        edslab::Rational::parse(p.at(1).get<std::string>()));
    return {E, P};
}

int run_curve(const SequenceInput& in, const std::string& curve_lit,
              const std::string& point_lit, const std::string& curve_file, long long terms) {
    if (!curve_lit.empty() || !curve_file.empty()) {
        auto [E, P] = curve_file.empty()
                          ? std::pair(edslab::WeierstrassCurve::parse(curve_lit),
                                      edslab::parse_point(point_lit))
                          : load_curve_file(curve_file);
        std::ostringstream curve_desc;
        curve_desc << E.a1().to_string() << "," << E.a2().to_string() << ","
                   << E.a3().to_string() << "," << E.a4().to_string() << ","
                   << E.a6().to_string();
        Json j{{"schema", "eds-lab/1"},
               {"curve", curve_desc.str()},
               {"point", P.to_string()},
               {"denominators", Json::array()}};
        auto d = edslab::denominator_sequence(E, P, terms);
        for (const BigInt& x : d) j["denominators"].push_back(x.to_decimal());
        try {
            auto w = edslab::shipsey_signs(E, P, terms);
            j["signed_sequence"] = edslab::jsonio::integers(w);
        } catch (const edslab::Error& e) {
            j["signed_sequence_error"] = e.what();
            emit(j);
            throw;
        }
        emit(j);
        return 0;
    }
    EDS eds = in.make_eds();
    auto cd = edslab::associated_curve(eds);
    emit(Json{{"schema", "eds-lab/1"}, {"curve", edslab::jsonio::curve_json(cd)}});
    return 0;
}

int run_realizable(const SequenceInput& in, int kmax, long long bound, bool pow2_period,
                   int mod_exponent, int pow2_kmax) {
    if (auto raw = in.raw_terms()) {
        long long n = bound ? std::min<long long>(bound, raw->size())
                            : static_cast<long long>(raw->size());
        auto rep = edslab::realizability_check(*raw, n);
        emit(Json{{"schema", "eds-lab/1"}, {"realizability", edslab::jsonio::report_json(rep)}});
        return 0;
    }
    EDS eds = in.make_eds();
    Json j{{"schema", "eds-lab/1"}};
    if (pow2_period) {
        auto rep = edslab::pow2_mod_periodicity(eds, mod_exponent, pow2_kmax);
        Json residues = Json::array();
        for (uint64_t r : rep.residues) residues.push_back(r);
        j["pow2_periodicity"] = Json{{"modulus_exponent", rep.modulus_exponent},
                                     {"period_found", rep.period_found},
                                     {"preperiod", rep.preperiod},
                                     {"period", rep.period},
                                     {"residues", residues}};
    }
    auto ws = edslab::nonrealizability_witness(eds, kmax);
    j["realizability"] = edslab::jsonio::witness_json(ws);
    emit(j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact elliptic divisibility sequences, sign prediction, realizability"};
    app.require_subcommand(1);

    SequenceInput gen_in, ana_in, pred_in, curve_in, real_in;
    long long gen_terms = 20, ana_terms = 100, pred_terms = 50, curve_terms = 12;
    long long real_bound = 0;
    int ana_prec = 256, pred_prec = 256;
    int ana_kmax = 6, real_kmax = 6, mod_exponent = 2, pow2_kmax = 20;
    bool gen_json = false, pred_csv = false, pow2_period = false;
    std::string curve_lit, point_lit = "0,0", curve_file;

    auto* generate = app.add_subcommand("generate", "exact terms from an initial quadruple");
    gen_in.add_options(generate);
    generate->add_option("--terms", gen_terms, "number of terms W_1..W_N");
    generate->add_flag("--json", gen_json, "emit JSON instead of plain lines");

    auto* analyze = app.add_subcommand("analyze", "full pipeline: curve, q/u/beta, signs, realizability");
    ana_in.add_options(analyze);
    analyze->add_option("--precision", ana_prec, "mantissa bits (default 256)");
    analyze->add_option("--terms", ana_terms, "sign-verification depth");
    analyze->add_option("--kmax", ana_kmax, "witness search exponent bound");

    auto* predict = app.add_subcommand("predict-signs", "sign prediction table for W_1..W_N");
    pred_in.add_options(predict);
    predict->add_option("--precision", pred_prec, "mantissa bits (default 256)");
    predict->add_option("--terms", pred_terms, "number of rows");
    predict->add_flag("--csv", pred_csv, "emit n,W_n,predicted_sign,actual_sign rows");

    auto* curve = app.add_subcommand("curve", "associated curve data, or denominators of a given pair");
    curve_in.add_options(curve, /*required=*/false);
    curve->add_option("--curve", curve_lit, "Weierstrass coefficients a1,a2,a3,a4,a6");
    curve->add_option("--point", point_lit, "rational point x,y (default 0,0)");
    curve->add_option("--curve-file", curve_file,
                      "JSON file with {\"curve\":{\"a1\"..\"a6\"}, \"point\":[x,y]}");
    curve->add_option("--terms", curve_terms, "denominator count");

    auto* realizable = app.add_subcommand("realizable", "Mobius-convolution realizability testing");
    real_in.add_options(realizable);
    realizable->add_option("--kmax", real_kmax, "witness search exponent bound");
    realizable->add_option("--check-bound", real_bound, "bound for raw-sequence checks");
    realizable->add_flag("--pow2-period", pow2_period, "also report W_{2^k} mod 2^e periodicity");
    realizable->add_option("--mod-exponent", mod_exponent, "e in the modulus 2^e");
    realizable->add_option("--pow2-kmax", pow2_kmax, "k range for the residue map");

    try {
        app.parse(argc, argv);
        if (generate->parsed()) return run_generate(gen_in, gen_terms, gen_json);
        if (analyze->parsed()) return run_analyze(ana_in, ana_prec, ana_terms, ana_kmax);
        if (predict->parsed()) return run_predict(pred_in, pred_prec, pred_terms, pred_csv);
        if (curve->parsed())
            return run_curve(curve_in, curve_lit, point_lit, curve_file, curve_terms);
        if (realizable->parsed())
            return run_realizable(real_in, real_kmax, real_bound, pow2_period, mod_exponent,
                                  pow2_kmax);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const edslab::PrecisionExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const edslab::RecursionFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const edslab::InexactDivision& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const edslab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
