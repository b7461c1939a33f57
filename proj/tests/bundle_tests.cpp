#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "edslab/bundle.hpp"

using edslab::AnalysisBundle;
using edslab::EDS;
using edslab::Json;
using edslab::PrecisionContext;

TEST_CASE("bundle serialization round trips") {
    EDS e = EDS::from_initial(1, 1, -1, 1);
    AnalysisBundle b = edslab::run_analysis(e, PrecisionContext(256), 40);
    REQUIRE(b.curve.has_value());
    REQUIRE(b.analytic.has_value());
    REQUIRE(b.signs.has_value());
    REQUIRE(b.realizability.has_value());
    CHECK(b.signs->checked == 40);
    CHECK(b.signs->matched == 40);
    CHECK(b.realizability->witness->n == 8);

    Json j = edslab::to_json(b);
    CHECK(j.at("schema") == "eds-lab/1");
    AnalysisBundle back = edslab::bundle_from_json(j);
    CHECK(edslab::bundles_equal(b, back));
    // Serialization is deterministic and stable through one more cycle.
    CHECK(edslab::to_json(back).dump() == j.dump());
}

TEST_CASE("singular input yields a partial bundle") {
    EDS sing = EDS::from_initial(1, 2, 3, 4);
    AnalysisBundle b = edslab::run_analysis(sing, PrecisionContext(128), 8);
    CHECK_FALSE(b.nonsingular);
    CHECK(b.disc_w == edslab::BigInt(0));
    CHECK_FALSE(b.curve.has_value());
    CHECK_FALSE(b.analytic.has_value());
    REQUIRE(b.errors.size() == 1);
    CHECK(b.errors[0].first == "curve");
    AnalysisBundle back = edslab::bundle_from_json(edslab::to_json(b));
    CHECK(edslab::bundles_equal(b, back));
}

TEST_CASE("torsion input records the analytic failure but keeps the curve") {
    EDS tor = EDS::from_initial(1, 1, 1, 1);
    AnalysisBundle b = edslab::run_analysis(tor, PrecisionContext(128), 12);
    CHECK(b.nonsingular);
    CHECK(b.curve.has_value());
    CHECK_FALSE(b.analytic.has_value());
    bool analytic_error = false;
    for (const auto& [stage, msg] : b.errors) analytic_error |= stage == "analytic";
    CHECK(analytic_error);
    AnalysisBundle back = edslab::bundle_from_json(edslab::to_json(b));
    CHECK(edslab::bundles_equal(b, back));
}

TEST_CASE("schema gate") {
    Json j{{"schema", "eds-lab/999"}};
    CHECK_THROWS_AS(edslab::bundle_from_json(j), edslab::InvalidInput);
}
