#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(EDS_LAB_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("generate reproduces the first worked sequence") {
    auto r = run("generate --initial 1,1,-1,1 --terms 20 --json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j.at("schema") == "eds-lab/1");
    CHECK(j.at("terms").size() == 20);
    CHECK(j.at("terms")[19] == "-16264");
    CHECK(j.at("terms")[14] == "-314");
}

TEST_CASE("generate rejects a non-sequence quadruple with exit 2") {
    auto r = run("generate --initial 1,2,1,1");
    CHECK(r.exit_code == 2);
}

TEST_CASE("analyze emits the full bundle") {
    auto r = run("analyze --initial 1,2,2,-2 --terms 15 --precision 256");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j.at("analytic").at("case") == "identity-component");
    CHECK(j.at("analytic").at("flip") == 1);
    CHECK(j.at("signs").at("match_pct") == 100.0);
    CHECK(j.at("realizability").at("verdict") == "not-realizable");
    CHECK(j.at("eds").at("terms")[14] == "218738737152");
}

TEST_CASE("analyze on singular input reports a partial bundle, exit 0") {
    auto r = run("analyze --initial 1,2,3,4 --terms 6");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j.at("eds").at("disc_w") == "0");
    CHECK_FALSE(j.contains("analytic"));
    CHECK(j.contains("errors"));
}

TEST_CASE("predict-signs csv shape") {
    auto r = run("predict-signs --initial 1,1,1,-1 --terms 12 --csv");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.rfind("n,W_n,predicted_sign,actual_sign\n", 0) == 0);
    CHECK(r.output.find("\n5,-2,-1,-1\n") != std::string::npos);
}

TEST_CASE("curve association and denominator modes") {
    auto r = run("curve --initial 1,1,-1,1");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j.at("curve").at("A") == "-1296");
    CHECK(j.at("curve").at("B") == "11664");

    auto r2 = run("curve --curve 0,0,1,-1,0 --point 0,0 --terms 10");
    REQUIRE(r2.exit_code == 0);
    auto j2 = nlohmann::json::parse(r2.output);
    CHECK(j2.at("denominators")[4] == "2");
    CHECK(j2.at("signed_sequence")[7] == "-5");

    // Singular-reduction pair: sign rule must fail with exit 4.
    auto r3 = run("curve --curve 0,28,27,27,0 --point 0,0 --terms 12");
    CHECK(r3.exit_code == 4);
}

TEST_CASE("realizable on sequence files and flags") {
    std::ofstream f("/tmp/lucas_cli.json");
    f << "{\"terms\":[\"1\",\"3\",\"4\",\"7\",\"11\",\"18\",\"29\",\"47\",\"76\",\"123\","
         "\"199\",\"322\",\"521\",\"843\",\"1364\",\"2207\",\"3571\",\"5778\",\"9349\",\"15127\"]}";
    f.close();
    auto r = run("realizable --sequence-file /tmp/lucas_cli.json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j.at("realizability").at("verdict") == "realizable-up-to-bound");

    auto r2 = run("realizable --initial 1,1,-1,1 --kmax 6");
    REQUIRE(r2.exit_code == 0);
    auto j2 = nlohmann::json::parse(r2.output);
    CHECK(j2.at("realizability").at("witnesses")[0].at("n") == 8);

    // Even W_2 with the periodicity flag: hypothesis gate, exit 2.
    auto r3 = run("realizable --initial 1,2,2,-2 --pow2-period");
    CHECK(r3.exit_code == 2);
}

TEST_CASE("curve file input") {
    std::ofstream f("/tmp/e43_cli.json");
    f << "{\"curve\":{\"a1\":\"0\",\"a2\":\"1\",\"a3\":\"1\",\"a4\":\"0\","
         "\"a6\":\"0\"},\"point\":[\"0\",\"0\"]}";
    f.close();
    auto r = run("curve --curve-file /tmp/e43_cli.json --terms 10");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j.at("signed_sequence")[9] == "20");
    CHECK(j.at("denominators")[7] == "7");
}

TEST_CASE("sequence file input for generate") {
    std::ofstream f("/tmp/eds_cli_init.json");
    f << "{\"initial\":[\"1\",\"1\",\"2\",\"1\"]}";
    f.close();
    auto r = run("generate --sequence-file /tmp/eds_cli_init.json --terms 20 --json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j.at("terms")[19] == "503020937289311");
}

TEST_CASE("deterministic output") {
    auto a = run("analyze --initial 1,1,-1,1 --terms 30");
    auto b = run("analyze --initial 1,1,-1,1 --terms 30");
    CHECK(a.output == b.output);
}

TEST_CASE("bad flags exit 2, help exits 0") {
    CHECK(run("generate").exit_code == 2);
    CHECK(run("frobnicate --x").exit_code == 2);
    CHECK(run("--help").exit_code == 0);
}
