#include <doctest.h>

#include <stdexcept>

#include <notrade/report.hpp>

using namespace notrade;

TEST_CASE("format names resolve or fail loudly") {
    CHECK(parse_format("json") == ReportFormat::Json);
    CHECK(parse_format("table") == ReportFormat::Table);
    CHECK(parse_format("csv") == ReportFormat::Csv);
    CHECK_THROWS_AS(parse_format("yaml"), std::invalid_argument);
}

TEST_CASE("the digest is the 64-bit FNV-1a of the input bytes") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);  // published test vector
    CHECK(digest_hex("") == "cbf29ce484222325");
    CHECK(digest_hex("abc") == digest_hex("abc"));
    CHECK(digest_hex("abc") != digest_hex("abd"));
}

TEST_CASE("json reports are canonical and stable") {
    Report report;
    report.command = "demo";
    report.inputs_digest = "0123456789abcdef";
    report.body["zeta"] = 1;
    report.body["alpha"] = "x";
    std::string text = emit_report(report, ReportFormat::Json);
    CHECK(text == emit_report(report, ReportFormat::Json));
    // Insertion order survives; keys are not re-sorted behind our back.
    CHECK(text.find("zeta") < text.find("alpha"));
    CHECK(text.find("\"command\": \"demo\"") != std::string::npos);
    CHECK(text.back() == '\n');
}

TEST_CASE("tables flatten nested bodies into aligned rows") {
    Report report;
    report.command = "demo";
    report.inputs_digest = "d";
    report.body["pair"] = Json::array({"u", "v"});
    report.body["flags"]["deep"] = true;
    report.body["none"] = Json::object();
    std::string text = emit_report(report, ReportFormat::Table);
    CHECK(text.find("pair[0]") != std::string::npos);
    CHECK(text.find("flags.deep") != std::string::npos);
    CHECK(text.find("none") != std::string::npos);
    CHECK(text.find("true") != std::string::npos);
}

TEST_CASE("csv export needs a price path and emits one row per round") {
    Report report;
    report.command = "market";
    report.inputs_digest = "d";
    CHECK_THROWS_AS(emit_report(report, ReportFormat::Csv), std::invalid_argument);

    Json round;
    round["t"] = 1;
    round["agent"] = "1";
    round["price"] = "-1/3";
    round["payoff"] = "4/9";
    report.body["rounds"] = Json::array({round});
    std::string text = emit_report(report, ReportFormat::Csv);
    CHECK(text == "t,agent,price,payoff\n1,1,-1/3,4/9\n");

    report.body["rounds"][0].erase("price");
    CHECK_THROWS_AS(emit_report(report, ReportFormat::Csv), std::invalid_argument);
}
