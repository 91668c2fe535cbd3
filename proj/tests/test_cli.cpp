#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dispatch.hpp"

using notrade::cli_dispatch;
using nlohmann::json;

namespace {

struct CliResult {
    int status = 0;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    CliResult result;
    result.status = cli_dispatch(args, out, err);
    result.out = out.str();
    result.err = err.str();
    return result;
}

std::string fixture_path(const std::string& name) {
    return std::string(NOTRADE_FIXTURE_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("check reports the four verdicts for the first example") {
    CliResult r = run({"check", "--model", "e1", "--security", "X", "--state", "w1"});
    REQUIRE(r.status == 0);
    json doc = json::parse(r.out);
    CHECK(doc["command"] == "check");
    CHECK(doc["exit_status"] == 0);
    CHECK(doc["result"]["verifiable"]["holds"] == false);
    CHECK(doc["result"]["maxmin"]["holds"] == false);
    CHECK(doc["result"]["threshold"]["holds"] == false);
    CHECK(doc["result"]["collective"]["holds"] == true);
}

TEST_CASE("trade prints the first example's constant expectations") {
    CliResult r = run({"trade", "--model", "e1", "--security", "X", "--state", "w1"});
    REQUIRE(r.status == 0);
    json doc = json::parse(r.out);
    CHECK(doc["result"]["trade"]["found"] == true);
    CHECK(doc["result"]["trade"]["expectations"]["1"] == "-1/3");
    CHECK(doc["result"]["trade"]["expectations"]["2"] == "1/3");
}

TEST_CASE("dynamics reproduces the printed transcript of the second example") {
    CliResult r = run({"dynamics", "--model", "e2", "--security", "X", "--state", "w1",
                       "--order", "1,2"});
    REQUIRE(r.status == 0);
    json doc = json::parse(r.out);
    const json& result = doc["result"];
    CHECK(result["rounds"][0]["agent"] == "1");
    CHECK(result["rounds"][0]["announcement"] == "-1/3");
    CHECK(result["rounds"][1]["agent"] == "2");
    CHECK(result["rounds"][1]["announcement"] == "1/3");
    CHECK(result["t_star"] == 2);
    CHECK(result["agree"] == false);
}

TEST_CASE("market aggregates at w5 and exports a csv price path") {
    CliResult r = run({"market", "--model", "e2", "--security", "X", "--state", "w5"});
    REQUIRE(r.status == 0);
    json doc = json::parse(r.out);
    CHECK(doc["result"]["aggregated"] == true);
    CHECK(doc["result"]["rounds"][0]["price"] == "5");

    CliResult csv = run({"market", "--model", "e2", "--security", "X", "--state", "w5",
                         "--format", "csv"});
    REQUIRE(csv.status == 0);
    CHECK(csv.out.rfind("t,agent,price,payoff\n", 0) == 0);
    CHECK(csv.out.find("1,1,5,") != std::string::npos);
}

TEST_CASE("theorem enumerates exhaustively and passes") {
    CliResult r = run({"theorem", "--states", "3", "--agents", "2"});
    REQUIRE(r.status == 0);
    json doc = json::parse(r.out);
    CHECK(doc["result"]["instances"] == 25);
    CHECK(doc["result"]["holds"] == true);
    CHECK(doc["exit_status"] == 0);
}

TEST_CASE("proposition judges the example bundle in single-model mode") {
    CliResult r = run({"proposition", "--model", "e1", "--bundle", "split0", "--state", "w2"});
    REQUIRE(r.status == 0);
    json doc = json::parse(r.out);
    CHECK(doc["result"]["holds"] == true);
    CHECK(doc["result"]["trade_possible"] == true);
}

TEST_CASE("oracle search hits on the first example and reports priors") {
    CliResult r = run({"oracle", "--model", "e1", "--security", "X", "--state", "w1",
                       "--samples", "50", "--seed", "7"});
    REQUIRE(r.status == 0);
    json doc = json::parse(r.out);
    CHECK(doc["result"]["possible"] == true);
    CHECK(doc["result"]["search"]["found"] == true);
    CHECK(doc["result"]["search"]["trade"]["found"] == true);
}

TEST_CASE("synthesize prints the regression priors exactly") {
    CliResult r = run({"synthesize", "--model", "e1", "--security", "X", "--state", "w1"});
    REQUIRE(r.status == 0);
    json doc = json::parse(r.out);
    CHECK(doc["result"]["priors"]["1"]["w1"] == "1/6");
    CHECK(doc["result"]["priors"]["1"]["w2"] == "1/3");
    CHECK(doc["result"]["priors"]["2"]["w1"] == "1/3");
    CHECK(doc["result"]["targets"]["1"] == "-1/3");
    CHECK(doc["result"]["targets"]["2"] == "1/3");
}

TEST_CASE("multi reports bundle tradability and profits") {
    CliResult r = run({"multi", "--model", "e1", "--bundle", "split0", "--state", "w1"});
    REQUIRE(r.status == 0);
    json doc = json::parse(r.out);
    CHECK(doc["result"]["tradable"] == true);
    CHECK(doc["result"]["trade"]["profits"]["1"] == "1/3");
    CHECK(doc["result"]["trade"]["profits"]["2"] == "1/3");
}

TEST_CASE("model files load through the same paths as the built-ins") {
    CliResult r = run({"check", "--model", fixture_path("e2.json"), "--state", "w5"});
    REQUIRE(r.status == 0);
    json doc = json::parse(r.out);
    CHECK(doc["result"]["maxmin"]["holds"] == true);
    CHECK(doc["result"]["threshold"]["holds"] == true);
}

TEST_CASE("identical invocations produce byte-identical reports") {
    std::vector<std::string> args{"dynamics", "--model", "e2", "--security", "X",
                                  "--state", "w1"};
    CliResult first = run(args);
    CliResult second = run(args);
    CHECK(first.status == 0);
    CHECK(first.out == second.out);
}

TEST_CASE("usage problems and bad inputs exit with status 2") {
    CHECK(run({}).status == 2);
    CHECK(run({"conjure"}).status == 2);
    CHECK(run({"check", "--model", "e1", "--state", "w1", "--wat"}).status == 2);
    CHECK(run({"check", "--model", "e1", "--security", "Z", "--state", "w1"}).status == 2);
    CHECK(run({"check", "--model", "e1", "--security", "X", "--state", "zz"}).status == 2);
    CHECK(run({"check", "--model", "e1", "--security", "X", "--state", "w1", "--format",
               "yaml"})
              .status == 2);
    CHECK(run({"market", "--model", "e1", "--security", "X", "--state", "w1", "--y0", "7"})
              .status == 2);
    CHECK(run({"dynamics", "--model", "e1", "--security", "X", "--state", "w1", "--order",
               "1,1"})
              .status == 2);
    CliResult missing = run({"trade", "--model", "/no/such/file.json", "--state", "w1"});
    CHECK(missing.status == 2);
    CHECK(missing.err.find("io-error") != std::string::npos);

    CliResult help = run({"--help"});
    CHECK(help.status == 0);
    CHECK(help.out.find("Subcommands") != std::string::npos);
}
