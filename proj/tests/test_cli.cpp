#include "nefcone/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sstream>

using nefcone::cli::dispatch;
using Json = nlohmann::ordered_json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
    args.insert(args.begin(), "--json");
    const Run r = run(args);
    INFO(r.err);
    return Json::parse(r.out);
}

} // namespace

TEST_CASE("report shape") {
    const Json j = run_json({"nef-check", "--g", "2", "--n", "4", "--a", "3", "--b", "1"});
    for (const char* key : {"command", "inputs", "outputs", "citations", "exact", "passed"}) {
        CHECK(j.contains(key));
    }
    CHECK(j["passed"] == true);
    CHECK(j["exact"] == true);
    CHECK(j["outputs"]["is_nef"] == true);
}

TEST_CASE("nef-check failure exits 1 with a witness") {
    const Run r = run({"--json", "nef-check", "--g", "3", "--n", "4", "--a", "2", "--b", "1"});
    CHECK(r.code == 1);
    const Json j = Json::parse(r.out);
    CHECK(j["outputs"]["witness_intersection"] == "-1/12");
    const Json f = run_json({"nef-check", "--g", "2", "--n", "3", "--a", "1", "--b", "-1/2"});
    CHECK(f["outputs"]["witness_intersection"] == "-1/3");
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"no-such-command"}).code == 2);
    CHECK(run({"nef-check", "--g", "2", "--n", "4", "--a", "x/y", "--b", "1"}).code == 2);
    CHECK(run({"reproduce", "no-such-target"}).code == 2);
    CHECK(run({"theta", "order", "--spec", "{not json"}).code == 2);
}

TEST_CASE("library errors exit 1") {
    const Run r = run({"theta", "certify", "--m-prime", "1/2,0", "--level", "4"});
    CHECK(r.code == 1);
    CHECK(r.err.find("8p^2") != std::string::npos);
}

TEST_CASE("global flags are accepted after the subcommand") {
    CHECK(run({"k-class", "--g", "2", "--n", "5", "--json"}).out.front() == '{');
}

TEST_CASE("output is deterministic") {
    const std::vector<std::string> args = {"--json", "theta", "transform", "--m-prime", "1/2,0", "--level", "4",
                                           "--samples", "5", "--seed", "3"};
    CHECK(run(args).out == run(args).out);
}

TEST_CASE("theta order from a JSON spec") {
    const Json j = run_json({"theta", "order", "--spec",
                             R"({"characteristics": [{"m_prime": ["1/2", 0], "m_dblprime": [0, 0], "p": 1},
                                                     {"m_prime": [0, "1/2"], "p": 1}],
                                 "level": 8, "variable": "T2", "box_radius": 3})"});
    CHECK(j["passed"] == true);
    // 4 q^2 has minimum 0 and 4 (q + 1/2)^2 has minimum 1
    CHECK(j["outputs"]["valuation"] == "1");
    CHECK(j["outputs"]["certified"] == true);
}

TEST_CASE("reproduce targets pass") {
    for (const auto& t : nefcone::cli::reproduce_targets()) {
        const Run r = run({"--json", "reproduce", t});
        INFO(t);
        CHECK(r.code == 0);
        CHECK(Json::parse(r.out)["passed"] == true);
    }
}

TEST_CASE("cusps, strata and fiber types") {
    CHECK(run_json({"cusps", "--g", "2", "--n", "3"})["outputs"]["classes"] == 40);
    CHECK(run_json({"fiber-type", "IIIb", "--n", "4"})["outputs"]["total"] == 48);
    CHECK(run_json({"strata", "--g", "2", "--n", "3"})["outputs"]["strata"][1]["index_set_size"] == 40);
    CHECK(run_json({"shioda", "--n", "3"})["outputs"]["minus_nD"]["fiber_degree"] == "18");
}

TEST_CASE("charts verify") {
    const Json j = run_json({"charts", "--verify"});
    CHECK(j["passed"] == true);
    CHECK(j["outputs"]["checks"].size() == 5);
    CHECK(run_json({"charts", "--g", "2", "--verify"})["passed"] == true);
}

TEST_CASE("human output") {
    const Run r = run({"general-type", "--table"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("general-type: PASS", 0) == 0);
    CHECK(r.out.find("-1/16") != std::string::npos);
    CHECK(run({"--help"}).code == 0);
}
