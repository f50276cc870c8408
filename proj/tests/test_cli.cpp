#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "orient/cli.hpp"
#include "orient/report_json.hpp"

using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "orient");
    std::ostringstream out, err;
    const int code = orient::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(ORIENT_TEST_DATA) + "/" + name; }

} // namespace

TEST_CASE("exact on the triangle") {
    Result r = run({"exact", "--graph", data("triangle.edges"), "--source", "0", "--target", "1"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(std::abs(j["prob"].get<double>() - 0.625) <= 1e-12);
    CHECK(j["method"] == "recursion");

    Result e = run({"exact", "--graph", data("triangle.edges"), "--source", "0", "--target", "1,2", "--method",
                    "enumeration"});
    REQUIRE(e.code == 0);
    CHECK(std::abs(json::parse(e.out)["prob"].get<double>() - 0.5) <= 1e-12);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"exact", "--graph", data("triangle.edges"), "--source", "0"}).code == 2);
    CHECK(run({"exact", "--graph", data("triangle.edges"), "--complete", "3", "--source", "0", "--target", "1"}).code ==
          2);
    CHECK(run({"mc", "--graph", data("triangle.edges"), "--source", "0", "--target", "1", "--samples", "100"}).code ==
          2);
    CHECK(run({"verify-t1", "--complete", "3", "--mode", "sideways"}).code == 2);
}

TEST_CASE("input errors exit with 3") {
    Result missing = run({"exact", "--graph", data("no_such.edges"), "--source", "0", "--target", "1"});
    CHECK(missing.code == 3);
    Result loop = run({"exact", "--graph", data("self_loop.edges"), "--source", "0", "--target", "1"});
    CHECK(loop.code == 3);
    CHECK(loop.err.find("line 2") != std::string::npos);
    CHECK(run({"exact", "--graph", data("triangle.edges"), "--source", "0", "--target", "9"}).code == 3);
    CHECK(run({"verify-t1", "--random", "n=4,x=2", "--seed", "1"}).code == 3);
}

TEST_CASE("caps and budgets exit with 4") {
    CHECK(run({"exact", "--complete", "6", "--source", "0", "--target", "5", "--method", "enumeration", "--enum-cap",
               "10"})
              .code == 4);
    CHECK(run({"exact", "--complete", "6", "--source", "0", "--target", "5", "--memo-cap", "2"}).code == 4);
    Result w = run({"witness", "--width", "2", "--height", "1", "--a", "0,0", "--b", "1,0", "--attempts", "500",
                    "--seed", "3"});
    CHECK(w.code == 4);
    CHECK(json::parse(w.out)["found"] == false);
}

TEST_CASE("verification commands succeed on valid inputs") {
    Result t1 = run({"verify-t1", "--random", "n=5,m=8", "--trials", "20", "--seed", "7"});
    REQUIRE(t1.code == 0);
    json j = json::parse(t1.out);
    CHECK(j["instances_checked"].get<int>() > 0);
    CHECK(j["min_slack"].get<double>() >= -1e-9);
    CHECK(j["violations"].empty());

    CHECK(run({"verify-t2", "--graph", data("diamond.edges"), "--max-size", "2"}).code == 0);
    CHECK(run({"fourfunc", "--graph", data("diamond.edges"), "--source", "0", "--target", "1,3"}).code == 0);
    CHECK(run({"mcdiarmid", "--graph", data("diamond.edges")}).code == 0);

    Result al = run({"alm-linusson", "--n", "3"});
    REQUIRE(al.code == 0);
}

TEST_CASE("verification report JSON round-trips") {
    Result r = run({"verify-t1", "--graph", data("diamond.edges")});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    json again = orient::to_json(orient::verification_report_from_json(j));
    for (const char* key : {"instances_checked", "min_slack", "worst_instance", "violations", "violation_count"}) {
        CHECK(again[key] == j[key]);
    }
}

TEST_CASE("seeded output is reproducible across runs") {
    const std::vector<std::string> args{"mc",        "--graph", data("triangle.edges"), "--source", "0",
                                        "--target",  "1",       "--samples",            "20000",    "--seed",
                                        "11",        "--streams", "4"};
    Result a = run(args), b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);

    const std::vector<std::string> grid{"grid-stats", "--width", "5", "--height", "4", "--bias", "0,0.5,1",
                                        "--samples",  "500",     "--seed", "2"};
    Result g1 = run(grid), g2 = run(grid);
    REQUIRE(g1.code == 0);
    CHECK(g1.out == g2.out);
    CHECK(g1.out.rfind("p,width,height,samples,seed,mean_reach,max_reach,mean_radius,max_radius,boundary_frac\n", 0) ==
          0);
    CHECK(std::count(g1.out.begin(), g1.out.end(), '\n') == 4);
}

TEST_CASE("--output writes the report to a file") {
    const auto path = std::filesystem::temp_directory_path() / "orient_cli_output.json";
    Result r = run({"exact", "--complete", "4", "--source", "0", "--target", "3", "--output", path.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    json j = json::parse(in);
    CHECK(j["prob"].get<double>() > 0.0);
    in.close();
    std::filesystem::remove(path);
}
