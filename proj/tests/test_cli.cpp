#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "focklab/errors.hpp"
#include "focklab/scenario.hpp"
#include "focklab/verify.hpp"

using namespace focklab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json demo_config() {
  return json::parse(R"({
    "scenarios": [
      {"name": "member-gauss-third", "kind": "membership",
       "params": {"symbol": "exppoly:[1]|[0,0,0.3333333333333333]",
                  "space": {"m": 0, "p": 2, "beta": 1}}},
      {"name": "norm-constant", "kind": "norm",
       "params": {"symbol": "poly:[1]", "space": {"m": 0, "p": 2}}},
      {"name": "vz-matrix", "kind": "matrix",
       "params": {"operator": {"kind": "volterra", "g": "poly:[0,1]"},
                  "space": {"m": 0}, "size": 8}},
      {"name": "regularity-m2", "kind": "regularity",
       "params": {"space": {"m": 2, "p": 2}}}
    ]
  })");
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config validation") {
  CHECK_THROWS_AS(parse_config(json::object()), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"scenarios": [{"kind": "norm"}]})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(
                      R"({"scenarios": [{"name": "a", "kind": "norm"},
                                        {"name": "a", "kind": "norm"}]})")),
                  ConfigError);
  CHECK(parse_config(json::parse(R"({"scenarios": []})")).empty());
}

TEST_CASE("membership scenario reports the verdict") {
  Scenario sc{"member", "membership",
              json::parse(R"({"symbol": "exppoly:[1]|[0,0,0.3333333333333333]",
                              "space": {"m": 0, "p": 2}})")};
  Report rep = run_scenario(sc);
  CHECK(rep.status == "pass");
  CHECK(rep.records.at("verdict").at("status") == "Member");
  CHECK(rep.csv.find("R,log_value,value\n") == 0);
}

TEST_CASE("schatten scenario emits one row per exponent") {
  Scenario sc{"schatten-vz", "schatten",
              json::parse(R"({"operator": {"kind": "volterra", "g": "poly:[0,1]"},
                              "space": {"m": 0}, "p_list": [2.0, 2.5], "size": 200})")};
  Report rep = run_scenario(sc);
  REQUIRE(rep.status == "pass");
  auto rows = rep.records.at("rows");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].at("verdict") == "Divergent");
  CHECK(rows[1].at("verdict") == "Convergent");
}

TEST_CASE("unknown kinds fail without aborting the run") {
  json config = json::parse(R"({
    "scenarios": [
      {"name": "good", "kind": "norm",
       "params": {"symbol": "poly:[1]", "space": {"m": 0, "p": 2}}},
      {"name": "bad", "kind": "mystery", "params": {}}
    ]
  })");
  fs::path dir = fs::temp_directory_path() / "focklab-cli-partial";
  fs::remove_all(dir);
  RunOptions options;
  options.out_dir = dir;
  RunOutcome outcome = run_config(config, options);
  CHECK_FALSE(outcome.ok());
  CHECK(outcome.reports[0].status == "pass");
  CHECK(outcome.reports[1].status == "fail");
  CHECK(!outcome.reports[1].error.empty());
  CHECK(fs::exists(dir / "good" / "report.json"));
  CHECK(fs::exists(dir / "bad" / "report.json"));
  CHECK(fs::exists(dir / "summary.json"));
}

TEST_CASE("empty scenario lists succeed") {
  fs::path dir = fs::temp_directory_path() / "focklab-cli-empty";
  fs::remove_all(dir);
  RunOptions options;
  options.out_dir = dir;
  RunOutcome outcome = run_config(json::parse(R"({"scenarios": []})"), options);
  CHECK(outcome.ok());
  CHECK(outcome.reports.empty());
  CHECK(fs::exists(dir / "summary.json"));
}

TEST_CASE("runs are deterministic byte for byte") {
  json config = demo_config();
  fs::path dir1 = fs::temp_directory_path() / "focklab-cli-det1";
  fs::path dir2 = fs::temp_directory_path() / "focklab-cli-det2";
  fs::remove_all(dir1);
  fs::remove_all(dir2);
  RunOptions o1, o2;
  o1.out_dir = dir1;
  o2.out_dir = dir2;
  o1.jobs = 1;
  o2.jobs = 4;  // worker count must not leak into the artifacts
  RunOutcome r1 = run_config(config, o1);
  RunOutcome r2 = run_config(config, o2);
  CHECK(r1.ok());
  CHECK(r2.ok());
  for (const auto& name : {"member-gauss-third", "vz-matrix", "regularity-m2"}) {
    CHECK(slurp(dir1 / name / "data.csv") == slurp(dir2 / name / "data.csv"));
    CHECK(!slurp(dir1 / name / "data.csv").empty());
  }
  CHECK(slurp(dir1 / "summary.json") == slurp(dir2 / "summary.json"));
}

TEST_CASE("filter narrows the run") {
  fs::path dir = fs::temp_directory_path() / "focklab-cli-filter";
  fs::remove_all(dir);
  RunOptions options;
  options.out_dir = dir;
  options.filter = "norm-constant";
  RunOutcome outcome = run_config(demo_config(), options);
  REQUIRE(outcome.reports.size() == 1);
  CHECK(outcome.reports[0].scenario == "norm-constant");
  CHECK(outcome.reports[0].records.at("value").get<double>() ==
        doctest::Approx(std::sqrt(3.14159265358979)).epsilon(1e-6));
}

TEST_CASE("acceptance reports summarize criteria") {
  std::vector<CriterionResult> results = {{1, "one", true, "", 0.1}, {2, "two", false, "boom", 0.2}};
  Report rep = make_acceptance_report(results);
  CHECK(rep.status == "fail");
  CHECK(rep.csv.find("criterion,title,pass,seconds\n") == 0);
  results[1].pass = true;
  CHECK(make_acceptance_report(results).status == "pass");
}

TEST_CASE("forced failure with zero tolerance") {
  // criterion 7 is cheap enough for a unit test; scale 0 collapses every
  // residual tolerance so the run must fail
  VerifyOptions broken;
  broken.tolerance_scale = 0.0;
  broken.criteria = {7};
  auto results = run_acceptance(broken);
  REQUIRE(results.size() == 1);
  CHECK_FALSE(results[0].pass);

  VerifyOptions fine;
  fine.criteria = {7};
  auto good = run_acceptance(fine);
  REQUIRE(good.size() == 1);
  CHECK(good[0].pass);
}

TEST_CASE("verify-all scenario kind honors criterion subsets") {
  Scenario sc{"verify-subset", "verify-all",
              json::parse(R"({"criteria": [7, 9]})")};
  Report rep = run_scenario(sc);
  CHECK(rep.status == "pass");
  CHECK(rep.records.at("criteria").size() == 2);
}

TEST_CASE("weight checks pick up the order override") {
  // m = 5 forces the Laplacian pinch onto beta = 6; the run must still pass
  VerifyOptions options;
  options.criteria = {8};
  options.m_override = 5;
  auto results = run_acceptance(options);
  REQUIRE(results.size() == 1);
  CHECK(results[0].pass);
}

}  // TEST_SUITE
