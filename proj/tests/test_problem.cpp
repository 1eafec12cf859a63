#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "acsv/problem.hpp"

using namespace acsv;
namespace fs = std::filesystem;

namespace {

ProblemSpec spec_from(const std::string& text) { return ProblemSpec::from_json(json::parse(text)); }

const char* kDelannoy = R"J({
  "schema_version": 1, "name": "delannoy", "kind": "explicit_gf",
  "variables": ["x", "y"], "combinatorial": true, "directions": ["1:1", "2:1"],
  "payload": {"denominator": "1-x-y-x*y"},
  "expected": [{"quantity": "b0", "value": 0.5726816326471041, "tolerance": 1e-10},
               {"quantity": "minpoly:0", "poly": "x^2+2*x-1"}]
})J";

std::string temp_file(const std::string& name, const std::string& text) {
  auto p = fs::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p.string();
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(ACSV_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("directions parse") {
  CHECK(parse_direction("25:12") == std::vector<long>{25, 12});
  CHECK(parse_direction("3:2:2") == std::vector<long>{3, 2, 2});
  CHECK_THROWS_AS(parse_direction("3:x"), ProblemError);
  CHECK_THROWS_AS(parse_direction(""), ProblemError);
}

TEST_CASE("problem validation") {
  CHECK_NOTHROW(spec_from(kDelannoy));
  CHECK_THROWS_AS(spec_from(R"J({"schema_version": 1, "name": "a", "kind": "bogus", "payload": {}})J"), ProblemError);
  CHECK_THROWS_AS(spec_from(R"J({"schema_version": 99, "name": "a", "kind": "explicit_gf", "payload": {}})J"),
                  ProblemError);
}

TEST_CASE("analyze produces checks and quantities") {
  auto r = analyze(spec_from(kDelannoy));
  REQUIRE(r.directions.size() == 2);
  CHECK(r.directions[0].status == "ok");
  CHECK(r.all_checks_pass());
  CHECK(r.quantities.at("growth") == doctest::Approx(3 + 2 * std::sqrt(2.0)));
  CHECK(r.quantities.count("2:1/b0") == 1);
  CHECK_FALSE(r.directions[0].verification.empty());
}

TEST_CASE("report survives a JSON round trip") {
  auto r = analyze(spec_from(kDelannoy));
  json j = r;
  Report back = j.get<Report>();
  json j2 = back;
  CHECK(j == j2);
  CHECK(j.at("schema_version") == kSchemaVersion);
}

TEST_CASE("refusals are reported per direction") {
  auto p = spec_from(R"J({
    "schema_version": 1, "name": "edge", "kind": "explicit_gf", "variables": ["x", "y", "z"],
    "combinatorial": true, "directions": ["12:6:1"],
    "payload": {"denominator": "(1-x*(1+y))*(1-z*x^2*(1+2*y))",
                "factors": [["1-x*(1+y)", 1], ["1-z*x^2*(1+2*y)", 1]]}})J");
  auto r = analyze(p);
  REQUIRE(r.directions.size() == 1);
  CHECK(r.directions[0].status == "refused");
  CHECK_FALSE(r.directions[0].refusal_kind.empty());
  CHECK(r.any_refusal());
}

TEST_CASE("series table") {
  auto rows = series_table(spec_from(kDelannoy), 4);
  Rational central = 0;
  for (const auto& [idx, v] : rows)
    if (idx == std::vector<long>{2, 2}) central = v;
  CHECK(central == 13);
}

TEST_CASE("every corpus problem loads") {
  int n = 0;
  for (const auto& e : fs::directory_iterator(ACSV_CORPUS_DIR)) {
    if (e.path().extension() != ".json") continue;
    ++n;
    auto p = load_problem(e.path().string());
    CHECK(p.name == e.path().stem().string());
    CHECK_FALSE(p.expected.empty());
  }
  CHECK(n >= 20);
}

TEST_CASE("command line exit codes") {
  auto good = temp_file("acsv_good.json", kDelannoy);
  CHECK(run_cli("analyze " + good) == 0);
  CHECK(run_cli("analyze " + good + " --format text --direction 3:1") == 0);
  CHECK(run_cli("series " + good + " --degree 5") == 0);
  CHECK(run_cli("verify " + good) == 0);
  auto bad = temp_file("acsv_bad.json", R"J({"schema_version": 1, "name": "b", "kind": "explicit_gf",
      "variables": ["x", "y"], "payload": {"denominator": "1-x-*y"}})J");
  CHECK(run_cli("analyze " + bad) == 1);
  CHECK(run_cli("analyze /nonexistent/file.json") == 1);
  auto refused = temp_file("acsv_refused.json", R"J({"schema_version": 1, "name": "r", "kind": "kernel_walk",
      "directions": ["2:1"], "payload": {"steps": [[1, 2], [1, -1]]}})J");
  CHECK(run_cli("analyze " + refused) == 2);
  CHECK(run_cli("corpus --list") == 0);
}
