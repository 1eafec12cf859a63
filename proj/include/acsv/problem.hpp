#pragma once

#include "json.hpp"
#include <optional>
#include <string>
#include <vector>

#include "acsv/gf.hpp"

namespace acsv {

constexpr int kSchemaVersion = 1;

using json = nlohmann::json;

// A problem file failed validation (bad kind, malformed polynomial, ...)
struct ProblemError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Expectation {
  std::string quantity;
  std::optional<double> value;
  double tolerance = 0;
  std::optional<double> min, max;
  std::optional<std::string> poly;  // exact polynomial identity (up to a nonzero scalar)
  std::string note;
};

struct ProblemSpec {
  std::string name;
  std::string kind;  // explicit_gf riordan lagrange transfer connector kernel_walk
  std::string description;
  std::vector<std::string> variables;
  bool combinatorial = false;
  std::vector<std::vector<long>> directions;
  std::vector<Expectation> expected;
  json payload;
  std::string backend = "exact";
  long max_n = 0;  // default verification range, 0 = pick per kind

  static ProblemSpec from_json(const json& j);
  json to_json() const;
};

ProblemSpec load_problem(const std::string& path);

// parse "r:s[:t]"
std::vector<long> parse_direction(const std::string& text);

struct VerificationRow {
  long n = 0;
  std::vector<long> index;
  std::string exact;  // exact rational as text, "" when unavailable
  double exact_value = 0;
  double approx = 0;
  double rel_error = 0;
  bool zero = false;
};

struct PointReport {
  std::vector<cplx> z;
  std::vector<std::string> defining_polys;  // per coordinate, "" when not certified
  std::string classification;
  std::string minimality;
  bool heuristic = false;
  double height = 0;
};

struct ComponentReport {
  std::vector<cplx> point;
  cplx b0;
};

struct TermReport {
  std::string order;  // exact rational exponent
  int normalizing_index = -1;
  std::string periodicity;
  std::string formula;
  std::string uniformity;
  std::vector<ComponentReport> components;
  std::vector<double> bases;
  double leading_constant = 0;
};

struct DirectionReport {
  std::vector<long> direction;
  std::string status = "ok";  // ok | refused
  std::string refusal_kind, refusal_message;
  std::vector<PointReport> points;
  std::optional<TermReport> term;
  std::vector<VerificationRow> verification;
  std::vector<std::string> warnings;
};

struct CheckResult {
  std::string quantity;
  std::string expected;  // human readable target
  std::string actual;
  bool pass = false;
  std::string note;
};

struct Report {
  int schema_version = kSchemaVersion;
  std::string name;
  std::string kind;
  std::vector<std::string> variables;
  std::string numerator, denominator;  // when the pipeline produced a rational F
  std::vector<DirectionReport> directions;
  std::map<std::string, double> quantities;
  std::vector<CheckResult> checks;

  bool all_checks_pass() const;
  bool any_refusal() const;
};

void to_json(json& j, const Report& r);
void from_json(const json& j, Report& r);

struct AnalyzeOptions {
  std::optional<std::vector<long>> direction;  // overrides the problem's directions
  std::optional<std::string> backend;
  long max_n = 0;  // 0 = problem default
  int order = 0;   // only the leading term is implemented
  double tol = 0;  // > 0: flag verification rows above this relative error
  bool verify = true;
  bool checks = true;
};

Report analyze(const ProblemSpec& p, const AnalyzeOptions& opts = {});

// exact coefficient table for explicit problems, rows "index -> value"
std::vector<std::pair<std::vector<long>, Rational>> series_table(const ProblemSpec& p, int degree);

// the rational F behind explicit_gf, transfer and connector problems
RationalGF problem_gf(const ProblemSpec& p);

std::string report_text(const Report& r);

}  // namespace acsv
