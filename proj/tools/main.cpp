#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "acsv/problem.hpp"

namespace fs = std::filesystem;
using namespace acsv;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kRefused = 2;

struct Common {
  std::string problem;
  std::string direction;
  int order = 0;
  double tol = 0;
  std::string backend;
  long max_n = 0;
  std::string out;
  std::string format = "json";
};

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw ProblemError("cannot write " + c.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

AnalyzeOptions options_from(const Common& c) {
  AnalyzeOptions o;
  if (!c.direction.empty()) o.direction = parse_direction(c.direction);
  if (!c.backend.empty()) o.backend = c.backend;
  o.max_n = c.max_n;
  o.order = c.order;
  o.tol = c.tol;
  return o;
}

int cmd_analyze(const Common& c) {
  auto spec = load_problem(c.problem);
  Report r = analyze(spec, options_from(c));
  if (c.format == "text") {
    emit(c, report_text(r));
  } else {
    json j = r;
    emit(c, j.dump(2));
  }
  return r.any_refusal() ? kRefused : kOk;
}

int cmd_series(const Common& c) {
  auto spec = load_problem(c.problem);
  const int degree = c.order > 0 ? c.order : 10;
  auto rows = series_table(spec, degree);
  if (c.format == "text") {
    std::ostringstream os;
    for (const auto& [idx, v] : rows) {
      for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? " " : "") << idx[i];
      os << "\t" << v.get_str() << "\n";
    }
    emit(c, os.str());
  } else {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["name"] = spec.name;
    j["degree"] = degree;
    json coeffs = json::array();
    for (const auto& [idx, v] : rows) coeffs.push_back({{"index", idx}, {"value", v.get_str()}});
    j["coefficients"] = coeffs;
    emit(c, j.dump(2));
  }
  return kOk;
}

int cmd_verify(const Common& c) {
  auto spec = load_problem(c.problem);
  auto opts = options_from(c);
  opts.checks = false;
  Report r = analyze(spec, opts);
  json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = spec.name;
  json curves = json::array();
  std::ostringstream text;
  for (const auto& d : r.directions) {
    json rows = json::array();
    text << spec.name << " direction";
    for (long x : d.direction) text << " " << x;
    text << ": " << d.status << "\n";
    if (d.status != "ok") text << "  " << d.refusal_kind << ": " << d.refusal_message << "\n";
    for (const auto& v : d.verification) {
      rows.push_back({{"n", v.n}, {"index", v.index}, {"exact", v.exact}, {"approx", v.approx}, {"rel_error", v.rel_error}, {"zero", v.zero}});
      text << "  n=" << v.n << " exact=" << v.exact_value << " approx=" << v.approx << " rel_error=" << v.rel_error << "\n";
    }
    json cj{{"direction", d.direction}, {"status", d.status}, {"rows", rows}};
    if (d.status != "ok") cj["refusal"] = {{"kind", d.refusal_kind}, {"message", d.refusal_message}};
    curves.push_back(cj);
  }
  j["curves"] = curves;
  emit(c, c.format == "text" ? text.str() : j.dump(2));
  return r.any_refusal() ? kRefused : kOk;
}

std::vector<fs::path> corpus_files(const std::string& dir) {
  std::vector<fs::path> files;
  if (!fs::is_directory(dir)) throw ProblemError("corpus directory not found: " + dir);
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  return files;
}

int cmd_corpus(const Common& c, const std::string& dir, const std::string& only, bool list) {
  auto files = corpus_files(dir);
  if (list) {
    std::ostringstream os;
    for (const auto& f : files) os << load_problem(f.string()).name << "\n";
    emit(c, os.str());
    return kOk;
  }
  json summary = json::array();
  std::ostringstream text;
  int total = 0, passed = 0;
  for (const auto& f : files) {
    if (!only.empty() && f.stem().string() != only) continue;
    ++total;
    json entry{{"name", f.stem().string()}};
    bool ok = false;
    try {
      auto spec = load_problem(f.string());
      AnalyzeOptions o;
      o.verify = false;
      Report r = analyze(spec, o);
      ok = r.all_checks_pass() && !r.checks.empty();
      json checks = json::array();
      for (const auto& ch : r.checks) {
        checks.push_back({{"quantity", ch.quantity}, {"expected", ch.expected}, {"actual", ch.actual}, {"pass", ch.pass}});
        text << "  " << (ch.pass ? "ok  " : "FAIL") << " " << spec.name << " " << ch.quantity << " = " << ch.actual
             << " (expected " << ch.expected << ")\n";
      }
      entry["checks"] = checks;
    } catch (const std::exception& e) {
      entry["error"] = e.what();
      text << "  FAIL " << f.stem().string() << ": " << e.what() << "\n";
    }
    entry["pass"] = ok;
    passed += ok;
    summary.push_back(entry);
  }
  if (!only.empty() && total == 0) throw ProblemError("no problem named " + only);
  text << passed << "/" << total << " problems pass\n";
  json j{{"schema_version", kSchemaVersion}, {"passed", passed}, {"total", total}, {"problems", summary}};
  if (c.format == "text" || c.out.empty()) std::cout << text.str();
  if (!c.out.empty()) emit(c, c.format == "text" ? text.str() : j.dump(2));
  return passed == total ? kOk : kInputError;
}

void add_common(CLI::App* sub, Common& c, bool needs_problem) {
  if (needs_problem) sub->add_option("problem", c.problem, "problem file (JSON)")->required()->check(CLI::ExistingFile);
  sub->add_option("--direction", c.direction, "direction r:s[:t]");
  sub->add_option("--order", c.order, "number of terms (series: degree)");
  sub->add_option("--tol", c.tol, "flag verification rows above this relative error");
  sub->add_option("--backend", c.backend, "critical point backend")->check(CLI::IsMember({"exact", "numeric"}));
  sub->add_option("--max-n", c.max_n, "largest coordinate used for verification");
  sub->add_option("--out", c.out, "output file");
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "text"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coefficient asymptotics for multivariate generating functions"};
  app.require_subcommand(1);
  Common c;
  std::string corpus_dir = ACSV_CORPUS_DIR, only;
  bool list = false;

  auto* analyze_cmd = app.add_subcommand("analyze", "locate contributing points and compute the leading term");
  add_common(analyze_cmd, c, true);
  auto* series_cmd = app.add_subcommand("series", "exact coefficient table");
  add_common(series_cmd, c, true);
  series_cmd->add_option("--degree", c.order, "total degree (same as --order)");
  auto* verify_cmd = app.add_subcommand("verify", "relative error of the leading term against exact coefficients");
  add_common(verify_cmd, c, true);
  auto* corpus_cmd = app.add_subcommand("corpus", "run the bundled examples and their expected values");
  add_common(corpus_cmd, c, false);
  corpus_cmd->add_option("--dir", corpus_dir, "corpus directory");
  corpus_cmd->add_option("--only", only, "run a single problem by name");
  corpus_cmd->add_flag("--list", list, "list problem names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(c);
    if (*series_cmd) return cmd_series(c);
    if (*verify_cmd) return cmd_verify(c);
    if (*corpus_cmd) return cmd_corpus(c, corpus_dir, only, list);
  } catch (const AnalysisRefusal& e) {
    std::cerr << "refused [" << e.kind << "]: " << e.what() << "\n";
    return kRefused;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
