#include <pybind11/pybind11.h>
#include <pybind11/complex.h>
#include <pybind11/stl.h>

#include "acsv/asymptotics.hpp"
#include "acsv/kernel.hpp"
#include "acsv/problem.hpp"
#include "acsv/series_oracle.hpp"
#include "acsv/transfer.hpp"

namespace py = pybind11;
using namespace acsv;

namespace {

// JSON crosses the boundary as text; the Python side decodes it
std::string analyze_text(const std::string& problem, const std::optional<std::string>& direction,
                         const std::optional<std::string>& backend, long max_n, bool verify) {
  AnalyzeOptions o;
  if (direction) o.direction = parse_direction(*direction);
  o.backend = backend;
  o.max_n = max_n;
  o.verify = verify;
  json j = analyze(ProblemSpec::from_json(json::parse(problem)), o);
  return j.dump();
}

std::vector<std::pair<std::vector<long>, std::string>> series_text(const std::string& problem, int degree) {
  std::vector<std::pair<std::vector<long>, std::string>> out;
  for (const auto& [idx, v] : series_table(ProblemSpec::from_json(json::parse(problem)), degree))
    out.push_back({idx, v.get_str()});
  return out;
}

std::string coefficient_text(const std::string& num, const std::string& den, const std::vector<std::string>& vars,
                             const std::vector<long>& index) {
  return coefficient(RationalGF::from_strings(num, den, vars, false), index).get_str();
}

py::dict term_dict(const std::string& num, const std::string& den, const std::vector<std::string>& vars,
                   const std::vector<long>& direction, bool combinatorial) {
  auto F = RationalGF::from_strings(num, den, vars, combinatorial);
  auto res = leading_term(F, Direction::make(direction));
  py::dict d;
  d["b0"] = res.term.leading_constant();
  d["bases"] = res.term.bases();
  d["order"] = res.term.order_exponent.get_d();
  d["normalizing_index"] = res.term.normalizing_index;
  d["formula"] = res.term.formula;
  std::vector<std::vector<std::complex<double>>> pts;
  for (const auto& p : res.term.points) pts.push_back(p.z);
  d["points"] = pts;
  return d;
}

double term_value(const std::string& num, const std::string& den, const std::vector<std::string>& vars,
                  const std::vector<long>& direction, const std::vector<long>& index) {
  auto F = RationalGF::from_strings(num, den, vars, true);
  return leading_term(F, Direction::make(direction)).term.evaluate(index);
}

std::pair<std::string, std::string> connector_text(const std::vector<std::string>& words, int alphabet) {
  auto F = connector_gf(ForbiddenSpec{alphabet, words});
  return {F.numerator.to_string(), F.denominator.to_string()};
}

std::string kernel_text(const std::vector<std::tuple<int, int, std::string>>& steps) {
  StepSet E;
  for (const auto& [r, s, w] : steps) E.steps.push_back({r, s, Rational(w)});
  return kernel_poly(E).Q.to_string();
}

}  // namespace

PYBIND11_MODULE(_acsv, m) {
  m.doc() = "Coefficient asymptotics for multivariate generating functions";
  m.attr("schema_version") = kSchemaVersion;

  py::register_exception<ProblemError>(m, "ProblemError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  static py::exception<AnalysisRefusal> refusal(m, "AnalysisRefusal", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const AnalysisRefusal& e) {
      PyErr_SetObject(refusal.ptr(), py::make_tuple(e.kind, std::string(e.what())).ptr());
    }
  });

  m.def("analyze_json", &analyze_text, py::arg("problem"), py::arg("direction") = std::nullopt,
        py::arg("backend") = std::nullopt, py::arg("max_n") = 0, py::arg("verify") = true);
  m.def("series", &series_text, py::arg("problem"), py::arg("degree") = 10);
  m.def("coefficient", &coefficient_text, py::arg("numerator"), py::arg("denominator"), py::arg("variables"),
        py::arg("index"));
  m.def("leading_term", &term_dict, py::arg("numerator"), py::arg("denominator"), py::arg("variables"),
        py::arg("direction"), py::arg("combinatorial") = true);
  m.def("term_value", &term_value, py::arg("numerator"), py::arg("denominator"), py::arg("variables"),
        py::arg("direction"), py::arg("index"));
  m.def("connector_gf", &connector_text, py::arg("words"), py::arg("alphabet") = 2);
  m.def("kernel_poly", &kernel_text, py::arg("steps"));
}
