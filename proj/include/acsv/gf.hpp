#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "acsv/polycore.hpp"

namespace acsv {

// Typed refusal: the pipeline understood the input but declines to produce a
// number (degenerate point, unknown minimality, direction outside the cone).
struct AnalysisRefusal : std::runtime_error {
  std::string kind;
  AnalysisRefusal(std::string k, const std::string& msg) : std::runtime_error(msg), kind(std::move(k)) {}
};

struct RationalGF {
  AnalyticExpr numerator;
  AnalyticExpr denominator;
  std::vector<std::string> variables;
  bool combinatorial = false;
  // H = unit * prod H_k^{n_k}; empty means "treat H as a single factor"
  std::vector<std::pair<MultiPoly, int>> factors;
  // a numerator supplied as a plain number at the contributing point, used when
  // only G(z) is known (the series oracle is unavailable then)
  std::optional<double> numerator_value;

  static RationalGF from_strings(const std::string& num, const std::string& den,
                                 const std::vector<std::string>& vars, bool combinatorial = false);

  std::size_t dim() const { return variables.size(); }
  // the factor list, defaulting to {(H,1)} when H is polynomial
  std::vector<std::pair<MultiPoly, int>> sheet_factors() const;
  // product of factors equals the denominator up to a constant unit, checked as series to degree N
  void check_factors(int N = 20) const;
  cplx numerator_at(const std::vector<cplx>& z) const;
};

struct Direction {
  std::vector<long> r;
  static Direction make(std::vector<long> r);  // reduces by gcd, requires positive entries
  std::size_t dim() const { return r.size(); }
  std::vector<double> unit() const;  // r / |r|_1
  std::string to_string() const;
};

enum class PointClass { Smooth, Multiple, Bad, Unclassified };
enum class Minimality { StrictlyMinimal, Minimal, NotMinimal, Unknown };

std::string to_string(PointClass c);
std::string to_string(Minimality m);

struct CriticalPoint {
  std::vector<cplx> z;
  std::vector<std::optional<AlgebraicNumber>> exact;  // per coordinate, when certified
  PointClass classification = PointClass::Unclassified;
  std::vector<int> sheets;  // factor indices vanishing at z
  Minimality minimal = Minimality::Unknown;
  bool minimality_heuristic = false;
  double height = 0.0;
  double residual = 0.0;
  std::vector<std::string> notes;

  bool is_real(double tol = 1e-10) const;
  bool is_positive(double tol = 1e-10) const;
  std::vector<double> real() const;
};

struct TermComponent {
  std::vector<cplx> point;  // z, the term carries z^{-r}
  cplx b0;
};

struct AsymptoticTerm {
  std::vector<TermComponent> components;
  std::vector<CriticalPoint> points;
  Rational order_exponent = 0;
  int normalizing_index = -1;  // coordinate whose power order_exponent multiplies; -1 for none
  std::string periodicity = "aperiodic";
  std::string uniformity_note;
  std::string formula;
  std::vector<std::string> warnings;

  double evaluate(const std::vector<long>& r) const;
  // b0 of the principal (positive real) component
  double leading_constant() const;
  // per-coordinate exponential bases 1/|z_i| of the principal component
  std::vector<double> bases() const;
};

double evaluate_term(const AsymptoticTerm& term, const std::vector<long>& r);

}  // namespace acsv
