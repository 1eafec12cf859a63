#pragma once

#include <gmpxx.h>

#include <complex>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace acsv {

using Rational = mpq_class;
using Integer = mpz_class;
using cplx = std::complex<double>;
using Exponent = std::vector<int>;

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

struct VariableMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct EvalError : std::domain_error {
  using std::domain_error::domain_error;
};

// Sparse polynomial with exact rational coefficients. Terms are kept in a
// map keyed by exponent vector, zero coefficients are never stored.
class MultiPoly {
 public:
  using TermMap = std::map<Exponent, Rational>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> vars);

  static MultiPoly constant(const std::vector<std::string>& vars, const Rational& c);
  static MultiPoly variable(const std::vector<std::string>& vars, const std::string& name);
  static MultiPoly variable(const std::vector<std::string>& vars, std::size_t index);
  static MultiPoly monomial(const std::vector<std::string>& vars, const Exponent& e,
                            const Rational& c = 1);

  const std::vector<std::string>& variables() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Exponent& e) const;
  std::size_t index_of(const std::string& name) const;

  int degree(std::size_t var) const;
  int min_degree(std::size_t var) const;
  int total_degree() const;
  int order() const;  // lowest total degree, -1 for zero

  void add_term(const Exponent& e, const Rational& c);

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  bool operator==(const MultiPoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  MultiPoly derivative(std::size_t var) const;
  MultiPoly derivative(const std::string& var) const { return derivative(index_of(var)); }

  Rational eval(const std::vector<Rational>& pt) const;
  double eval(const std::vector<double>& pt) const;
  cplx eval(const std::vector<cplx>& pt) const;
  // sum of |c| |z|^e, used as a magnitude scale for residual tests
  double abs_scale(const std::vector<cplx>& pt) const;

  MultiPoly substitute(std::size_t var, const MultiPoly& value) const;
  MultiPoly specialize(std::size_t var, const Rational& value) const;
  MultiPoly truncate(int total_degree) const;
  MultiPoly homogeneous_part(int k) const;
  // coefficients c_k (with var set to exponent 0) such that p = sum c_k var^k
  std::vector<MultiPoly> coefficients_in(std::size_t var) const;
  // same polynomial over another variable list; every variable actually used must be present
  MultiPoly rename(const std::vector<std::string>& new_vars) const;
  // variables with positive degree
  std::vector<std::size_t> support_variables() const;

  std::string to_string() const;

 private:
  void check_same(const MultiPoly& o) const;
  std::vector<std::string> vars_;
  TermMap terms_;
};

MultiPoly pow(const MultiPoly& p, unsigned k);
// exact quotient a/b; throws std::domain_error when b does not divide a
MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b);
MultiPoly parse_poly(const std::string& text, const std::vector<std::string>& vars);

// fraction-free determinant over the polynomial ring
MultiPoly bareiss_det(std::vector<std::vector<MultiPoly>> m);
MultiPoly sylvester_resultant(const MultiPoly& p, const MultiPoly& q, std::size_t var);
inline MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, std::size_t var) {
  return sylvester_resultant(p, q, var);
}

// ---------------------------------------------------------------- univariate

// dense univariate polynomial, index = power
using UPoly = std::vector<Rational>;

UPoly to_upoly(const MultiPoly& p);  // p must involve at most one variable
MultiPoly from_upoly(const UPoly& u, const std::vector<std::string>& vars, std::size_t var);
void trim(UPoly& u);
int deg(const UPoly& u);
UPoly derivative(const UPoly& u);
Rational eval(const UPoly& u, const Rational& x);
double eval(const UPoly& u, double x);
cplx eval(const UPoly& u, cplx x);
UPoly poly_rem(const UPoly& a, const UPoly& b);
UPoly poly_quo(const UPoly& a, const UPoly& b, UPoly* rem = nullptr);
UPoly poly_gcd(UPoly a, UPoly b);
UPoly squarefree_part(const UPoly& u);
// integer coefficients with content 1 and positive leading coefficient
UPoly primitive_part(const UPoly& u);
std::vector<cplx> complex_roots(const UPoly& u);
std::string upoly_to_string(const UPoly& u, const std::string& var = "x");

struct IsolatingInterval {
  Rational lo, hi;
  bool sign_change = true;
};

struct AlgebraicNumber {
  MultiPoly poly;  // univariate defining polynomial
  IsolatingInterval interval;
  double value = 0.0;
};

std::vector<UPoly> sturm_sequence(const UPoly& p);
// number of distinct real roots in (a, b]
int sturm_count(const std::vector<UPoly>& seq, const Rational& a, const Rational& b);
Rational cauchy_bound(const UPoly& p);
std::vector<IsolatingInterval> isolate_real_roots(const UPoly& p);
std::vector<IsolatingInterval> isolate_real_roots(const MultiPoly& p);
AlgebraicNumber refine_root(const MultiPoly& p, const IsolatingInterval& iv, double tol = 1e-12);
// the irreducible factor of p over Q vanishing at root; primitive, positive leading coefficient
UPoly minimal_polynomial(const UPoly& p, cplx root, double tol = 1e-7);

// --------------------------------------------------------------- expressions

class AnalyticExpr {
 public:
  enum class Kind { Poly, Sum, Product, Quotient, Exp };

  AnalyticExpr() = default;
  AnalyticExpr(const MultiPoly& p);  // NOLINT: implicit on purpose

  static AnalyticExpr sum(std::vector<AnalyticExpr> terms);
  static AnalyticExpr product(std::vector<AnalyticExpr> factors);
  static AnalyticExpr quotient(const AnalyticExpr& num, const AnalyticExpr& den);
  static AnalyticExpr exp(const MultiPoly& arg);

  Kind kind() const;
  const std::vector<std::string>& variables() const;
  const MultiPoly& poly() const;  // Poly and Exp nodes
  const std::vector<AnalyticExpr>& children() const;
  bool is_polynomial() const { return kind() == Kind::Poly; }
  bool valid() const { return node_ != nullptr; }
  bool is_zero() const { return is_polynomial() && poly().is_zero(); }

  AnalyticExpr derivative(std::size_t var) const;
  cplx eval(const std::vector<cplx>& pt) const;
  double eval(const std::vector<double>& pt) const;
  // total-degree Taylor polynomial with exact coefficients
  MultiPoly series(int N) const;
  std::string to_string() const;

  friend AnalyticExpr operator+(const AnalyticExpr& a, const AnalyticExpr& b);
  friend AnalyticExpr operator-(const AnalyticExpr& a, const AnalyticExpr& b);
  friend AnalyticExpr operator*(const AnalyticExpr& a, const AnalyticExpr& b);
  friend AnalyticExpr operator/(const AnalyticExpr& a, const AnalyticExpr& b);

 private:
  struct Node;
  explicit AnalyticExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  cplx eval_raw(const std::vector<cplx>& pt, int depth) const;
  std::vector<MultiPoly> series_parts(int N) const;
  std::shared_ptr<const Node> node_;
};

AnalyticExpr parse_expr(const std::string& text, const std::vector<std::string>& vars);

}  // namespace acsv
