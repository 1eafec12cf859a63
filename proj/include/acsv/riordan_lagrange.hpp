#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "acsv/gf.hpp"

namespace acsv {

// A univariate analytic function near 0 given by a polynomial, a quotient of
// polynomials, or a branch of an algebraic curve alpha(x, v) = 0.
class SeriesFunc {
 public:
  enum class Kind { Polynomial, Rational, Implicit };

  static SeriesFunc polynomial(const MultiPoly& p);
  static SeriesFunc rational(const MultiPoly& num, const MultiPoly& den);
  // alpha over two variables (x, v); the branch passes through (x0, v0)
  static SeriesFunc implicit(const MultiPoly& alpha, double x0, double v0);
  // parse helpers, variable "x" unless given
  static SeriesFunc parse(const std::string& text, const std::string& var = "x");

  Kind kind() const { return kind_; }
  const std::string& variable() const { return var_; }
  const MultiPoly& numerator() const { return num_; }
  const MultiPoly& denominator() const { return den_; }
  const MultiPoly& alpha() const { return num_; }

  // f, f', f'' at x (implicit branches are continued along the segment from the anchor)
  std::array<cplx, 3> jet(cplx x) const;
  double value(double x) const { return jet(cplx(x, 0)).at(0).real(); }
  cplx value(cplx x) const { return jet(x)[0]; }

  // exact Taylor coefficients 0..N
  std::vector<Rational> series(int N) const;
  // radius of convergence estimate (infinity for polynomials)
  double radius() const;
  std::optional<double> radius_hint;

  // support of the series as x^a g(x^b); b = 1 means aperiodic
  std::pair<int, int> period(int N = 60) const;
  // lowest exponent with a nonzero coefficient
  int order_at_zero() const;

 private:
  Kind kind_ = Kind::Polynomial;
  std::string var_ = "x";
  MultiPoly num_, den_;
  double x0_ = 0, v0_ = 0;
};

double mu(const SeriesFunc& v, double x);
double sigma2(const SeriesFunc& v, double x);
cplx mu(const SeriesFunc& v, cplx x);
cplx sigma2(const SeriesFunc& v, cplx x);

// unique positive x with mu(v; x) = lambda
double solve_mu(const SeriesFunc& v, double lambda);

// a_rs = [x^r] phi v^s along r/s fixed; term indexed by (r, s)
AsymptoticTerm riordan_leading_term(const SeriesFunc& phi, const SeriesFunc& v, long r, long s);

// [z^n] psi(f) where f = z phi(f); term indexed by (n)
AsymptoticTerm lagrange_univariate(const SeriesFunc& phi, const SeriesFunc& psi, long n);
// [z^n] f^k; term indexed by (n, k), valid along k/n fixed
AsymptoticTerm lagrange_power(const SeriesFunc& phi, long n, long k);
// exact [z^n] psi(f), coefficients 0..N
std::vector<Rational> lagrange_series(const SeriesFunc& phi, const SeriesFunc& psi, int N);
// root y0 of y phi'(y) = phi(y)
double lagrange_point(const SeriesFunc& phi);

enum class SchemaKind { Sequences, Sets };
double schema_constant(const SeriesFunc& phi, SchemaKind kind);

struct EliminationCheck {
  double residual = 0;
  bool pass = false;
};
// |poly(value)| / scale; scale <= 0 uses the sum of |c_k value^k|
EliminationCheck verify_elimination_polynomial(double value, const MultiPoly& poly, double scale = 0);

enum class Slicing { LastVariable, Simplex };

struct WllnResult {
  double x0 = 0;                 // smallest positive root of the specialized denominator
  std::vector<cplx> point;       // the point (1,...,x0,...,1) or (x0,...,x0)
  std::vector<double> mean;      // grad_log H at the point, free coordinate scaled to 1 (simplex: sum 1)
  double dominance_ratio = 0;    // min |other root| / x0
};

// free_index selects the unspecialized variable for LastVariable (default: last)
WllnResult wlln_mean(const RationalGF& F, Slicing slicing, int free_index = -1);
// (s - mu(v;1) r)^2 / sigma^2(v;1)
double riordan_B(const SeriesFunc& v, double r, double s);

}  // namespace acsv
