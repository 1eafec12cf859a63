#include "acsv/gf.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace acsv {

RationalGF RationalGF::from_strings(const std::string& num, const std::string& den,
                                    const std::vector<std::string>& vars, bool combinatorial) {
  RationalGF f;
  f.numerator = parse_expr(num, vars);
  f.denominator = parse_expr(den, vars);
  f.variables = vars;
  f.combinatorial = combinatorial;
  return f;
}

std::vector<std::pair<MultiPoly, int>> RationalGF::sheet_factors() const {
  if (!factors.empty()) return factors;
  if (!denominator.is_polynomial()) return {};
  return {{denominator.poly(), 1}};
}

void RationalGF::check_factors(int N) const {
  if (factors.empty()) return;
  MultiPoly prod = MultiPoly::constant(variables, 1);
  for (const auto& [p, n] : factors) {
    if (n < 1) throw std::invalid_argument("factor multiplicity must be positive");
    prod *= pow(p.rename(variables), static_cast<unsigned>(n));
  }
  MultiPoly h = denominator.series(N);
  MultiPoly t = prod.truncate(N);
  Rational c0 = t.constant_term();
  Rational unit;
  if (c0 != 0) {
    unit = h.constant_term() / c0;
  } else {
    // not a power series at 0 (only usable with an explicit point), compare exactly
    if (!denominator.is_polynomial() || t.size() == 0)
      throw std::invalid_argument("denominator factors vanish at the origin");
    h = denominator.poly();
    t = prod;
    const auto& [e, c] = *t.terms().begin();
    unit = h.coefficient(e) / c;
  }
  if (h != t * unit)
    throw std::invalid_argument("denominator factors do not multiply to the denominator");
}

cplx RationalGF::numerator_at(const std::vector<cplx>& z) const {
  if (numerator_value) return *numerator_value;
  return numerator.eval(z);
}

Direction Direction::make(std::vector<long> r) {
  if (r.empty()) throw std::invalid_argument("empty direction");
  long g = 0;
  for (long v : r) {
    if (v <= 0) throw std::invalid_argument("direction entries must be positive");
    g = std::gcd(g, v);
  }
  for (auto& v : r) v /= g;
  return Direction{std::move(r)};
}

std::vector<double> Direction::unit() const {
  double s = 0;
  for (long v : r) s += static_cast<double>(v);
  std::vector<double> u;
  for (long v : r) u.push_back(static_cast<double>(v) / s);
  return u;
}

std::string Direction::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? ":" : "") + std::to_string(r[i]);
  return s;
}

std::string to_string(PointClass c) {
  switch (c) {
    case PointClass::Smooth: return "smooth";
    case PointClass::Multiple: return "multiple";
    case PointClass::Bad: return "bad";
    case PointClass::Unclassified: return "unclassified";
  }
  return "?";
}

std::string to_string(Minimality m) {
  switch (m) {
    case Minimality::StrictlyMinimal: return "strictly_minimal";
    case Minimality::Minimal: return "minimal";
    case Minimality::NotMinimal: return "not_minimal";
    case Minimality::Unknown: return "unknown";
  }
  return "?";
}

bool CriticalPoint::is_real(double tol) const {
  for (const auto& c : z)
    if (std::abs(c.imag()) > tol * (1 + std::abs(c))) return false;
  return true;
}

bool CriticalPoint::is_positive(double tol) const {
  if (!is_real(tol)) return false;
  for (const auto& c : z)
    if (c.real() <= tol) return false;
  return true;
}

std::vector<double> CriticalPoint::real() const {
  std::vector<double> v;
  for (const auto& c : z) v.push_back(c.real());
  return v;
}

double AsymptoticTerm::evaluate(const std::vector<long>& r) const {
  if (components.empty()) return 0.0;
  // sum in log space relative to the largest modulus to keep huge bases finite
  std::vector<cplx> logs;
  double mx = -INFINITY;
  for (const auto& c : components) {
    if (c.point.size() != r.size()) throw std::invalid_argument("term and index dimensions differ");
    cplx l = std::log(c.b0);
    for (std::size_t i = 0; i < r.size(); ++i) l -= static_cast<double>(r[i]) * std::log(c.point[i]);
    logs.push_back(l);
    mx = std::max(mx, l.real());
  }
  cplx s = 0;
  double mag = 0;
  for (const auto& l : logs) {
    // reduce the phase modulo 2 pi before exponentiating
    double ph = std::remainder(l.imag(), 2 * M_PI);
    cplx t = std::polar(std::exp(l.real() - mx), ph);
    s += t;
    mag += std::abs(t);
  }
  if (std::abs(s) <= 1e-10 * mag) return 0.0;
  double v = s.real() * std::exp(mx);
  if (normalizing_index >= 0 && order_exponent != 0)
    v *= std::pow(static_cast<double>(r.at(normalizing_index)), order_exponent.get_d());
  return v;
}

double AsymptoticTerm::leading_constant() const {
  if (components.empty()) return 0.0;
  for (const auto& c : components) {
    bool pos = true;
    for (const auto& z : c.point)
      if (z.real() <= 0 || std::abs(z.imag()) > 1e-12 * std::abs(z)) pos = false;
    if (pos) return c.b0.real();
  }
  return std::abs(components[0].b0);
}

std::vector<double> AsymptoticTerm::bases() const {
  std::vector<double> b;
  if (components.empty()) return b;
  for (const auto& z : components[0].point) b.push_back(1.0 / std::abs(z));
  return b;
}

double evaluate_term(const AsymptoticTerm& term, const std::vector<long>& r) { return term.evaluate(r); }

}  // namespace acsv
