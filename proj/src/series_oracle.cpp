#include "acsv/series_oracle.hpp"

#include <algorithm>
#include <cmath>

namespace acsv {

Rational SeriesTable::at(const std::vector<long>& r) const {
  long t = 0;
  for (long v : r) {
    if (v < 0) return 0;
    t += v;
  }
  if (t > max_total_degree) throw std::out_of_range("index beyond the expanded total degree");
  Exponent e(r.begin(), r.end());
  return coefficients.coefficient(e);
}

SeriesTable expand_coefficients(const RationalGF& F, int N) {
  if (N < 0) throw std::invalid_argument("negative degree");
  if (F.numerator_value) throw std::invalid_argument("numerator known only as a value; no series available");
  const auto& vars = F.variables;
  // homogeneous parts of numerator and denominator
  MultiPoly g = F.numerator.series(N);
  MultiPoly h = F.denominator.series(N);
  Rational h0 = h.constant_term();
  if (h0 == 0) throw EvalError("denominator vanishes at the origin");
  std::vector<MultiPoly> gp(N + 1, MultiPoly(vars)), hp(N + 1, MultiPoly(vars));
  for (int k = 0; k <= N; ++k) {
    gp[k] = g.homogeneous_part(k);
    hp[k] = h.homogeneous_part(k);
  }
  Rational inv = 1 / h0;
  std::vector<MultiPoly> a(N + 1, MultiPoly(vars));
  for (int k = 0; k <= N; ++k) {
    MultiPoly rhs = gp[k];
    for (int s = 1; s <= k; ++s)
      if (!hp[s].is_zero() && !a[k - s].is_zero()) rhs -= hp[s] * a[k - s];
    a[k] = rhs * inv;
  }
  SeriesTable t;
  t.max_total_degree = N;
  t.coefficients = MultiPoly(vars);
  for (auto& p : a) t.coefficients += p;
  return t;
}

Rational coefficient(const RationalGF& F, const std::vector<long>& r) {
  long t = 0;
  for (long v : r) {
    if (v < 0) throw std::invalid_argument("negative index");
    t += v;
  }
  return expand_coefficients(F, static_cast<int>(t)).at(r);
}

std::vector<Rational> univariate_coefficients(const SeriesTable& t) {
  std::vector<Rational> out(t.max_total_degree + 1, Rational(0));
  for (const auto& [e, c] : t.coefficients.terms()) out[e.at(0)] = c;
  return out;
}

std::vector<ErrorSample> relative_error_curve(const SeriesTable& table, const AsymptoticTerm& term,
                                              const std::vector<long>& dir, const std::vector<long>& n_values) {
  std::vector<ErrorSample> out;
  bool any_nonzero = false;
  for (long n : n_values) {
    ErrorSample s;
    s.n = n;
    for (long d : dir) s.index.push_back(n * d);
    s.exact = table.at(s.index);
    s.exact_value = s.exact.get_d();
    s.approx = term.evaluate(s.index);
    if (s.exact == 0) {
      s.zero = true;
      s.rel_error = s.approx == 0.0 ? 0.0 : INFINITY;
    } else {
      any_nonzero = true;
      s.rel_error = std::abs(s.exact_value - s.approx) / std::abs(s.exact_value);
    }
    out.push_back(s);
  }
  if (!n_values.empty() && !any_nonzero)
    throw std::domain_error("all sampled coefficients vanish along this direction");
  return out;
}

std::vector<ErrorSample> relative_error_curve(const RationalGF& F, const AsymptoticTerm& term,
                                              const std::vector<long>& dir, const std::vector<long>& n_values) {
  long mx = 0, s = 0;
  for (long d : dir) s += d;
  for (long n : n_values) mx = std::max(mx, n * s);
  return relative_error_curve(expand_coefficients(F, static_cast<int>(mx)), term, dir, n_values);
}

std::string zero_pattern(const std::vector<ErrorSample>& samples) {
  std::vector<long> zeros;
  for (const auto& s : samples)
    if (s.zero) zeros.push_back(s.n);
  if (zeros.empty()) return "";
  // look for a modulus m with zeros exactly on one residue class set
  for (long m = 2; m <= 12; ++m) {
    bool ok = true;
    std::vector<int> zero_res(m, -1);
    for (const auto& s : samples) {
      int res = static_cast<int>(s.n % m);
      int z = s.zero ? 1 : 0;
      if (zero_res[res] == -1) zero_res[res] = z;
      else if (zero_res[res] != z) ok = false;
    }
    if (!ok) continue;
    std::string desc = "periodic-zero: a vanishes for n mod " + std::to_string(m) + " in {";
    bool first = true;
    for (int k = 0; k < m; ++k)
      if (zero_res[k] == 1) {
        desc += (first ? "" : ",") + std::to_string(k);
        first = false;
      }
    return desc + "}";
  }
  return "zero at " + std::to_string(zeros.size()) + " sampled n";
}

}  // namespace acsv
