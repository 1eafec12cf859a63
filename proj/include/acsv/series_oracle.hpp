#pragma once

#include <vector>

#include "acsv/gf.hpp"

namespace acsv {

struct SeriesTable {
  int max_total_degree = 0;
  MultiPoly coefficients;  // truncated series

  Rational at(const std::vector<long>& r) const;
};

SeriesTable expand_coefficients(const RationalGF& F, int N);
Rational coefficient(const RationalGF& F, const std::vector<long>& r);
// coefficients of a univariate table as a dense vector
std::vector<Rational> univariate_coefficients(const SeriesTable& t);

struct ErrorSample {
  long n = 0;
  std::vector<long> index;
  Rational exact;
  double exact_value = 0;
  double approx = 0;
  double rel_error = 0;
  bool zero = false;  // exact coefficient vanishes; rel_error not defined
};

// |a_{n dir} - term(n dir)| / |a_{n dir}|, zero coefficients flagged
std::vector<ErrorSample> relative_error_curve(const SeriesTable& table, const AsymptoticTerm& term,
                                              const std::vector<long>& dir, const std::vector<long>& n_values);
std::vector<ErrorSample> relative_error_curve(const RationalGF& F, const AsymptoticTerm& term,
                                              const std::vector<long>& dir, const std::vector<long>& n_values);

// describes the vanishing pattern of sampled coefficients, "" when none vanish
std::string zero_pattern(const std::vector<ErrorSample>& samples);

}  // namespace acsv
