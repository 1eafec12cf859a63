#include "doctest.h"

#include <random>

#include "acsv/series_oracle.hpp"
#include "oracles.hpp"

using namespace acsv;

namespace {
const std::vector<std::string> XY{"x", "y"};
}

TEST_CASE("binomial coefficients") {
  auto F = RationalGF::from_strings("1", "1-x-y", XY, true);
  auto t = expand_coefficients(F, 30);
  for (long i = 0; i <= 15; ++i)
    for (long j = 0; j <= 15; ++j) CHECK(t.at({i, j}) == oracle::binomial(i + j, i));
  CHECK(coefficient(F, {40, 21}) == oracle::binomial(61, 21));
}

TEST_CASE("table agrees with the coefficient recurrence") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> c(-3, 3), e(0, 2);
  for (int trial = 0; trial < 20; ++trial) {
    MultiPoly H = MultiPoly::constant(XY, 1), G = MultiPoly::constant(XY, 1);
    for (int k = 0; k < 4; ++k) {
      int a = e(rng), b = e(rng);
      if (a + b == 0) continue;
      H.add_term({a, b}, c(rng));
      G.add_term({e(rng), e(rng)}, c(rng));
    }
    RationalGF F{G, H, XY};
    auto t = expand_coefficients(F, 12);
    auto ref = oracle::bivariate_table(G, H, 12, 12);
    for (int i = 0; i <= 12; ++i)
      for (int j = 0; i + j <= 12; ++j) CHECK(t.at({i, j}) == ref[i][j]);
  }
}

TEST_CASE("defining identity H * F = G holds exactly") {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> c(-4, 4), e(0, 3);
  const std::vector<std::string> XYZ{"x", "y", "z"};
  for (int trial = 0; trial < 10; ++trial) {
    MultiPoly H = MultiPoly::constant(XYZ, 2), G(XYZ);
    for (int k = 0; k < 5; ++k) {
      H.add_term({e(rng), e(rng), e(rng) % 2 + 1}, c(rng));
      G.add_term({e(rng), e(rng), e(rng)}, c(rng));
    }
    RationalGF F{G, H, XYZ};
    const int N = 9;
    auto t = expand_coefficients(F, N);
    CHECK((H * t.coefficients).truncate(N) == G.truncate(N));
  }
}

TEST_CASE("transcendental numerator") {
  // exp(x + y) / (1 - x): coefficient of x^i y^j is sum_{a <= i} 1/(a! j!)
  auto F = RationalGF::from_strings("exp(x+y)", "1-x", XY, true);
  auto t = expand_coefficients(F, 10);
  Rational expect = 0, fact = 1;
  for (int a = 0; a <= 4; ++a) {
    if (a > 0) fact *= a;
    expect += 1 / fact;
  }
  CHECK(t.at({4, 3}) == expect / 6);
}

TEST_CASE("zero coefficients are flagged, not divided by") {
  auto F = RationalGF::from_strings("1", "1-x^2-y^2", XY, true);
  AsymptoticTerm term;
  term.components.push_back({{cplx(std::sqrt(0.5), 0), cplx(std::sqrt(0.5), 0)}, cplx(1, 0)});
  term.order_exponent = Rational(-1, 2);
  term.normalizing_index = 0;
  auto curve = relative_error_curve(F, term, {1, 1}, {3, 4});
  REQUIRE(curve.size() == 2);
  CHECK(curve[0].zero);
  CHECK_FALSE(curve[1].zero);
  CHECK(curve[1].exact == oracle::binomial(4, 2));
  CHECK_FALSE(zero_pattern(curve).empty());
}

TEST_CASE("univariate tables") {
  auto F = RationalGF::from_strings("1", "1-x-x^2", {"x"}, true);
  auto c = univariate_coefficients(expand_coefficients(F, 20));
  REQUIRE(c.size() >= 21);
  for (int n = 2; n <= 20; ++n) CHECK(c[n] == c[n - 1] + c[n - 2]);
}
