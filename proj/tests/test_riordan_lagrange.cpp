#include "doctest.h"

#include <numbers>

#include "acsv/riordan_lagrange.hpp"
#include "oracles.hpp"

using namespace acsv;

namespace {

const std::vector<std::string> XV{"x", "v"};

// the Fine pair from its quadratic, anchored near 0
SeriesFunc fine_v() {
  const double x0 = 0.1, v0 = (1 + 2 * x0 - std::sqrt(1 - 4 * x0)) / (4 + 2 * x0);
  return SeriesFunc::implicit(parse_poly("(2+x)*v^2-(1+2*x)*v+x", XV), x0, v0);
}
SeriesFunc fine_phi() {
  const double x0 = 0.1, v0 = (1 + 2 * x0 - std::sqrt(1 - 4 * x0)) / (4 + 2 * x0);
  return SeriesFunc::implicit(parse_poly("(2+x)*x*v^2-(1+2*x)*v+1", XV), x0, v0 / x0);
}

// explicit radical for the Fine v and its mean and variance
struct FineExplicit {
  double v, phi, mu, sigma2;
};
FineExplicit fine_explicit(double x) {
  const double R = std::sqrt(1 - 4 * x);
  const double N = 1 + 2 * x - R, N1 = 2 + 2 / R, N2 = 4 / (R * R * R);
  const double D = 2 * (2 + x), D1 = 2;
  FineExplicit f;
  f.v = N / D;
  f.phi = f.v / x;
  const double dlog = N1 / N - D1 / D;
  f.mu = x * dlog;
  f.sigma2 = x * (dlog + x * (N2 / N - N1 * N1 / (N * N) + D1 * D1 / (D * D)));
  return f;
}

}  // namespace

TEST_CASE("sigma^2 equals x mu'") {
  std::vector<SeriesFunc> vs{SeriesFunc::parse("x+x^2+x^3"), SeriesFunc::parse("x/(1-x)"), fine_v(),
                             SeriesFunc::parse("x*(1+x)^2")};
  for (const auto& v : vs)
    for (double x : {0.05, 0.1, 0.2}) {
      const double h = 1e-5;
      const double d = (mu(v, x + h) - mu(v, x - h)) / (2 * h);
      CHECK(std::abs(sigma2(v, x) - x * d) < 1e-6);
    }
}

TEST_CASE("implicit branch of Fine agrees with the explicit radical") {
  auto v = fine_v(), phi = fine_phi();
  for (double x : {0.02, 0.1, 0.2, 0.23}) {
    auto e = fine_explicit(x);
    CHECK(std::abs(v.value(x) - e.v) < 1e-10);
    CHECK(std::abs(phi.value(x) - e.phi) < 1e-10);
    CHECK(std::abs(mu(v, x) - e.mu) < 1e-10);
    CHECK(std::abs(sigma2(v, x) - e.sigma2) < 1e-10);
  }
  const double xs = (5 * std::sqrt(17.0) - 13) / 32;
  CHECK(std::abs(solve_mu(v, 2.0) - xs) < 1e-10);
  auto t = riordan_leading_term(phi, v, 60, 30);
  auto e = fine_explicit(xs);
  const double direct = std::pow(xs, -60) * std::pow(e.v, 30) * e.phi / std::sqrt(2 * std::numbers::pi * 30 * e.sigma2);
  CHECK(std::abs(t.evaluate({60, 30}) / direct - 1) < 1e-10);
}

TEST_CASE("implicit series coefficients") {
  // Fine v: (2+x) v^2 - (1+2x) v + x = 0 checked as a series identity
  auto s = fine_v().series(12);
  std::vector<Rational> v2(13, 0);
  for (int i = 0; i <= 12; ++i)
    for (int j = 0; i + j <= 12; ++j) v2[i + j] += s[i] * s[j];
  for (int n = 0; n <= 12; ++n) {
    Rational lhs = 2 * v2[n] - s[n];
    if (n >= 1) lhs += v2[n - 1] - 2 * s[n - 1];
    if (n == 1) lhs += 1;
    CHECK(lhs == 0);
  }
}

TEST_CASE("d = 2 subsequence count has a rational saddle") {
  auto v = SeriesFunc::parse("x+x^2");
  for (double lambda : {1.2, 1.4, 1.7}) {
    const double x = (lambda - 1) / (2 - lambda);
    CHECK(std::abs(solve_mu(v, lambda) - x) < 1e-12);
    CHECK(std::abs(sigma2(v, x) - (lambda - 1) * (2 - lambda)) < 1e-12);
  }
}

TEST_CASE("d = 3 variance satisfies its elimination polynomial") {
  auto v = SeriesFunc::parse("x+x^2+x^3");
  for (Rational lambda : {Rational(3, 2), Rational(6, 5), Rational(9, 5)}) {
    lambda.canonicalize();
    const double x = solve_mu(v, lambda.get_d());
    const double s2 = sigma2(v, x);
    auto l = MultiPoly::constant({"S"}, lambda);
    auto S = MultiPoly::variable({"S"}, 0);
    auto one = MultiPoly::constant({"S"}, 1);
    auto p = Rational(3) * S * S + (Rational(6) * l * l - Rational(24) * l + Rational(16) * one) * S +
             Rational(3) * pow(l, 4) - Rational(24) * pow(l, 3) + Rational(65) * l * l - Rational(68) * l +
             Rational(24) * one;
    CHECK(verify_elimination_polynomial(s2, p).pass);
  }
}

TEST_CASE("Lagrange inversion: plane trees") {
  auto phi = SeriesFunc::parse("1/(1-x)"), psi = SeriesFunc::parse("x");
  auto s = lagrange_series(phi, psi, 30);
  for (int n = 1; n <= 30; ++n) CHECK(s[n] == oracle::binomial(2 * n - 2, n - 1) / n);
  CHECK(std::abs(lagrange_point(phi) - 0.5) < 1e-12);
  auto t = lagrange_univariate(phi, psi, 200);
  CHECK(std::abs(t.leading_constant() - 1 / (4 * std::sqrt(std::numbers::pi))) < 1e-10);
  CHECK(std::abs(t.evaluate({200}) / Rational(oracle::binomial(398, 199) / 200).get_d() - 1) < 0.01);
  CHECK(schema_constant(phi, SchemaKind::Sequences) == doctest::Approx(4.0));
  CHECK(schema_constant(SeriesFunc::parse("(1+x)^2"), SchemaKind::Sets) == doctest::Approx(std::exp(1.0)));
}

TEST_CASE("Lagrange powers match the Lagrange-Buermann formula") {
  // [z^n] f^k = k/n [w^(n-k)] (1-w)^(-n) = k/n C(2n-k-1, n-k)
  auto phi = SeriesFunc::parse("1/(1-x)");
  const long n = 300, k = 100;
  auto t = lagrange_power(phi, n, k);
  const double exact = Rational(Rational(k, n) * oracle::binomial(2 * n - k - 1, n - k)).get_d();
  CHECK(std::abs(t.evaluate({n, k}) / exact - 1) < 0.02);
}

TEST_CASE("quadratic form B") {
  auto v = SeriesFunc::parse("x+x^2");
  // mu(v;1) = 3/2, sigma^2(v;1) = 1/4
  CHECK(riordan_B(v, 2, 3) == doctest::Approx(0.0));
  CHECK(riordan_B(v, 2, 4) == doctest::Approx(4.0));
}
