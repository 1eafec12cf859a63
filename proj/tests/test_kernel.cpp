#include "doctest.h"

#include "acsv/kernel.hpp"
#include "oracles.hpp"

using namespace acsv;

namespace {

StepSet steps(const std::vector<oracle::WStep>& ws) {
  StepSet E;
  for (const auto& w : ws) E.steps.push_back({w.r, w.s, w.w});
  return E;
}

const std::vector<oracle::WStep> kDyck{{1, 1, 1}, {1, -1, 1}};
const std::vector<oracle::WStep> kMotzkin{{1, 1, 1}, {1, 0, 1}, {1, -1, 1}};
const std::vector<oracle::WStep> kSchroeder{{1, 1, 1}, {2, 0, 1}, {1, -1, 1}};
const std::vector<oracle::WStep> kRandom{{0, 1, Rational(1, 2)}, {1, -1, Rational(1, 2)}};

}  // namespace

TEST_CASE("kernel coefficients match the step recurrence") {
  for (const auto& ws : {kDyck, kMotzkin, kSchroeder, kRandom}) {
    auto K = kernel_gf(steps(ws), 40);
    const int R = 18, S = 18;
    auto got = kernel_coefficients(K, R, S);
    auto ref = oracle::walk_table(ws, R, S);
    for (int r = 0; r <= R; ++r)
      for (int s = 0; s <= S; ++s) CHECK(got[r][s] == ref[r][s]);
  }
}

TEST_CASE("kernel polynomials") {
  const std::vector<std::string> XY{"x", "y"};
  CHECK(kernel_poly(steps(kDyck)).Q == parse_poly("y-x*y^2-x", XY));
  CHECK(kernel_poly(steps(kSchroeder)).Q == parse_poly("y-x*y^2-x^2*y-x", XY));
  CHECK(kernel_poly(steps(kRandom)).Q == parse_poly("2*y-y^2-x", XY));
}

TEST_CASE("small branches") {
  auto m = small_branch(kernel_poly(steps(kMotzkin)).Q, 7).series;
  CHECK(m == std::vector<Rational>{0, 1, 1, 2, 4, 9, 21, 51});
  auto rw = small_branch(kernel_poly(steps(kRandom)).Q, 4).series;
  CHECK(rw == std::vector<Rational>{0, Rational(1, 2), Rational(1, 8), Rational(1, 16), Rational(5, 128)});
}

TEST_CASE("Dyck term and parity zeros") {
  auto E = steps(kDyck);
  auto t = walk_asymptotics(E, 40, 20);
  // ballot numbers: paths of length n ending at height h
  auto exact = [](long n, long h) {
    return Rational(oracle::binomial(n, (n - h) / 2) * (h + 1) / ((n + h) / 2 + 1)).get_d();
  };
  CHECK(std::abs(t.evaluate({40, 20}) / exact(40, 20) - 1) < 0.03);
  CHECK(t.evaluate({41, 20}) == 0.0);
  CHECK(t.evaluate({81, 40}) == 0.0);
  CHECK(std::abs(t.evaluate({80, 40}) / exact(80, 40) - 1) < 0.015);
}

TEST_CASE("Schroeder constants") {
  auto t = walk_asymptotics(steps(kSchroeder), 36, 12);
  const double gamma = (11 + 5 * std::sqrt(5.0)) / 2;
  CHECK(std::abs(std::pow(t.bases()[0], 3) * t.bases()[1] - gamma) < 1e-8);
  CHECK(t.evaluate({37, 12}) == 0.0);

  // the constant from exact counts: a_{3s,s} ~ 2 C gamma^s / sqrt(s)
  const int smax = 40;
  auto a = oracle::walk_table(kSchroeder, 3 * smax, smax);
  std::vector<int> ss;
  std::vector<double> b;
  for (int s = smax - 12; s <= smax; s += 2) {
    ss.push_back(s);
    b.push_back(a[3 * s][s].get_d() * std::pow(gamma, -s) * std::sqrt(double(s)) / 2);
  }
  // Richardson in 1/s
  for (std::size_t level = 1; level < b.size(); ++level)
    for (std::size_t i = b.size() - 1; i >= level; --i)
      b[i] = (ss[i] * b[i] - ss[i - level] * b[i - 1]) / (ss[i] - ss[i - level]);
  CHECK(std::abs(t.leading_constant() - b.back()) < 1e-7);
  // the same extrapolation carried to s = 160 in 40-digit arithmetic
  CHECK(std::abs(t.leading_constant() - 0.15261956503776155) < 1e-12);
}

TEST_CASE("Motzkin saddle value") {
  auto K = kernel_gf(steps(kMotzkin));
  const double lambda = 1.0 / 3;
  const double x = solve_mu(K.v, 1 / lambda);
  const double y = K.v.value(x);
  CHECK(std::abs(y - (std::sqrt(4 - 3 * lambda * lambda) - lambda) / (2 * (1 + lambda))) < 1e-12);
  // xi = x (1 + xi + xi^2): variance of the step polynomial at y, and the quadratic it satisfies
  const double S = sigma2(SeriesFunc::parse("1+x+x^2"), y);
  CHECK(std::abs(S - y * (1 + 4 * y + y * y) / std::pow(1 + y + y * y, 2)) < 1e-12);
  const double l2 = lambda * lambda;
  CHECK(std::abs(3 * S * S + (6 * l2 - 8) * S + 3 * l2 * l2 - 7 * l2 + 4) < 1e-10);
}

TEST_CASE("random walk generating function") {
  // a_{r,s} against 2/(1 + sqrt(1-x) - y) = sum_s y^s c^(s+1) / 2^s, c = 2/(1 + sqrt(1-x))
  auto K = kernel_gf(steps(kRandom), 40);
  const int N = 30;
  std::vector<Rational> sq(N + 1, 0);  // sqrt(1 - x)
  Rational bin = 1;
  for (int k = 0; k <= N; ++k) {
    sq[k] = (k % 2 ? -bin : bin);
    bin = bin * (Rational(1, 2) - k) / (k + 1);
  }
  std::vector<Rational> den = sq;
  den[0] += 1;
  auto c = series_inv(den, N);
  for (auto& v : c) v *= 2;
  auto got = kernel_coefficients(K, N, 8);
  auto half = c;
  for (auto& v : half) v /= 2;
  auto pw = c;
  for (int s = 0; s <= 8; ++s) {
    for (int r = 0; r <= N; ++r) CHECK(got[r][s] == pw[r]);
    pw = series_mul(pw, half, N);
  }
}

TEST_CASE("unsupported step sets are refused") {
  CHECK_THROWS_AS(kernel_gf(steps({{1, 2, 1}, {1, -1, 1}})), AnalysisRefusal);
  CHECK_THROWS(steps({{0, -1, 1}, {1, 1, 1}}).validate());
  CHECK_THROWS(steps({{1, 1, 1}, {1, 1, 1}}).validate());
}
