#include "doctest.h"

#include <numbers>

#include "acsv/asymptotics.hpp"
#include "acsv/series_oracle.hpp"
#include "oracles.hpp"

using namespace acsv;

namespace {

const std::vector<std::string> XY{"x", "y"};

std::vector<std::string> vars(int k) {
  std::vector<std::string> v;
  for (int i = 1; i <= k; ++i) v.push_back("z" + std::to_string(i));
  return v;
}

std::string alignment_denominator(int k) {
  std::string s = "2";
  for (int i = 1; i <= k; ++i) s += (i == 1 ? "-(1+z" : "*(1+z") + std::to_string(i) + ")";
  return s;
}

CriticalPoint positive_point(const ContribResult& c) {
  for (const auto& p : c.contributing)
    if (p.is_positive()) return p;
  FAIL("no positive point");
  return {};
}

// minus the Hessian of log z_last as a function of log z_1..log z_{d-1} along H = 0
std::vector<std::vector<double>> fd_log_hessian(const AnalyticExpr& H, const std::vector<double>& z) {
  const std::size_t d = z.size();
  std::vector<double> s0;
  for (std::size_t i = 0; i + 1 < d; ++i) s0.push_back(std::log(z[i]));
  auto logz_last = [&](const std::vector<double>& s) {
    std::vector<double> pt(d);
    for (std::size_t i = 0; i + 1 < d; ++i) pt[i] = std::exp(s[i]);
    double t = oracle::newton(
        [&](double u) {
          pt[d - 1] = std::exp(u);
          return H.eval(pt);
        },
        std::log(z[d - 1]));
    return t;
  };
  auto h = oracle::fd_hessian(logz_last, s0, 1e-4);
  for (auto& row : h)
    for (auto& v : row) v = -v;
  return h;
}

}  // namespace

TEST_CASE("Hessian matches finite differences") {
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases{
      {"1-x-y-x*y", XY},
      {alignment_denominator(3), vars(3)},
      {"1-(x*y+y*z+x*z)-2*x*y*z", {"x", "y", "z"}},
      {"3-exp(x)-y-y*z^2", {"x", "y", "z"}}};
  for (const auto& [h, v] : cases) {
    auto H = parse_expr(h, v);
    // a positive point on H = 0: fix all but the last coordinate and solve
    std::vector<double> z(v.size(), 0.3);
    z.back() = oracle::newton(
        [&](double t) {
          auto pt = z;
          pt.back() = t;
          return H.eval(pt);
        },
        0.3);
    std::vector<cplx> zc(z.begin(), z.end());
    auto hd = hessian_logparam(H, zc, static_cast<int>(v.size()) - 1);
    auto fd = fd_log_hessian(H, z);
    for (std::size_t a = 0; a + 1 < v.size(); ++a)
      for (std::size_t b = 0; b + 1 < v.size(); ++b) CHECK(std::abs(hd.matrix(a, b).real() - fd[a][b]) < 1e-6);
  }
}

TEST_CASE("bivariate and general formulas agree") {
  const std::vector<std::tuple<std::string, std::string, std::vector<long>>> cases{
      {"1", "1-x-y", {1, 1}},          {"1", "1-x-y", {3, 1}},   {"1", "1-x-y-x*y", {1, 1}},
      {"1+x*y+x^2*y^2", "1-x-y+x*y-x^2*y^2", {1, 1}}, {"exp(x)", "1-x-y-x*y", {2, 3}},
      {"1", "1-x-x*y", {3, 1}}};
  for (const auto& [g, h, d] : cases) {
    auto F = RationalGF::from_strings(g, h, XY, true);
    auto dir = Direction::make(d);
    auto c = contrib(F, dir);
    auto t2 = smooth_leading_term_2d(F, c.contributing, dir);
    auto tn = smooth_leading_term_nd(F, c.contributing, dir);
    std::vector<long> r{40 * d[0], 40 * d[1]};
    CHECK(std::abs(t2.evaluate(r) / tn.evaluate(r) - 1) < 1e-10);
    CHECK(std::abs(t2.leading_constant() - tn.leading_constant()) < 1e-10 * std::abs(t2.leading_constant()));
  }
}

TEST_CASE("binomial error decays like 1/n") {
  auto F = RationalGF::from_strings("1", "1-x-y", XY, true);
  auto res = leading_term(F, Direction::make({25, 12}));
  auto curve = relative_error_curve(F, res.term, {25, 12}, {1, 2, 10});
  REQUIRE(curve.size() == 3);
  CHECK(curve[0].rel_error == doctest::Approx(0.008).epsilon(0.25));
  CHECK(curve[1].rel_error == doctest::Approx(0.004).epsilon(0.25));
  CHECK(curve[2].rel_error < 0.001);
  CHECK(curve[0].rel_error > curve[1].rel_error);
  CHECK(curve[1].rel_error > curve[2].rel_error);
}

TEST_CASE("central Delannoy constant") {
  auto F = RationalGF::from_strings("1", "1-x-y-x*y", XY, true);
  auto t = leading_term(F, Direction::make({1, 1})).term;
  CHECK(std::abs(t.leading_constant() - std::cosh(std::log(2.0) / 4) / std::sqrt(std::numbers::pi)) < 1e-10);
  CHECK(std::abs(t.bases()[0] * t.bases()[1] - (3 + 2 * std::sqrt(2.0))) < 1e-12);
  CHECK(t.order_exponent == Rational(-1, 2));
}

TEST_CASE("alignment constants for k = 2..5") {
  for (int k = 2; k <= 5; ++k) {
    auto F = RationalGF::from_strings("1", alignment_denominator(k), vars(k), true);
    std::vector<long> ones(k, 1);
    auto res = leading_term(F, Direction::make(ones));
    const double z = std::pow(2.0, 1.0 / k) - 1;
    auto p = positive_point(res.contrib);
    for (int i = 0; i < k; ++i) CHECK(std::abs(p.z[i].real() - z) < 1e-12);
    const double C = std::pow(2.0, (1.0 - k * k) / (2.0 * k)) / (z * std::sqrt(k * std::pow(std::numbers::pi, k - 1)));
    CHECK(std::abs(res.term.leading_constant() - C) < 1e-10);
    CHECK(res.term.order_exponent.get_d() == (1.0 - k) / 2);
    auto hd = hessian_logparam(F.denominator, p.z);
    for (int a = 0; a < k - 1; ++a)
      for (int b = 0; b < k - 1; ++b)
        CHECK(std::abs(hd.matrix(a, b) - cplx((a == b ? 2.0 : 1.0) / (1 + z), 0)) < 1e-10);
  }
}

TEST_CASE("two-line multiple point with exp numerator") {
  RationalGF F = RationalGF::from_strings("exp(x+y)", "(1-2/3*x-1/3*y)*(1-1/3*x-2/3*y)", XY, true);
  F.factors = {{parse_poly("1-2/3*x-1/3*y", XY), 1}, {parse_poly("1-1/3*x-2/3*y", XY), 1}};
  auto res = leading_term(F, Direction::make({1, 1}));
  CHECK(std::abs(res.term.leading_constant() - 3 * std::exp(2.0)) < 1e-10);
  CHECK(res.term.order_exponent == 0);
  auto exact = coefficient(F, {80, 80}).get_d();
  CHECK(std::abs(res.term.evaluate({80, 80}) / exact - 1) < 5e-5);
}

// rescaling x moves the point to (2, 1) but leaves the constant alone, which
// only holds for the log-Jacobian det(z_j dH_i/dz_j)
TEST_CASE("multiple point constant is scale invariant") {
  RationalGF F = RationalGF::from_strings("exp(1/2*x+y)", "(1-1/3*x-1/3*y)*(1-1/6*x-2/3*y)", XY, true);
  F.factors = {{parse_poly("1-1/3*x-1/3*y", XY), 1}, {parse_poly("1-1/6*x-2/3*y", XY), 1}};
  auto res = leading_term(F, Direction::make({1, 1}));
  CHECK(std::abs(res.term.leading_constant() - 3 * std::exp(2.0)) < 1e-10);
  auto exact = coefficient(F, {80, 80}).get_d();
  CHECK(std::abs(res.term.evaluate({80, 80}) / exact - 1) < 5e-5);
}

TEST_CASE("integer solutions: constant term for m = d") {
  RationalGF F = RationalGF::from_strings("1", "(1-x)*(1-x*y)", XY, true);
  F.factors = {{parse_poly("1-x", XY), 1}, {parse_poly("1-x*y", XY), 1}};
  auto res = leading_term(F, Direction::make({2, 1}));
  CHECK(res.term.leading_constant() == doctest::Approx(1.0));
  CHECK(res.term.evaluate({50, 20}) == doctest::Approx(1.0));
}

TEST_CASE("vanishing numerator is refused") {
  auto F = RationalGF::from_strings("1-2*x", "1-x-y", XY, true);
  CHECK_THROWS_AS(leading_term(F, Direction::make({1, 1})), AnalysisRefusal);
}
