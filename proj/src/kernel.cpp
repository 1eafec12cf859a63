#include "acsv/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace acsv {

namespace {

const std::vector<std::string> kXY{"x", "y"};
const std::vector<std::string> kX{"x"};

std::vector<Rational> poly_series(const MultiPoly& p, int N) {
  std::vector<Rational> out(N + 1, 0);
  for (const auto& [e, c] : p.terms())
    if (e[0] <= N) out[e[0]] += c;
  return out;
}

double eval_series(const std::vector<Rational>& s, double x) {
  double acc = 0;
  for (auto it = s.rbegin(); it != s.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

// num / den where den has order k and num has order >= k
std::vector<Rational> series_div(const std::vector<Rational>& num, const std::vector<Rational>& den, int N) {
  int k = 0;
  while (k < static_cast<int>(den.size()) && den[k] == 0) ++k;
  if (k == static_cast<int>(den.size())) throw std::domain_error("division by a zero series");
  for (int i = 0; i < k && i < static_cast<int>(num.size()); ++i)
    if (num[i] != 0) throw std::domain_error("quotient is not a power series");
  std::vector<Rational> n2(num.begin() + std::min<std::size_t>(k, num.size()), num.end());
  std::vector<Rational> d2(den.begin() + k, den.end());
  n2.resize(N + 1, 0);
  d2.resize(N + 1, 0);
  return series_mul(n2, series_inv(d2, N), N);
}

// Q(x, y) with y a series, truncated at x^N
std::vector<Rational> eval_in_y(const std::vector<std::vector<Rational>>& coef_in_y,
                                const std::vector<Rational>& y, int N) {
  std::vector<Rational> acc(N + 1, 0);
  for (auto it = coef_in_y.rbegin(); it != coef_in_y.rend(); ++it) {
    acc = series_mul(acc, y, N);
    for (int i = 0; i <= N; ++i) acc[i] += (*it)[i];
  }
  return acc;
}

// smallest positive root of the discriminant in y, or +inf
double discriminant_radius(const MultiPoly& Q) {
  auto cs = Q.coefficients_in(1);
  cs.resize(3, MultiPoly(Q.variables()));
  MultiPoly disc = cs[1] * cs[1] - Rational(4) * cs[2] * cs[0];
  UPoly u = to_upoly(disc);
  double best = INFINITY;
  if (deg(u) <= 0) return best;
  for (const auto& r : complex_roots(u))
    if (std::abs(r) > 1e-12) best = std::min(best, std::abs(r));
  return best;
}

// same exponents, new variable names
MultiPoly relabel(const MultiPoly& p, const std::vector<std::string>& vars) {
  MultiPoly out(vars);
  for (const auto& [e, c] : p.terms()) out.add_term(e, c);
  return out;
}

double anchor_point(const MultiPoly& Q) {
  double rho = discriminant_radius(Q);
  return std::min(1e-2, std::isfinite(rho) ? rho / 20 : 1e-2);
}

}  // namespace

std::vector<Rational> series_mul(const std::vector<Rational>& a, const std::vector<Rational>& b, int N) {
  std::vector<Rational> out(N + 1, 0);
  for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= N; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= N; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<Rational> series_inv(const std::vector<Rational>& a, int N) {
  if (a.empty() || a[0] == 0) throw std::domain_error("series is not invertible");
  std::vector<Rational> out(N + 1, 0);
  out[0] = 1 / a[0];
  for (int n = 1; n <= N; ++n) {
    Rational s = 0;
    for (int k = 1; k <= n && k < static_cast<int>(a.size()); ++k) s += a[k] * out[n - k];
    out[n] = -s * out[0];
  }
  return out;
}

void StepSet::validate() const {
  if (steps.empty()) throw std::invalid_argument("step set is empty");
  std::set<std::pair<int, int>> seen;
  for (const auto& st : steps) {
    if (!seen.insert({st.r, st.s}).second) throw std::invalid_argument("repeated step");
    if (st.r < 0) throw std::invalid_argument("steps must have r >= 0");
    if (st.r == 0 && st.s <= 0) throw std::invalid_argument("a step with r = 0 must move up");
    if (st.weight <= 0) throw std::invalid_argument("step weights must be positive");
  }
}

int StepSet::p() const {
  int m = 0;
  for (const auto& st : steps) m = std::min(m, st.s);
  return -m;
}

int StepSet::P() const {
  int m = 0;
  for (const auto& st : steps) m = std::max(m, st.s);
  return m;
}

KernelPoly kernel_poly(const StepSet& E) {
  E.validate();
  const int p = E.p(), P = E.P();
  KernelPoly k;
  k.Q = MultiPoly::monomial(kXY, {0, p});
  k.C = MultiPoly(kX);
  k.a = MultiPoly(kX);
  k.B = MultiPoly(kX);
  Integer L = 1;
  for (const auto& st : E.steps) {
    k.Q -= MultiPoly::monomial(kXY, {st.r, st.s + p}, st.weight);
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), st.weight.get_den_mpz_t());
    auto m = MultiPoly::monomial(kX, {st.r}, st.weight);
    if (st.s == P) k.C += m;
    if (st.s == -p) k.a += m;
    if (st.s == 0) k.B += m;
  }
  k.Q *= Rational(L);
  return k;
}

SmallBranch small_branch(const MultiPoly& Q, int N) {
  if (Q.nvars() != 2) throw std::invalid_argument("kernel must be a polynomial in (x, y)");
  if (Q.degree(1) != 2) throw std::invalid_argument("only kernels quadratic in y are supported");
  auto cs = Q.coefficients_in(1);
  std::vector<std::vector<Rational>> cy;
  for (const auto& c : cs) cy.push_back(poly_series(c, N));
  if (cy[0][0] != 0 || cy[1][0] == 0)
    throw std::domain_error("kernel has no simple branch vanishing at x = 0");
  // Newton on formal series, the correct prefix doubles each round
  std::vector<Rational> xi(N + 1, 0);
  std::vector<std::vector<Rational>> dcy{cy[1], std::vector<Rational>(N + 1, 0)};
  for (int i = 0; i <= N; ++i) dcy[1][i] = 2 * cy[2][i];
  for (int iter = 0;; ++iter) {
    auto f = eval_in_y(cy, xi, N);
    if (std::all_of(f.begin(), f.end(), [](const Rational& c) { return c == 0; })) break;
    if (iter > 64) throw std::runtime_error("series Newton iteration did not converge");
    auto df = eval_in_y(dcy, xi, N);
    auto step = series_mul(f, series_inv(df, N), N);
    for (int i = 0; i <= N; ++i) xi[i] -= step[i];
  }
  const double x0 = anchor_point(Q);
  MultiPoly alpha = relabel(Q, {"x", "v"});
  SmallBranch b{xi, SeriesFunc::implicit(alpha, x0, eval_series(xi, x0))};
  return b;
}

KernelGF kernel_gf(const StepSet& E, int N) {
  E.validate();
  if (E.p() != 1 || E.P() != 1)
    throw AnalysisRefusal("unsupported_kernel", "only step sets with p = P = 1 reduce to Riordan form here");
  KernelGF K;
  K.kernel = kernel_poly(E);
  K.xi = small_branch(K.kernel.Q, N);
  const auto& kp = K.kernel;
  auto a = poly_series(kp.a, N), C = poly_series(kp.C, N);
  auto phi = series_div(K.xi.series, a, N);
  auto v = series_mul(phi, C, N);

  // clear the common scale so alpha has the same integer content as Q
  Integer L = 1;
  for (const auto& st : E.steps) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), st.weight.get_den_mpz_t());
  const std::vector<std::string> xv{"x", "v"};
  auto lift = [&](const MultiPoly& p) { return p.rename(xv); };
  MultiPoly w = MultiPoly::variable(xv, 1);
  MultiPoly one = MultiPoly::constant(xv, 1);
  // Q(x, a w) / a and (C/a) Q(x, a v / C)
  MultiPoly alpha_phi = (-lift(kp.C) * lift(kp.a) * w * w + (one - lift(kp.B)) * w - one) * Rational(L);
  MultiPoly alpha_v = (-lift(kp.a) * w * w + (one - lift(kp.B)) * w - lift(kp.C)) * Rational(L);
  const double x0 = anchor_point(kp.Q);
  K.phi = SeriesFunc::implicit(alpha_phi, x0, eval_series(phi, x0));
  K.v = SeriesFunc::implicit(alpha_v, x0, eval_series(v, x0));
  K.formula = "F(x,y) = (xi/a) / (1 - y C xi / a), a = " + kp.a.to_string() + ", C = " + kp.C.to_string();
  return K;
}

std::vector<std::vector<Rational>> kernel_coefficients(const KernelGF& K, int R, int S) {
  auto phi = K.phi.series(R), v = K.v.series(R);
  std::vector<std::vector<Rational>> out(R + 1, std::vector<Rational>(S + 1, 0));
  auto cur = phi;
  for (int s = 0; s <= S; ++s) {
    for (int r = 0; r <= R; ++r) out[r][s] = cur[r];
    cur = series_mul(cur, v, R);
  }
  return out;
}

AsymptoticTerm walk_asymptotics(const StepSet& E, long r, long s) {
  KernelGF K = kernel_gf(E);
  AsymptoticTerm t = riordan_leading_term(K.phi, K.v, r, s);
  t.formula = K.formula + "; " + t.formula;
  return t;
}

}  // namespace acsv
