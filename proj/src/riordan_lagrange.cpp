#include "acsv/riordan_lagrange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace acsv {

namespace {

std::pair<MultiPoly, MultiPoly> as_fraction(const AnalyticExpr& e) {
  const auto& vars = e.variables();
  switch (e.kind()) {
    case AnalyticExpr::Kind::Poly:
      return {e.poly(), MultiPoly::constant(vars, 1)};
    case AnalyticExpr::Kind::Product: {
      MultiPoly n = MultiPoly::constant(vars, 1), d = MultiPoly::constant(vars, 1);
      for (const auto& k : e.children()) {
        auto [a, b] = as_fraction(k);
        n *= a;
        d *= b;
      }
      return {n, d};
    }
    case AnalyticExpr::Kind::Sum: {
      MultiPoly n(vars), d = MultiPoly::constant(vars, 1);
      for (const auto& k : e.children()) {
        auto [a, b] = as_fraction(k);
        n = n * b + a * d;
        d *= b;
      }
      return {n, d};
    }
    case AnalyticExpr::Kind::Quotient: {
      auto [a, b] = as_fraction(e.children()[0]);
      auto [c, d] = as_fraction(e.children()[1]);
      return {a * d, b * c};
    }
    case AnalyticExpr::Kind::Exp:
      break;
  }
  throw std::invalid_argument("expression is not rational");
}

UPoly mul_trunc(const UPoly& a, const UPoly& b, int N) {
  UPoly c(N + 1, Rational(0));
  for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= N; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= N; ++j)
      if (b[j] != 0) c[i + j] += a[i] * b[j];
  }
  return c;
}

// Taylor coefficients of num/den
std::vector<Rational> divide_series(const UPoly& num, const UPoly& den, int N) {
  if (den.empty() || den[0] == 0) throw EvalError("denominator vanishes at 0");
  std::vector<Rational> c(N + 1, Rational(0));
  for (int k = 0; k <= N; ++k) {
    Rational s = k < static_cast<int>(num.size()) ? num[k] : Rational(0);
    for (int j = 1; j <= k && j < static_cast<int>(den.size()); ++j) s -= den[j] * c[k - j];
    c[k] = s / den[0];
  }
  return c;
}

std::vector<cplx> roots_of_unity(int b) {
  std::vector<cplx> w;
  for (int k = 0; k < std::max(b, 1); ++k) w.push_back(std::polar(1.0, 2 * M_PI * k / std::max(b, 1)));
  return w;
}

CriticalPoint make_point(std::vector<cplx> z, bool principal, int b) {
  CriticalPoint p;
  p.z = std::move(z);
  p.exact.assign(p.z.size(), std::nullopt);
  p.classification = PointClass::Smooth;
  p.minimal = b > 1 ? Minimality::Minimal : Minimality::StrictlyMinimal;
  if (!principal) p.notes.push_back("torus companion");
  return p;
}

std::string period_note(int a, int b, const std::string& what) {
  return "periodic: " + what + " = x^" + std::to_string(a) + " g(x^" + std::to_string(b) + "), " + std::to_string(b) +
         " companions summed";
}

}  // namespace

SeriesFunc SeriesFunc::polynomial(const MultiPoly& p) {
  if (p.nvars() != 1) throw std::invalid_argument("series function must be univariate");
  SeriesFunc f;
  f.kind_ = Kind::Polynomial;
  f.var_ = p.variables()[0];
  f.num_ = p;
  f.den_ = MultiPoly::constant(p.variables(), 1);
  return f;
}

SeriesFunc SeriesFunc::rational(const MultiPoly& num, const MultiPoly& den) {
  if (num.nvars() != 1 || den.variables() != num.variables()) throw std::invalid_argument("series function must be univariate");
  if (den.constant_term() == 0) throw std::invalid_argument("denominator vanishes at 0");
  if (den.is_constant()) return polynomial(num * (1 / den.constant_term()));
  SeriesFunc f;
  f.kind_ = Kind::Rational;
  f.var_ = num.variables()[0];
  f.num_ = num;
  f.den_ = den;
  return f;
}

SeriesFunc SeriesFunc::implicit(const MultiPoly& alpha, double x0, double v0) {
  if (alpha.nvars() != 2) throw std::invalid_argument("implicit form needs alpha(x, v)");
  SeriesFunc f;
  f.kind_ = Kind::Implicit;
  f.var_ = alpha.variables()[0];
  f.num_ = alpha;
  f.x0_ = x0;
  f.v0_ = v0;
  std::vector<cplx> pt{x0, v0};
  double scale = std::max(alpha.abs_scale(pt), 1e-300);
  if (std::abs(alpha.eval(pt)) > 1e-8 * scale) throw std::invalid_argument("anchor is not on the curve alpha = 0");
  if (std::abs(alpha.derivative(1).eval(pt)) < 1e-10 * scale) throw std::invalid_argument("alpha_v vanishes at the anchor");
  // polish the anchor
  for (int i = 0; i < 20; ++i) {
    cplx v = f.v0_;
    cplx dv = alpha.eval(std::vector<cplx>{x0, v}) / alpha.derivative(1).eval(std::vector<cplx>{x0, v});
    f.v0_ -= dv.real();
    if (std::abs(dv) < 1e-16 * (1 + std::abs(v))) break;
  }
  return f;
}

SeriesFunc SeriesFunc::parse(const std::string& text, const std::string& var) {
  AnalyticExpr e = parse_expr(text, {var});
  if (e.is_polynomial()) return polynomial(e.poly());
  auto [n, d] = as_fraction(e);
  return rational(n, d);
}

std::array<cplx, 3> SeriesFunc::jet(cplx x) const {
  std::vector<cplx> pt{x};
  switch (kind_) {
    case Kind::Polynomial: {
      MultiPoly d1 = num_.derivative(0);
      return {num_.eval(pt), d1.eval(pt), d1.derivative(0).eval(pt)};
    }
    case Kind::Rational: {
      MultiPoly n1 = num_.derivative(0), d1 = den_.derivative(0);
      cplx n = num_.eval(pt), np = n1.eval(pt), npp = n1.derivative(0).eval(pt);
      cplx d = den_.eval(pt), dp = d1.eval(pt), dpp = d1.derivative(0).eval(pt);
      if (std::abs(d) == 0.0) throw EvalError("pole of the rational function");
      cplx f = n / d;
      cplx fp = (np - f * dp) / d;
      cplx fpp = (npp - 2.0 * fp * dp - f * dpp) / d;
      return {f, fp, fpp};
    }
    case Kind::Implicit:
      break;
  }
  const MultiPoly ax = num_.derivative(0), av = num_.derivative(1);
  auto vprime = [&](cplx xx, cplx vv) {
    std::vector<cplx> q{xx, vv};
    return -ax.eval(q) / av.eval(q);
  };
  // continuation along the segment from the anchor
  cplx v = v0_;
  double t = 0, h = 1.0 / 32;
  const cplx xs = x0_;
  const cplx dx = x - xs;
  while (t < 1) {
    double tn = std::min(1.0, t + h);
    cplx xn = xs + tn * dx;
    cplx xc = xs + t * dx;
    cplx vn = v + vprime(xc, v) * (xn - xc);
    bool ok = false;
    for (int it = 0; it < 30; ++it) {
      std::vector<cplx> q{xn, vn};
      cplx a = num_.eval(q), b = av.eval(q);
      if (b == 0.0) break;
      cplx step = a / b;
      vn -= step;
      if (!std::isfinite(std::abs(vn))) break;
      double res = std::abs(num_.eval(std::vector<cplx>{xn, vn})) / std::max(num_.abs_scale({xn, vn}), 1e-300);
      if (std::abs(step) <= 1e-15 * (1 + std::abs(vn)) || res <= 1e-15) {
        ok = true;
        break;
      }
    }
    // reject jumps to another branch
    if (ok && std::abs(vn - v) > 0.25 * (1 + std::abs(v)) && h > 1e-6) ok = false;
    if (!ok) {
      h /= 2;
      if (h < 1e-9) throw EvalError("branch continuation failed");
      continue;
    }
    v = vn;
    t = tn;
    if (h < 1.0 / 32) h *= 1.5;
  }
  std::vector<cplx> q{x, v};
  cplx Ax = ax.eval(q), Av = av.eval(q);
  if (std::abs(Av) < 1e-300) throw EvalError("alpha_v vanishes (branch fold)");
  cplx Axx = ax.derivative(0).eval(q), Axv = ax.derivative(1).eval(q), Avv = av.derivative(1).eval(q);
  cplx v1 = -Ax / Av;
  cplx v2 = -(Av * Av * Axx + Ax * Ax * Avv - 2.0 * Axv * Ax * Av) / (Av * Av * Av);
  return {v, v1, v2};
}

std::vector<Rational> SeriesFunc::series(int N) const {
  if (N < 0) return {};
  switch (kind_) {
    case Kind::Polynomial: {
      UPoly u = to_upoly(num_);
      u.resize(std::max<std::size_t>(u.size(), N + 1), Rational(0));
      u.resize(N + 1);
      return u;
    }
    case Kind::Rational:
      return divide_series(to_upoly(num_), to_upoly(den_), N);
    case Kind::Implicit:
      break;
  }
  // exact value at 0: continue the branch to 0, then identify the rational root of alpha(0, v)
  MultiPoly a0 = num_.specialize(0, 0);
  UPoly a0u = squarefree_part(to_upoly(a0.rename({num_.variables()[1]})));
  double v00 = jet(cplx(0, 0))[0].real();
  Rational c0;
  bool found = false;
  for (const auto& iv : isolate_real_roots(a0u)) {
    AlgebraicNumber r = refine_root(from_upoly(a0u, {"v"}, 0), iv, 1e-14);
    if (std::abs(r.value - v00) < 1e-7 * (1 + std::abs(v00))) {
      UPoly m = minimal_polynomial(a0u, cplx(r.value, 0));
      if (deg(m) != 1) throw EvalError("branch value at 0 is irrational; exact series unavailable");
      c0 = -m[0] / m[1];
      found = true;
    }
  }
  if (!found) throw EvalError("branch value at 0 not located");
  // alpha = sum_j a_j(x) v^j
  auto coeffs = num_.coefficients_in(1);
  std::vector<UPoly> a;
  for (const auto& c : coeffs) a.push_back(to_upoly(c.rename({num_.variables()[0]})));
  Rational D = 0;
  for (std::size_t j = 1; j < a.size(); ++j) {
    Rational aj0 = a[j].empty() ? Rational(0) : a[j][0];
    Rational p = 1;
    for (std::size_t k = 1; k < j; ++k) p *= c0;
    D += Rational(static_cast<long>(j)) * aj0 * p;
  }
  if (D == 0) throw EvalError("alpha_v vanishes at the origin; exact series unavailable");
  UPoly v(N + 1, Rational(0));
  v[0] = c0;
  for (int it = 0; it <= N; ++it) {
    UPoly val(N + 1, Rational(0));
    UPoly pw(N + 1, Rational(0));
    pw[0] = 1;
    for (std::size_t j = 0; j < a.size(); ++j) {
      UPoly t = mul_trunc(a[j], pw, N);
      for (int i = 0; i <= N; ++i) val[i] += t[i];
      if (j + 1 < a.size()) pw = mul_trunc(pw, v, N);
    }
    bool zero = true;
    for (int i = 0; i <= N; ++i)
      if (val[i] != 0) {
        zero = false;
        v[i] -= val[i] / D;
      }
    if (zero) break;
  }
  return v;
}

double SeriesFunc::radius() const {
  if (radius_hint) return *radius_hint;
  switch (kind_) {
    case Kind::Polynomial:
      return INFINITY;
    case Kind::Rational: {
      UPoly n = to_upoly(num_), d = to_upoly(den_);
      UPoly g = poly_gcd(n, d);
      UPoly dr = poly_quo(d, g);
      double r = INFINITY;
      if (deg(dr) >= 1)
        for (const auto& z : complex_roots(dr)) r = std::min(r, std::abs(z));
      return r;
    }
    case Kind::Implicit:
      break;
  }
  MultiPoly disc = resultant(num_, num_.derivative(1), 1);
  auto lc = num_.coefficients_in(1).back();
  MultiPoly crit = disc * lc;
  UPoly u = to_upoly(crit.rename({num_.variables()[0]}));
  trim(u);
  if (deg(u) < 1) return INFINITY;
  std::vector<double> cands;
  for (const auto& z : complex_roots(squarefree_part(u)))
    if (std::abs(z.imag()) < 1e-9 * (1 + std::abs(z)) && z.real() > 1e-12) cands.push_back(z.real());
  std::sort(cands.begin(), cands.end());
  for (double rho : cands) {
    try {
      auto j = jet(cplx(rho * (1 - 1e-7), 0));
      // the branch is singular at rho when its derivative blows up there
      double slope = std::abs(j[1]) * rho / (1 + std::abs(j[0]));
      if (slope > 50) return rho;
    } catch (const EvalError&) {
      return rho;
    }
  }
  return INFINITY;
}

std::pair<int, int> SeriesFunc::period(int N) const {
  std::vector<int> support;
  if (kind_ == Kind::Polynomial) {
    for (const auto& [e, c] : num_.terms()) support.push_back(e[0]);
    std::sort(support.begin(), support.end());
  } else {
    auto c = series(N);
    for (int i = 0; i <= N; ++i)
      if (c[i] != 0) support.push_back(i);
  }
  if (support.empty()) throw std::invalid_argument("zero series");
  int a = support.front(), b = 0;
  for (int e : support) b = std::gcd(b, e - a);
  if (b == 0) b = 1;
  return {a, b};
}

int SeriesFunc::order_at_zero() const { return period().first; }

cplx mu(const SeriesFunc& v, cplx x) {
  auto j = v.jet(x);
  if (std::abs(j[0]) == 0.0) throw EvalError("v vanishes");
  return x * j[1] / j[0];
}

cplx sigma2(const SeriesFunc& v, cplx x) {
  auto j = v.jet(x);
  if (std::abs(j[0]) == 0.0) throw EvalError("v vanishes");
  cplx m = x * j[1] / j[0];
  return x * x * j[2] / j[0] + m - m * m;
}

double mu(const SeriesFunc& v, double x) { return mu(v, cplx(x, 0)).real(); }
double sigma2(const SeriesFunc& v, double x) { return sigma2(v, cplx(x, 0)).real(); }

double solve_mu(const SeriesFunc& v, double lambda) {
  const int A = v.order_at_zero();
  if (lambda <= A)
    throw AnalysisRefusal("empty_direction", "lambda = " + std::to_string(lambda) + " is at or below the order of v at 0");
  const double R = v.radius();
  double hi;
  if (std::isfinite(R)) {
    hi = R * (1 - 1e-10);
    double B = NAN;
    for (int i = 0; i < 8 && std::isnan(B); ++i) {
      try {
        B = mu(v, hi);
      } catch (const EvalError&) {
        hi = R * (1 - std::pow(10.0, -9.0 + i));
      }
    }
    if (std::isnan(B)) throw EvalError("cannot evaluate v near its radius of convergence");
    if (!(lambda < B))
      throw AnalysisRefusal("outside_cone", "lambda = " + std::to_string(lambda) +
                                                " is beyond mu at the radius of convergence (" + std::to_string(B) + ")");
  } else {
    hi = 1.0;
    while (mu(v, hi) <= lambda) {
      hi *= 2;
      if (hi > 1e12)
        throw AnalysisRefusal("outside_cone", "lambda = " + std::to_string(lambda) + " is at or beyond the degree at infinity");
    }
  }
  double lo = 0;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mu(v, mid) < lambda) lo = mid;
    else hi = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    double s = sigma2(v, x);
    if (s <= 0) break;
    double nx = x - (mu(v, x) - lambda) * x / s;
    if (!(nx > 0) || std::abs(nx - x) > 1e-6 * x) break;
    x = nx;
  }
  if (!(sigma2(v, x) > 0)) throw AnalysisRefusal("degenerate", "sigma^2 is not positive at the solution");
  return x;
}

AsymptoticTerm riordan_leading_term(const SeriesFunc& phi, const SeriesFunc& v, long r, long s) {
  if (r <= 0 || s <= 0) throw std::invalid_argument("r and s must be positive");
  const double lambda = static_cast<double>(r) / static_cast<double>(s);
  const double x = solve_mu(v, lambda);
  const double s2 = sigma2(v, x);
  const double vx = v.value(x);
  if (std::abs(phi.value(x)) < 1e-14) throw AnalysisRefusal("higher_order_term", "phi vanishes at the saddle point");
  auto [a, b] = v.period();
  AsymptoticTerm t;
  t.order_exponent = Rational(-1, 2);
  t.normalizing_index = 1;
  t.formula = "x^-r v(x)^s phi(x) / sqrt(2 pi s sigma^2(v;x)), mu(v;x) = r/s";
  t.uniformity_note = "uniform for r/s in compact subsets of the open interval of attainable mu";
  for (const auto& w : roots_of_unity(b)) {
    cplx xk = x * w;
    cplx vk = vx * std::pow(w, a);
    cplx b0 = phi.value(xk) / std::sqrt(2 * M_PI * s2);
    t.components.push_back({{xk, 1.0 / vk}, b0});
    t.points.push_back(make_point({xk, 1.0 / vk}, t.points.empty(), b));
  }
  if (b > 1) t.periodicity = period_note(a, b, "v");
  return t;
}

double lagrange_point(const SeriesFunc& phi) {
  if (phi.series(0).at(0) == 0) throw std::invalid_argument("phi(0) must be nonzero");
  return solve_mu(phi, 1.0);
}

AsymptoticTerm lagrange_univariate(const SeriesFunc& phi, const SeriesFunc& psi, long n) {
  if (n <= 0) throw std::invalid_argument("n must be positive");
  const double y = lagrange_point(phi);
  if (!(psi.radius() > y))
    throw AnalysisRefusal("psi_radius", "psi is not analytic beyond the saddle point y0 = " + std::to_string(y));
  const double s2 = sigma2(phi, y);
  const double py = phi.value(y);
  auto [a, b] = phi.period();
  AsymptoticTerm t;
  t.order_exponent = Rational(-3, 2);
  t.normalizing_index = 0;
  t.formula = "y0 psi'(y0) / sqrt(2 pi sigma^2(phi;y0)) * (phi(y0)/y0)^n n^(-3/2)";
  for (const auto& w : roots_of_unity(b)) {
    cplx yk = y * w;
    cplx pk = py * std::pow(w, a);
    cplx b0 = yk * psi.jet(yk)[1] / std::sqrt(2 * M_PI * s2);
    t.components.push_back({{yk / pk}, b0});
    t.points.push_back(make_point({yk / pk}, t.points.empty(), b));
  }
  if (b > 1) t.periodicity = period_note(a, b, "phi");
  return t;
}

AsymptoticTerm lagrange_power(const SeriesFunc& phi, long n, long k) {
  if (n <= 0 || k <= 0 || k >= n)
    throw AnalysisRefusal("outside_cone", "k/n must lie strictly between 0 and 1");
  const double lambda = static_cast<double>(k) / static_cast<double>(n);
  const double y = solve_mu(phi, 1 - lambda);
  const double s2 = sigma2(phi, y);
  const double py = phi.value(y);
  auto [a, b] = phi.period();
  AsymptoticTerm t;
  t.order_exponent = Rational(-1, 2);
  t.normalizing_index = 0;
  t.formula = "(k/n) y^(k-n) phi(y)^n / sqrt(2 pi n sigma^2(phi;y)), mu(phi;y) = 1 - k/n";
  t.uniformity_note = "b0 carries the factor k/n of the requested (n, k); evaluate along that ray";
  for (const auto& w : roots_of_unity(b)) {
    cplx yk = y * w;
    cplx pk = py * std::pow(w, a);
    t.components.push_back({{yk / pk, 1.0 / yk}, cplx(lambda / std::sqrt(2 * M_PI * s2), 0)});
    t.points.push_back(make_point({yk / pk, 1.0 / yk}, t.points.empty(), b));
  }
  if (b > 1) t.periodicity = period_note(a, b, "phi");
  return t;
}

std::vector<Rational> lagrange_series(const SeriesFunc& phi, const SeriesFunc& psi, int N) {
  // [z^n] psi(f) = (1/n) [w^(n-1)] psi'(w) phi(w)^n
  auto pc = phi.series(N);
  auto qc = psi.series(N);
  std::vector<Rational> dq(N + 1, 0);
  for (int i = 1; i <= N; ++i) dq[i - 1] = qc[i] * i;
  std::vector<Rational> out(N + 1, 0);
  out[0] = qc[0];
  std::vector<Rational> pw(N + 1, 0);
  pw[0] = 1;
  for (int n = 1; n <= N; ++n) {
    std::vector<Rational> next(N, 0);
    for (int i = 0; i < N; ++i) {
      if (pw[i] == 0) continue;
      for (int j = 0; i + j < N; ++j) next[i + j] += pw[i] * pc[j];
    }
    pw.assign(next.begin(), next.end());
    pw.resize(N + 1, 0);
    Rational acc = 0;
    for (int i = 0; i < n; ++i) acc += dq[i] * pw[n - 1 - i];
    out[n] = acc / n;
  }
  return out;
}

double schema_constant(const SeriesFunc& phi, SchemaKind kind) {
  const double y = lagrange_point(phi);
  if (kind == SchemaKind::Sequences) {
    if (!(y < 1)) throw AnalysisRefusal("schema_radius", "sequence schema needs y0 < 1");
    return 1 / ((1 - y) * (1 - y));
  }
  return std::exp(y);
}

EliminationCheck verify_elimination_polynomial(double value, const MultiPoly& poly, double scale) {
  if (poly.is_zero()) throw std::invalid_argument("zero polynomial");
  if (poly.nvars() != 1) throw std::invalid_argument("elimination polynomial must be univariate");
  std::vector<cplx> pt{value};
  if (scale <= 0) scale = poly.abs_scale(pt);
  EliminationCheck c;
  c.residual = std::abs(poly.eval(pt)) / std::max(scale, 1e-300);
  c.pass = c.residual < 1e-8;
  return c;
}

WllnResult wlln_mean(const RationalGF& F, Slicing slicing, int free_index) {
  if (!F.combinatorial)
    throw AnalysisRefusal("needs_combinatorial", "the dominant-root argument needs nonnegative coefficients");
  if (!F.denominator.is_polynomial()) throw std::invalid_argument("wlln needs a polynomial denominator");
  const MultiPoly& H = F.denominator.poly();
  const std::size_t d = F.dim();
  if (free_index < 0) free_index = static_cast<int>(d) - 1;
  if (free_index >= static_cast<int>(d)) throw std::out_of_range("free variable index");
  UPoly u;
  if (slicing == Slicing::LastVariable) {
    MultiPoly h = H;
    for (std::size_t j = 0; j < d; ++j)
      if (static_cast<int>(j) != free_index) h = h.specialize(j, 1);
    u = to_upoly(h.rename({F.variables[free_index]}));
  } else {
    for (const auto& [e, c] : H.terms()) {
      std::size_t k = std::accumulate(e.begin(), e.end(), 0);
      if (u.size() <= k) u.resize(k + 1, Rational(0));
      u[k] += c;
    }
  }
  trim(u);
  if (deg(u) < 1) throw AnalysisRefusal("no_root", "specialized denominator is constant");
  UPoly sq = squarefree_part(u);
  std::optional<double> x0;
  for (const auto& iv : isolate_real_roots(sq)) {
    if (iv.hi <= 0) continue;
    AlgebraicNumber r = refine_root(from_upoly(sq, {"x"}, 0), iv, 1e-15);
    if (r.value > 0) {
      x0 = r.value;
      break;
    }
  }
  if (!x0) throw AnalysisRefusal("no_root", "specialized denominator has no positive root");
  WllnResult res;
  res.x0 = *x0;
  double slope = std::abs(eval(derivative(u), *x0));
  double scale = 0;
  for (std::size_t k = 1; k < u.size(); ++k) scale += std::abs(k * u[k].get_d() * std::pow(*x0, k - 1.0));
  if (slope < 1e-10 * scale) throw AnalysisRefusal("not_simple", "the smallest positive root is not simple");
  double other = INFINITY;
  for (const auto& z : complex_roots(sq))
    if (std::abs(z - cplx(*x0, 0)) > 1e-7 * (1 + *x0)) other = std::min(other, std::abs(z));
  res.dominance_ratio = other / *x0;
  if (!(res.dominance_ratio > 1 + 1e-9))
    throw AnalysisRefusal("not_dominant", "another root has the same modulus as the smallest positive root");
  if (slicing == Slicing::LastVariable) {
    res.point.assign(d, cplx(1, 0));
    res.point[free_index] = *x0;
  } else {
    res.point.assign(d, cplx(*x0, 0));
  }
  for (std::size_t j = 0; j < d; ++j)
    res.mean.push_back((res.point[j] * H.derivative(j).eval(res.point)).real());
  double norm = slicing == Slicing::LastVariable ? res.mean[free_index]
                                                 : std::accumulate(res.mean.begin(), res.mean.end(), 0.0);
  for (auto& m : res.mean) m /= norm;
  return res;
}

double riordan_B(const SeriesFunc& v, double r, double s) {
  double m = mu(v, 1.0), s2 = sigma2(v, 1.0);
  if (!(s2 > 0)) throw AnalysisRefusal("degenerate", "sigma^2(v;1) is not positive");
  return (s - m * r) * (s - m * r) / s2;
}

}  // namespace acsv
