#include "acsv/critical.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace acsv {

namespace {

MultiPoly factor_poly(const RationalGF& F, int k) {
  auto fac = F.sheet_factors();
  if (k < 0 || k >= static_cast<int>(fac.size())) throw std::out_of_range("factor index out of range");
  return fac[k].first.rename(F.variables);
}

MultiPoly log_derivative(const MultiPoly& h, std::size_t j) {
  return MultiPoly::variable(h.variables(), j) * h.derivative(j);
}

AnalyticExpr log_derivative(const AnalyticExpr& h, std::size_t j) {
  return AnalyticExpr(MultiPoly::variable(h.variables(), j)) * h.derivative(j);
}

double rel_value(const AnalyticExpr& e, const std::vector<cplx>& z) {
  cplx v = e.eval(z);
  double scale = e.is_polynomial() ? e.poly().abs_scale(z) : 1.0;
  return std::abs(v) / std::max(scale, 1e-300);
}

bool has_zero_coordinate(const std::vector<cplx>& z, double tol = 1e-12) {
  for (const auto& c : z)
    if (std::abs(c) <= tol) return true;
  return false;
}

struct Equations {
  std::vector<AnalyticExpr> f;
  std::vector<std::vector<AnalyticExpr>> jac;
};

Equations with_jacobian(const std::vector<AnalyticExpr>& eqs) {
  Equations E{eqs, {}};
  for (const auto& e : eqs) {
    std::vector<AnalyticExpr> row;
    for (std::size_t j = 0; j < e.variables().size(); ++j) row.push_back(e.derivative(j));
    E.jac.push_back(row);
  }
  return E;
}

// complex Newton polish on a square system, used to clean up paired roots
std::vector<cplx> polish(const Equations& E, std::vector<cplx> z, int iters = 8) {
  const int n = static_cast<int>(z.size());
  for (int it = 0; it < iters; ++it) {
    Eigen::VectorXcd f(n);
    Eigen::MatrixXcd J(n, n);
    for (int i = 0; i < n; ++i) {
      f(i) = E.f[i].eval(z);
      for (int j = 0; j < n; ++j) J(i, j) = E.jac[i][j].eval(z);
    }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(J);
    if (lu.rank() < n) break;
    Eigen::VectorXcd dz = lu.solve(-f);
    double nz = 0, nd = 0;
    for (int i = 0; i < n; ++i) {
      nz += std::abs(z[i]);
      nd += std::abs(dz(i));
    }
    if (!std::isfinite(nd) || nd > 1e-2 * (1 + nz)) break;
    for (int i = 0; i < n; ++i) z[i] += dz(i);
    if (nd <= 1e-15 * (1 + nz)) break;
  }
  return z;
}

double system_residual(const std::vector<AnalyticExpr>& eqs, const std::vector<cplx>& z) {
  double r = 0;
  for (const auto& e : eqs) r = std::max(r, rel_value(e, z));
  return r;
}

MultiPoly eliminant(const MultiPoly& p, const MultiPoly& q, std::size_t var) {
  if (p.degree(var) <= 0) return p;
  if (q.degree(var) <= 0) return q;
  return resultant(p, q, var);
}

struct Root {
  cplx value;
  std::optional<AlgebraicNumber> exact;
};

std::vector<Root> eliminant_roots(const MultiPoly& e, std::size_t var, bool include_complex) {
  const auto& vars = e.variables();
  MultiPoly u = e.rename({vars[var]});
  UPoly up = squarefree_part(to_upoly(u));
  std::vector<Root> out;
  if (deg(up) < 1) return out;
  MultiPoly spoly = from_upoly(up, {vars[var]}, 0);
  for (const auto& iv : isolate_real_roots(up)) {
    AlgebraicNumber a = refine_root(spoly, iv, 1e-14);
    a.poly = from_upoly(minimal_polynomial(up, a.value), {vars[var]}, 0);
    out.push_back({cplx(a.value, 0.0), a});
  }
  if (include_complex) {
    for (const auto& c : complex_roots(up))
      if (std::abs(c.imag()) > 1e-9 * (1 + std::abs(c))) out.push_back({c, std::nullopt});
  }
  return out;
}

std::vector<CriticalPoint> dedup(std::vector<CriticalPoint> pts, double tol) {
  std::sort(pts.begin(), pts.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    for (std::size_t i = 0; i < a.z.size(); ++i) {
      if (a.z[i].real() != b.z[i].real()) return a.z[i].real() < b.z[i].real();
      if (a.z[i].imag() != b.z[i].imag()) return a.z[i].imag() < b.z[i].imag();
    }
    return false;
  });
  std::vector<CriticalPoint> out;
  for (auto& p : pts) {
    bool dup = false;
    for (const auto& q : out) {
      double d = 0, s = 1;
      for (std::size_t i = 0; i < p.z.size(); ++i) {
        d = std::max(d, std::abs(p.z[i] - q.z[i]));
        s = std::max(s, std::abs(p.z[i]));
      }
      if (d <= tol * s) dup = true;
    }
    if (!dup) out.push_back(std::move(p));
  }
  return out;
}

SolveResult solve_exact_2d(const std::vector<AnalyticExpr>& eqs, const SolveOptions& opts) {
  const MultiPoly& p = eqs[0].poly();
  const MultiPoly& q = eqs[1].poly();
  MultiPoly ex = eliminant(p, q, 1);
  MultiPoly ey = eliminant(p, q, 0);
  if (ex.is_zero() || ey.is_zero())
    throw AnalysisRefusal("non_zero_dimensional", "critical system is not zero-dimensional (eliminant vanishes identically)");
  if (ex.is_constant() || ey.is_constant()) return {};
  auto xr = eliminant_roots(ex, 0, opts.include_complex);
  auto yr = eliminant_roots(ey, 1, opts.include_complex);
  Equations E = with_jacobian(eqs);
  std::vector<CriticalPoint> pts;
  for (const auto& a : xr) {
    for (const auto& b : yr) {
      std::vector<cplx> z{a.value, b.value};
      double res = system_residual(eqs, z);
      if (res > 1e-6) continue;
      z = polish(E, z);
      CriticalPoint cp;
      cp.z = z;
      // keep exactly real coordinates real
      if (a.exact) cp.z[0] = a.value;
      if (b.exact) cp.z[1] = b.value;
      cp.exact = {a.exact, b.exact};
      cp.residual = system_residual(eqs, cp.z);
      if (cp.residual > 1e-6) continue;
      pts.push_back(cp);
    }
  }
  return {dedup(std::move(pts), opts.dedup_tol), {}};
}

SolveResult solve_numeric(const std::vector<AnalyticExpr>& eqs, const SolveOptions& opts) {
  const std::size_t d = eqs[0].variables().size();
  if (eqs.size() != d) throw std::invalid_argument("numeric solver needs a square system");
  Equations E = with_jacobian(eqs);
  std::vector<double> lo = opts.box_lo, hi = opts.box_hi;
  if (lo.empty()) lo.assign(d, 1e-3);
  if (hi.empty()) hi.assign(d, 10.0);
  if (lo.size() != d || hi.size() != d) throw std::invalid_argument("box dimension mismatch");
  const int g = std::max(opts.grid, 1);
  auto grid_value = [&](std::size_t i, int k) {
    if (g == 1) return std::sqrt(lo[i] * hi[i]);
    return lo[i] * std::pow(hi[i] / lo[i], static_cast<double>(k) / (g - 1));
  };
  auto residual_norm = [&](const std::vector<double>& z, Eigen::VectorXd* f) {
    std::vector<cplx> zc(z.begin(), z.end());
    Eigen::VectorXd v(d);
    for (std::size_t i = 0; i < d; ++i) v(i) = E.f[i].eval(zc).real();
    if (f) *f = v;
    return v.norm();
  };
  std::vector<CriticalPoint> pts;
  SolveResult out;
  long total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= g;
  int failures = 0;
  for (long s = 0; s < total; ++s) {
    std::vector<double> z(d);
    long t = s;
    for (std::size_t i = 0; i < d; ++i) {
      z[i] = grid_value(i, static_cast<int>(t % g));
      t /= g;
    }
    bool converged = false;
    try {
      Eigen::VectorXd f;
      double fn = residual_norm(z, &f);
      for (int it = 0; it < opts.max_iter && std::isfinite(fn); ++it) {
        Eigen::MatrixXd J(d, d);
        std::vector<cplx> zc(z.begin(), z.end());
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < d; ++j) J(i, j) = E.jac[i][j].eval(zc).real();
        Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
        if (lu.rank() < static_cast<long>(d)) break;
        Eigen::VectorXd dz = lu.solve(-f);
        double lam = 1.0;
        std::vector<double> nz(d);
        double nfn = INFINITY;
        Eigen::VectorXd nf;
        while (lam > 1e-6) {
          for (std::size_t i = 0; i < d; ++i) nz[i] = z[i] + lam * dz(i);
          nfn = residual_norm(nz, &nf);
          if (std::isfinite(nfn) && nfn < fn * (1 - 1e-4 * lam)) break;
          if (std::isfinite(nfn) && fn < 1e-14) break;
          lam *= 0.5;
        }
        if (!std::isfinite(nfn)) break;
        double step = lam * dz.norm();
        double zn = 0;
        for (double v : z) zn = std::max(zn, std::abs(v));
        z = nz;
        f = nf;
        fn = nfn;
        if (step <= opts.tol * (1 + zn) || fn == 0.0) {
          converged = true;
          break;
        }
      }
      std::vector<cplx> zc(z.begin(), z.end());
      if (!converged && system_residual(eqs, zc) <= opts.residual_tol) converged = true;
      if (!converged) {
        ++failures;
        continue;
      }
      CriticalPoint cp;
      cp.z = zc;
      cp.exact.assign(d, std::nullopt);
      cp.residual = system_residual(eqs, zc);
      if (cp.residual > opts.residual_tol * 100) {
        ++failures;
        continue;
      }
      pts.push_back(cp);
    } catch (const EvalError&) {
      ++failures;
    }
  }
  if (failures > 0)
    out.warnings.push_back("Newton did not converge from " + std::to_string(failures) + " of " +
                           std::to_string(total) + " starts");
  out.points = dedup(std::move(pts), opts.dedup_tol);
  return out;
}

}  // namespace

CriticalSystem critical_system(const RationalGF& F, const Direction& dir, const std::vector<int>& sheets) {
  const std::size_t d = F.dim();
  if (dir.dim() != d) throw std::invalid_argument("direction dimension differs from variable count");
  for (long v : dir.r)
    if (v <= 0) throw std::invalid_argument("direction entries must be positive");
  CriticalSystem cs;
  cs.sheets = sheets;
  if (sheets.size() <= 1) {
    AnalyticExpr H;
    if (sheets.empty()) {
      auto fac = F.sheet_factors();
      H = fac.size() == 1 ? AnalyticExpr(fac[0].first.rename(F.variables)) : F.denominator;
    } else {
      H = AnalyticExpr(factor_poly(F, sheets[0]));
    }
    cs.equations.push_back(H);
    AnalyticExpr Ld = log_derivative(H, d - 1);
    const MultiPoly one = MultiPoly::constant(F.variables, 1);
    for (std::size_t j = 0; j + 1 < d; ++j) {
      AnalyticExpr Lj = log_derivative(H, j);
      cs.equations.push_back(AnalyticExpr(one * Rational(dir.r[d - 1])) * Lj -
                             AnalyticExpr(one * Rational(dir.r[j])) * Ld);
    }
    return cs;
  }
  std::vector<MultiPoly> hs;
  for (int k : sheets) hs.push_back(factor_poly(F, k));
  for (const auto& h : hs) cs.equations.push_back(AnalyticExpr(h));
  if (hs.size() == d) return cs;
  if (hs.size() + 1 != d)
    throw std::invalid_argument("intersection strata are supported for m = d or m = d - 1 sheets");
  std::vector<std::vector<MultiPoly>> M;
  std::vector<MultiPoly> row;
  for (std::size_t j = 0; j < d; ++j) row.push_back(MultiPoly::constant(F.variables, Rational(dir.r[j])));
  M.push_back(row);
  for (const auto& h : hs) {
    row.clear();
    for (std::size_t j = 0; j < d; ++j) row.push_back(log_derivative(h, j));
    M.push_back(row);
  }
  cs.equations.push_back(AnalyticExpr(bareiss_det(M)));
  return cs;
}

double height(const std::vector<cplx>& z, const Direction& dir) {
  auto u = dir.unit();
  double h = 0;
  for (std::size_t i = 0; i < z.size(); ++i) h -= u[i] * std::log(std::abs(z[i]));
  return h;
}

double critical_residual(const RationalGF& F, const Direction& dir, const std::vector<cplx>& z,
                         const std::vector<int>& sheets) {
  return system_residual(critical_system(F, dir, sheets).equations, z);
}

SolveResult solve_critical_points(const RationalGF& F, const Direction& dir, const SolveOptions& opts,
                                  const std::vector<int>& sheets) {
  CriticalSystem cs = critical_system(F, dir, sheets);
  bool polynomial = std::all_of(cs.equations.begin(), cs.equations.end(),
                                [](const AnalyticExpr& e) { return e.is_polynomial(); });
  SolveResult res;
  if (opts.backend == Backend::Exact && polynomial && F.dim() == 2) {
    res = solve_exact_2d(cs.equations, opts);
  } else {
    if (opts.backend == Backend::Exact)
      res.warnings.push_back("exact elimination needs a polynomial system in two variables; used numeric backend");
    auto nr = solve_numeric(cs.equations, opts);
    res.points = nr.points;
    res.warnings.insert(res.warnings.end(), nr.warnings.begin(), nr.warnings.end());
  }
  for (auto& p : res.points) {
    p.sheets = sheets;
    if (!has_zero_coordinate(p.z)) p.height = height(p.z, dir);
    else p.height = INFINITY;
  }
  return res;
}

SolveResult solve_all_strata(const RationalGF& F, const Direction& dir, const SolveOptions& opts) {
  auto fac = F.sheet_factors();
  SolveResult all;
  if (fac.size() <= 1) {
    all = solve_critical_points(F, dir, opts, {});
    for (auto& p : all.points) p.sheets = {0};
    return all;
  }
  const int m = static_cast<int>(fac.size());
  const int d = static_cast<int>(F.dim());
  auto add = [&](const std::vector<int>& sheets) {
    try {
      auto r = solve_critical_points(F, dir, opts, sheets);
      for (auto& p : r.points) all.points.push_back(p);
      for (auto& w : r.warnings)
        if (std::find(all.warnings.begin(), all.warnings.end(), w) == all.warnings.end()) all.warnings.push_back(w);
    } catch (const std::invalid_argument& e) {
      all.warnings.push_back(e.what());
    } catch (const AnalysisRefusal& e) {
      all.warnings.push_back(std::string("stratum skipped: ") + e.what());
    }
  };
  for (int k = 0; k < m; ++k) add({k});
  // subsets of size 2..min(m,d) with size >= d-1
  for (int mask = 1; mask < (1 << m); ++mask) {
    int c = __builtin_popcount(static_cast<unsigned>(mask));
    if (c < 2 || c > d || c < d - 1) continue;
    std::vector<int> s;
    for (int k = 0; k < m; ++k)
      if (mask & (1 << k)) s.push_back(k);
    add(s);
  }
  return all;
}

PointClass classify_point(const RationalGF& F, const std::vector<cplx>& z, double tol) {
  CriticalPoint p;
  p.z = z;
  return classify_point(F, p, tol);
}

PointClass classify_point(const RationalGF& F, CriticalPoint& p, double tol) {
  auto fac = F.sheet_factors();
  const std::size_t d = F.dim();
  p.sheets.clear();
  if (fac.empty()) {
    // transcendental H: smooth iff the gradient is nonzero
    double g = 0;
    for (std::size_t j = 0; j < d; ++j) g = std::max(g, std::abs(F.denominator.derivative(j).eval(p.z)));
    p.classification = g > tol ? PointClass::Smooth : PointClass::Bad;
    if (p.classification == PointClass::Smooth) p.sheets = {0};
    return p.classification;
  }
  bool ambiguous = false;
  std::vector<std::vector<cplx>> grads;
  for (std::size_t k = 0; k < fac.size(); ++k) {
    MultiPoly h = fac[k].first.rename(F.variables);
    double v = std::abs(h.eval(p.z)) / std::max(h.abs_scale(p.z), 1e-300);
    if (v <= tol) {
      p.sheets.push_back(static_cast<int>(k));
      std::vector<cplx> g;
      for (std::size_t j = 0; j < d; ++j) g.push_back(h.derivative(j).eval(p.z));
      grads.push_back(g);
    } else if (v <= 1e3 * tol) {
      ambiguous = true;
    }
  }
  if (ambiguous || p.sheets.empty()) {
    p.classification = PointClass::Unclassified;
    return p.classification;
  }
  for (const auto& g : grads) {
    double n = 0;
    for (const auto& c : g) n = std::max(n, std::abs(c));
    if (n <= tol) {
      p.classification = PointClass::Bad;
      return p.classification;
    }
  }
  if (grads.size() == 1) {
    p.classification = PointClass::Smooth;
    return p.classification;
  }
  Eigen::MatrixXcd G(grads.size(), d);
  for (std::size_t k = 0; k < grads.size(); ++k) {
    double n = 0;
    for (const auto& c : grads[k]) n += std::norm(c);
    n = std::sqrt(n);
    for (std::size_t j = 0; j < d; ++j) G(k, j) = grads[k][j] / n;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(G);
  auto sv = svd.singularValues();
  const long need = static_cast<long>(std::min(grads.size(), d));
  long rank = 0;
  for (long i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-8) ++rank;
  // any k of the gradients must span min(k, d) dimensions; checking the full set
  // and every pair covers the corpus (m <= d + 1)
  bool ok = rank >= need;
  for (std::size_t a = 0; a < grads.size() && ok; ++a)
    for (std::size_t b = a + 1; b < grads.size() && ok; ++b) {
      Eigen::MatrixXcd P(2, d);
      P.row(0) = G.row(a);
      P.row(1) = G.row(b);
      Eigen::JacobiSVD<Eigen::MatrixXcd> s2(P);
      if (s2.singularValues()(1) <= 1e-8) ok = false;
    }
  p.classification = ok ? PointClass::Multiple : PointClass::Bad;
  return p.classification;
}

namespace {

// smallest t in (0, 1 - eps) with h(t * p) = 0, for polynomial h
std::optional<double> first_ray_root(const MultiPoly& h, const std::vector<double>& p) {
  int D = h.total_degree();
  if (D < 1) return std::nullopt;
  std::vector<double> c(D + 1, 0.0);
  for (const auto& [e, coef] : h.terms()) {
    double t = coef.get_d();
    int k = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      t *= std::pow(p[i], e[i]);
      k += e[i];
    }
    c[k] += t;
  }
  double scale = 0;
  for (double v : c) scale = std::max(scale, std::abs(v));
  UPoly u(D + 1);
  for (int k = 0; k <= D; ++k) {
    // drop roundoff noise so exact cancellations stay exact
    double v = std::abs(c[k]) <= 1e-14 * scale ? 0.0 : c[k];
    u[k] = Rational(v);
  }
  trim(u);
  if (deg(u) < 1) return std::nullopt;
  UPoly sp = squarefree_part(u);
  std::optional<double> best;
  MultiPoly spoly = from_upoly(sp, {"t"}, 0);
  for (const auto& iv : isolate_real_roots(sp)) {
    if (iv.hi <= 0) continue;
    AlgebraicNumber a = refine_root(spoly, iv, 1e-13);
    if (a.value > 1e-12 && a.value < 1 - 1e-8) {
      if (!best || a.value < *best) best = a.value;
    }
  }
  return best;
}

std::optional<double> first_ray_root(const AnalyticExpr& h, const std::vector<double>& p) {
  const int n = 4000;
  auto at = [&](double t) {
    std::vector<double> q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[i] = t * p[i];
    return h.eval(q);
  };
  double prev = at(1e-9);
  for (int k = 1; k <= n; ++k) {
    double t = (1 - 1e-6) * k / n;
    double v = at(t);
    if (v == 0.0 || (v > 0) != (prev > 0)) return t;
    prev = v;
  }
  return std::nullopt;
}

bool one_minus_nonneg(const MultiPoly& h) {
  Rational c0 = h.constant_term();
  if (c0 == 0) return false;
  for (const auto& [e, c] : h.terms()) {
    bool zero = std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
    if (zero) continue;
    if (sgn(c) == sgn(c0)) return false;
  }
  return true;
}

}  // namespace

MinimalityReport is_minimal(const RationalGF& F, const std::vector<cplx>& z) {
  if (has_zero_coordinate(z)) throw std::invalid_argument("minimality needs nonzero coordinates");
  const std::size_t d = z.size();
  std::vector<double> p;
  for (const auto& c : z) p.push_back(std::abs(c));
  auto fac = F.sheet_factors();
  MinimalityReport rep;
  std::optional<double> blocked;
  if (fac.empty()) {
    blocked = first_ray_root(F.denominator, p);
  } else {
    for (const auto& [h, n] : fac) {
      auto t = first_ray_root(h.rename(F.variables), p);
      if (t && (!blocked || *t < *blocked)) blocked = t;
    }
  }
  if (blocked) {
    rep.status = Minimality::NotMinimal;
    rep.evidence = "denominator vanishes at t = " + std::to_string(*blocked) + " on the segment to |z|";
    return rep;
  }
  bool positive = true;
  for (const auto& c : z)
    if (c.real() <= 0 || std::abs(c.imag()) > 1e-10 * std::abs(c)) positive = false;

  // fast path: H = 1 - P with P >= 0 and aperiodic
  if (F.combinatorial && positive && fac.size() == 1 && one_minus_nonneg(fac[0].first)) {
    MultiPoly P = fac[0].first.rename(F.variables) * (-1 / fac[0].first.constant_term());
    P.add_term(Exponent(d, 0), 1);
    if (aperiodicity_check(P).aperiodic) {
      rep.status = Minimality::StrictlyMinimal;
      rep.evidence = "H = 1 - P with P >= 0 aperiodic; no root on the segment";
      return rep;
    }
  }
  // torus scan on the arguments (heuristic)
  const int g = d <= 2 ? 96 : (d == 3 ? 24 : 10);
  long total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= g;
  // near a strictly minimal point |H| grows at least quadratically in the angle,
  // so compare against dist^2 rather than a fixed floor
  double min_other = INFINITY;
  for (long s = 1; s < total; ++s) {
    std::vector<cplx> w(d);
    long t = s;
    double dist = 0;
    for (std::size_t i = 0; i < d; ++i) {
      int k = static_cast<int>(t % g);
      t /= g;
      double th = 2 * M_PI * k / g;
      dist = std::max(dist, std::min(th, 2 * M_PI - th));
      w[i] = z[i] * std::polar(1.0, th);
    }
    if (dist < 2 * M_PI / g * 1.5) continue;
    double v = INFINITY;
    if (fac.empty()) {
      v = std::abs(F.denominator.eval(w));
    } else {
      for (const auto& [h, n] : fac) {
        MultiPoly hh = h.rename(F.variables);
        v = std::min(v, std::abs(hh.eval(w)) / std::max(hh.abs_scale(w), 1e-300));
      }
    }
    min_other = std::min(min_other, v / (dist * dist));
  }
  rep.heuristic = true;
  bool clean = min_other > 5e-2;
  if (F.combinatorial) {
    rep.status = clean ? Minimality::StrictlyMinimal : Minimality::Minimal;
    rep.evidence = clean ? "no root on the segment; torus scan found no other zero (heuristic)"
                         : "no root on the segment; torus scan found other near-zeros on the torus";
  } else {
    rep.status = clean ? Minimality::StrictlyMinimal : Minimality::Unknown;
    rep.evidence = clean ? "segment clear along the ray only; torus scan clean (heuristic)"
                         : "segment clear along the ray only; torus scan inconclusive";
  }
  return rep;
}

Lattice aperiodicity_check(const MultiPoly& P, bool relative_to_origin) {
  if (P.is_zero()) throw std::invalid_argument("aperiodicity check of the zero polynomial");
  const std::size_t d = P.nvars();
  std::vector<std::vector<long>> rows;
  const Exponent* first = nullptr;
  for (const auto& [e, c] : P.terms()) {
    if (relative_to_origin) {
      rows.emplace_back(e.begin(), e.end());
    } else {
      if (!first) {
        first = &e;
        continue;
      }
      std::vector<long> v(d);
      for (std::size_t i = 0; i < d; ++i) v[i] = e[i] - (*first)[i];
      rows.push_back(v);
    }
  }
  // Hermite-style echelon form by gcd row operations
  std::vector<std::vector<long>> basis;
  std::size_t col = 0;
  while (col < d && !rows.empty()) {
    // bring gcd of column into one row
    for (;;) {
      std::size_t piv = rows.size();
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i][col] != 0 && (piv == rows.size() || std::abs(rows[i][col]) < std::abs(rows[piv][col]))) piv = i;
      if (piv == rows.size()) break;
      bool done = true;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == piv || rows[i][col] == 0) continue;
        long q = rows[i][col] / rows[piv][col];
        for (std::size_t j = 0; j < d; ++j) rows[i][j] -= q * rows[piv][j];
        if (rows[i][col] != 0) done = false;
      }
      if (done) {
        auto r = rows[piv];
        if (r[col] < 0)
          for (auto& v : r) v = -v;
        basis.push_back(r);
        rows.erase(rows.begin() + static_cast<long>(piv));
        break;
      }
    }
    rows.erase(std::remove_if(rows.begin(), rows.end(),
                              [](const std::vector<long>& r) {
                                return std::all_of(r.begin(), r.end(), [](long v) { return v == 0; });
                              }),
               rows.end());
    ++col;
  }
  Lattice L;
  L.basis = basis;
  L.rank = static_cast<int>(basis.size());
  if (L.rank == static_cast<int>(d)) {
    long idx = 1;
    for (std::size_t i = 0; i < d; ++i) {
      // echelon rows have their pivot in successive columns only when full rank
      long pv = 0;
      for (std::size_t j = 0; j < d; ++j)
        if (basis[i][j] != 0) {
          pv = basis[i][j];
          break;
        }
      idx *= std::abs(pv);
    }
    L.index = idx;
    L.aperiodic = (idx == 1);
  }
  return L;
}

std::vector<std::vector<Rational>> torus_companions(const Lattice& L) {
  if (L.basis.empty()) throw std::invalid_argument("empty lattice");
  const std::size_t d = L.basis[0].size();
  if (L.rank != static_cast<int>(d)) throw std::invalid_argument("lattice is not of full rank: infinitely many companions");
  // inverse of the integer basis over Q
  std::vector<std::vector<Rational>> A(d, std::vector<Rational>(2 * d, Rational(0)));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) A[i][j] = L.basis[i][j];
    A[i][d + i] = 1;
  }
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t p = c;
    while (A[p][c] == 0) ++p;
    std::swap(A[p], A[c]);
    Rational inv = 1 / A[c][c];
    for (auto& v : A[c]) v *= inv;
    for (std::size_t i = 0; i < d; ++i) {
      if (i == c || A[i][c] == 0) continue;
      Rational f = A[i][c];
      for (std::size_t j = 0; j < 2 * d; ++j) A[i][j] -= f * A[c][j];
    }
  }
  std::set<std::vector<Rational>> seen;
  const long D = L.index;
  long total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= D;
  for (long s = 0; s < total; ++s) {
    std::vector<long> k(d);
    long t = s;
    for (std::size_t i = 0; i < d; ++i) {
      k[i] = t % D;
      t /= D;
    }
    std::vector<Rational> th(d, Rational(0));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) th[i] += A[i][d + j] * k[j];
      // reduce mod 1
      mpz_class fl;
      mpz_fdiv_q(fl.get_mpz_t(), th[i].get_num_mpz_t(), th[i].get_den_mpz_t());
      th[i] -= fl;
    }
    seen.insert(th);
  }
  return {seen.begin(), seen.end()};
}

std::vector<double> cone_coordinates(const RationalGF& F, const std::vector<cplx>& z,
                                     const std::vector<int>& sheets, const Direction& dir) {
  const std::size_t d = F.dim();
  Eigen::MatrixXd G(d, sheets.size());
  for (std::size_t k = 0; k < sheets.size(); ++k) {
    MultiPoly h = factor_poly(F, sheets[k]);
    Eigen::VectorXd g(d);
    for (std::size_t j = 0; j < d; ++j) g(j) = log_derivative(h, j).eval(z).real();
    if (g.sum() < 0) g = -g;
    G.col(static_cast<long>(k)) = g / g.lpNorm<1>();
  }
  Eigen::VectorXd r(d);
  auto u = dir.unit();
  for (std::size_t j = 0; j < d; ++j) r(j) = u[j];
  Eigen::VectorXd c = G.colPivHouseholderQr().solve(r);
  return {c.data(), c.data() + c.size()};
}

ContribResult contrib(const RationalGF& F, const Direction& dir, const SolveOptions& opts) {
  ContribResult out;
  SolveOptions o = opts;
  if (!F.denominator.is_polynomial() && F.factors.empty()) o.backend = Backend::Numeric;
  auto all = solve_all_strata(F, dir, o);
  out.warnings = all.warnings;
  for (const auto& [h, n] : F.sheet_factors()) {
    if (h.size() == 2) {
      auto it = h.terms().begin();
      Rational a = it->second, b = std::next(it)->second;
      if (a == -b) out.warnings.push_back("binomial-variety factor " + h.to_string() +
                                          " present: strict convexity of log D is assumed, not verified");
    }
  }
  for (auto& p : all.points) {
    if (has_zero_coordinate(p.z)) {
      p.minimal = Minimality::NotMinimal;
      p.notes.push_back("zero coordinate: infinite height, never contributes");
      p.height = INFINITY;
      out.candidates.push_back(p);
      continue;
    }
    auto stratum = p.sheets;
    classify_point(F, p);
    if (p.sheets.empty()) p.sheets = stratum;
    auto rep = is_minimal(F, p.z);
    p.minimal = rep.status;
    p.minimality_heuristic = rep.heuristic;
    p.notes.push_back(rep.evidence);
    if (p.classification == PointClass::Multiple && p.sheets.size() >= 2) {
      auto c = cone_coordinates(F, p.z, p.sheets, dir);
      bool inside = std::all_of(c.begin(), c.end(), [](double v) { return v > 1e-10; });
      bool boundary = !inside && std::all_of(c.begin(), c.end(), [](double v) { return v > -1e-10; });
      if (!inside) p.notes.push_back(boundary ? "direction on the boundary of the cone K(z)" : "direction outside the cone K(z)");
    }
    out.candidates.push_back(p);
  }
  std::stable_sort(out.candidates.begin(), out.candidates.end(),
                   [](const CriticalPoint& a, const CriticalPoint& b) { return a.height < b.height; });
  if (!F.combinatorial) {
    out.ranked_only = true;
    out.warnings.push_back("non-combinatorial input: candidates ranked by height, none selected");
    return out;
  }
  std::vector<const CriticalPoint*> good;
  for (const auto& p : out.candidates) {
    if (!p.is_positive(1e-9)) continue;
    if (p.minimal == Minimality::NotMinimal || p.minimal == Minimality::Unknown) continue;
    if (p.classification == PointClass::Multiple) {
      bool outside = std::any_of(p.notes.begin(), p.notes.end(),
                                 [](const std::string& s) { return s.find("cone K(z)") != std::string::npos; });
      if (outside) continue;
    } else if (p.classification != PointClass::Smooth) {
      continue;
    }
    good.push_back(&p);
  }
  if (good.empty())
    throw AnalysisRefusal("outside_cone", "no minimal critical point in the positive orthant for direction " +
                                              dir.to_string() + " (direction outside the supported cone)");
  const CriticalPoint& best = *good.front();
  out.contributing.push_back(best);
  // periodic companions on the same torus
  auto fac = F.sheet_factors();
  if (fac.size() == 1) {
    MultiPoly h = fac[0].first.rename(F.variables);
    Rational c0 = h.constant_term();
    if (c0 != 0) {
      MultiPoly P = h * (-1 / c0);
      P.add_term(Exponent(F.dim(), 0), 1);
      if (!P.is_zero()) {
        out.lattice = aperiodicity_check(P);
        if (!out.lattice.aperiodic && out.lattice.rank == static_cast<int>(F.dim())) {
          for (const auto& th : torus_companions(out.lattice)) {
            bool zero = std::all_of(th.begin(), th.end(), [](const Rational& t) { return t == 0; });
            if (zero) continue;
            CriticalPoint q = best;
            for (std::size_t i = 0; i < q.z.size(); ++i) q.z[i] = best.z[i] * std::polar(1.0, 2 * M_PI * th[i].get_d());
            q.exact.assign(q.z.size(), std::nullopt);
            q.minimal = Minimality::Minimal;
            q.notes = {"torus companion of the positive point"};
            out.contributing.push_back(q);
          }
          out.contributing.front().minimal = Minimality::Minimal;
        }
      }
    }
  }
  return out;
}

}  // namespace acsv
