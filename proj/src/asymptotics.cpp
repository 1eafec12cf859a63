#include "acsv/asymptotics.hpp"

#include <algorithm>
#include <cmath>

namespace acsv {

namespace {

constexpr double kTwoPi = 2 * M_PI;

struct Local {
  AnalyticExpr H;  // product of the factors vanishing at z
  cplx G;
};

// splits F at one point into the vanishing part of H and the effective numerator
Local localize(const RationalGF& F, const CriticalPoint& p) {
  auto fac = F.sheet_factors();
  cplx G = F.numerator_at(p.z);
  if (F.factors.empty()) return {F.denominator, G};
  std::vector<int> sheets = p.sheets;
  if (sheets.empty()) {
    for (std::size_t k = 0; k < fac.size(); ++k) {
      MultiPoly h = fac[k].first.rename(F.variables);
      if (std::abs(h.eval(p.z)) <= 1e-8 * std::max(h.abs_scale(p.z), 1e-300)) sheets.push_back(static_cast<int>(k));
    }
  }
  Rational prod0 = 1;
  for (const auto& [h, n] : fac) {
    Rational c = h.constant_term();
    for (int i = 0; i < n; ++i) prod0 *= c;
  }
  Rational unit;
  if (prod0 != 0) {
    unit = F.denominator.series(0).constant_term() / prod0;
  } else {
    // H(0) = 0: check_factors already matched the product exactly, compare one coefficient
    MultiPoly prod = MultiPoly::constant(F.variables, 1);
    for (const auto& [h, n] : fac) prod *= pow(h.rename(F.variables), static_cast<unsigned>(n));
    const auto& [e, c] = *prod.terms().begin();
    unit = F.denominator.poly().coefficient(e) / c;
  }
  MultiPoly Hs = MultiPoly::constant(F.variables, 1);
  cplx rest = unit.get_d();
  for (std::size_t k = 0; k < fac.size(); ++k) {
    MultiPoly h = fac[k].first.rename(F.variables);
    bool on = std::find(sheets.begin(), sheets.end(), static_cast<int>(k)) != sheets.end();
    if (on) {
      if (fac[k].second != 1)
        throw AnalysisRefusal("higher_order_pole", "factor " + h.to_string() + " vanishes at the point with multiplicity " +
                                                       std::to_string(fac[k].second) + "; only simple poles are supported");
      Hs *= h;
    } else {
      rest *= std::pow(h.eval(p.z), fac[k].second);
    }
  }
  return {AnalyticExpr(Hs), G / rest};
}

void check_numerator(cplx G) {
  if (std::abs(G) < 1e-14)
    throw AnalysisRefusal("higher_order_term", "numerator vanishes at the contributing point; a higher-order term is needed");
}

void fill_common(AsymptoticTerm& t, const std::vector<CriticalPoint>& points) {
  t.points = points;
  if (points.size() > 1)
    t.periodicity = "periodic: " + std::to_string(points.size()) + " points on the minimal torus, phases summed";
  t.uniformity_note = "uniform for directions in compact subcones where the contributing point varies smoothly";
  for (const auto& p : points)
    if (p.minimality_heuristic) {
      t.warnings.push_back("minimality established heuristically (torus scan)");
      break;
    }
}

bool is_principal(const CriticalPoint& p) { return p.is_positive(1e-9); }

}  // namespace

cplx q_expression(const AnalyticExpr& H, const std::vector<cplx>& z) {
  if (H.variables().size() != 2 || z.size() != 2) throw std::invalid_argument("Q is defined for two variables");
  const cplx x = z[0], y = z[1];
  AnalyticExpr Hx = H.derivative(0), Hy = H.derivative(1);
  cplx X = x * Hx.eval(z), Y = y * Hy.eval(z);
  cplx Hxx = Hx.derivative(0).eval(z), Hyy = Hy.derivative(1).eval(z), Hxy = Hx.derivative(1).eval(z);
  return -X * X * Y - X * Y * Y - x * x * Y * Y * Hxx - y * y * X * X * Hyy + 2.0 * X * Y * x * y * Hxy;
}

Rational q_expression(const MultiPoly& H, const std::vector<Rational>& z) {
  if (H.nvars() != 2 || z.size() != 2) throw std::invalid_argument("Q is defined for two variables");
  const Rational &x = z[0], &y = z[1];
  MultiPoly Hx = H.derivative(0), Hy = H.derivative(1);
  Rational X = x * Hx.eval(z), Y = y * Hy.eval(z);
  Rational Hxx = Hx.derivative(0).eval(z), Hyy = Hy.derivative(1).eval(z), Hxy = Hx.derivative(1).eval(z);
  return -X * X * Y - X * Y * Y - x * x * Y * Y * Hxx - y * y * X * X * Hyy + 2 * X * Y * x * y * Hxy;
}

HessianData hessian_logparam(const AnalyticExpr& H, const std::vector<cplx>& z, int distinguished) {
  const int d = static_cast<int>(z.size());
  if (d < 2) throw std::invalid_argument("Hessian needs at least two variables");
  std::vector<cplx> K(d);
  std::vector<AnalyticExpr> D1;
  for (int j = 0; j < d; ++j) {
    D1.push_back(H.derivative(j));
    K[j] = z[j] * D1[j].eval(z);
  }
  double kmax = 0;
  for (auto k : K) kmax = std::max(kmax, std::abs(k));
  if (kmax < 1e-13) throw AnalysisRefusal("not_smooth", "all partial derivatives vanish; the point is not smooth");
  int v = distinguished;
  if (v < 0) {
    v = d - 1;
    if (std::abs(K[v]) < 1e-10 * kmax) {
      for (int j = 0; j < d; ++j)
        if (std::abs(K[j]) > std::abs(K[v])) v = j;
    }
  } else if (std::abs(K[v]) < 1e-13) {
    throw AnalysisRefusal("not_smooth", "partial derivative in the distinguished variable vanishes");
  }
  // second log-derivatives K_jk = delta_jk z_j H_j + z_j z_k H_jk
  Eigen::MatrixXcd KK(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = j; k < d; ++k) {
      cplx val = z[j] * z[k] * D1[j].derivative(k).eval(z);
      if (j == k) val += K[j];
      KK(j, k) = KK(k, j) = val;
    }
  std::vector<int> idx;
  for (int j = 0; j < d; ++j)
    if (j != v) idx.push_back(j);
  const cplx Kv = K[v], Kvv = KK(v, v);
  std::vector<cplx> g(d - 1);
  for (int a = 0; a < d - 1; ++a) g[a] = -K[idx[a]] / Kv;
  HessianData out;
  out.distinguished = v;
  out.matrix.resize(d - 1, d - 1);
  for (int a = 0; a < d - 1; ++a)
    for (int b = 0; b < d - 1; ++b) {
      int j = idx[a], k = idx[b];
      cplx gjk = -(KK(j, k) + KK(j, v) * g[b] + KK(k, v) * g[a] + Kvv * g[a] * g[b]) / Kv;
      out.matrix(a, b) = -gjk;
    }
  out.determinant = out.matrix.determinant();
  return out;
}

AsymptoticTerm smooth_leading_term_2d(const RationalGF& F, const std::vector<CriticalPoint>& points,
                                      const Direction& dir) {
  if (F.dim() != 2 || dir.dim() != 2) throw std::invalid_argument("bivariate formula needs two variables");
  if (points.empty()) throw std::invalid_argument("no contributing point");
  AsymptoticTerm t;
  fill_common(t, points);
  t.order_exponent = Rational(-1, 2);
  t.normalizing_index = 1;
  t.formula = "G/sqrt(2 pi) * sqrt(-y H_y / (s Q)) * x^-r y^-s";
  for (const auto& p : points) {
    Local L = localize(F, p);
    check_numerator(L.G);
    cplx Q = q_expression(L.H, p.z);
    if (std::abs(Q) < 1e-13) throw AnalysisRefusal("degenerate_airy", "Q vanishes at the point; degenerate (Airy) regime");
    cplx Y = p.z[1] * L.H.derivative(1).eval(p.z);
    cplx rad = -Y / Q;
    if (is_principal(p) && F.combinatorial && (rad.real() <= 0 || std::abs(rad.imag()) > 1e-9 * std::abs(rad)))
      t.warnings.push_back("radicand -yH_y/Q is not positive real at a combinatorial point");
    cplx b0 = L.G / std::sqrt(kTwoPi) * std::sqrt(rad);
    t.components.push_back({p.z, b0});
  }
  return t;
}

AsymptoticTerm smooth_leading_term_nd(const RationalGF& F, const std::vector<CriticalPoint>& points,
                                      const Direction& dir) {
  const std::size_t d = F.dim();
  if (dir.dim() != d) throw std::invalid_argument("direction dimension differs from variable count");
  if (points.empty()) throw std::invalid_argument("no contributing point");
  AsymptoticTerm t;
  fill_common(t, points);
  t.order_exponent = Rational(1 - static_cast<long>(d), 2);
  t.order_exponent.canonicalize();
  t.formula = "(2 pi)^((1-d)/2) det(Hess)^(-1/2) G/(-z_d H_d) * z^-r * r_d^((1-d)/2)";
  int v = -1;
  for (const auto& p : points) {
    Local L = localize(F, p);
    check_numerator(L.G);
    HessianData hd = hessian_logparam(L.H, p.z, v);
    v = hd.distinguished;  // companions share the principal point's choice
    if (std::abs(hd.determinant) < 1e-12)
      throw AnalysisRefusal("singular_hessian", "Hessian of the log-parametrization is singular");
    cplx Kv = p.z[v] * L.H.derivative(v).eval(p.z);
    cplx b0 = std::pow(kTwoPi, (1.0 - static_cast<double>(d)) / 2) / std::sqrt(hd.determinant) * L.G / (-Kv);
    t.components.push_back({p.z, b0});
  }
  t.normalizing_index = v;
  return t;
}

AsymptoticTerm multiple_point_term_2d(const RationalGF& F, const std::vector<CriticalPoint>& points) {
  if (F.dim() != 2) throw std::invalid_argument("bivariate formula needs two variables");
  if (points.empty()) throw std::invalid_argument("no contributing point");
  AsymptoticTerm t;
  fill_common(t, points);
  t.order_exponent = 0;
  t.formula = "G / sqrt(-x^2 y^2 det Hess H) * x^-r y^-s";
  for (const auto& p : points) {
    Local L = localize(F, p);
    check_numerator(L.G);
    AnalyticExpr Hx = L.H.derivative(0), Hy = L.H.derivative(1);
    cplx hess = Hx.derivative(0).eval(p.z) * Hy.derivative(1).eval(p.z) - std::pow(Hx.derivative(1).eval(p.z), 2);
    cplx rad = -p.z[0] * p.z[0] * p.z[1] * p.z[1] * hess;
    if (is_principal(p) && rad.real() <= 1e-14)
      throw AnalysisRefusal("transversality_failure", "Hessian determinant is not negative; sheets are not transverse");
    t.components.push_back({p.z, L.G / std::sqrt(rad)});
  }
  return t;
}

AsymptoticTerm multiple_point_term_nd(const RationalGF& F, const std::vector<CriticalPoint>& points,
                                      const Direction& dir) {
  const std::size_t d = F.dim();
  if (points.empty()) throw std::invalid_argument("no contributing point");
  AsymptoticTerm t;
  fill_common(t, points);
  t.order_exponent = 0;
  t.formula = "G / |det(z_j dH_i/dz_j)| * z^-r";
  auto fac = F.sheet_factors();
  for (const auto& p : points) {
    if (p.sheets.size() != d)
      throw AnalysisRefusal("unsupported_stratum", "multiple-point formula needs exactly d vanishing sheets");
    Local L = localize(F, p);
    check_numerator(L.G);
    if (is_principal(p)) {
      auto c = cone_coordinates(F, p.z, p.sheets, dir);
      for (double v : c)
        if (v <= 1e-10)
          throw AnalysisRefusal("outside_cone", "direction " + dir.to_string() + " is not strictly inside the cone at the point");
    }
    Eigen::MatrixXcd J(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      MultiPoly h = fac[p.sheets[i]].first.rename(F.variables);
      for (std::size_t j = 0; j < d; ++j) J(i, j) = p.z[j] * h.derivative(j).eval(p.z);
    }
    double det = std::abs(J.determinant());
    if (det < 1e-13) throw AnalysisRefusal("transversality_failure", "sheets are not transverse at the point");
    t.components.push_back({p.z, L.G / det});
  }
  return t;
}

AsymptoticTerm term_at_points(const RationalGF& F, const std::vector<CriticalPoint>& pts, const Direction& dir) {
  if (pts.empty()) throw AnalysisRefusal("bad_point", "no contributing point");
  const CriticalPoint& p = pts.front();
  const std::size_t d = F.dim();
  switch (p.classification) {
    case PointClass::Smooth:
      return d == 2 ? smooth_leading_term_2d(F, pts, dir) : smooth_leading_term_nd(F, pts, dir);
    case PointClass::Multiple:
      if (p.sheets.size() != d)
        throw AnalysisRefusal("unsupported_stratum", "multiple point with fewer sheets than variables");
      return d == 2 ? multiple_point_term_2d(F, pts) : multiple_point_term_nd(F, pts, dir);
    default:
      throw AnalysisRefusal("bad_point", "contributing point is " + to_string(p.classification));
  }
}

LeadingTermResult leading_term(const RationalGF& F, const Direction& dir, const LeadingTermOptions& opts) {
  LeadingTermResult res;
  res.contrib = contrib(F, dir, opts.solve);
  std::vector<CriticalPoint> pts;
  if (opts.candidate) {
    int k = *opts.candidate;
    if (k < 0 || k >= static_cast<int>(res.contrib.candidates.size()))
      throw std::out_of_range("candidate index out of range");
    pts.push_back(res.contrib.candidates[k]);
  } else {
    if (res.contrib.ranked_only)
      throw AnalysisRefusal("ranked_only", "input is not marked combinatorial; choose a candidate explicitly");
    pts = res.contrib.contributing;
  }
  res.term = term_at_points(F, pts, dir);
  for (const auto& w : res.contrib.warnings)
    if (std::find(res.term.warnings.begin(), res.term.warnings.end(), w) == res.term.warnings.end())
      res.term.warnings.push_back(w);
  return res;
}

}  // namespace acsv
