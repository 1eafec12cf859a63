#include "acsv/transfer.hpp"

#include <algorithm>

namespace acsv {

namespace {

void check_size(std::size_t n) {
  if (n > kMaxMatrixSize)
    throw MatrixTooLarge("matrix of size " + std::to_string(n) + " exceeds the limit of " + std::to_string(kMaxMatrixSize));
}

PolyMatrix minor_matrix(const PolyMatrix& m, std::size_t row, std::size_t col) {
  PolyMatrix out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i == row) continue;
    std::vector<MultiPoly> r;
    for (std::size_t j = 0; j < m.size(); ++j)
      if (j != col) r.push_back(m[i][j]);
    out.push_back(r);
  }
  return out;
}

PolyMatrix identity_minus(const PolyMatrix& A, const std::vector<std::string>& vars) {
  PolyMatrix M = A;
  for (std::size_t i = 0; i < A.size(); ++i) {
    for (std::size_t j = 0; j < A.size(); ++j) M[i][j] = -A[i][j];
    M[i][i] += MultiPoly::constant(vars, 1);
  }
  return M;
}

// scale so the denominator has constant term 1
RationalGF make_gf(MultiPoly num, MultiPoly den, const std::vector<std::string>& vars) {
  Rational c = den.constant_term();
  if (c == 0) throw std::domain_error("denominator vanishes at the origin");
  num *= 1 / c;
  den *= 1 / c;
  RationalGF F;
  F.numerator = AnalyticExpr(num);
  F.denominator = AnalyticExpr(den);
  F.variables = vars;
  F.combinatorial = true;
  return F;
}

}  // namespace

std::size_t WeightedDigraph::index(const std::string& v) const {
  auto it = std::find(vertices.begin(), vertices.end(), v);
  if (it == vertices.end()) throw std::invalid_argument("unknown vertex " + v);
  return static_cast<std::size_t>(it - vertices.begin());
}

PolyMatrix WeightedDigraph::weight_matrix() const {
  const std::size_t n = vertices.size();
  check_size(n);
  PolyMatrix A(n, std::vector<MultiPoly>(n, MultiPoly(variables)));
  for (const auto& e : edges) {
    if (e.weight.size() != 1 || e.weight.terms().begin()->second != 1)
      throw std::invalid_argument("edge weights must be monomials with coefficient 1");
    A[index(e.from)][index(e.to)] += e.weight.rename(variables);
  }
  return A;
}

MultiPoly determinant(const PolyMatrix& m) {
  check_size(m.size());
  if (m.empty()) return MultiPoly();
  return bareiss_det(m);
}

PolyMatrix adjugate(const PolyMatrix& m) {
  const std::size_t n = m.size();
  check_size(n);
  if (n == 0) return {};
  const auto& vars = m[0][0].variables();
  PolyMatrix adj(n, std::vector<MultiPoly>(n, MultiPoly(vars)));
  if (n == 1) {
    adj[0][0] = MultiPoly::constant(vars, 1);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      MultiPoly c = bareiss_det(minor_matrix(m, j, i));
      adj[i][j] = (i + j) % 2 ? -c : c;
    }
  return adj;
}

RationalGF transfer_gf(const WeightedDigraph& g, const std::string& i, const std::string& j) {
  const std::size_t a = g.index(i), b = g.index(j);
  PolyMatrix M = identity_minus(g.weight_matrix(), g.variables);
  MultiPoly det = determinant(M);
  MultiPoly num = M.size() == 1 ? MultiPoly::constant(g.variables, 1) : bareiss_det(minor_matrix(M, b, a));
  if ((a + b) % 2) num = -num;
  return make_gf(num, det, g.variables);
}

RationalGF transfer_gf_total(const WeightedDigraph& g) {
  PolyMatrix M = identity_minus(g.weight_matrix(), g.variables);
  PolyMatrix adj = adjugate(M);
  MultiPoly num(g.variables);
  for (const auto& row : adj)
    for (const auto& e : row) num += e;
  return make_gf(num, determinant(M), g.variables);
}

void ForbiddenSpec::validate() const {
  if (alphabet < 1 || alphabet > 10) throw std::invalid_argument("alphabet size must be between 1 and 10");
  for (const auto& w : words) {
    if (w.empty()) throw std::invalid_argument("forbidden words must be nonempty");
    for (char c : w)
      if (c < '0' || c >= '0' + alphabet) throw std::invalid_argument("symbol out of range in word " + w);
  }
  // the cluster formula assumes a reduced set
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = 0; j < words.size(); ++j)
      if (i != j && words[j].find(words[i]) != std::string::npos)
        throw std::invalid_argument("forbidden word " + words[i] + " occurs inside " + words[j]);
  check_size(words.size());
}

std::vector<std::string> ForbiddenSpec::variables() const {
  std::vector<std::string> v;
  for (int i = 1; i <= alphabet; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

MultiPoly word_weight(const std::string& w, const std::vector<std::string>& vars) {
  Exponent e(vars.size(), 0);
  for (char c : w) ++e.at(static_cast<std::size_t>(c - '0'));
  return MultiPoly::monomial(vars, e);
}

MultiPoly connect(const std::string& a, const std::string& b, const std::vector<std::string>& vars) {
  MultiPoly out(vars);
  // a = alpha beta, b = beta gamma, with alpha nonempty and beta nonempty
  for (std::size_t k = 1; k < a.size() && k <= b.size(); ++k) {
    if (a.compare(a.size() - k, k, b, 0, k) == 0) out += word_weight(a.substr(0, a.size() - k), vars);
  }
  return out;
}

ConnectorMatrices connector_matrix(const ForbiddenSpec& spec) {
  spec.validate();
  auto vars = spec.variables();
  const std::size_t m = spec.words.size();
  ConnectorMatrices c;
  c.V.assign(m, std::vector<MultiPoly>(m, MultiPoly(vars)));
  c.L.assign(m, std::vector<MultiPoly>(m, MultiPoly(vars)));
  for (std::size_t i = 0; i < m; ++i) {
    c.L[i][i] = word_weight(spec.words[i], vars);
    for (std::size_t j = 0; j < m; ++j) c.V[i][j] = connect(spec.words[i], spec.words[j], vars);
  }
  return c;
}

RationalGF connector_gf(const ForbiddenSpec& spec) {
  auto vars = spec.variables();
  MultiPoly base = MultiPoly::constant(vars, 1);
  for (std::size_t i = 0; i < vars.size(); ++i) base -= MultiPoly::variable(vars, i);
  if (spec.words.empty()) return make_gf(MultiPoly::constant(vars, 1), base, vars);
  auto c = connector_matrix(spec);
  const std::size_t m = c.V.size();
  PolyMatrix IV = c.V;
  for (std::size_t i = 0; i < m; ++i) IV[i][i] += MultiPoly::constant(vars, 1);
  MultiPoly det = determinant(IV);
  if (det.is_zero()) throw std::domain_error("det(I + V) vanishes identically");
  PolyMatrix adj = adjugate(IV);
  // trace((I+V)^{-1} L J) = sum_ij adj_ij L_jj / det
  MultiPoly tr(vars);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) tr += adj[i][j] * c.L[j][j];
  return make_gf(det, base * det + tr, vars);
}

MultiPoly compose(const MultiPoly& p, const std::vector<MultiPoly>& images) {
  if (images.size() != p.nvars()) throw std::invalid_argument("one image per variable expected");
  if (images.empty()) return p;
  const auto& nv = images[0].variables();
  MultiPoly out(nv);
  // cache powers per variable
  std::vector<std::vector<MultiPoly>> pw(images.size());
  for (const auto& [e, c] : p.terms()) {
    MultiPoly t = MultiPoly::constant(nv, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto& cache = pw[i];
      if (cache.empty()) cache.push_back(MultiPoly::constant(nv, 1));
      while (static_cast<int>(cache.size()) <= e[i]) cache.push_back(cache.back() * images[i]);
      t *= cache[e[i]];
    }
    out += t;
  }
  return out;
}

RationalGF diag_specialize(const RationalGF& F, const std::vector<std::string>& images,
                           const std::vector<std::string>& new_vars) {
  if (!F.numerator.is_polynomial() || !F.denominator.is_polynomial())
    throw std::invalid_argument("specialization needs polynomial numerator and denominator");
  if (images.size() != F.dim()) throw std::invalid_argument("one image per variable expected");
  std::vector<MultiPoly> im;
  for (const auto& s : images) im.push_back(parse_poly(s, new_vars));
  MultiPoly num = compose(F.numerator.poly(), im);
  MultiPoly den = compose(F.denominator.poly(), im);
  if (new_vars.size() == 1) {
    UPoly n = to_upoly(num), d = to_upoly(den);
    UPoly g = poly_gcd(n, d);
    if (deg(g) > 0) {
      num = from_upoly(poly_quo(n, g), new_vars, 0);
      den = from_upoly(poly_quo(d, g), new_vars, 0);
    }
  }
  RationalGF out = make_gf(num, den, new_vars);
  out.combinatorial = F.combinatorial;
  return out;
}

}  // namespace acsv
