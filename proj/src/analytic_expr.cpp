#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "acsv/polycore.hpp"

namespace acsv {

struct AnalyticExpr::Node {
  Kind kind;
  std::vector<std::string> vars;
  MultiPoly poly;  // Poly value or Exp argument
  std::vector<AnalyticExpr> kids;
};

AnalyticExpr::AnalyticExpr(const MultiPoly& p)
    : node_(std::make_shared<const Node>(Node{Kind::Poly, p.variables(), p, {}})) {}

AnalyticExpr::Kind AnalyticExpr::kind() const { return node_->kind; }
const std::vector<std::string>& AnalyticExpr::variables() const { return node_->vars; }
const MultiPoly& AnalyticExpr::poly() const { return node_->poly; }
const std::vector<AnalyticExpr>& AnalyticExpr::children() const { return node_->kids; }

AnalyticExpr AnalyticExpr::sum(std::vector<AnalyticExpr> terms) {
  if (terms.empty()) throw std::invalid_argument("empty sum");
  const auto vars = terms[0].variables();
  MultiPoly acc(vars);
  std::vector<AnalyticExpr> rest;
  for (auto& t : terms) {
    if (t.variables() != vars) throw VariableMismatch("variable lists differ");
    if (t.kind() == Kind::Sum) {
      for (const auto& k : t.children()) {
        if (k.is_polynomial()) acc += k.poly();
        else rest.push_back(k);
      }
    } else if (t.is_polynomial()) {
      acc += t.poly();
    } else {
      rest.push_back(t);
    }
  }
  if (rest.empty()) return AnalyticExpr(acc);
  if (!acc.is_zero()) rest.insert(rest.begin(), AnalyticExpr(acc));
  if (rest.size() == 1) return rest[0];
  return AnalyticExpr(std::make_shared<const Node>(Node{Kind::Sum, vars, MultiPoly(vars), std::move(rest)}));
}

AnalyticExpr AnalyticExpr::product(std::vector<AnalyticExpr> factors) {
  if (factors.empty()) throw std::invalid_argument("empty product");
  const auto vars = factors[0].variables();
  MultiPoly acc = MultiPoly::constant(vars, 1);
  MultiPoly exp_arg(vars);
  bool has_exp = false;
  std::vector<AnalyticExpr> rest;
  auto absorb = [&](const AnalyticExpr& f) {
    if (f.is_polynomial()) acc *= f.poly();
    else if (f.kind() == Kind::Exp) {
      exp_arg += f.poly();
      has_exp = true;
    } else {
      rest.push_back(f);
    }
  };
  for (auto& f : factors) {
    if (f.variables() != vars) throw VariableMismatch("variable lists differ");
    if (f.kind() == Kind::Product)
      for (const auto& k : f.children()) absorb(k);
    else
      absorb(f);
  }
  if (acc.is_zero()) return AnalyticExpr(acc);
  if (has_exp && !exp_arg.is_zero()) rest.insert(rest.begin(), exp(exp_arg));
  if (rest.empty()) return AnalyticExpr(acc);
  if (acc != MultiPoly::constant(vars, 1)) rest.insert(rest.begin(), AnalyticExpr(acc));
  if (rest.size() == 1) return rest[0];
  return AnalyticExpr(std::make_shared<const Node>(Node{Kind::Product, vars, MultiPoly(vars), std::move(rest)}));
}

AnalyticExpr AnalyticExpr::quotient(const AnalyticExpr& num, const AnalyticExpr& den) {
  if (num.variables() != den.variables()) throw VariableMismatch("variable lists differ");
  if (den.is_zero()) throw EvalError("division by the zero expression");
  if (num.is_zero()) return num;
  if (den.is_polynomial()) {
    if (den.poly().is_constant()) {
      Rational c = den.poly().constant_term();
      return product({num, AnalyticExpr(MultiPoly::constant(num.variables(), 1 / c))});
    }
    if (num.is_polynomial()) {
      try {
        return AnalyticExpr(divide_exact(num.poly(), den.poly()));
      } catch (const std::domain_error&) {
      }
    }
  }
  return AnalyticExpr(std::make_shared<const Node>(Node{Kind::Quotient, num.variables(), MultiPoly(num.variables()), {num, den}}));
}

AnalyticExpr AnalyticExpr::exp(const MultiPoly& arg) {
  if (arg.is_zero()) return AnalyticExpr(MultiPoly::constant(arg.variables(), 1));
  return AnalyticExpr(std::make_shared<const Node>(Node{Kind::Exp, arg.variables(), arg, {}}));
}

AnalyticExpr operator+(const AnalyticExpr& a, const AnalyticExpr& b) { return AnalyticExpr::sum({a, b}); }
AnalyticExpr operator-(const AnalyticExpr& a, const AnalyticExpr& b) {
  return AnalyticExpr::sum({a, AnalyticExpr::product({AnalyticExpr(MultiPoly::constant(b.variables(), -1)), b})});
}
AnalyticExpr operator*(const AnalyticExpr& a, const AnalyticExpr& b) { return AnalyticExpr::product({a, b}); }
AnalyticExpr operator/(const AnalyticExpr& a, const AnalyticExpr& b) { return AnalyticExpr::quotient(a, b); }

AnalyticExpr AnalyticExpr::derivative(std::size_t var) const {
  switch (kind()) {
    case Kind::Poly:
      return AnalyticExpr(poly().derivative(var));
    case Kind::Exp:
      return product({AnalyticExpr(poly().derivative(var)), *this});
    case Kind::Sum: {
      std::vector<AnalyticExpr> ts;
      for (const auto& k : children()) ts.push_back(k.derivative(var));
      return sum(ts);
    }
    case Kind::Product: {
      std::vector<AnalyticExpr> ts;
      const auto& ks = children();
      for (std::size_t i = 0; i < ks.size(); ++i) {
        std::vector<AnalyticExpr> fs;
        for (std::size_t j = 0; j < ks.size(); ++j) fs.push_back(i == j ? ks[j].derivative(var) : ks[j]);
        ts.push_back(product(fs));
      }
      return sum(ts);
    }
    case Kind::Quotient: {
      const auto& n = children()[0];
      const auto& d = children()[1];
      AnalyticExpr top = n.derivative(var) * d - n * d.derivative(var);
      return quotient(top, d * d);
    }
  }
  return *this;
}

cplx AnalyticExpr::eval(const std::vector<cplx>& pt) const {
  if (pt.size() != variables().size()) throw VariableMismatch("point length differs from variable count");
  return eval_raw(pt, 0);
}

double AnalyticExpr::eval(const std::vector<double>& pt) const {
  std::vector<cplx> z(pt.begin(), pt.end());
  return eval(z).real();
}

cplx AnalyticExpr::eval_raw(const std::vector<cplx>& pt, int depth) const {
  switch (kind()) {
    case Kind::Poly:
      return poly().eval(pt);
    case Kind::Exp:
      return std::exp(poly().eval(pt));
    case Kind::Sum: {
      cplx s = 0;
      for (const auto& k : children()) s += k.eval_raw(pt, depth);
      return s;
    }
    case Kind::Product: {
      cplx s = 1;
      for (const auto& k : children()) s *= k.eval_raw(pt, depth);
      return s;
    }
    case Kind::Quotient: {
      const auto& n = children()[0];
      const auto& d = children()[1];
      cplx dv = d.eval_raw(pt, depth);
      double scale = d.is_polynomial() ? d.poly().abs_scale(pt) : 1.0;
      bool near_zero = std::abs(dv) <= 1e-6 * std::max(scale, 1e-300);
      if (!near_zero) return n.eval_raw(pt, depth) / dv;
      if (depth > 0) {
        if (dv == 0.0) throw EvalError("quotient denominator vanishes at point");
        return n.eval_raw(pt, depth) / dv;
      }
      // Removable singularity (e.g. (x e^y - y e^x)/(x - y) on x = y): the
      // quotient is analytic here, so average it over a small complex circle
      // transverse to the zero set of the denominator.
      double h = 0.05;
      for (const auto& z : pt) h = std::max(h, 0.05 * std::abs(z));
      const int m = 24;
      std::size_t best = 0;
      double best_min = -1;
      for (std::size_t j = 0; j < pt.size(); ++j) {
        double mn = INFINITY;
        for (int k = 0; k < m; ++k) {
          auto q = pt;
          q[j] += h * std::polar(1.0, 2 * std::numbers::pi * (k + 0.5) / m);
          mn = std::min(mn, std::abs(d.eval_raw(q, 1)));
        }
        if (mn > best_min) {
          best_min = mn;
          best = j;
        }
      }
      if (!(best_min > 0)) throw EvalError("quotient denominator vanishes at point");
      cplx acc = 0;
      for (int k = 0; k < m; ++k) {
        auto q = pt;
        q[best] += h * std::polar(1.0, 2 * std::numbers::pi * (k + 0.5) / m);
        acc += n.eval_raw(q, 1) / d.eval_raw(q, 1);
      }
      return acc / static_cast<double>(m);
    }
  }
  return 0;
}

std::vector<MultiPoly> AnalyticExpr::series_parts(int N) const {
  const auto& vars = variables();
  std::vector<MultiPoly> out(N + 1, MultiPoly(vars));
  switch (kind()) {
    case Kind::Poly:
      for (const auto& [e, c] : poly().terms()) {
        int t = 0;
        for (int k : e) t += k;
        if (t <= N) out[t].add_term(e, c);
      }
      return out;
    case Kind::Sum:
      for (const auto& k : children()) {
        auto p = k.series_parts(N);
        for (int i = 0; i <= N; ++i) out[i] += p[i];
      }
      return out;
    case Kind::Product: {
      out[0] = MultiPoly::constant(vars, 1);
      for (const auto& k : children()) {
        auto p = k.series_parts(N);
        std::vector<MultiPoly> r(N + 1, MultiPoly(vars));
        for (int i = 0; i <= N; ++i) {
          if (out[i].is_zero()) continue;
          for (int j = 0; i + j <= N; ++j)
            if (!p[j].is_zero()) r[i + j] += out[i] * p[j];
        }
        out = std::move(r);
      }
      return out;
    }
    case Kind::Exp: {
      if (poly().constant_term() != 0)
        throw EvalError("exp of a polynomial with nonzero constant term has no rational Taylor coefficients");
      std::vector<MultiPoly> p(N + 1, MultiPoly(vars));
      for (const auto& [e, c] : poly().terms()) {
        int t = 0;
        for (int k : e) t += k;
        if (t <= N) p[t].add_term(e, c);
      }
      // degree operator identity: k E_k = sum_j j p_j E_{k-j}
      out[0] = MultiPoly::constant(vars, 1);
      for (int k = 1; k <= N; ++k) {
        MultiPoly acc(vars);
        for (int j = 1; j <= k; ++j)
          if (!p[j].is_zero()) acc += p[j] * out[k - j] * Rational(j);
        out[k] = acc * Rational(1, k);
      }
      return out;
    }
    case Kind::Quotient: {
      const auto& n = children()[0];
      const auto& d = children()[1];
      auto dp = d.series_parts(N);
      int k = -1;
      for (int i = 0; i <= N && k < 0; ++i)
        if (!dp[i].is_zero()) k = i;
      if (k < 0) throw EvalError("denominator series vanishes to the requested order");
      if (k > 0) {
        if (!d.is_polynomial()) throw EvalError("denominator vanishes at origin");
        dp = d.series_parts(N + k);
      }
      auto np = n.series_parts(N + k);
      for (int j = 0; j <= N; ++j) {
        MultiPoly rhs = np[j + k];
        for (int i = k + 1; i <= j + k; ++i)
          if (!dp[i].is_zero() && !out[j + k - i].is_zero()) rhs -= dp[i] * out[j + k - i];
        try {
          out[j] = divide_exact(rhs, dp[k]);
        } catch (const std::domain_error&) {
          throw EvalError("denominator vanishes at origin and does not divide the numerator series");
        }
      }
      return out;
    }
  }
  return out;
}

MultiPoly AnalyticExpr::series(int N) const {
  if (N < 0) throw std::invalid_argument("negative truncation degree");
  auto parts = series_parts(N);
  MultiPoly s(variables());
  for (auto& p : parts) s += p;
  return s;
}

std::string AnalyticExpr::to_string() const {
  switch (kind()) {
    case Kind::Poly:
      return poly().to_string();
    case Kind::Exp:
      return "exp(" + poly().to_string() + ")";
    case Kind::Sum: {
      std::string s;
      for (const auto& k : children()) s += (s.empty() ? "" : " + ") + std::string("(") + k.to_string() + ")";
      return s;
    }
    case Kind::Product: {
      std::string s;
      for (const auto& k : children()) s += (s.empty() ? "" : "*") + std::string("(") + k.to_string() + ")";
      return s;
    }
    case Kind::Quotient:
      return "(" + children()[0].to_string() + ")/(" + children()[1].to_string() + ")";
  }
  return "";
}

}  // namespace acsv
