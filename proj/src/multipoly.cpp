#include "acsv/polycore.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace acsv {

MultiPoly::MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

MultiPoly MultiPoly::constant(const std::vector<std::string>& vars, const Rational& c) {
  MultiPoly p(vars);
  p.add_term(Exponent(vars.size(), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(const std::vector<std::string>& vars, const std::string& name) {
  MultiPoly p(vars);
  return variable(vars, p.index_of(name));
}

MultiPoly MultiPoly::variable(const std::vector<std::string>& vars, std::size_t index) {
  if (index >= vars.size()) throw VariableMismatch("variable index out of range");
  Exponent e(vars.size(), 0);
  e[index] = 1;
  return monomial(vars, e, 1);
}

MultiPoly MultiPoly::monomial(const std::vector<std::string>& vars, const Exponent& e,
                              const Rational& c) {
  if (e.size() != vars.size()) throw VariableMismatch("exponent length differs from variable count");
  MultiPoly p(vars);
  p.add_term(e, c);
  return p;
}

std::size_t MultiPoly::index_of(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) throw VariableMismatch("unknown variable '" + name + "'");
  return static_cast<std::size_t>(it - vars_.begin());
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
}

Rational MultiPoly::constant_term() const { return coefficient(Exponent(vars_.size(), 0)); }

Rational MultiPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int MultiPoly::degree(std::size_t var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

int MultiPoly::min_degree(std::size_t var) const {
  if (terms_.empty()) return -1;
  int d = terms_.begin()->first[var];
  for (const auto& [e, c] : terms_) d = std::min(d, e[var]);
  return d;
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

int MultiPoly::order() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int t = std::accumulate(e.begin(), e.end(), 0);
    if (d < 0 || t < d) d = t;
  }
  return d;
}

void MultiPoly::add_term(const Exponent& e, const Rational& c) {
  if (c == 0) return;
  if (e.size() != vars_.size()) throw VariableMismatch("exponent length differs from variable count");
  auto [it, inserted] = terms_.emplace(e, c);
  if (inserted) {
    it->second.canonicalize();
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void MultiPoly::check_same(const MultiPoly& o) const {
  if (vars_ != o.vars_) throw VariableMismatch("variable lists differ");
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_same(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_same(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_same(b);
  MultiPoly r(a.vars_);
  Exponent e(a.vars_.size());
  Rational prod;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      prod = ca * cb;
      r.add_term(e, prod);
    }
  }
  return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  if (var >= vars_.size()) throw VariableMismatch("variable index out of range");
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent f = e;
    f[var] -= 1;
    r.add_term(f, c * e[var]);
  }
  return r;
}

Rational MultiPoly::eval(const std::vector<Rational>& pt) const {
  if (pt.size() != vars_.size()) throw VariableMismatch("point length differs from variable count");
  Rational s = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      mpz_class n, d;
      mpz_pow_ui(n.get_mpz_t(), pt[i].get_num_mpz_t(), e[i]);
      mpz_pow_ui(d.get_mpz_t(), pt[i].get_den_mpz_t(), e[i]);
      t *= Rational(n, d);
    }
    s += t;
  }
  s.canonicalize();
  return s;
}

double MultiPoly::eval(const std::vector<double>& pt) const {
  if (pt.size() != vars_.size()) throw VariableMismatch("point length differs from variable count");
  double s = 0;
  for (const auto& [e, c] : terms_) {
    double t = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) t *= std::pow(pt[i], e[i]);
    s += t;
  }
  return s;
}

cplx MultiPoly::eval(const std::vector<cplx>& pt) const {
  if (pt.size() != vars_.size()) throw VariableMismatch("point length differs from variable count");
  cplx s = 0;
  for (const auto& [e, c] : terms_) {
    cplx t = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) t *= std::pow(pt[i], e[i]);
    s += t;
  }
  return s;
}

double MultiPoly::abs_scale(const std::vector<cplx>& pt) const {
  double s = 0;
  for (const auto& [e, c] : terms_) {
    double t = std::abs(c.get_d());
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) t *= std::pow(std::abs(pt[i]), e[i]);
    s += t;
  }
  return s;
}

MultiPoly MultiPoly::substitute(std::size_t var, const MultiPoly& value) const {
  check_same(value);
  auto cs = coefficients_in(var);
  MultiPoly r(vars_);
  // Horner in the substituted value
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) r = r * value + *it;
  return r;
}

MultiPoly MultiPoly::specialize(std::size_t var, const Rational& value) const {
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    Exponent f = e;
    f[var] = 0;
    Rational t = c;
    for (int k = 0; k < e[var]; ++k) t *= value;
    r.add_term(f, t);
  }
  return r;
}

MultiPoly MultiPoly::truncate(int N) const {
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_)
    if (std::accumulate(e.begin(), e.end(), 0) <= N) r.terms_.emplace(e, c);
  return r;
}

MultiPoly MultiPoly::homogeneous_part(int k) const {
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_)
    if (std::accumulate(e.begin(), e.end(), 0) == k) r.terms_.emplace(e, c);
  return r;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(std::size_t var) const {
  int d = degree(var);
  std::vector<MultiPoly> cs(std::max(d + 1, 0), MultiPoly(vars_));
  for (const auto& [e, c] : terms_) {
    Exponent f = e;
    f[var] = 0;
    cs[e[var]].terms_.emplace(f, c);
  }
  return cs;
}

MultiPoly MultiPoly::rename(const std::vector<std::string>& new_vars) const {
  std::vector<int> map(vars_.size(), -1);
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(new_vars.begin(), new_vars.end(), vars_[i]);
    if (it != new_vars.end()) map[i] = static_cast<int>(it - new_vars.begin());
  }
  MultiPoly r(new_vars);
  for (const auto& [e, c] : terms_) {
    Exponent f(new_vars.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (map[i] < 0) throw VariableMismatch("variable '" + vars_[i] + "' missing from target list");
      f[map[i]] = e[i];
    }
    r.add_term(f, c);
  }
  return r;
}

std::vector<std::size_t> MultiPoly::support_variables() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (degree(i) > 0) out.push_back(i);
  return out;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // highest total degree first reads more naturally
  std::vector<std::pair<Exponent, Rational>> ts(terms_.begin(), terms_.end());
  std::stable_sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
    int da = std::accumulate(a.first.begin(), a.first.end(), 0);
    int db = std::accumulate(b.first.begin(), b.first.end(), 0);
    if (da != db) return da < db;
    return a.first > b.first;
  });
  for (const auto& [e, c] : ts) {
    Rational a = abs(c);
    bool neg = c < 0;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool unit = (a == 1);
    bool any_var = false;
    if (!unit) os << a.get_str();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!unit || any_var) os << "*";
      os << vars_[i];
      if (e[i] > 1) os << "^" << e[i];
      any_var = true;
    }
    if (unit && !any_var) os << "1";
  }
  return os.str();
}

MultiPoly pow(const MultiPoly& p, unsigned k) {
  MultiPoly r = MultiPoly::constant(p.variables(), 1);
  MultiPoly b = p;
  while (k) {
    if (k & 1u) r = r * b;
    k >>= 1u;
    if (k) b = b * b;
  }
  return r;
}

MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b) {
  if (a.variables() != b.variables()) throw VariableMismatch("variable lists differ");
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  MultiPoly q(a.variables());
  MultiPoly r = a;
  const auto& [lb, cb] = *b.terms().rbegin();
  while (!r.is_zero()) {
    const auto& [lr, cr] = *r.terms().rbegin();
    Exponent e(lr.size());
    for (std::size_t i = 0; i < lr.size(); ++i) {
      e[i] = lr[i] - lb[i];
      if (e[i] < 0) throw std::domain_error("polynomial division is not exact");
    }
    MultiPoly t = MultiPoly::monomial(a.variables(), e, cr / cb);
    q += t;
    r -= t * b;
  }
  return q;
}

MultiPoly bareiss_det(std::vector<std::vector<MultiPoly>> m) {
  const std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument("empty matrix");
  const auto vars = m[0][0].variables();
  MultiPoly prev = MultiPoly::constant(vars, 1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return MultiPoly(vars);
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = prev.is_constant() ? t * (1 / prev.constant_term()) : divide_exact(t, prev);
      }
    }
    prev = m[k][k];
  }
  MultiPoly d = m[n - 1][n - 1];
  return sign > 0 ? d : -d;
}

MultiPoly sylvester_resultant(const MultiPoly& p, const MultiPoly& q, std::size_t var) {
  if (p.variables() != q.variables()) throw VariableMismatch("variable lists differ");
  const int m = p.degree(var), n = q.degree(var);
  if (m <= 0 || n <= 0) throw std::invalid_argument("resultant needs positive degree in the eliminated variable");
  auto pc = p.coefficients_in(var);
  auto qc = q.coefficients_in(var);
  const auto& vars = p.variables();
  const int N = m + n;
  std::vector<std::vector<MultiPoly>> s(N, std::vector<MultiPoly>(N, MultiPoly(vars)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) s[i][i + k] = pc[m - k];
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) s[n + i][i + k] = qc[n - k];
  return bareiss_det(std::move(s));
}

// ------------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

  AnalyticExpr parse() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("empty expression", pos_);
    AnalyticExpr e = expr();
    skip();
    if (pos_ < s_.size()) {
      if (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(' || s_[pos_] == '_')
        throw ParseError("implicit multiplication is not allowed", pos_);
      throw ParseError(std::string("unexpected character '") + s_[pos_] + "'", pos_);
    }
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  AnalyticExpr expr() {
    AnalyticExpr e = term();
    for (;;) {
      if (accept('+'))
        e = e + term();
      else if (accept('-'))
        e = e - term();
      else
        return e;
    }
  }

  AnalyticExpr term() {
    AnalyticExpr e = unary();
    for (;;) {
      skip();
      std::size_t at = pos_;
      if (accept('*')) {
        e = e * unary();
      } else if (accept('/')) {
        AnalyticExpr d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        e = e / d;
      } else {
        return e;
      }
    }
  }

  AnalyticExpr unary() {
    if (accept('-')) return AnalyticExpr(MultiPoly(vars_)) - unary();
    if (accept('+')) return unary();
    return power();
  }

  AnalyticExpr power() {
    AnalyticExpr base = primary();
    skip();
    if (accept('^')) {
      skip();
      std::size_t at = pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw ParseError("exponent must be a nonnegative integer", at);
      unsigned long k = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        k = k * 10 + static_cast<unsigned long>(s_[pos_] - '0');
        if (k > 100000) throw ParseError("exponent too large", at);
        ++pos_;
      }
      if (base.is_polynomial()) return AnalyticExpr(acsv::pow(base.poly(), static_cast<unsigned>(k)));
      AnalyticExpr r(MultiPoly::constant(vars_, 1));
      for (unsigned long i = 0; i < k; ++i) r = r * base;
      return r;
    }
    return base;
  }

  AnalyticExpr primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      AnalyticExpr e = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it != vars_.end()) return AnalyticExpr(MultiPoly::variable(vars_, name));
      if (name == "exp") {
        if (!accept('(')) throw ParseError("expected '(' after exp", pos_);
        std::size_t at = pos_;
        AnalyticExpr arg = expr();
        if (!accept(')')) throw ParseError("expected ')'", pos_);
        if (!arg.is_polynomial()) throw ParseError("exp argument must be a polynomial", at);
        return AnalyticExpr::exp(arg.poly());
      }
      throw ParseError("unknown variable '" + name + "'", start);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  AnalyticExpr number() {
    std::size_t start = pos_;
    std::string digits;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) digits += s_[pos_++];
    Rational v = digits.empty() ? Rational(0) : Rational(mpz_class(digits));
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      std::string frac;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) frac += s_[pos_++];
      if (digits.empty() && frac.empty()) throw ParseError("malformed number", start);
      if (!frac.empty()) {
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        v += Rational(mpz_class(frac), den);
        v.canonicalize();
      }
    }
    return AnalyticExpr(MultiPoly::constant(vars_, v));
  }

  const std::string& s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

AnalyticExpr parse_expr(const std::string& text, const std::vector<std::string>& vars) {
  return Parser(text, vars).parse();
}

MultiPoly parse_poly(const std::string& text, const std::vector<std::string>& vars) {
  AnalyticExpr e = parse_expr(text, vars);
  if (!e.is_polynomial()) throw ParseError("expression is not a polynomial", 0);
  return e.poly();
}

}  // namespace acsv
