#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "acsv/polycore.hpp"

namespace acsv {

UPoly to_upoly(const MultiPoly& p) {
  auto sv = p.support_variables();
  if (sv.size() > 1) throw std::invalid_argument("polynomial is not univariate: " + p.to_string());
  if (p.is_zero()) return {};
  std::size_t v = sv.empty() ? 0 : sv[0];
  UPoly u(std::max(p.degree(v), 0) + 1, Rational(0));
  for (const auto& [e, c] : p.terms()) u[e.empty() ? 0 : e[v]] = c;
  trim(u);
  return u;
}

MultiPoly from_upoly(const UPoly& u, const std::vector<std::string>& vars, std::size_t var) {
  MultiPoly p(vars);
  Exponent e(vars.size(), 0);
  for (std::size_t k = 0; k < u.size(); ++k) {
    e[var] = static_cast<int>(k);
    p.add_term(e, u[k]);
  }
  return p;
}

void trim(UPoly& u) {
  while (!u.empty() && u.back() == 0) u.pop_back();
}

int deg(const UPoly& u) { return static_cast<int>(u.size()) - 1; }

UPoly derivative(const UPoly& u) {
  if (u.size() <= 1) return {};
  UPoly d(u.size() - 1);
  for (std::size_t k = 1; k < u.size(); ++k) d[k - 1] = u[k] * static_cast<long>(k);
  trim(d);
  return d;
}

Rational eval(const UPoly& u, const Rational& x) {
  Rational s = 0;
  for (auto it = u.rbegin(); it != u.rend(); ++it) s = s * x + *it;
  return s;
}

double eval(const UPoly& u, double x) {
  double s = 0;
  for (auto it = u.rbegin(); it != u.rend(); ++it) s = s * x + it->get_d();
  return s;
}

cplx eval(const UPoly& u, cplx x) {
  cplx s = 0;
  for (auto it = u.rbegin(); it != u.rend(); ++it) s = s * x + it->get_d();
  return s;
}

UPoly poly_quo(const UPoly& a, const UPoly& b, UPoly* rem) {
  UPoly bb = b;
  trim(bb);
  if (bb.empty()) throw std::domain_error("division by zero polynomial");
  UPoly r = a;
  trim(r);
  UPoly q;
  if (r.size() >= bb.size()) q.assign(r.size() - bb.size() + 1, Rational(0));
  const Rational& lb = bb.back();
  while (!r.empty() && r.size() >= bb.size()) {
    std::size_t shift = r.size() - bb.size();
    Rational f = r.back() / lb;
    q[shift] = f;
    for (std::size_t i = 0; i < bb.size(); ++i) r[shift + i] -= f * bb[i];
    r.pop_back();
    trim(r);
  }
  trim(q);
  if (rem) *rem = r;
  return q;
}

UPoly poly_rem(const UPoly& a, const UPoly& b) {
  UPoly r;
  poly_quo(a, b, &r);
  return r;
}

static UPoly monic(UPoly u) {
  trim(u);
  if (u.empty()) return u;
  Rational l = u.back();
  for (auto& c : u) c /= l;
  return u;
}

UPoly poly_gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = poly_rem(a, b);
    a = std::move(b);
    b = monic(std::move(r));
  }
  return monic(a);
}

UPoly primitive_part(const UPoly& u) {
  UPoly v = u;
  trim(v);
  if (v.empty()) return v;
  mpz_class l = 1;
  for (const auto& c : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  mpz_class g = 0;
  for (auto& c : v) {
    c *= l;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
  }
  if (v.back() < 0) g = -g;
  for (auto& c : v) c /= g;
  return v;
}

UPoly squarefree_part(const UPoly& u) {
  UPoly v = u;
  trim(v);
  if (v.size() <= 1) return v;
  UPoly g = poly_gcd(v, derivative(v));
  return primitive_part(poly_quo(v, g));
}

std::vector<cplx> complex_roots(const UPoly& u0) {
  UPoly u = u0;
  trim(u);
  std::vector<cplx> out;
  // zero roots first, they make the companion matrix singular but that is harmless
  std::size_t z = 0;
  while (z < u.size() && u[z] == 0) ++z;
  for (std::size_t i = 0; i < z; ++i) out.emplace_back(0.0, 0.0);
  UPoly w(u.begin() + static_cast<long>(z), u.end());
  int n = deg(w);
  if (n <= 0) return out;
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  double lead = w.back().get_d();
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -w[i].get_d() / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> es(c, false);
  UPoly dw = derivative(w);
  for (int i = 0; i < n; ++i) {
    cplx r = es.eigenvalues()[i];
    // a few Newton steps against the exact coefficients
    for (int it = 0; it < 4; ++it) {
      cplx f = eval(w, r), df = eval(dw, r);
      if (std::abs(df) == 0.0) break;
      cplx step = f / df;
      if (!std::isfinite(step.real()) || std::abs(step) > 1e-3 * (1 + std::abs(r))) break;
      r -= step;
    }
    out.push_back(r);
  }
  return out;
}

std::string upoly_to_string(const UPoly& u, const std::string& var) {
  return from_upoly(u, {var}, 0).to_string();
}

// ---------------------------------------------------------------- Sturm

std::vector<UPoly> sturm_sequence(const UPoly& p) {
  std::vector<UPoly> seq;
  UPoly a = p;
  trim(a);
  if (a.empty()) throw std::invalid_argument("zero polynomial");
  seq.push_back(a);
  UPoly b = derivative(a);
  while (!b.empty()) {
    // positive rescaling keeps the sign pattern and the numbers small
    UPoly pb = primitive_part(b);
    if (!pb.empty() && (pb.back() > 0) != (b.back() > 0))
      for (auto& c : pb) c = -c;
    seq.push_back(pb);
    UPoly r = poly_rem(seq[seq.size() - 2], pb);
    for (auto& c : r) c = -c;
    b = r;
  }
  return seq;
}

static int sign_changes(const std::vector<UPoly>& seq, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& p : seq) {
    int s = sgn(eval(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int sturm_count(const std::vector<UPoly>& seq, const Rational& a, const Rational& b) {
  return sign_changes(seq, a) - sign_changes(seq, b);
}

Rational cauchy_bound(const UPoly& p) {
  UPoly u = p;
  trim(u);
  if (u.empty()) throw std::invalid_argument("zero polynomial");
  Rational m = 0;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) m = std::max(m, Rational(abs(u[i] / u.back())));
  return m + 1;
}

std::vector<IsolatingInterval> isolate_real_roots(const UPoly& p) {
  UPoly u = p;
  trim(u);
  if (u.empty()) throw std::invalid_argument("cannot isolate roots of the zero polynomial");
  UPoly sp = squarefree_part(u);
  std::vector<IsolatingInterval> out;
  if (deg(sp) < 1) return out;
  auto seq = sturm_sequence(sp);
  Rational B = cauchy_bound(sp);
  struct Job {
    Rational lo, hi;
  };
  std::vector<Job> stack{{-B, B}};
  while (!stack.empty()) {
    Job j = stack.back();
    stack.pop_back();
    int n = sturm_count(seq, j.lo, j.hi);
    if (n == 0) continue;
    if (n == 1) {
      out.push_back({j.lo, j.hi, true});
      continue;
    }
    Rational mid = (j.lo + j.hi) / 2;
    // keep split points off the roots so every interval is open at both ends
    Rational step = (j.hi - j.lo) / 8;
    while (eval(sp, mid) == 0) {
      mid += step;
      step /= 2;
    }
    stack.push_back({mid, j.hi});
    stack.push_back({j.lo, mid});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  return out;
}

std::vector<IsolatingInterval> isolate_real_roots(const MultiPoly& p) { return isolate_real_roots(to_upoly(p)); }

AlgebraicNumber refine_root(const MultiPoly& p, const IsolatingInterval& iv, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  UPoly sp = squarefree_part(to_upoly(p));
  Rational lo = iv.lo, hi = iv.hi;
  int slo = sgn(eval(sp, lo));
  Rational rtol(tol);
  bool exact = false;
  if (slo == 0) {
    hi = lo;
    exact = true;
  } else if (sgn(eval(sp, hi)) == 0) {
    lo = hi;
    exact = true;
  }
  while (!exact && hi - lo > rtol) {
    Rational mid = (lo + hi) / 2;
    int sm = sgn(eval(sp, mid));
    if (sm == 0) {
      lo = hi = mid;
      exact = true;
    } else if (sm == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  AlgebraicNumber a;
  a.poly = p;
  if (exact) {
    a.value = lo.get_d();
    Rational w = (iv.hi - iv.lo) / 4;
    if (w > rtol / 2) w = rtol / 2;
    a.interval = {lo - w, lo + w, true};
    if (a.interval.lo < iv.lo) a.interval.lo = iv.lo;
    if (a.interval.hi > iv.hi) a.interval.hi = iv.hi;
    if (a.interval.lo == a.interval.hi) a.interval = iv;
    return a;
  }
  a.interval = {lo, hi, true};
  double x = Rational((lo + hi) / 2).get_d();
  UPoly dsp = derivative(sp);
  double dlo = lo.get_d(), dhi = hi.get_d();
  for (int it = 0; it < 6; ++it) {
    double f = eval(sp, x), df = eval(dsp, x);
    if (df == 0.0) break;
    double nx = x - f / df;
    if (!(nx >= dlo && nx <= dhi)) break;
    x = nx;
  }
  a.value = x;
  return a;
}

UPoly minimal_polynomial(const UPoly& p, cplx root, double tol) {
  UPoly sp = squarefree_part(p);
  int n = deg(sp);
  if (n <= 1) return sp;
  auto roots = complex_roots(sp);
  std::size_t t = 0;
  for (std::size_t i = 1; i < roots.size(); ++i)
    if (std::abs(roots[i] - root) < std::abs(roots[t] - root)) t = i;
  std::vector<std::size_t> conj(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    std::size_t best = 0;
    for (std::size_t j = 0; j < roots.size(); ++j)
      if (std::abs(roots[j] - std::conj(roots[i])) < std::abs(roots[best] - std::conj(roots[i]))) best = j;
    conj[i] = best;
  }
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (i != t) others.push_back(i);
  const double lead = sp.back().get_d();
  for (int size = 1; size < n; ++size) {
    // combinations of size-1 elements from others
    std::vector<int> pick(others.size(), 0);
    std::fill(pick.begin(), pick.begin() + (size - 1), 1);
    do {
      std::vector<std::size_t> subset{t};
      for (std::size_t i = 0; i < others.size(); ++i)
        if (pick[i]) subset.push_back(others[i]);
      bool closed = true;
      for (auto i : subset)
        if (std::find(subset.begin(), subset.end(), conj[i]) == subset.end()) closed = false;
      if (!closed) continue;
      std::vector<cplx> c{1.0};
      for (auto i : subset) {
        std::vector<cplx> nc(c.size() + 1, 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) {
          nc[k + 1] += c[k];
          nc[k] -= c[k] * roots[i];
        }
        c = nc;
      }
      UPoly cand(c.size());
      bool ok = true;
      for (std::size_t k = 0; k < c.size() && ok; ++k) {
        cplx v = c[k] * lead;
        double r = std::round(v.real());
        if (std::abs(v.imag()) > tol * (1 + std::abs(v)) || std::abs(v.real() - r) > tol * (1 + std::abs(v)))
          ok = false;
        else
          cand[k] = Rational(mpz_class(r));
      }
      if (!ok) continue;
      cand = primitive_part(cand);
      if (deg(cand) != size) continue;
      if (poly_rem(sp, cand).empty()) return cand;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return sp;
}

}  // namespace acsv
