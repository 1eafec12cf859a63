#include "acsv/problem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>

#include "acsv/asymptotics.hpp"
#include "acsv/critical.hpp"
#include "acsv/kernel.hpp"
#include "acsv/riordan_lagrange.hpp"
#include "acsv/series_oracle.hpp"
#include "acsv/transfer.hpp"

namespace acsv {

namespace {

const std::set<std::string> kKinds{"explicit_gf", "riordan", "lagrange", "transfer", "connector", "kernel_walk"};

std::string fmt(double v, int prec = 12) {
  std::ostringstream os;
  os << std::setprecision(prec) << v;
  return os.str();
}

std::string dir_key(const std::vector<long>& r) {
  std::string s;
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? ":" : "") + std::to_string(r[i]);
  return s;
}

std::vector<long> parse_index(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stol(item));
  return out;
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }
cplx cplx_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

template <class T>
T get_or(const json& j, const char* key, T def) {
  return j.contains(key) ? j.at(key).get<T>() : def;
}

std::string poly_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long>());
  throw ProblemError("expected a polynomial string");
}

SeriesFunc series_func(const json& j, const std::string& what) {
  if (j.is_string()) return SeriesFunc::parse(j.get<std::string>());
  if (j.is_object() && j.contains("implicit")) {
    auto alpha = parse_poly(j.at("implicit").get<std::string>(), {"x", "v"});
    auto anchor = j.at("anchor");
    return SeriesFunc::implicit(alpha, anchor.at(0).get<double>(), anchor.at(1).get<double>());
  }
  throw ProblemError(what + " must be an expression or {implicit, anchor}");
}

StepSet step_set(const json& j) {
  StepSet E;
  for (const auto& s : j) {
    Step st;
    st.r = s.at(0).get<int>();
    st.s = s.at(1).get<int>();
    if (s.size() > 2) st.weight = Rational(poly_text(s.at(2)));
    E.steps.push_back(st);
  }
  E.validate();
  return E;
}

// smallest positive real root of a univariate polynomial
std::optional<double> smallest_positive_root(const MultiPoly& p) {
  UPoly u = to_upoly(p);
  std::optional<double> best;
  for (const auto& iv : isolate_real_roots(u)) {
    double v = refine_root(from_upoly(u, {"t"}, 0), iv, 1e-15).value;
    if (v > 0 && (!best || v < *best)) best = v;
  }
  return best;
}

// equal up to a nonzero rational factor; univariate polynomials are compared
// regardless of the variable name
bool poly_matches(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (a.support_variables().size() <= 1 && b.support_variables().size() <= 1) {
    UPoly ua = to_upoly(a), ub = to_upoly(b);
    if (ua.size() != ub.size()) return false;
    const Rational ratio = ua.back() / ub.back();
    for (std::size_t i = 0; i < ua.size(); ++i)
      if (ub[i] * ratio != ua[i]) return false;
    return true;
  }
  if (a.size() != b.size()) return false;
  const Rational ratio = a.terms().begin()->second / b.terms().begin()->second;
  for (const auto& [e, c] : a.terms()) {
    if (b.coefficient(e) * ratio != c) return false;
  }
  return true;
}

// Everything the quantity resolver needs about one analysis run.
struct Context {
  const ProblemSpec& spec;
  std::optional<RationalGF> F;
  std::optional<SeriesFunc> phi, v, psi;
  std::optional<KernelGF> kernel;
  std::string lagrange_mode = "univariate";
  std::map<std::string, AsymptoticTerm> terms;  // by direction key
  std::map<std::string, std::string> polys;     // exact polynomial quantities

  explicit Context(const ProblemSpec& s) : spec(s) {}

  bool has_oracle() const {
    if (F) return !F->numerator_value.has_value();
    return phi.has_value() || kernel.has_value();
  }

  Rational exact(const std::vector<long>& idx) const {
    if (F) {
      if (F->numerator_value) throw EvalError("no series oracle for a numerator given by value");
      return coefficient(*F, idx);
    }
    if (spec.kind == "lagrange") {
      if (lagrange_mode == "power") {
        long n = idx.at(0), k = idx.at(1);
        // [z^n] f^k = (k/n) [y^(n-k)] phi^n
        auto ph = phi->series(static_cast<int>(n - k));
        std::vector<Rational> acc(n - k + 1, 0);
        acc[0] = 1;
        for (long i = 0; i < n; ++i) acc = series_mul(acc, ph, static_cast<int>(n - k));
        return Rational(k, n) * acc[n - k];
      }
      return lagrange_series(*phi, *psi, static_cast<int>(idx.at(0))).at(idx.at(0));
    }
    const SeriesFunc& p = kernel ? kernel->phi : *phi;
    const SeriesFunc& w = kernel ? kernel->v : *v;
    const int r = static_cast<int>(idx.at(0));
    auto acc = p.series(r), vs = w.series(r);
    for (long s = 0; s < idx.at(1); ++s) acc = series_mul(acc, vs, r);
    return acc.at(r);
  }
};

RationalGF explicit_gf(const ProblemSpec& p) {
  const json& pl = p.payload;
  RationalGF F = RationalGF::from_strings(get_or<std::string>(pl, "numerator", "1"), pl.at("denominator").get<std::string>(),
                                          p.variables, p.combinatorial);
  if (pl.contains("factors")) {
    for (const auto& f : pl.at("factors"))
      F.factors.push_back({parse_poly(f.at(0).get<std::string>(), p.variables), f.size() > 1 ? f.at(1).get<int>() : 1});
    F.check_factors();
  }
  if (pl.contains("numerator_value")) F.numerator_value = pl.at("numerator_value").get<double>();
  return F;
}

WeightedDigraph digraph(const ProblemSpec& p) {
  WeightedDigraph g;
  g.variables = p.variables;
  g.vertices = p.payload.at("vertices").get<std::vector<std::string>>();
  for (const auto& e : p.payload.at("edges"))
    g.edges.push_back({e.at(0).get<std::string>(), e.at(1).get<std::string>(), parse_poly(poly_text(e.at(2)), p.variables)});
  return g;
}

ForbiddenSpec forbidden(const ProblemSpec& p) {
  ForbiddenSpec s;
  s.alphabet = get_or<int>(p.payload, "alphabet", 2);
  s.words = p.payload.at("words").get<std::vector<std::string>>();
  s.validate();
  return s;
}

void fill_term_report(DirectionReport& dr, const AsymptoticTerm& t) {
  TermReport tr;
  tr.order = t.order_exponent.get_str();
  tr.normalizing_index = t.normalizing_index;
  tr.periodicity = t.periodicity;
  tr.formula = t.formula;
  tr.uniformity = t.uniformity_note;
  for (const auto& c : t.components) tr.components.push_back({c.point, c.b0});
  tr.bases = t.bases();
  tr.leading_constant = t.leading_constant();
  dr.term = tr;
  for (const auto& w : t.warnings) dr.warnings.push_back(w);
}

PointReport point_report(const CriticalPoint& p) {
  PointReport pr;
  pr.z = p.z;
  for (const auto& e : p.exact) pr.defining_polys.push_back(e ? e->poly.to_string() : "");
  pr.classification = to_string(p.classification);
  pr.minimality = to_string(p.minimal);
  pr.heuristic = p.minimality_heuristic;
  pr.height = p.height;
  return pr;
}

std::vector<long> multipliers(long kmax) {
  std::set<long> ks;
  for (long div : {8L, 4L, 2L, 1L}) ks.insert(std::max(1L, kmax / div));
  return {ks.begin(), ks.end()};
}

void verify_direction(const Context& ctx, DirectionReport& dr, const AsymptoticTerm& t, long max_n) {
  if (!ctx.has_oracle() || max_n <= 0) return;
  const auto& r = dr.direction;
  const long big = *std::max_element(r.begin(), r.end());
  const long kmax = max_n / big;
  if (kmax < 1) return;
  for (long k : multipliers(kmax)) {
    VerificationRow row;
    row.n = k;
    for (long ri : r) row.index.push_back(ri * k);
    Rational ex = ctx.exact(row.index);
    row.exact = ex.get_str();
    row.exact_value = ex.get_d();
    row.approx = t.evaluate(row.index);
    row.zero = ex == 0;
    row.rel_error = row.zero ? std::abs(row.approx) : std::abs(row.approx - row.exact_value) / std::abs(row.exact_value);
    dr.verification.push_back(row);
  }
}

// quantities every term provides
void term_quantities(std::map<std::string, double>& q, const std::string& prefix, const AsymptoticTerm& t,
                     const std::vector<long>& r) {
  q[prefix + "b0"] = t.leading_constant();
  q[prefix + "order"] = t.order_exponent.get_d();
  q[prefix + "components"] = static_cast<double>(t.components.size());
  auto bases = t.bases();
  double growth = 1;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    q[prefix + "base:" + std::to_string(i)] = bases[i];
    if (i < r.size()) growth *= std::pow(bases[i], static_cast<double>(r[i]));
  }
  q[prefix + "growth"] = growth;
  // per-unit growth and constant with respect to coordinate k
  for (std::size_t k = 0; k < r.size() && bases.size() == r.size(); ++k) {
    q[prefix + "growth_per:" + std::to_string(k)] = std::pow(growth, 1.0 / static_cast<double>(r[k]));
    double b0 = t.leading_constant();
    if (t.normalizing_index >= 0 && static_cast<std::size_t>(t.normalizing_index) < r.size())
      b0 *= std::pow(static_cast<double>(r[t.normalizing_index]) / static_cast<double>(r[k]), t.order_exponent.get_d());
    q[prefix + "b0_per:" + std::to_string(k)] = b0;
  }
  if (!t.components.empty()) {
    const auto& pt = t.components.front().point;
    for (std::size_t i = 0; i < pt.size(); ++i) q[prefix + "point:" + std::to_string(i)] = pt[i].real();
  }
}

void point_quantities(Context& ctx, std::map<std::string, double>& q, const std::string& prefix, const CriticalPoint& p) {
  for (std::size_t i = 0; i < p.z.size(); ++i) {
    q[prefix + "point:" + std::to_string(i)] = p.z[i].real();
    if (i < p.exact.size() && p.exact[i]) ctx.polys[prefix + "minpoly:" + std::to_string(i)] = p.exact[i]->poly.to_string();
  }
  if (!ctx.F) return;
  const auto& F = *ctx.F;
  if (p.classification == PointClass::Multiple && F.dim() == 2) {
    auto fac = F.sheet_factors();
    for (int k : p.sheets) {
      MultiPoly h = fac.at(k).first.rename(F.variables);
      cplx a = p.z[0] * h.derivative(0).eval(p.z), b = p.z[1] * h.derivative(1).eval(p.z);
      if (std::abs(b) > 1e-14) q[prefix + "cone_ratio:" + std::to_string(k)] = (a / b).real();
    }
  }
  if (p.classification == PointClass::Smooth && F.dim() >= 3 && F.factors.empty()) {
    auto hd = hessian_logparam(F.denominator, p.z);
    q[prefix + "hessian_det"] = hd.determinant.real();
    for (int i = 0; i < hd.matrix.rows(); ++i)
      for (int j = 0; j < hd.matrix.cols(); ++j)
        q[prefix + "hessian:" + std::to_string(i) + "," + std::to_string(j)] = hd.matrix(i, j).real();
  }
}

void extra_quantities(Context& ctx, Report& rep) {
  const json& pl = ctx.spec.payload;
  auto& q = rep.quantities;
  if (ctx.F && pl.contains("wlln")) {
    const json& w = pl.at("wlln");
    auto slicing = get_or<std::string>(w, "slicing", "last") == "simplex" ? Slicing::Simplex : Slicing::LastVariable;
    auto res = wlln_mean(*ctx.F, slicing, get_or<int>(w, "free", -1));
    q["wlln_x0"] = res.x0;
    q["wlln_dominance"] = res.dominance_ratio;
    for (std::size_t i = 0; i < res.mean.size(); ++i) q["wlln_mean:" + std::to_string(i)] = res.mean[i];
    if (res.mean.size() >= 2 && res.mean[1] != 0) q["wlln_ratio"] = res.mean[0] / res.mean[1];
  }
  if (ctx.F && pl.contains("specialize")) {
    const json& s = pl.at("specialize");
    auto vars = s.at("variables").get<std::vector<std::string>>();
    auto D = diag_specialize(*ctx.F, s.at("images").get<std::vector<std::string>>(), vars);
    ctx.polys["specialized_numerator"] = D.numerator.to_string();
    ctx.polys["specialized_denominator"] = D.denominator.to_string();
    if (vars.size() == 1)
      if (auto r = smallest_positive_root(D.denominator.poly())) q["specialized_x0"] = *r;
  }
  if (ctx.F && pl.contains("occupation")) {
    // long-run fraction of weight carried by one variable: (u H_u)/(z H_z) at the dominant root in z
    const MultiPoly H = ctx.F->denominator.poly();
    const auto& vars = ctx.F->variables;
    for (const auto& o : pl.at("occupation")) {
      const std::string label = o.at("label").get<std::string>();
      const std::size_t free = H.index_of(o.at("free").get<std::string>());
      const std::size_t var = H.index_of(o.at("variable").get<std::string>());
      std::vector<Rational> vals(vars.size(), 1);
      for (const auto& [name, val] : o.at("values").items()) vals[H.index_of(name)] = Rational(poly_text(val));
      MultiPoly h = H;
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (i != free) h = h.specialize(i, vals[i]);
      auto z0 = smallest_positive_root(h);
      if (!z0) throw AnalysisRefusal("no_root", "specialized denominator has no positive root");
      std::vector<double> pt(vars.size());
      for (std::size_t i = 0; i < vars.size(); ++i) pt[i] = i == free ? *z0 : vals[i].get_d();
      double num = pt[var] * H.derivative(var).eval(pt);
      double den = pt[free] * H.derivative(free).eval(pt);
      q["z0:" + label] = *z0;
      q["fraction:" + label] = num / den;
    }
  }
  if (ctx.F) {
    if (ctx.F->numerator.is_polynomial()) ctx.polys["numerator"] = ctx.F->numerator.poly().to_string();
    if (ctx.F->denominator.is_polynomial()) ctx.polys["denominator"] = ctx.F->denominator.poly().to_string();
  }
  if (ctx.phi && pl.contains("schema")) {
    auto kind = pl.at("schema").get<std::string>() == "sets" ? SchemaKind::Sets : SchemaKind::Sequences;
    q["schema_constant"] = schema_constant(*ctx.phi, kind);
  }
  if (pl.contains("elimination")) {
    const json& e = pl.at("elimination");
    const std::string of = e.at("quantity").get<std::string>();
    if (q.count(of)) {
      auto poly = parse_poly(e.at("poly").get<std::string>(), {get_or<std::string>(e, "variable", "S")});
      q["elimination_residual"] = verify_elimination_polynomial(q.at(of), poly).residual;
    }
  }
}

std::optional<double> resolve(const Context& ctx, const Report& rep, const std::string& name) {
  auto it = rep.quantities.find(name);
  if (it != rep.quantities.end()) return it->second;
  auto colon = name.find(':');
  if (colon == std::string::npos) return std::nullopt;
  const std::string head = name.substr(0, colon);
  if (head != "coefficient" && head != "rel_error_at" && head != "approx") return std::nullopt;
  auto idx = parse_index(name.substr(colon + 1));
  const AsymptoticTerm* term = nullptr;
  if (!ctx.terms.empty()) {
    // use the direction through idx when there is one, else the first
    auto d = Direction::make(idx);
    auto found = ctx.terms.find(dir_key(d.r));
    term = found != ctx.terms.end() ? &found->second : &ctx.terms.begin()->second;
  }
  if (head == "coefficient") return ctx.exact(idx).get_d();
  if (!term) return std::nullopt;
  double approx = term->evaluate(idx);
  if (head == "approx") return approx;
  double ex = ctx.exact(idx).get_d();
  return std::abs(approx - ex) / std::abs(ex);
}

void run_checks(const Context& ctx, Report& rep) {
  for (const auto& e : ctx.spec.expected) {
    CheckResult c;
    c.quantity = e.quantity;
    c.note = e.note;
    try {
      if (e.poly) {
        c.expected = *e.poly;
        auto it = ctx.polys.find(e.quantity);
        if (it == ctx.polys.end()) {
          c.actual = "unavailable";
        } else {
          c.actual = it->second;
          std::vector<std::string> vars = ctx.spec.variables;
          for (const char* n : {"x", "y", "z", "t", "u", "v", "w", "S", "x1", "x2", "x3", "x4"})
            if (std::find(vars.begin(), vars.end(), n) == vars.end()) vars.push_back(n);
          c.pass = poly_matches(parse_poly(it->second, vars), parse_poly(*e.poly, vars));
        }
      } else {
        auto v = resolve(ctx, rep, e.quantity);
        if (!v) {
          c.actual = "unavailable";
        } else {
          c.actual = fmt(*v, 14);
          bool pass = std::isfinite(*v);
          std::string target;
          if (e.value) {
            pass = pass && std::abs(*v - *e.value) <= e.tolerance;
            target = fmt(*e.value, 14) + " +- " + fmt(e.tolerance, 3);
          }
          if (e.min) {
            pass = pass && *v >= *e.min;
            target += (target.empty() ? "" : ", ") + std::string(">= ") + fmt(*e.min);
          }
          if (e.max) {
            pass = pass && *v <= *e.max;
            target += (target.empty() ? "" : ", ") + std::string("<= ") + fmt(*e.max);
          }
          c.expected = target;
          c.pass = pass;
        }
      }
    } catch (const std::exception& ex) {
      c.actual = std::string("error: ") + ex.what();
      c.pass = false;
    }
    rep.checks.push_back(c);
  }
}

long default_max_n(const ProblemSpec& p, const Context& ctx) {
  if (p.max_n > 0) return p.max_n;
  if (ctx.F) return ctx.F->dim() >= 3 ? 12 : 40;
  return 60;
}

}  // namespace

ProblemSpec ProblemSpec::from_json(const json& j) {
  ProblemSpec p;
  try {
    if (!j.is_object()) throw ProblemError("problem must be a JSON object");
    int version = get_or<int>(j, "schema_version", kSchemaVersion);
    if (version != kSchemaVersion) throw ProblemError("unsupported schema_version " + std::to_string(version));
    p.name = j.at("name").get<std::string>();
    p.kind = j.at("kind").get<std::string>();
    if (!kKinds.count(p.kind)) throw ProblemError("unknown kind '" + p.kind + "'");
    p.description = get_or<std::string>(j, "description", "");
    p.variables = get_or<std::vector<std::string>>(j, "variables", {});
    p.combinatorial = get_or<bool>(j, "combinatorial", false);
    p.backend = get_or<std::string>(j, "backend", "exact");
    if (p.backend != "exact" && p.backend != "numeric") throw ProblemError("backend must be exact or numeric");
    p.max_n = get_or<long>(j, "max_n", 0);
    if (j.contains("directions")) {
      for (const auto& d : j.at("directions")) {
        auto r = d.is_string() ? parse_direction(d.get<std::string>()) : d.get<std::vector<long>>();
        for (long x : r)
          if (x <= 0) throw ProblemError("direction entries must be positive");
        p.directions.push_back(r);
      }
    }
    if (j.contains("expected")) {
      for (const auto& e : j.at("expected")) {
        Expectation x;
        x.quantity = e.at("quantity").get<std::string>();
        if (e.contains("value")) x.value = e.at("value").get<double>();
        x.tolerance = get_or<double>(e, "tolerance", 0.0);
        if (e.contains("min")) x.min = e.at("min").get<double>();
        if (e.contains("max")) x.max = e.at("max").get<double>();
        if (e.contains("poly")) x.poly = e.at("poly").get<std::string>();
        x.note = get_or<std::string>(e, "note", "");
        if (!x.value && !x.min && !x.max && !x.poly) throw ProblemError("expectation '" + x.quantity + "' has no target");
        p.expected.push_back(x);
      }
    }
    p.payload = get_or<json>(j, "payload", json::object());
  } catch (const json::exception& e) {
    throw ProblemError(std::string("malformed problem: ") + e.what());
  }
  // validate payload eagerly so malformed input is an input error
  try {
    if (p.kind == "explicit_gf" || p.kind == "transfer" || p.kind == "connector") {
      if (p.kind != "connector" && p.variables.empty()) throw ProblemError("variables are required");
      (void)problem_gf(p);
    } else if (p.kind == "riordan") {
      if (!p.payload.contains("phi") || !p.payload.contains("v")) throw ProblemError("riordan needs phi and v");
    } else if (p.kind == "lagrange") {
      if (!p.payload.contains("phi")) throw ProblemError("lagrange needs phi");
    } else if (p.kind == "kernel_walk") {
      (void)step_set(p.payload.at("steps"));
    }
  } catch (const ParseError& e) {
    throw ProblemError(std::string("syntax error: ") + e.what());
  } catch (const json::exception& e) {
    throw ProblemError(std::string("malformed payload: ") + e.what());
  } catch (const VariableMismatch& e) {
    throw ProblemError(e.what());
  }
  return p;
}

json ProblemSpec::to_json() const {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = name;
  j["kind"] = kind;
  if (!description.empty()) j["description"] = description;
  j["variables"] = variables;
  j["combinatorial"] = combinatorial;
  j["backend"] = backend;
  if (max_n) j["max_n"] = max_n;
  j["directions"] = directions;
  json ex = json::array();
  for (const auto& e : expected) {
    json x{{"quantity", e.quantity}};
    if (e.value) x["value"] = *e.value, x["tolerance"] = e.tolerance;
    if (e.min) x["min"] = *e.min;
    if (e.max) x["max"] = *e.max;
    if (e.poly) x["poly"] = *e.poly;
    if (!e.note.empty()) x["note"] = e.note;
    ex.push_back(x);
  }
  j["expected"] = ex;
  j["payload"] = payload;
  return j;
}

ProblemSpec load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ProblemError("cannot open " + path);
  json j;
  try {
    j = json::parse(in, nullptr, true, true);  // comments allowed
  } catch (const json::parse_error& e) {
    throw ProblemError(std::string("invalid JSON: ") + e.what());
  }
  return ProblemSpec::from_json(j);
}

std::vector<long> parse_direction(const std::string& text) {
  std::vector<long> r;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t pos = 0;
      long v = std::stol(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      r.push_back(v);
    } catch (const std::logic_error&) {
      throw ProblemError("bad direction '" + text + "'");
    }
  }
  if (r.empty()) throw ProblemError("empty direction");
  for (long v : r)
    if (v <= 0) throw ProblemError("direction entries must be positive");
  return r;
}

RationalGF problem_gf(const ProblemSpec& p) {
  if (p.kind == "explicit_gf") return explicit_gf(p);
  if (p.kind == "transfer") {
    auto g = digraph(p);
    RationalGF F = get_or<bool>(p.payload, "total", false)
                       ? transfer_gf_total(g)
                       : transfer_gf(g, p.payload.at("start").get<std::string>(), p.payload.at("end").get<std::string>());
    F.combinatorial = true;
    return F;
  }
  if (p.kind == "connector") return connector_gf(forbidden(p));
  throw ProblemError("kind " + p.kind + " has no rational generating function");
}

bool Report::all_checks_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

bool Report::any_refusal() const {
  return std::any_of(directions.begin(), directions.end(), [](const DirectionReport& d) { return d.status != "ok"; });
}

Report analyze(const ProblemSpec& p, const AnalyzeOptions& opts) {
  Context ctx(p);
  Report rep;
  rep.name = p.name;
  rep.kind = p.kind;
  rep.variables = p.variables;
  const json& pl = p.payload;

  if (p.kind == "explicit_gf" || p.kind == "transfer" || p.kind == "connector") {
    ctx.F = problem_gf(p);
    rep.variables = ctx.F->variables;
    rep.numerator = ctx.F->numerator.to_string();
    rep.denominator = ctx.F->denominator.to_string();
  } else if (p.kind == "riordan") {
    ctx.phi = series_func(pl.at("phi"), "phi");
    ctx.v = series_func(pl.at("v"), "v");
  } else if (p.kind == "lagrange") {
    ctx.phi = series_func(pl.at("phi"), "phi");
    ctx.psi = series_func(pl.contains("psi") ? pl.at("psi") : json("x"), "psi");
    ctx.lagrange_mode = get_or<std::string>(pl, "mode", "univariate");
  } else if (p.kind == "kernel_walk") {
    ctx.kernel = kernel_gf(step_set(pl.at("steps")));
    rep.denominator = ctx.kernel->kernel.Q.to_string();
    ctx.polys["kernel"] = rep.denominator;
  }

  std::vector<std::vector<long>> dirs = p.directions;
  if (opts.direction) dirs = {*opts.direction};
  const std::string backend = opts.backend.value_or(p.backend);
  const long max_n = opts.max_n > 0 ? opts.max_n : default_max_n(p, ctx);

  for (std::size_t di = 0; di < dirs.size(); ++di) {
    DirectionReport dr;
    dr.direction = dirs[di];
    if (opts.order > 0) dr.warnings.push_back("only the leading term is computed; --order ignored");
    const std::string prefix = dir_key(dirs[di]) + "/";
    try {
      AsymptoticTerm t;
      if (ctx.F) {
        Direction dir = Direction::make(dirs[di]);
        if (dir.dim() != ctx.F->dim()) throw ProblemError("direction has the wrong number of entries");
        if (pl.contains("point")) {
          // a user-supplied point bypasses the search (used when H(0) = 0 or only G(z) is known)
          CriticalPoint cp;
          for (const auto& c : pl.at("point")) cp.z.push_back(c.is_array() ? cplx_from(c) : cplx(c.get<double>(), 0));
          classify_point(*ctx.F, cp);
          cp.minimal = Minimality::Unknown;
          cp.height = height(cp.z, dir);
          dr.warnings.push_back("point supplied by the problem file; minimality not certified");
          dr.points.push_back(point_report(cp));
          point_quantities(ctx, rep.quantities, prefix, cp);
          t = term_at_points(*ctx.F, {cp}, dir);
        } else {
          SolveOptions so;
          so.backend = backend == "numeric" ? Backend::Numeric : Backend::Exact;
          auto cr = contrib(*ctx.F, dir, so);
          for (const auto& w : cr.warnings) dr.warnings.push_back(w);
          const auto& shown = cr.contributing.empty() ? cr.candidates : cr.contributing;
          for (const auto& c : shown) dr.points.push_back(point_report(c));
          std::vector<CriticalPoint> pts;
          if (pl.contains("candidate")) {
            pts.push_back(cr.candidates.at(pl.at("candidate").get<std::size_t>()));
          } else {
            if (cr.ranked_only)
              throw AnalysisRefusal("ranked_only", "input is not marked combinatorial; choose a candidate explicitly");
            pts = cr.contributing;
          }
          if (!pts.empty()) point_quantities(ctx, rep.quantities, prefix, pts.front());
          t = term_at_points(*ctx.F, pts, dir);
        }
      } else if (p.kind == "lagrange") {
        if (ctx.lagrange_mode == "power") {
          if (dirs[di].size() != 2) throw ProblemError("lagrange power needs a direction n:k");
          t = lagrange_power(*ctx.phi, dirs[di][0], dirs[di][1]);
        } else {
          if (dirs[di].size() != 1) throw ProblemError("lagrange needs a one-entry direction");
          t = lagrange_univariate(*ctx.phi, *ctx.psi, dirs[di][0]);
        }
      } else {
        if (dirs[di].size() != 2) throw ProblemError("Riordan arrays need a direction r:s");
        const SeriesFunc& ph = ctx.kernel ? ctx.kernel->phi : *ctx.phi;
        const SeriesFunc& vv = ctx.kernel ? ctx.kernel->v : *ctx.v;
        t = riordan_leading_term(ph, vv, dirs[di][0], dirs[di][1]);
        const double lambda = static_cast<double>(dirs[di][0]) / static_cast<double>(dirs[di][1]);
        const double x = solve_mu(vv, lambda);
        rep.quantities[prefix + "saddle"] = x;
        rep.quantities[prefix + "sigma2"] = sigma2(vv, x);
        rep.quantities[prefix + "v_at_saddle"] = vv.value(x);
        if (ctx.kernel) t.formula = ctx.kernel->formula + "; " + t.formula;
      }
      if (dr.points.empty())
        for (const auto& c : t.points) dr.points.push_back(point_report(c));
      fill_term_report(dr, t);
      term_quantities(rep.quantities, prefix, t, dirs[di]);
      ctx.terms[dir_key(Direction::make(dirs[di]).r)] = t;
      if (opts.verify) verify_direction(ctx, dr, t, max_n);
      for (const auto& row : dr.verification) {
        rep.quantities[prefix + "rel_error:" + std::to_string(row.n)] = row.rel_error;
        if (opts.tol > 0 && !row.zero && row.rel_error > opts.tol)
          dr.warnings.push_back("relative error " + fmt(row.rel_error, 4) + " exceeds tolerance at n = " + std::to_string(row.n));
      }
    } catch (const AnalysisRefusal& e) {
      dr.status = "refused";
      dr.refusal_kind = e.kind;
      dr.refusal_message = e.what();
    }
    rep.directions.push_back(dr);
  }

  // unprefixed copies for the first direction
  if (!dirs.empty()) {
    const std::string prefix = dir_key(dirs[0]) + "/";
    std::map<std::string, double> extra;
    for (const auto& [k, v] : rep.quantities)
      if (k.rfind(prefix, 0) == 0) extra[k.substr(prefix.size())] = v;
    for (const auto& [k, v] : extra) rep.quantities.emplace(k, v);
    std::map<std::string, std::string> extra_polys;
    for (const auto& [k, v] : ctx.polys)
      if (k.rfind(prefix, 0) == 0) extra_polys[k.substr(prefix.size())] = v;
    for (const auto& [k, v] : extra_polys) ctx.polys.emplace(k, v);
  }
  try {
    extra_quantities(ctx, rep);
  } catch (const AnalysisRefusal& e) {
    rep.quantities.emplace("extra_refused", 1);
  }
  if (opts.checks) run_checks(ctx, rep);
  return rep;
}

std::vector<std::pair<std::vector<long>, Rational>> series_table(const ProblemSpec& p, int degree) {
  std::vector<std::pair<std::vector<long>, Rational>> out;
  if (degree < 0) throw ProblemError("degree must be nonnegative");
  if (p.kind == "explicit_gf" || p.kind == "transfer" || p.kind == "connector") {
    RationalGF F = problem_gf(p);
    if (F.numerator_value) throw ProblemError("problem has no series: numerator given by value only");
    auto t = expand_coefficients(F, degree);
    for (const auto& [e, c] : t.coefficients.terms()) out.push_back({std::vector<long>(e.begin(), e.end()), c});
    return out;
  }
  if (p.kind == "lagrange") {
    auto phi = series_func(p.payload.at("phi"), "phi");
    auto psi = series_func(p.payload.contains("psi") ? p.payload.at("psi") : json("x"), "psi");
    auto s = lagrange_series(phi, psi, degree);
    for (int n = 0; n <= degree; ++n)
      if (s[n] != 0) out.push_back({{n}, s[n]});
    return out;
  }
  std::optional<KernelGF> K;
  std::optional<SeriesFunc> phi, v;
  if (p.kind == "kernel_walk") {
    K = kernel_gf(step_set(p.payload.at("steps")));
  } else {
    phi = series_func(p.payload.at("phi"), "phi");
    v = series_func(p.payload.at("v"), "v");
  }
  auto ph = (K ? K->phi : *phi).series(degree), vs = (K ? K->v : *v).series(degree);
  auto acc = ph;
  for (int s = 0; s <= degree; ++s) {
    for (int r = 0; r + s <= degree; ++r)
      if (acc[r] != 0) out.push_back({{r, s}, acc[r]});
    acc = series_mul(acc, vs, degree);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

void to_json(json& j, const Report& r) {
  j = json::object();
  j["schema_version"] = r.schema_version;
  j["name"] = r.name;
  j["kind"] = r.kind;
  j["variables"] = r.variables;
  if (!r.numerator.empty()) j["numerator"] = r.numerator;
  if (!r.denominator.empty()) j["denominator"] = r.denominator;
  json dirs = json::array();
  for (const auto& d : r.directions) {
    json dj;
    dj["direction"] = d.direction;
    dj["status"] = d.status;
    if (d.status != "ok") dj["refusal"] = {{"kind", d.refusal_kind}, {"message", d.refusal_message}};
    json pts = json::array();
    for (const auto& p : d.points) {
      json pj;
      json z = json::array();
      for (auto c : p.z) z.push_back(cplx_json(c));
      pj["z"] = z;
      pj["defining_polynomials"] = p.defining_polys;
      pj["classification"] = p.classification;
      pj["minimality"] = p.minimality;
      pj["minimality_heuristic"] = p.heuristic;
      pj["height"] = p.height;
      pts.push_back(pj);
    }
    dj["points"] = pts;
    if (d.term) {
      const auto& t = *d.term;
      json tj;
      tj["order"] = t.order;
      tj["normalizing_index"] = t.normalizing_index;
      tj["periodicity"] = t.periodicity;
      tj["formula"] = t.formula;
      tj["uniformity"] = t.uniformity;
      json comps = json::array();
      for (const auto& c : t.components) {
        json z = json::array();
        for (auto v : c.point) z.push_back(cplx_json(v));
        comps.push_back({{"point", z}, {"b0", cplx_json(c.b0)}});
      }
      tj["components"] = comps;
      tj["bases"] = t.bases;
      tj["leading_constant"] = t.leading_constant;
      dj["term"] = tj;
    }
    json ver = json::array();
    for (const auto& v : d.verification)
      ver.push_back({{"n", v.n}, {"index", v.index}, {"exact", v.exact}, {"exact_value", v.exact_value},
                     {"approx", v.approx}, {"rel_error", v.rel_error}, {"zero", v.zero}});
    dj["verification"] = ver;
    dj["warnings"] = d.warnings;
    dirs.push_back(dj);
  }
  j["directions"] = dirs;
  j["quantities"] = r.quantities;
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"quantity", c.quantity}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}, {"note", c.note}});
  j["checks"] = checks;
}

void from_json(const json& j, Report& r) {
  r.schema_version = j.at("schema_version").get<int>();
  r.name = j.at("name").get<std::string>();
  r.kind = j.at("kind").get<std::string>();
  r.variables = j.at("variables").get<std::vector<std::string>>();
  r.numerator = get_or<std::string>(j, "numerator", "");
  r.denominator = get_or<std::string>(j, "denominator", "");
  r.directions.clear();
  for (const auto& dj : j.at("directions")) {
    DirectionReport d;
    d.direction = dj.at("direction").get<std::vector<long>>();
    d.status = dj.at("status").get<std::string>();
    if (dj.contains("refusal")) {
      d.refusal_kind = dj.at("refusal").at("kind").get<std::string>();
      d.refusal_message = dj.at("refusal").at("message").get<std::string>();
    }
    for (const auto& pj : dj.at("points")) {
      PointReport p;
      for (const auto& c : pj.at("z")) p.z.push_back(cplx_from(c));
      p.defining_polys = pj.at("defining_polynomials").get<std::vector<std::string>>();
      p.classification = pj.at("classification").get<std::string>();
      p.minimality = pj.at("minimality").get<std::string>();
      p.heuristic = pj.at("minimality_heuristic").get<bool>();
      p.height = pj.at("height").get<double>();
      d.points.push_back(p);
    }
    if (dj.contains("term")) {
      const auto& tj = dj.at("term");
      TermReport t;
      t.order = tj.at("order").get<std::string>();
      t.normalizing_index = tj.at("normalizing_index").get<int>();
      t.periodicity = tj.at("periodicity").get<std::string>();
      t.formula = tj.at("formula").get<std::string>();
      t.uniformity = tj.at("uniformity").get<std::string>();
      for (const auto& c : tj.at("components")) {
        ComponentReport cr;
        for (const auto& v : c.at("point")) cr.point.push_back(cplx_from(v));
        cr.b0 = cplx_from(c.at("b0"));
        t.components.push_back(cr);
      }
      t.bases = tj.at("bases").get<std::vector<double>>();
      t.leading_constant = tj.at("leading_constant").get<double>();
      d.term = t;
    }
    for (const auto& v : dj.at("verification")) {
      VerificationRow row;
      row.n = v.at("n").get<long>();
      row.index = v.at("index").get<std::vector<long>>();
      row.exact = v.at("exact").get<std::string>();
      row.exact_value = v.at("exact_value").get<double>();
      row.approx = v.at("approx").get<double>();
      row.rel_error = v.at("rel_error").get<double>();
      row.zero = v.at("zero").get<bool>();
      d.verification.push_back(row);
    }
    d.warnings = dj.at("warnings").get<std::vector<std::string>>();
    r.directions.push_back(d);
  }
  r.quantities = j.at("quantities").get<std::map<std::string, double>>();
  r.checks.clear();
  for (const auto& c : j.at("checks"))
    r.checks.push_back({c.at("quantity").get<std::string>(), c.at("expected").get<std::string>(),
                        c.at("actual").get<std::string>(), c.at("pass").get<bool>(), c.at("note").get<std::string>()});
}

std::string report_text(const Report& r) {
  std::ostringstream os;
  os << r.name << " (" << r.kind << ")\n";
  if (r.kind == "kernel_walk")
    os << "  kernel Q = " << r.denominator << "\n";
  else if (!r.denominator.empty())
    os << "  F = (" << r.numerator << ") / (" << r.denominator << ")\n";
  for (const auto& d : r.directions) {
    os << "  direction " << dir_key(d.direction) << ": " << d.status;
    if (d.status != "ok") os << " [" << d.refusal_kind << "] " << d.refusal_message;
    os << "\n";
    for (const auto& p : d.points) {
      os << "    point (";
      for (std::size_t i = 0; i < p.z.size(); ++i) {
        os << (i ? ", " : "") << fmt(p.z[i].real(), 10);
        if (std::abs(p.z[i].imag()) > 1e-12) os << (p.z[i].imag() > 0 ? "+" : "") << fmt(p.z[i].imag(), 10) << "i";
      }
      os << ") " << p.classification << ", " << p.minimality << (p.heuristic ? " (heuristic)" : "") << "\n";
      for (std::size_t i = 0; i < p.defining_polys.size(); ++i)
        if (!p.defining_polys[i].empty()) os << "      coordinate " << i << " root of " << p.defining_polys[i] << "\n";
    }
    if (d.term) {
      const auto& t = *d.term;
      os << "    term: b0 = " << fmt(t.leading_constant) << ", bases (";
      for (std::size_t i = 0; i < t.bases.size(); ++i) os << (i ? ", " : "") << fmt(t.bases[i]);
      os << "), order " << t.order;
      if (t.normalizing_index >= 0) os << " in coordinate " << t.normalizing_index;
      os << "\n    " << t.periodicity << "\n    " << t.formula << "\n";
    }
    if (!d.verification.empty()) {
      os << "    n        exact              asymptotic         rel. error\n";
      for (const auto& v : d.verification)
        os << "    " << std::setw(8) << std::left << v.n << " " << std::setw(18) << fmt(v.exact_value, 10) << " "
           << std::setw(18) << fmt(v.approx, 10) << " " << (v.zero ? "zero" : fmt(v.rel_error, 4)) << "\n";
    }
    for (const auto& w : d.warnings) os << "    warning: " << w << "\n";
  }
  for (const auto& c : r.checks)
    os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.quantity << " = " << c.actual << " (expected " << c.expected << ")\n";
  return os.str();
}

}  // namespace acsv
