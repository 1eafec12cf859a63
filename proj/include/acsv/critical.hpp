#pragma once

#include <string>
#include <vector>

#include "acsv/gf.hpp"

namespace acsv {

enum class Backend { Exact, Numeric };

struct SolveOptions {
  Backend backend = Backend::Exact;
  std::vector<double> box_lo;  // multistart box, default [1e-3, 10] per coordinate
  std::vector<double> box_hi;
  int grid = 8;
  int max_iter = 60;
  double tol = 1e-13;
  double dedup_tol = 1e-8;
  double residual_tol = 1e-9;
  bool include_complex = true;
};

struct CriticalSystem {
  std::vector<AnalyticExpr> equations;
  std::vector<int> sheets;  // factor indices defining the stratum; empty = whole H
};

// sheets: {} smooth stratum of H, {k} smooth stratum of factor k,
// {a,b,...} intersection stratum of those factors
CriticalSystem critical_system(const RationalGF& F, const Direction& dir, const std::vector<int>& sheets = {});

struct SolveResult {
  std::vector<CriticalPoint> points;
  std::vector<std::string> warnings;
};

SolveResult solve_critical_points(const RationalGF& F, const Direction& dir, const SolveOptions& opts = {},
                                  const std::vector<int>& sheets = {});
// smooth strata of every factor plus transverse intersections of up to d factors
SolveResult solve_all_strata(const RationalGF& F, const Direction& dir, const SolveOptions& opts = {});

double height(const std::vector<cplx>& z, const Direction& dir);
double critical_residual(const RationalGF& F, const Direction& dir, const std::vector<cplx>& z,
                         const std::vector<int>& sheets);

// fills classification and sheets
PointClass classify_point(const RationalGF& F, CriticalPoint& p, double tol = 1e-8);
PointClass classify_point(const RationalGF& F, const std::vector<cplx>& z, double tol = 1e-8);

struct MinimalityReport {
  Minimality status = Minimality::Unknown;
  bool heuristic = false;
  std::string evidence;
};

MinimalityReport is_minimal(const RationalGF& F, const std::vector<cplx>& z);

struct Lattice {
  bool aperiodic = false;
  int rank = 0;
  long index = 0;                        // [Z^d : L] when full rank
  std::vector<std::vector<long>> basis;  // Hermite form rows
};

// lattice generated by the exponent vectors of P (taken relative to 0, as for H = 1 - P),
// or by their pairwise differences when relative_to_origin is false
Lattice aperiodicity_check(const MultiPoly& P, bool relative_to_origin = true);
// angles theta/(2 pi) with exp(i v.theta) = 1 for every v in the lattice
std::vector<std::vector<Rational>> torus_companions(const Lattice& L);

// direction against the cone spanned by -grad_log H_k at a multiple point;
// returns the coefficients of dir in that basis (all > 0 means strictly inside)
std::vector<double> cone_coordinates(const RationalGF& F, const std::vector<cplx>& z,
                                     const std::vector<int>& sheets, const Direction& dir);

struct ContribResult {
  std::vector<CriticalPoint> contributing;  // one torus, companions included
  std::vector<CriticalPoint> candidates;    // every critical point found, ranked by height
  Lattice lattice;
  bool ranked_only = false;                 // non-combinatorial: nothing auto-selected
  std::vector<std::string> warnings;
};

ContribResult contrib(const RationalGF& F, const Direction& dir, const SolveOptions& opts = {});

}  // namespace acsv
