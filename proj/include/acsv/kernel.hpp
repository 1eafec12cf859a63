#pragma once

#include <vector>

#include "acsv/gf.hpp"
#include "acsv/riordan_lagrange.hpp"

namespace acsv {

struct Step {
  int r = 0;
  int s = 0;
  Rational weight = 1;
};

// a_{r,s} = sum_i w_i a_{r - r_i, s - s_i}, a_{0,0} = 1, a = 0 below the axis.
// Steps with r_i = 0 are allowed as long as they move up (s_i = 1).
struct StepSet {
  std::vector<Step> steps;

  void validate() const;
  int p() const;  // -min s_i
  int P() const;  // max s_i
};

struct KernelPoly {
  MultiPoly Q;  // y^p (1 - sum w x^r y^s), scaled to integer coefficients, over (x, y)
  MultiPoly C;  // sum over s_i = P of w x^r, over (x)
  MultiPoly a;  // sum over s_i = -p of w x^r
  MultiPoly B;  // sum over s_i = 0 of w x^r
};

KernelPoly kernel_poly(const StepSet& E);

struct SmallBranch {
  std::vector<Rational> series;  // xi_0 .. xi_N, xi_0 = 0
  SeriesFunc func;               // implicit branch of Q itself
};

// the branch xi(x) of a kernel quadratic in y with xi(0) = 0
SmallBranch small_branch(const MultiPoly& Q, int N);

struct KernelGF {
  KernelPoly kernel;
  SmallBranch xi;
  SeriesFunc phi;  // xi / a
  SeriesFunc v;    // C xi / a
  std::string formula;
};

// F(x, y) = phi(x) / (1 - y v(x)) for p = P = 1
KernelGF kernel_gf(const StepSet& E, int N = 40);

// exact a_{r,s} for r <= R, s <= S from the Riordan pair
std::vector<std::vector<Rational>> kernel_coefficients(const KernelGF& K, int R, int S);

AsymptoticTerm walk_asymptotics(const StepSet& E, long r, long s);

// series helpers on truncated coefficient vectors
std::vector<Rational> series_mul(const std::vector<Rational>& a, const std::vector<Rational>& b, int N);
std::vector<Rational> series_inv(const std::vector<Rational>& a, int N);

}  // namespace acsv
