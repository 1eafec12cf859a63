#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "acsv/critical.hpp"

namespace acsv {

// Q of the bivariate smooth-point formula; H must have two variables
cplx q_expression(const AnalyticExpr& H, const std::vector<cplx>& z);
Rational q_expression(const MultiPoly& H, const std::vector<Rational>& z);

struct HessianData {
  Eigen::MatrixXcd matrix;  // (d-1)x(d-1), in log coordinates
  cplx determinant = 0;
  int distinguished = -1;  // variable solved for implicitly
};

// distinguished < 0 picks the last variable unless its partial vanishes there
HessianData hessian_logparam(const AnalyticExpr& H, const std::vector<cplx>& z, int distinguished = -1);

// The numerator and smooth factor actually used at a point: factors that do not
// vanish at z are folded into G.
struct LocalData {
  AnalyticExpr H;
  std::vector<cplx> G;  // one value per point
};

AsymptoticTerm smooth_leading_term_2d(const RationalGF& F, const std::vector<CriticalPoint>& points,
                                      const Direction& dir);
AsymptoticTerm smooth_leading_term_nd(const RationalGF& F, const std::vector<CriticalPoint>& points,
                                      const Direction& dir);
AsymptoticTerm multiple_point_term_2d(const RationalGF& F, const std::vector<CriticalPoint>& points);
AsymptoticTerm multiple_point_term_nd(const RationalGF& F, const std::vector<CriticalPoint>& points,
                                      const Direction& dir);

struct LeadingTermOptions {
  SolveOptions solve;
  // pick this entry of contrib().candidates instead of the automatic choice
  std::optional<int> candidate;
};

struct LeadingTermResult {
  AsymptoticTerm term;
  ContribResult contrib;
};

// the formula matching the classification of pts.front(); pts is one torus of points
AsymptoticTerm term_at_points(const RationalGF& F, const std::vector<CriticalPoint>& pts, const Direction& dir);
// contrib followed by the matching formula
LeadingTermResult leading_term(const RationalGF& F, const Direction& dir, const LeadingTermOptions& opts = {});

}  // namespace acsv
