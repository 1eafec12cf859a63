#pragma once

#include <string>
#include <vector>

#include "acsv/gf.hpp"

namespace acsv {

constexpr std::size_t kMaxMatrixSize = 12;

struct MatrixTooLarge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

using PolyMatrix = std::vector<std::vector<MultiPoly>>;

struct WeightedDigraph {
  struct Edge {
    std::string from, to;
    MultiPoly weight;  // a monomial with coefficient 1
  };
  std::vector<std::string> vertices;
  std::vector<std::string> variables;
  std::vector<Edge> edges;

  std::size_t index(const std::string& v) const;
  // A_ij = sum of edge weights i -> j
  PolyMatrix weight_matrix() const;
};

// [(I - A)^{-1}]_ij as a rational function
RationalGF transfer_gf(const WeightedDigraph& g, const std::string& i, const std::string& j);
// sum over all start and end vertices
RationalGF transfer_gf_total(const WeightedDigraph& g);

struct ForbiddenSpec {
  int alphabet = 2;                 // symbols '0', '1', ... map to x1, x2, ...
  std::vector<std::string> words;

  void validate() const;
  std::vector<std::string> variables() const;  // x1..xd
};

struct ConnectorMatrices {
  PolyMatrix V;  // V_ij = connect(w_i, w_j) over proper overlaps
  PolyMatrix L;  // diag of word weights
};

MultiPoly word_weight(const std::string& w, const std::vector<std::string>& vars);
MultiPoly connect(const std::string& a, const std::string& b, const std::vector<std::string>& vars);
ConnectorMatrices connector_matrix(const ForbiddenSpec& spec);
RationalGF connector_gf(const ForbiddenSpec& spec);

// adjugate of a square polynomial matrix (transpose of cofactors)
PolyMatrix adjugate(const PolyMatrix& m);
MultiPoly determinant(const PolyMatrix& m);

// substitute each variable by a polynomial over new_vars ("1", "x", "2*x", ...);
// univariate results are reduced by their gcd
RationalGF diag_specialize(const RationalGF& F, const std::vector<std::string>& images,
                           const std::vector<std::string>& new_vars);
MultiPoly compose(const MultiPoly& p, const std::vector<MultiPoly>& images);

}  // namespace acsv
