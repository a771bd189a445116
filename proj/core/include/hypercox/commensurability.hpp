#pragma once

#include <string>
#include <vector>

#include "hypercox/coxeter.hpp"
#include "hypercox/quadratic_form.hpp"

namespace hypercox {

// The vector coeff * e_wall, e_wall the unit normal of a wall.
struct SpanVector {
  int wall = 0;
  MultiQuad coeff;
  std::string str(const std::vector<std::string>& names) const;
};

// Gram matrix of unit normals, g[i][j] = <e_i, e_j>.
struct ExactGram {
  std::vector<std::string> names;
  Mat<MultiQuad> g;

  static ExactGram from_polytope(const Polytope<MultiQuad>& P);
  MultiQuad product(const SpanVector& a, const SpanVector& b) const;
};

struct RationalSpan {
  std::vector<SpanVector> basis;      // five vectors
  std::size_t generated = 0;          // distinct lines c * e_i met by the closure
  int start_wall = 0;
};

// Closure of the vectors g_{1 i1} g_{i1 i2} ... g_{i(k-1) ik} e_ik starting from the
// first wall, breadth first; the basis is the first five linearly independent
// vectors. Every generated vector must have rational
// coordinates in it. A supplied basis is accepted if the closure from some
// starting wall lies in its rational span.
RationalSpan rational_span(const ExactGram& G, const std::vector<SpanVector>& supplied = {});

// Q_ij = <v_i, v_j>; throws if an entry is irrational.
RationalMatrix form_matrix(const ExactGram& G, const std::vector<SpanVector>& basis);

struct CommensurabilityReport {
  RationalSpan span;
  RationalMatrix form;
  Diagonalization diagonal;
  QuadraticFormInvariant invariant;
};

CommensurabilityReport commensurability_class(const ExactGram& G, const std::vector<SpanVector>& basis = {});
CommensurabilityReport commensurability_class(const Polytope<MultiQuad>& P,
                                              const std::vector<SpanVector>& basis = {});
bool commensurable(const CommensurabilityReport& a, const CommensurabilityReport& b);

// "sqrt(5)*H, A, L, M, N" against the wall names of G.
std::vector<SpanVector> parse_basis(const std::string& text, const std::vector<std::string>& names);

}  // namespace hypercox
