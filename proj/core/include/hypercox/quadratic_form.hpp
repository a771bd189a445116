#pragma once

#include <set>
#include <string>
#include <vector>

#include "hypercox/multiquad.hpp"

namespace hypercox {

// A place of Q: a prime p, or kInfinity for the real place.
using Place = long;
inline constexpr Place kInfinity = 0;

// Places where a quaternion algebra over Q ramifies. Always even in size.
class RamificationSet {
public:
  RamificationSet() = default;
  explicit RamificationSet(std::set<Place> places) : places_(std::move(places)) {}

  const std::set<Place>& places() const { return places_; }
  bool empty() const { return places_.empty(); }
  bool contains(Place p) const { return places_.count(p) != 0; }

  // Brauer-group product: symmetric difference of the place sets.
  RamificationSet operator*(const RamificationSet& o) const;
  bool operator==(const RamificationSet& o) const { return places_ == o.places_; }
  bool operator!=(const RamificationSet& o) const { return !(*this == o); }

  // "{2,5}", "{2,inf}", "{}".
  std::string str() const;

private:
  std::set<Place> places_;
};

using RationalMatrix = std::vector<std::vector<Rational>>;

struct Diagonalization {
  std::vector<Rational> diagonal;
  // Q = P^T * diag * P.
  RationalMatrix P;
};

struct QuadraticFormInvariant {
  RamificationSet hasse;
  RamificationSet witt;
  Integer determinant_class;
  int positive = 0;
  int negative = 0;
  std::vector<Integer> diagonal;  // squarefree representatives

  // Commensurability in the non-cocompact case over Q is decided by the Hasse set.
  bool same_class(const QuadraticFormInvariant& o) const { return hasse == o.hasse; }
};

int hilbert_symbol(const Rational& a, const Rational& b, Place place);
RamificationSet quaternion_ramification(const Rational& a, const Rational& b);

Diagonalization diagonalize(const RationalMatrix& Q);
// Signed squarefree integer representatives of the diagonal entries.
std::vector<Integer> squarefree_diagonal(const std::vector<Rational>& diag);

RamificationSet hasse_invariant(const std::vector<Rational>& diag);
RamificationSet witt_invariant(const std::vector<Rational>& diag);

QuadraticFormInvariant form_invariants(const RationalMatrix& Q);

RationalMatrix transpose(const RationalMatrix& A);
RationalMatrix multiply(const RationalMatrix& A, const RationalMatrix& B);

}  // namespace hypercox
