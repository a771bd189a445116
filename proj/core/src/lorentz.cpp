#include "hypercox/lorentz.hpp"

namespace hypercox {

std::string to_string(VectorKind k) {
  switch (k) {
    case VectorKind::Space: return "space";
    case VectorKind::Time: return "time";
    case VectorKind::Light: return "light";
  }
  return "?";
}

std::string to_string(Side s) {
  switch (s) {
    case Side::Inside: return "inside";
    case Side::Boundary: return "boundary";
    case Side::Outside: return "outside";
  }
  return "?";
}

std::string to_string(RelationKind k) {
  switch (k) {
    case RelationKind::Angle: return "angle";
    case RelationKind::Parallel: return "parallel";
    case RelationKind::Ultraparallel: return "ultraparallel";
    case RelationKind::Disjoint: return "disjoint";
  }
  return "?";
}

template struct LorentzPoint<double>;
template struct LorentzPoint<MultiQuad>;

}  // namespace hypercox
