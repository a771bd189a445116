#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypercox/volume.hpp"

namespace hypercox {

struct MirrorColouring {
  std::vector<int> colour;  // per wall
  int k = 0;
};

// Colours every wall by name; throws if a wall is missing or a colour unused.
MirrorColouring make_colouring(const Polytope<double>& P, const std::map<std::string, int>& by_name);
// Positive walls 0, negative walls 1, letter walls 2.
MirrorColouring pnl_colouring(const Polytope<double>& P);

struct Identification {
  int copy = 0, wall = 0, to_copy = 0, to_wall = 0;
  IsometryMatrix iso;
  std::vector<int> perm;  // wall permutation induced by iso
};

// Copies of one polytope with every (copy, wall) glued to some (copy', wall').
struct AssembledComplex {
  Polytope<double> base;
  StrataComplex strata;
  std::vector<std::string> copies;
  std::vector<Identification> glue;  // index copy * walls + wall

  std::size_t walls() const { return base.size(); }
  const Identification& across(int copy, int wall) const { return glue[copy * walls() + wall]; }
};

AssembledComplex mirror_complex(const Polytope<double>& P, const MirrorColouring& c);

struct PairingRule {
  int copy = 0, wall = 0, to_copy = 0, to_wall = 0;
  IsometryMatrix iso;  // maps the source wall onto the target wall
};
// Each rule glues both of its sides (the reverse direction uses the inverse).
AssembledComplex pairing_complex(const Polytope<double>& P, std::vector<std::string> copies,
                                 const std::vector<PairingRule>& rules);

AssembledComplex w_complex(const FamilyTime& t);
AssembledComplex n_complex(const FamilyTime& t);

struct FaceCycle {
  std::vector<std::pair<int, int>> entries;  // (copy, face index)
  double angle = 0;
  bool trivial_return = true;
};
std::vector<FaceCycle> face_cycles(const AssembledComplex& C);

struct ConePoint {
  double angle = 0;
  bool ideal = false;
};

struct StratumSurface {
  std::vector<int> cycles;  // indices into face_cycles()
  long euler_char = 0;
  std::vector<double> cone_angles;  // finite points with angle != 2 pi
  int punctures = 0;                // ideal points on the surface
  int boundary_edges = 0;
  int branched_edges = 0;  // 1-cells met by more than two sheets
  bool orientable = true;
  double area = 0;
  bool closed() const { return boundary_edges == 0; }
  // Only then are euler_char, orientable and cone_angles meaningful.
  bool is_surface() const { return branched_edges == 0; }
};
// Components of the union of the singular faces (total angle != 2 pi).
std::vector<StratumSurface> stratum_surfaces(const AssembledComplex& C);

struct CuspCycle {
  std::vector<std::pair<int, int>> entries;  // (copy, ideal vertex index)
  int length = 0;                            // blocks of mirror-connected entries
  int monodromy = 1;                         // +1 iff the cusp section is orientable
};
std::vector<CuspCycle> cusp_cycles(const AssembledComplex& C);

struct EulerCharacteristic {
  long topological = 0;             // alternating count of cell orbits
  std::optional<Rational> orbifold; // weighted by local groups; Coxeter base only
};
EulerCharacteristic complex_euler_char(const AssembledComplex& C);

struct FixedCell {
  int dim = 0, copy = 0;
  WallSet key;
};
struct InvolutionResult {
  std::vector<FixedCell> fixed;
  std::optional<AssembledComplex> quotient;  // present when the action is free
};
// iso acts on each copy, copy_perm permutes the copies.
InvolutionResult involution_quotient(const AssembledComplex& C, const IsometryMatrix& iso,
                                     const std::vector<int>& copy_perm);
AssembledComplex m_complex(const FamilyTime& t);

}  // namespace hypercox
