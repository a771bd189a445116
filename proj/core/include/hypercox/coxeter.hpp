#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hypercox/lorentz.hpp"

namespace hypercox {

template <class T>
using Mat = std::vector<std::vector<T>>;

using WallSet = std::vector<int>;  // sorted wall indices

// Named half-space normals <x, v> <= 0 in R^{1,n}.
template <class T>
struct Polytope {
  std::vector<std::string> names;
  std::vector<Vec<T>> normals;

  std::size_t size() const { return normals.size(); }
  int index_of(const std::string& name) const;
  Polytope<double> numeric() const;
  Polytope subset(const std::vector<int>& keep) const;
};

template <class T>
struct GramMatrix {
  std::vector<std::string> names;
  std::vector<Vec<T>> unit_normals;
  Mat<T> g;  // g[i][j] = <e_i, e_j> = -alpha_ij

  std::size_t size() const { return g.size(); }
};

enum class EdgeKind { None, Angle, Thick, Dashed, Disjoint };

struct DiagramEdge {
  EdgeKind kind = EdgeKind::None;  // None means orthogonal walls
  double alpha = 0;
  double angle = 0;  // dihedral angle for Angle edges; pi/2 for None
};

struct CoxeterDiagram {
  std::vector<std::string> names;
  std::vector<std::vector<DiagramEdge>> edges;

  std::size_t size() const { return names.size(); }
  const DiagramEdge& at(int i, int j) const { return edges[i][j]; }
  bool adjacent_in_face_graph(int i, int j) const;
  CoxeterDiagram induced(const WallSet& s) const;
  bool acute() const;
};

enum class SubdiagramType { Elliptic, Parabolic, Indefinite, Degenerate };

struct SubdiagramClass {
  SubdiagramType type = SubdiagramType::Elliptic;
  int components = 0;
  int rank = 0;  // nodes - components for parabolic diagrams
};

std::string to_string(SubdiagramType t);

template <class T>
GramMatrix<T> gram_matrix(const Polytope<T>& P);

template <class T>
CoxeterDiagram build_diagram(const GramMatrix<T>& G);

// Diagram straight from normals; equals build_diagram(gram_matrix(P)) but needs
// no square roots.
template <class T>
CoxeterDiagram diagram_of(const Polytope<T>& P);

template <class T>
SubdiagramClass classify_subdiagram(const GramMatrix<T>& G, const WallSet& subset);

struct StrataComplex {
  std::vector<std::string> wall_names;
  std::vector<WallSet> faces;
  std::vector<double> face_angles;
  std::vector<WallSet> edges;
  std::vector<WallSet> finite_vertices;
  std::vector<WallSet> ideal_vertices;
  // Endpoints of each edge, indexing finite vertices first, then ideal ones
  // (ideal index k is stored as finite_vertices.size() + k).
  std::vector<std::vector<int>> edge_vertices;
  // Edge ends that leave H^4 without reaching a vertex (geometric backend).
  std::vector<int> edge_escapes;
  std::vector<int> facets;  // walls meeting the polytope in a 3-dimensional region

  struct FVector {
    std::size_t walls, faces, edges, vertices, finite, ideal;
    bool operator==(const FVector&) const = default;
  };
  FVector fvector() const;
  int face_index(const WallSet& key) const;
  int edge_index(const WallSet& key) const;
  int finite_vertex_index(const WallSet& key) const;
  int ideal_vertex_index(const WallSet& key) const;
  double face_angle(int a, int b) const;
};

// Human-readable description of the first difference, empty if identical.
std::string compare_strata(const StrataComplex& a, const StrataComplex& b);

enum class StrataMode { Diagram, Geometric, Both };

template <class T>
StrataComplex enumerate_strata(const Polytope<T>& P, StrataMode mode);

struct VolumeVerdict {
  bool finite = true;
  int witness_edge = -1;  // an edge without two endpoints, if any
  std::string reason;
};
VolumeVerdict finite_volume_check(const StrataComplex& S);

// Diagram of the wall `wall` as a polytope in its own hyperplane: neighbours
// that are parallel or ultraparallel to it are dropped and the remaining
// normals are projected onto the wall.
template <class T>
CoxeterDiagram wall_diagram(const Polytope<T>& P, int wall);

// Order of the finite Coxeter group of an elliptic diagram with angles pi/k.
std::uint64_t coxeter_group_order(const CoxeterDiagram& D);

// Integer k with angle = pi/k, or 0 if the angle is not of that form.
int coxeter_label(double angle);

}  // namespace hypercox
