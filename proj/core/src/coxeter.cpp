#include "hypercox/coxeter.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hypercox {

template <class T>
int Polytope<T>::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

template <class T>
Polytope<double> Polytope<T>::numeric() const {
  Polytope<double> out;
  out.names = names;
  for (auto& v : normals) out.normals.push_back(to_doubles(v));
  return out;
}

template <class T>
Polytope<T> Polytope<T>::subset(const std::vector<int>& keep) const {
  Polytope out;
  for (int i : keep) {
    out.names.push_back(names.at(i));
    out.normals.push_back(normals.at(i));
  }
  return out;
}

template struct Polytope<double>;
template struct Polytope<MultiQuad>;

std::string to_string(SubdiagramType t) {
  switch (t) {
    case SubdiagramType::Elliptic: return "elliptic";
    case SubdiagramType::Parabolic: return "parabolic";
    case SubdiagramType::Indefinite: return "indefinite";
    case SubdiagramType::Degenerate: return "degenerate";
  }
  return "?";
}

template <class T>
GramMatrix<T> gram_matrix(const Polytope<T>& P) {
  GramMatrix<T> G;
  G.names = P.names;
  for (auto& v : P.normals) {
    T q = minkowski_product(v, v);
    if (ScalarTraits<T>::sign(q, euclid_norm2(v)) <= 0)
      throw std::invalid_argument("gram_matrix: normal is not space-like");
    auto r = ScalarTraits<T>::sqrt(q);
    if (!r) throw std::domain_error("gram_matrix: normalization leaves the exact scalar ring");
    T inv = T(1) / *r;
    Vec<T> e = v;
    for (auto& x : e) x = x * inv;
    G.unit_normals.push_back(std::move(e));
  }
  std::size_t m = G.unit_normals.size();
  G.g.assign(m, std::vector<T>(m, T(0)));
  for (std::size_t i = 0; i < m; ++i) {
    G.g[i][i] = T(1);
    for (std::size_t j = i + 1; j < m; ++j) {
      G.g[i][j] = minkowski_product(G.unit_normals[i], G.unit_normals[j]);
      G.g[j][i] = G.g[i][j];
    }
  }
  return G;
}

namespace {

// Pair classification from -<v,w> sign and the sign of alpha^2 - 1.
DiagramEdge make_edge(double alpha, int s_alpha, int s_alpha2_minus_1) {
  DiagramEdge e;
  e.alpha = alpha;
  if (s_alpha2_minus_1 < 0) {
    if (s_alpha == 0) {
      e.kind = EdgeKind::None;
      e.alpha = 0;
      e.angle = std::numbers::pi / 2;
    } else {
      e.kind = EdgeKind::Angle;
      e.angle = std::acos(std::clamp(alpha, -1.0, 1.0));
    }
  } else if (s_alpha2_minus_1 == 0 && s_alpha > 0) {
    e.kind = EdgeKind::Thick;
    e.alpha = 1;
  } else if (s_alpha > 0) {
    e.kind = EdgeKind::Dashed;
  } else {
    e.kind = EdgeKind::Disjoint;
  }
  return e;
}

}  // namespace

template <class T>
CoxeterDiagram build_diagram(const GramMatrix<T>& G) {
  CoxeterDiagram D;
  D.names = G.names;
  std::size_t m = G.size();
  D.edges.assign(m, std::vector<DiagramEdge>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      T a = -G.g[i][j];
      int s_alpha = ScalarTraits<T>::sign(a);
      int s2 = ScalarTraits<T>::sign(a * a - T(1));
      D.edges[i][j] = make_edge(ScalarTraits<T>::to_double(a), s_alpha, s2);
    }
  return D;
}

template <class T>
CoxeterDiagram diagram_of(const Polytope<T>& P) {
  CoxeterDiagram D;
  D.names = P.names;
  std::size_t m = P.size();
  D.edges.assign(m, std::vector<DiagramEdge>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      PairRelation r = pair_relation(P.normals[i], P.normals[j]);
      T vw = minkowski_product(P.normals[i], P.normals[j]);
      double scale = std::sqrt(euclid_norm2(P.normals[i]) * euclid_norm2(P.normals[j]));
      int s_alpha = -ScalarTraits<T>::sign(vw, scale);
      int s2 = r.kind == RelationKind::Angle ? -1
               : (r.kind == RelationKind::Parallel || (r.kind == RelationKind::Disjoint && r.alpha == -1.0)) ? 0
                                                                                                         : 1;
      D.edges[i][j] = make_edge(r.alpha, s_alpha, s2);
      D.edges[j][i] = D.edges[i][j];
    }
  return D;
}

bool CoxeterDiagram::adjacent_in_face_graph(int i, int j) const {
  auto k = edges[i][j].kind;
  return k == EdgeKind::None || k == EdgeKind::Angle;
}

CoxeterDiagram CoxeterDiagram::induced(const WallSet& s) const {
  CoxeterDiagram D;
  for (int i : s) D.names.push_back(names[i]);
  D.edges.assign(s.size(), std::vector<DiagramEdge>(s.size()));
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = 0; b < s.size(); ++b)
      if (a != b) D.edges[a][b] = edges[s[a]][s[b]];
  return D;
}

bool CoxeterDiagram::acute() const {
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j) {
      auto& e = edges[i][j];
      if (e.kind == EdgeKind::Disjoint) return false;
      if (e.kind == EdgeKind::Angle && e.alpha < 0) return false;
    }
  return true;
}

namespace {

template <class T>
Mat<T> principal(const Mat<T>& g, const WallSet& s) {
  Mat<T> out(s.size(), std::vector<T>(s.size()));
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = 0; b < s.size(); ++b) out[a][b] = g[s[a]][s[b]];
  return out;
}

// Sylvester: every leading pivot (ratio of consecutive leading minors) positive.
template <class T>
bool positive_definite(Mat<T> A) {
  std::size_t n = A.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (ScalarTraits<T>::sign(A[k][k]) <= 0) return false;
    T inv = T(1) / A[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      T f = A[i][k] * inv;
      for (std::size_t j = k; j < n; ++j) A[i][j] -= f * A[k][j];
    }
  }
  return true;
}

template <class T>
int determinant_sign(Mat<T> A) {
  std::size_t n = A.size();
  int sgn = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    double best = 0;
    for (std::size_t i = k; i < n; ++i) {
      if (ScalarTraits<T>::sign(A[i][k]) == 0) continue;
      double mag = ScalarTraits<T>::magnitude(A[i][k]);
      if (piv == n || (!ScalarTraits<T>::exact && mag > best)) {
        piv = i;
        best = mag;
        if constexpr (ScalarTraits<T>::exact) break;
      }
    }
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(A[piv], A[k]);
      sgn = -sgn;
    }
    sgn *= ScalarTraits<T>::sign(A[k][k]);
    T inv = T(1) / A[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      T f = A[i][k] * inv;
      for (std::size_t j = k; j < n; ++j) A[i][j] -= f * A[k][j];
    }
  }
  return sgn;
}

std::vector<WallSet> components_of(const std::vector<std::vector<bool>>& adj, const WallSet& s) {
  std::vector<WallSet> comps;
  std::vector<bool> seen(s.size(), false);
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (seen[a]) continue;
    WallSet comp;
    std::vector<std::size_t> stack{a};
    seen[a] = true;
    while (!stack.empty()) {
      std::size_t x = stack.back();
      stack.pop_back();
      comp.push_back(s[x]);
      for (std::size_t b = 0; b < s.size(); ++b)
        if (!seen[b] && adj[x][b]) {
          seen[b] = true;
          stack.push_back(b);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

}  // namespace

template <class T>
SubdiagramClass classify_subdiagram(const GramMatrix<T>& G, const WallSet& subset) {
  if (subset.empty()) throw std::invalid_argument("classify_subdiagram: empty subset");
  std::vector<std::vector<bool>> adj(subset.size(), std::vector<bool>(subset.size(), false));
  for (std::size_t a = 0; a < subset.size(); ++a)
    for (std::size_t b = 0; b < subset.size(); ++b)
      if (a != b) adj[a][b] = ScalarTraits<T>::sign(G.g[subset[a]][subset[b]]) != 0;
  auto comps = components_of(adj, subset);
  SubdiagramClass out;
  out.components = static_cast<int>(comps.size());
  if (positive_definite(principal(G.g, subset))) {
    out.type = SubdiagramType::Elliptic;
    return out;
  }
  bool all_parabolic = true, any_indefinite = false;
  for (auto& c : comps) {
    Mat<T> M = principal(G.g, c);
    int ds = determinant_sign(M);
    bool parabolic = ds == 0;
    for (std::size_t drop = 0; parabolic && drop < c.size() && c.size() > 1; ++drop) {
      WallSet rest;
      for (std::size_t k = 0; k < c.size(); ++k)
        if (k != drop) rest.push_back(c[k]);
      parabolic = positive_definite(principal(G.g, rest));
    }
    if (c.size() == 1) parabolic = false;
    if (!parabolic) {
      all_parabolic = false;
      if (!positive_definite(M) && ds != 0) any_indefinite = true;
    }
  }
  if (all_parabolic) {
    out.type = SubdiagramType::Parabolic;
    out.rank = static_cast<int>(subset.size()) - out.components;
  } else {
    out.type = any_indefinite ? SubdiagramType::Indefinite : SubdiagramType::Degenerate;
  }
  return out;
}

template <class T>
CoxeterDiagram wall_diagram(const Polytope<T>& P, int wall) {
  if (wall < 0 || wall >= static_cast<int>(P.size())) throw std::out_of_range("wall_diagram: bad wall index");
  Polytope<T> proj;
  for (std::size_t j = 0; j < P.size(); ++j) {
    if (static_cast<int>(j) == wall) continue;
    PairRelation r = pair_relation(P.normals[wall], P.normals[j]);
    if (r.kind != RelationKind::Angle) continue;
    proj.names.push_back(P.names[j]);
    proj.normals.push_back(project_to_wall(P.normals[j], P.normals[wall]));
  }
  return diagram_of(proj);
}

int coxeter_label(double angle) {
  if (!(angle > 0)) return 0;
  double k = std::numbers::pi / angle;
  long r = std::lround(k);
  if (r < 2 || std::fabs(k - static_cast<double>(r)) > 1e-7 * k) return 0;
  return static_cast<int>(r);
}

namespace {

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::uint64_t component_order(const std::vector<std::vector<int>>& label) {
  int n = static_cast<int>(label.size());
  if (n == 1) return 2;
  std::vector<std::vector<int>> nbr(n);
  int edge_count = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && label[i][j] >= 3) {
        nbr[i].push_back(j);
        if (i < j) ++edge_count;
      }
  if (edge_count != n - 1) throw std::domain_error("coxeter_group_order: diagram with a cycle is not elliptic");
  if (n == 2) return 2ULL * static_cast<std::uint64_t>(label[0][1]);

  int big = 0, big_count = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (label[i][j] > 3) {
        big = label[i][j];
        ++big_count;
      }
  int branch = -1;
  for (int i = 0; i < n; ++i) {
    if (nbr[i].size() > 3) throw std::domain_error("coxeter_group_order: not elliptic");
    if (nbr[i].size() == 3) {
      if (branch >= 0) throw std::domain_error("coxeter_group_order: not elliptic");
      branch = i;
    }
  }
  if (branch >= 0) {
    if (big_count) throw std::domain_error("coxeter_group_order: not elliptic");
    std::vector<int> arms;
    for (int start : nbr[branch]) {
      int len = 1, prev = branch, cur = start;
      while (true) {
        int next = -1;
        for (int x : nbr[cur])
          if (x != prev) next = x;
        if (next < 0) break;
        prev = cur;
        cur = next;
        ++len;
      }
      arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) return (1ULL << (n - 1)) * factorial(n);  // D_n
    if (arms == std::vector<int>{1, 2, 2}) return 51840ULL;
    if (arms == std::vector<int>{1, 2, 3}) return 2903040ULL;
    if (arms == std::vector<int>{1, 2, 4}) return 696729600ULL;
    throw std::domain_error("coxeter_group_order: not elliptic");
  }
  // A path: order the nodes from one end.
  int end = 0;
  for (int i = 0; i < n; ++i)
    if (nbr[i].size() == 1) {
      end = i;
      break;
    }
  std::vector<int> path{end};
  while (static_cast<int>(path.size()) < n) {
    int cur = path.back(), prev = path.size() > 1 ? path[path.size() - 2] : -1;
    for (int x : nbr[cur])
      if (x != prev) {
        path.push_back(x);
        break;
      }
  }
  std::vector<int> labels;
  for (int i = 0; i + 1 < n; ++i) labels.push_back(label[path[i]][path[i + 1]]);
  if (big_count == 0) return factorial(n + 1);  // A_n
  if (big_count > 1) throw std::domain_error("coxeter_group_order: not elliptic");
  bool at_end = labels.front() == big || labels.back() == big;
  if (big == 4 && at_end) return (1ULL << n) * factorial(n);  // B_n
  if (big == 4 && n == 4 && labels[1] == 4) return 1152ULL;     // F_4
  if (big == 5 && at_end && n == 3) return 120ULL;              // H_3
  if (big == 5 && at_end && n == 4) return 14400ULL;            // H_4
  throw std::domain_error("coxeter_group_order: not elliptic");
}

}  // namespace

std::uint64_t coxeter_group_order(const CoxeterDiagram& D) {
  int m = static_cast<int>(D.size());
  std::vector<std::vector<int>> label(m, std::vector<int>(m, 2));
  std::vector<std::vector<bool>> adj(m, std::vector<bool>(m, false));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      auto& e = D.edges[i][j];
      if (e.kind == EdgeKind::None) continue;
      if (e.kind != EdgeKind::Angle) throw std::domain_error("coxeter_group_order: diagram is not elliptic");
      int k = coxeter_label(e.angle);
      if (k == 0) throw std::domain_error("coxeter_group_order: angle is not of the form pi/k");
      label[i][j] = k;
      adj[i][j] = k >= 3;
    }
  WallSet all(m);
  for (int i = 0; i < m; ++i) all[i] = i;
  std::uint64_t order = 1;
  for (auto& comp : components_of(adj, all)) {
    std::vector<std::vector<int>> sub(comp.size(), std::vector<int>(comp.size(), 2));
    for (std::size_t a = 0; a < comp.size(); ++a)
      for (std::size_t b = 0; b < comp.size(); ++b) sub[a][b] = label[comp[a]][comp[b]];
    order *= component_order(sub);
  }
  return order;
}

StrataComplex::FVector StrataComplex::fvector() const {
  return {facets.size(), faces.size(), edges.size(), finite_vertices.size() + ideal_vertices.size(),
          finite_vertices.size(), ideal_vertices.size()};
}

namespace {
int find_key(const std::vector<WallSet>& v, const WallSet& key) {
  auto it = std::find(v.begin(), v.end(), key);
  return it == v.end() ? -1 : static_cast<int>(it - v.begin());
}
}  // namespace

int StrataComplex::face_index(const WallSet& key) const { return find_key(faces, key); }
int StrataComplex::edge_index(const WallSet& key) const { return find_key(edges, key); }
int StrataComplex::finite_vertex_index(const WallSet& key) const { return find_key(finite_vertices, key); }
int StrataComplex::ideal_vertex_index(const WallSet& key) const { return find_key(ideal_vertices, key); }

double StrataComplex::face_angle(int a, int b) const {
  WallSet key{std::min(a, b), std::max(a, b)};
  int i = face_index(key);
  if (i < 0) throw std::out_of_range("face_angle: no such face");
  return face_angles[i];
}

std::string compare_strata(const StrataComplex& a, const StrataComplex& b) {
  auto name = [&](const WallSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + a.wall_names.at(s[i]);
    return out + "}";
  };
  auto diff = [&](const std::vector<WallSet>& x, const std::vector<WallSet>& y, const char* what) -> std::string {
    std::vector<WallSet> xs = x, ys = y;
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    for (auto& s : xs)
      if (!std::binary_search(ys.begin(), ys.end(), s)) return std::string(what) + " " + name(s) + " only in first";
    for (auto& s : ys)
      if (!std::binary_search(xs.begin(), xs.end(), s)) return std::string(what) + " " + name(s) + " only in second";
    return "";
  };
  for (auto r : {diff(a.faces, b.faces, "face"), diff(a.edges, b.edges, "edge"),
                 diff(a.finite_vertices, b.finite_vertices, "finite vertex"),
                 diff(a.ideal_vertices, b.ideal_vertices, "ideal vertex")})
    if (!r.empty()) return r;
  return "";
}

VolumeVerdict finite_volume_check(const StrataComplex& S) {
  VolumeVerdict v;
  if (S.finite_vertices.empty() && S.ideal_vertices.empty()) {
    v.finite = false;
    v.reason = "no vertices";
    return v;
  }
  for (std::size_t e = 0; e < S.edges.size(); ++e) {
    int escapes = e < S.edge_escapes.size() ? S.edge_escapes[e] : 0;
    if (S.edge_vertices[e].size() != 2 || escapes != 0) {
      v.finite = false;
      v.witness_edge = static_cast<int>(e);
      v.reason = "edge with " + std::to_string(S.edge_vertices[e].size()) + " endpoints";
      return v;
    }
  }
  return v;
}

template GramMatrix<double> gram_matrix(const Polytope<double>&);
template GramMatrix<MultiQuad> gram_matrix(const Polytope<MultiQuad>&);
template CoxeterDiagram build_diagram(const GramMatrix<double>&);
template CoxeterDiagram build_diagram(const GramMatrix<MultiQuad>&);
template CoxeterDiagram diagram_of(const Polytope<double>&);
template CoxeterDiagram diagram_of(const Polytope<MultiQuad>&);
template SubdiagramClass classify_subdiagram(const GramMatrix<double>&, const WallSet&);
template SubdiagramClass classify_subdiagram(const GramMatrix<MultiQuad>&, const WallSet&);
template CoxeterDiagram wall_diagram(const Polytope<double>&, int);
template CoxeterDiagram wall_diagram(const Polytope<MultiQuad>&, int);

}  // namespace hypercox
