#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "hypercox/coxeter.hpp"

namespace hypercox {

namespace {

void finish(StrataComplex& S) {
  // Canonical ordering so that both backends produce identical structures.
  std::vector<std::pair<WallSet, double>> faces;
  for (std::size_t i = 0; i < S.faces.size(); ++i) faces.emplace_back(S.faces[i], S.face_angles[i]);
  std::sort(faces.begin(), faces.end());
  S.faces.clear();
  S.face_angles.clear();
  for (auto& [k, a] : faces) {
    S.faces.push_back(k);
    S.face_angles.push_back(a);
  }
  std::sort(S.edges.begin(), S.edges.end());
  std::sort(S.finite_vertices.begin(), S.finite_vertices.end());
  std::sort(S.ideal_vertices.begin(), S.ideal_vertices.end());

  S.edge_vertices.assign(S.edges.size(), {});
  auto contains = [](const WallSet& big, const WallSet& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
  };
  const int nf = static_cast<int>(S.finite_vertices.size());
  for (std::size_t e = 0; e < S.edges.size(); ++e) {
    for (int v = 0; v < nf; ++v)
      if (contains(S.finite_vertices[v], S.edges[e])) S.edge_vertices[e].push_back(v);
    for (std::size_t v = 0; v < S.ideal_vertices.size(); ++v)
      if (contains(S.ideal_vertices[v], S.edges[e])) S.edge_vertices[e].push_back(nf + static_cast<int>(v));
  }

  std::set<int> facets;
  for (auto& f : S.faces) facets.insert(f.begin(), f.end());
  if (facets.empty())
    for (std::size_t i = 0; i < S.wall_names.size(); ++i) facets.insert(static_cast<int>(i));
  S.facets.assign(facets.begin(), facets.end());
}

// All cliques of size in [lo, hi] of a graph given by `adj`, in lexicographic order.
void cliques(const std::vector<std::vector<bool>>& adj, std::size_t lo, std::size_t hi,
             const std::function<void(const WallSet&)>& visit) {
  const int m = static_cast<int>(adj.size());
  WallSet cur;
  std::function<void(int)> rec = [&](int start) {
    if (cur.size() >= lo) visit(cur);
    if (cur.size() == hi) return;
    for (int k = start; k < m; ++k) {
      bool ok = true;
      for (int x : cur)
        if (!adj[x][k]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur.push_back(k);
      rec(k + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

template <class T>
StrataComplex diagram_backend(const Polytope<T>& P) {
  CoxeterDiagram D = diagram_of(P);
  if (!D.acute()) throw std::invalid_argument("diagram backend requires an acute-angled polytope");
  GramMatrix<T> G = gram_matrix(P);
  const int m = static_cast<int>(P.size());
  StrataComplex S;
  S.wall_names = P.names;

  std::vector<std::vector<bool>> face_adj(m, std::vector<bool>(m, false)), near_adj = face_adj;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      face_adj[i][j] = D.adjacent_in_face_graph(i, j);
      near_adj[i][j] = face_adj[i][j] || D.at(i, j).kind == EdgeKind::Thick;
    }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (face_adj[i][j]) {
        S.faces.push_back({i, j});
        S.face_angles.push_back(D.at(i, j).angle);
      }
  cliques(face_adj, 3, 4, [&](const WallSet& s) {
    if (classify_subdiagram(G, s).type != SubdiagramType::Elliptic) return;
    (s.size() == 3 ? S.edges : S.finite_vertices).push_back(s);
  });
  const std::size_t max_ideal = 2 * (P.normals[0].size() - 2);
  std::vector<WallSet> ideal;
  cliques(near_adj, 3, max_ideal, [&](const WallSet& s) {
    auto c = classify_subdiagram(G, s);
    if (c.type == SubdiagramType::Parabolic && c.rank == static_cast<int>(P.normals[0].size()) - 2)
      ideal.push_back(s);
  });
  for (auto& s : ideal) {
    bool maximal = true;
    for (auto& t : ideal)
      if (t.size() > s.size() && std::includes(t.begin(), t.end(), s.begin(), s.end())) {
        maximal = false;
        break;
      }
    if (maximal) S.ideal_vertices.push_back(s);
  }
  finish(S);
  S.edge_escapes.assign(S.edges.size(), 0);
  return S;
}

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  return minkowski_product(a, b);
}

template <class T>
Vec<T> combine(const T& a, const Vec<T>& u, const T& b, const Vec<T>& w) {
  Vec<T> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = a * u[i] + b * w[i];
  return out;
}

template <class T>
Vec<T> klein(const Vec<T>& x) {
  T inv = T(1) / x[0];
  Vec<T> out = x;
  for (auto& c : out) c = c * inv;
  return out;
}

// A parameter s with lo < s < hi given as doubles-guided rationals, used when
// one side of an edge interval is the irrational bound +-R.
template <class T>
T inside_parameter(const T& anchor, int direction, double gap, const std::function<bool(const T&)>& ok) {
  double step = gap / 2;
  for (int iter = 0; iter < 200; ++iter) {
    T s;
    if constexpr (ScalarTraits<T>::exact) {
      Rational q(step);
      s = anchor + T(q) * T(direction);
    } else {
      s = anchor + step * direction;
    }
    if (ok(s)) return s;
    step /= 2;
  }
  throw std::runtime_error("geometric backend: no interior parameter on edge");
}

template <class T>
StrataComplex geometric_backend(const Polytope<T>& P) {
  using TR = ScalarTraits<T>;
  const int m = static_cast<int>(P.size());
  if (m == 0) throw std::invalid_argument("enumerate_strata: no walls");
  const std::size_t dim = P.normals[0].size();
  const std::size_t n = dim - 1;
  StrataComplex S;
  S.wall_names = P.names;

  auto side = [&](const Vec<T>& x, int j) {
    T s = dot(P.normals[j], x);
    return TR::sign(s, std::sqrt(euclid_norm2(P.normals[j]) * euclid_norm2(x)));
  };

  // Vertices: complements of n-subsets.
  std::map<WallSet, bool> vertices;  // key -> ideal
  {
    WallSet idx(n);
    std::function<void(int, int)> rec = [&](int start, int depth) {
      if (depth == static_cast<int>(n)) {
        std::vector<Vec<T>> rows;
        for (int i : idx) rows.push_back(P.normals[i]);
        auto pt = solve_vertex(rows);
        if (!pt) return;
        WallSet key;
        for (int j = 0; j < m; ++j) {
          int s = side(pt->coords, j);
          if (s > 0) return;
          if (s == 0) key.push_back(j);
        }
        vertices.emplace(key, pt->ideal);
        return;
      }
      for (int k = start; k < m; ++k) {
        idx[depth] = k;
        rec(k + 1, depth + 1);
      }
    };
    rec(0, 0);
  }
  for (auto& [key, ideal] : vertices) (ideal ? S.ideal_vertices : S.finite_vertices).push_back(key);

  // Edges: the geodesic S^perp for every (n-1)-subset S, clipped by the other walls.
  struct EdgeData {
    Vec<T> midpoint;
    int escapes;
  };
  std::map<WallSet, EdgeData> edges;
  {
    WallSet idx(n - 1);
    std::function<void(int, int)> rec = [&](int start, int depth) {
      if (depth < static_cast<int>(n - 1)) {
        for (int k = start; k < m; ++k) {
          idx[depth] = k;
          rec(k + 1, depth + 1);
        }
        return;
      }
      std::vector<Vec<T>> rows;
      for (int i : idx) rows.push_back(P.normals[i]);
      auto basis = lorentz_complement(rows, dim);
      if (basis.size() != 2) return;
      const Vec<T>& u = basis[0];
      const Vec<T>& w = basis[1];
      T a = dot(u, u), b = dot(u, w), c = dot(w, w);
      double sc = euclid_norm2(u) + euclid_norm2(w);
      if (TR::sign(a * c - b * b, sc * sc) >= 0) return;  // plane misses H^n
      Vec<T> tau;
      if (TR::sign(a, sc) < 0) {
        tau = u;
      } else if (TR::sign(a, sc) > 0) {
        tau = combine(-b, u, a, w);
      } else {
        T s = -(T(1) + c) / (T(2) * b);
        tau = combine(s, u, T(1), w);
      }
      if (TR::sign(tau[0]) < 0)
        for (auto& x : tau) x = -x;
      T tt = dot(tau, tau);
      Vec<T> sigma = combine(T(1), w, -(dot(w, tau) / tt), tau);
      if (TR::sign(dot(sigma, sigma), euclid_norm2(sigma) + 1e-300) <= 0)
        sigma = combine(T(1), u, -(dot(u, tau) / tt), tau);
      if constexpr (!TR::exact) {
        double nt = std::sqrt(-tt), ns = std::sqrt(dot(sigma, sigma));
        for (auto& x : tau) x /= nt;
        for (auto& x : sigma) x /= ns;
        tt = -1.0;
      }
      T R2 = -tt / dot(sigma, sigma);

      WallSet key = idx;
      std::optional<T> lo, hi;
      for (int j = 0; j < m; ++j) {
        if (std::find(idx.begin(), idx.end(), j) != idx.end()) continue;
        double scale = std::sqrt(euclid_norm2(P.normals[j]) * (euclid_norm2(tau) + euclid_norm2(sigma)));
        T cj = dot(tau, P.normals[j]), dj = dot(sigma, P.normals[j]);
        int sd = TR::sign(dj, scale);
        if (sd == 0) {
          int sc_ = TR::sign(cj, scale);
          if (sc_ > 0) return;
          if (sc_ == 0) key.push_back(j);
          continue;
        }
        T bound = -cj / dj;
        if (sd > 0) {
          if (!hi || TR::sign(bound - *hi) < 0) hi = bound;
        } else {
          if (!lo || TR::sign(bound - *lo) > 0) lo = bound;
        }
      }
      // Position of s relative to (-R, R): -2 below, -1 at -R, 0 inside, 1 at R, 2 above.
      auto cmpR = [&](const T& s) {
        int q = TR::sign(s * s - R2);
        int sg = TR::sign(s);
        if (q < 0) return 0;
        if (q == 0) return sg >= 0 ? 1 : -1;
        return sg >= 0 ? 2 : -2;
      };
      int lo_pos = lo ? cmpR(*lo) : -2, hi_pos = hi ? cmpR(*hi) : 2;
      if (lo_pos >= 1 || hi_pos <= -1) return;
      if (lo && hi && TR::sign(*hi - *lo) <= 0) return;
      int escapes = (lo_pos == -2 ? 1 : 0) + (hi_pos == 2 ? 1 : 0);

      auto interior = [&](const T& s) { return cmpR(s) == 0 && (!lo || TR::sign(s - *lo) > 0) && (!hi || TR::sign(*hi - s) > 0); };
      T smid;
      double Rd = std::sqrt(TR::to_double(R2));
      if (lo_pos >= -1 && hi_pos <= 1) {
        smid = (*lo + *hi) / T(2);
      } else if (lo_pos >= -1) {
        smid = inside_parameter<T>(*lo, +1, Rd - TR::to_double(*lo), interior);
      } else if (hi_pos <= 1) {
        smid = inside_parameter<T>(*hi, -1, TR::to_double(*hi) + Rd, interior);
      } else {
        smid = T(0);
      }
      std::sort(key.begin(), key.end());
      Vec<T> mid = klein(combine(T(1), tau, smid, sigma));
      edges.emplace(key, EdgeData{std::move(mid), escapes});
    };
    rec(0, 0);
  }

  std::map<WallSet, std::vector<const Vec<T>*>> face_points;
  for (auto& [key, data] : edges) {
    S.edges.push_back(key);
    for (std::size_t i = 0; i < key.size(); ++i)
      for (std::size_t j = i + 1; j < key.size(); ++j) face_points[{key[i], key[j]}].push_back(&data.midpoint);
  }
  for (auto& [pair, pts] : face_points) {
    if (pts.size() >= 2) {
      Vec<T> witness(dim, T(0));
      for (auto* p : pts)
        for (std::size_t i = 0; i < dim; ++i) witness[i] += (*p)[i];
      bool ok = true;
      for (int j = 0; j < m && ok; ++j) {
        if (j == pair[0] || j == pair[1]) continue;
        if (side(witness, j) > 0) ok = false;
      }
      if (!ok) continue;
    }
    S.faces.push_back(pair);
    S.face_angles.push_back(pair_relation(P.normals[pair[0]], P.normals[pair[1]]).value);
  }
  finish(S);
  S.edge_escapes.clear();
  for (auto& key : S.edges) S.edge_escapes.push_back(edges.at(key).escapes);
  return S;
}

}  // namespace

template <class T>
StrataComplex enumerate_strata(const Polytope<T>& P, StrataMode mode) {
  if (P.size() == 0) throw std::invalid_argument("enumerate_strata: no walls");
  for (auto& v : P.normals)
    if (classify_vector(v) != VectorKind::Space)
      throw std::invalid_argument("enumerate_strata: every normal must be space-like");
  switch (mode) {
    case StrataMode::Diagram: return diagram_backend(P);
    case StrataMode::Geometric: return geometric_backend(P);
    case StrataMode::Both: {
      StrataComplex g = geometric_backend(P);
      if (!diagram_of(P).acute()) return g;
      StrataComplex d = diagram_backend(P);
      std::string diff = compare_strata(d, g);
      if (!diff.empty()) throw std::runtime_error("strata backends disagree: " + diff + " (diagram vs geometric)");
      return d;
    }
  }
  throw std::invalid_argument("enumerate_strata: bad mode");
}

template StrataComplex enumerate_strata(const Polytope<double>&, StrataMode);
template StrataComplex enumerate_strata(const Polytope<MultiQuad>&, StrataMode);

}  // namespace hypercox
