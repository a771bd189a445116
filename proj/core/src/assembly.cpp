#include "hypercox/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>

namespace hypercox {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleTol = 1e-9;

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool contains(const WallSet& s, int w) { return std::binary_search(s.begin(), s.end(), w); }

bool subset_of(const WallSet& small, const WallSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

WallSet apply_perm(const std::vector<int>& perm, const WallSet& s) {
  WallSet out;
  out.reserve(s.size());
  for (int w : s) out.push_back(perm[w]);
  std::sort(out.begin(), out.end());
  return out;
}

// Orientation of g restricted to the 2-face with walls f, relative to the
// frames given by the ordered unit normals of the two walls.
int face_sign(const Identification& id, const WallSet& f) {
  int s = id.iso.orientation();
  if (id.perm[f[0]] > id.perm[f[1]]) s = -s;
  return s;
}

bool is_mirror(const Identification& id) {
  return id.to_wall == id.wall && id.iso == IsometryMatrix::identity(id.iso.m.size());
}

int det_sign(std::vector<Vec<double>> a) {
  std::size_t n = a.size();
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(a[i][k]) > std::fabs(a[p][k])) p = i;
    if (std::fabs(a[p][k]) < 1e-12) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    if (a[k][k] < 0) sign = -sign;
    for (std::size_t i = k + 1; i < n; ++i) {
      double f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return sign;
}

// A future timelike point x on the edge line and a unit tangent tau at x.
void edge_frame(const Polytope<double>& P, const WallSet& edge, Vec<double>& x, Vec<double>& tau) {
  std::vector<Vec<double>> rows;
  for (int w : edge) rows.push_back(P.normals[w]);
  auto basis = lorentz_complement(rows, P.normals[0].size());
  if (basis.size() != 2) throw std::runtime_error("edge_frame: edge walls are not independent");
  const Vec<double>& u = basis[0];
  const Vec<double>& v = basis[1];
  // Eigenvectors of the 2x2 Gram matrix: the negative one spans the timelike
  // direction, the other one is orthogonal to it.
  double uu = minkowski_product(u, u), uv = minkowski_product(u, v), vv = minkowski_product(v, v);
  double mean = (uu + vv) / 2, rad = std::hypot((uu - vv) / 2, uv);
  if (!(mean - rad < 0)) throw std::runtime_error("edge_frame: edge line misses hyperbolic space");
  double th = 0.5 * std::atan2(2 * uv, uu - vv);  // angle of the larger eigenvector
  double c = std::cos(th), s = std::sin(th);
  x.assign(u.size(), 0);
  tau.assign(u.size(), 0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    tau[i] = c * u[i] + s * v[i];
    x[i] = -s * u[i] + c * v[i];
  }
  if (x[0] < 0)
    for (auto& y : x) y = -y;
  double norm = std::sqrt(minkowski_product(tau, tau));
  for (auto& c : tau) c /= norm;
}

// Strata of the base polytope grouped by dimension, plus the ideal vertices.
enum CellClass { Interior, Facet, Face, Edge, Vertex, Ideal, kClasses };
constexpr int kDim[kClasses] = {4, 3, 2, 1, 0, -1};

struct Cells {
  const AssembledComplex& C;
  std::vector<WallSet> keys[kClasses];
  std::map<WallSet, int> index[kClasses];
  int offset[kClasses + 1] = {};

  explicit Cells(const AssembledComplex& c) : C(c) {
    const StrataComplex& S = C.strata;
    keys[Interior] = {WallSet{}};
    for (int w : S.facets) keys[Facet].push_back({w});
    keys[Face] = S.faces;
    keys[Edge] = S.edges;
    keys[Vertex] = S.finite_vertices;
    keys[Ideal] = S.ideal_vertices;
    int n = static_cast<int>(C.copies.size());
    for (int k = 0; k < kClasses; ++k) {
      for (std::size_t i = 0; i < keys[k].size(); ++i) index[k][keys[k][i]] = static_cast<int>(i);
      offset[k + 1] = offset[k] + n * static_cast<int>(keys[k].size());
    }
  }

  int total() const { return offset[kClasses]; }
  int id(int cls, int copy, int idx) const {
    return offset[cls] + copy * static_cast<int>(keys[cls].size()) + idx;
  }
  int lookup(int cls, const WallSet& key) const {
    auto it = index[cls].find(key);
    if (it == index[cls].end()) throw std::runtime_error("assembly: identification does not map strata to strata");
    return it->second;
  }
  // Image of (copy, stratum) across wall w, which must contain the stratum.
  std::pair<int, int> cross(int cls, int copy, int idx, int w) const {
    const Identification& g = C.across(copy, w);
    return {g.to_copy, lookup(cls, apply_perm(g.perm, keys[cls][idx]))};
  }
};

UnionFind cell_orbits(const Cells& cells) {
  UnionFind uf(cells.total());
  int n = static_cast<int>(cells.C.copies.size());
  for (int cls = Facet; cls < kClasses; ++cls)
    for (int c = 0; c < n; ++c)
      for (std::size_t i = 0; i < cells.keys[cls].size(); ++i)
        for (int w : cells.keys[cls][i]) {
          auto [c2, j] = cells.cross(cls, c, static_cast<int>(i), w);
          uf.unite(cells.id(cls, c, static_cast<int>(i)), cells.id(cls, c2, j));
        }
  return uf;
}

void check_glue(const AssembledComplex& C) {
  std::size_t m = C.walls();
  for (std::size_t k = 0; k < C.glue.size(); ++k) {
    const Identification& g = C.glue[k];
    if (g.copy != static_cast<int>(k / m) || g.wall != static_cast<int>(k % m))
      throw std::invalid_argument("assembly: wall of copy " + C.copies[k / m] + " is not covered");
    const Identification& back = C.across(g.to_copy, g.to_wall);
    if (back.to_copy != g.copy || back.to_wall != g.wall)
      throw std::invalid_argument("assembly: identification of wall " + C.base.names[g.wall] + " is not symmetric");
  }
}

AssembledComplex empty_complex(const Polytope<double>& P, std::vector<std::string> copies) {
  AssembledComplex C;
  C.base = P;
  C.strata = enumerate_strata(P, StrataMode::Geometric);
  C.copies = std::move(copies);
  C.glue.assign(C.copies.size() * P.size(), Identification{-1, -1, -1, -1, {}, {}});
  return C;
}

std::vector<int> inverse_perm(const std::vector<int>& p) {
  std::vector<int> q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
  return q;
}

}  // namespace

MirrorColouring make_colouring(const Polytope<double>& P, const std::map<std::string, int>& by_name) {
  MirrorColouring c;
  c.colour.assign(P.size(), -1);
  for (auto& [name, col] : by_name) {
    int w = P.index_of(name);
    if (w < 0) throw std::invalid_argument("colouring: unknown wall " + name);
    if (col < 0) throw std::invalid_argument("colouring: negative colour for " + name);
    c.colour[w] = col;
    c.k = std::max(c.k, col + 1);
  }
  for (std::size_t w = 0; w < P.size(); ++w)
    if (c.colour[w] < 0) throw std::invalid_argument("colouring: wall " + P.names[w] + " has no colour");
  for (int k = 0; k < c.k; ++k)
    if (std::find(c.colour.begin(), c.colour.end(), k) == c.colour.end())
      throw std::invalid_argument("colouring: colour " + std::to_string(k) + " is unused");
  return c;
}

MirrorColouring pnl_colouring(const Polytope<double>& P) {
  std::map<std::string, int> m;
  for (auto& n : P.names) m[n] = n[0] == 'p' ? 0 : n[0] == 'm' ? 1 : 2;
  return make_colouring(P, m);
}

AssembledComplex mirror_complex(const Polytope<double>& P, const MirrorColouring& col) {
  if (col.colour.size() != P.size()) throw std::invalid_argument("mirror_complex: colouring size mismatch");
  if (col.k < 1 || col.k > 16) throw std::invalid_argument("mirror_complex: between 1 and 16 colours");
  int n = 1 << col.k;
  std::vector<std::string> names;
  for (int c = 0; c < n; ++c) {
    std::string s;
    for (int k = 0; k < col.k; ++k) s += ((c >> k) & 1) ? '1' : '0';
    names.push_back(s);
  }
  AssembledComplex C = empty_complex(P, std::move(names));
  std::vector<int> id_perm(P.size());
  std::iota(id_perm.begin(), id_perm.end(), 0);
  for (int c = 0; c < n; ++c)
    for (int w = 0; w < static_cast<int>(P.size()); ++w)
      C.glue[c * P.size() + w] = {c, w, c ^ (1 << col.colour[w]), w, IsometryMatrix::identity(), id_perm};
  return C;
}

AssembledComplex pairing_complex(const Polytope<double>& P, std::vector<std::string> copies,
                                 const std::vector<PairingRule>& rules) {
  AssembledComplex C = empty_complex(P, std::move(copies));
  int n = static_cast<int>(C.copies.size());
  int m = static_cast<int>(P.size());
  auto set = [&](Identification id) {
    Identification& slot = C.glue[id.copy * m + id.wall];
    if (slot.copy >= 0)
      throw std::invalid_argument("pairing_complex: wall " + P.names[id.wall] + " of copy " + C.copies[id.copy] +
                                  " is glued twice");
    slot = std::move(id);
  };
  for (auto& r : rules) {
    if (r.copy < 0 || r.copy >= n || r.to_copy < 0 || r.to_copy >= n || r.wall < 0 || r.wall >= m || r.to_wall < 0 ||
        r.to_wall >= m)
      throw std::invalid_argument("pairing_complex: rule index out of range");
    std::vector<int> perm = verify_symmetry(r.iso, P);
    if (perm[r.wall] != r.to_wall)
      throw std::invalid_argument("pairing_complex: " + r.iso.name + " does not map wall " + P.names[r.wall] +
                                  " onto " + P.names[r.to_wall]);
    set({r.copy, r.wall, r.to_copy, r.to_wall, r.iso, perm});
    if (r.copy != r.to_copy || r.wall != r.to_wall)
      set({r.to_copy, r.to_wall, r.copy, r.wall, r.iso.inverse(), inverse_perm(perm)});
  }
  check_glue(C);
  return C;
}

AssembledComplex w_complex(const FamilyTime& t) {
  Polytope<double> P = ks_normals<double>(t);
  return mirror_complex(P, pnl_colouring(P));
}

AssembledComplex n_complex(const FamilyTime& t) {
  Polytope<double> P = ks_normals<double>(t);
  std::vector<std::string> copies{"00", "01", "10", "11"};
  auto copy = [](int i, int j) { return 2 * i + j; };
  PairingIsometries s = pairing_isometries();
  const std::pair<const IsometryMatrix*, std::pair<const char*, const char*>> pairs[] = {
      {&s.s1, {"p1", "p0"}}, {&s.s3, {"p3", "p2"}}, {&s.s5, {"p5", "p6"}}, {&s.s7, {"p7", "p4"}}};
  IsometryMatrix id = IsometryMatrix::identity();
  std::vector<PairingRule> rules;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int w = 0; w < static_cast<int>(P.size()); ++w) {
        char k = P.names[w][0];
        if (k == 'p') continue;
        if (k == 'm' && j == 0) rules.push_back({copy(i, 0), w, copy(i, 1), w, id});
        if (k != 'm' && i == 0) rules.push_back({copy(0, j), w, copy(1, j), w, id});
      }
  for (int c = 0; c < 4; ++c)
    for (auto& [iso, walls] : pairs)
      rules.push_back({c, P.index_of(walls.first), c, P.index_of(walls.second), *iso});
  return pairing_complex(P, copies, rules);
}

std::vector<FaceCycle> face_cycles(const AssembledComplex& C) {
  const StrataComplex& S = C.strata;
  Cells cells(C);
  int nf = static_cast<int>(S.faces.size());
  int n = static_cast<int>(C.copies.size());
  std::vector<bool> seen(n * nf, false);
  std::vector<FaceCycle> out;
  for (int c0 = 0; c0 < n; ++c0)
    for (int f0 = 0; f0 < nf; ++f0) {
      if (seen[c0 * nf + f0]) continue;
      FaceCycle fc;
      std::vector<int> total(C.walls());
      std::iota(total.begin(), total.end(), 0);
      int c = c0, f = f0, next = S.faces[f0][0];
      while (true) {
        if (seen[c * nf + f]) {
          // Back at the start; coming in through the other wall means the
          // cycle closed up reflected.
          if (c != c0 || f != f0 || next != S.faces[f0][0]) fc.trivial_return = false;
          break;
        }
        seen[c * nf + f] = true;
        fc.entries.push_back({c, f});
        fc.angle += S.face_angles[f];
        const Identification& g = C.across(c, next);
        for (int& w : total) w = g.perm[w];
        WallSet img = apply_perm(g.perm, S.faces[f]);
        c = g.to_copy;
        f = cells.lookup(Face, img);
        next = img[0] == g.to_wall ? img[1] : img[0];
      }
      if (fc.trivial_return) {
        const WallSet& F = S.faces[f0];
        fc.trivial_return = total[F[0]] == F[0] && total[F[1]] == F[1];
        for (auto* list : {&S.finite_vertices, &S.ideal_vertices})
          for (auto& v : *list)
            if (subset_of(F, v) && apply_perm(total, v) != v) fc.trivial_return = false;
      }
      out.push_back(std::move(fc));
    }
  return out;
}

std::vector<StratumSurface> stratum_surfaces(const AssembledComplex& C) {
  const StrataComplex& S = C.strata;
  const auto& nrm = C.base.normals;
  Cells cells(C);
  UnionFind orbit = cell_orbits(cells);
  std::vector<FaceCycle> cycles = face_cycles(C);
  int nf = static_cast<int>(S.faces.size());
  int n = static_cast<int>(C.copies.size());
  std::vector<int> cycle_of(n * nf, -1);
  for (std::size_t k = 0; k < cycles.size(); ++k)
    for (auto [c, f] : cycles[k].entries) cycle_of[c * nf + f] = static_cast<int>(k);
  std::vector<bool> singular(cycles.size());
  for (std::size_t k = 0; k < cycles.size(); ++k) singular[k] = std::fabs(cycles[k].angle - 2 * kPi) > kAngleTol;
  auto cycle_len = [&](int c, int f) { return static_cast<double>(cycles[cycle_of[c * nf + f]].entries.size()); };

  // Each base edge gets a point x and a direction tau; sigma records how the
  // identifications carry tau from one copy of an edge to another.
  std::size_t ne = S.edges.size();
  std::vector<Vec<double>> ex(ne), etau(ne);
  for (std::size_t e = 0; e < ne; ++e) edge_frame(C.base, S.edges[e], ex[e], etau[e]);
  std::vector<int> sigma(n * ne, 0);
  std::vector<bool> twisted_edge_orbit(cells.total(), false);
  for (int start = 0; start < static_cast<int>(n * ne); ++start) {
    if (sigma[start]) continue;
    sigma[start] = 1;
    std::deque<int> queue{start};
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      int c = x / static_cast<int>(ne), e = x % static_cast<int>(ne);
      for (int w : S.edges[e]) {
        const Identification& g = C.across(c, w);
        int e2 = cells.lookup(Edge, apply_perm(g.perm, S.edges[e]));
        int y = g.to_copy * static_cast<int>(ne) + e2;
        int s = minkowski_product(g.iso.apply(etau[e]), etau[e2]) > 0 ? sigma[x] : -sigma[x];
        if (!sigma[y]) {
          sigma[y] = s;
          queue.push_back(y);
        } else if (sigma[y] != s) {
          twisted_edge_orbit[orbit.find(cells.id(Edge, c, e))] = true;
        }
      }
    }
  }

  // Sides at a 1-cell: singular flags (copy, face, edge) up to the face cycle.
  struct Side {
    int c, f, e;
  };
  std::map<int, std::vector<Side>> sides;  // edge orbit -> one flag per side
  std::map<int, double> side_count;
  std::vector<std::vector<int>> cycle_edges(cycles.size());
  for (std::size_t k = 0; k < cycles.size(); ++k) {
    if (!singular[k]) continue;
    std::set<int> seen_orbits;
    for (auto [c, f] : cycles[k].entries)
      for (std::size_t e = 0; e < ne; ++e)
        if (subset_of(S.faces[f], S.edges[e])) {
          int o = orbit.find(cells.id(Edge, c, static_cast<int>(e)));
          side_count[o] += 1.0 / cycle_len(c, f);
          if (seen_orbits.insert(o).second) cycle_edges[k].push_back(o);
        }
  }
  // One representative flag per (cycle, edge orbit) pair, repeated when the
  // polygon meets the same 1-cell along several of its sides.
  for (std::size_t k = 0; k < cycles.size(); ++k) {
    if (!singular[k]) continue;
    auto [c0, f0] = cycles[k].entries[0];
    for (std::size_t e = 0; e < ne; ++e)
      if (subset_of(S.faces[f0], S.edges[e]))
        sides[orbit.find(cells.id(Edge, c0, static_cast<int>(e)))].push_back({c0, f0, static_cast<int>(e)});
  }

  UnionFind comp(cycles.size());
  for (auto& [o, list] : sides)
    for (auto& sd : list) comp.unite(cycle_of[sd.c * nf + sd.f], cycle_of[list[0].c * nf + list[0].f]);

  auto side_sign = [&](const Side& sd) {
    const WallSet& F = S.faces[sd.f];
    const WallSet& E = S.edges[sd.e];
    int x = -1;
    for (int w : E)
      if (!contains(F, w)) x = w;
    int d = det_sign({nrm[F[0]], nrm[F[1]], nrm[x], etau[sd.e], ex[sd.e]});
    return -d * sigma[sd.c * ne + sd.e];
  };

  // Orientation signs on (copy, face): face-cycle moves plus one constraint
  // across each 1-cell with exactly two sides.
  struct Link {
    int to, sign;
  };
  std::vector<std::vector<Link>> links(n * nf);
  for (std::size_t k = 0; k < cycles.size(); ++k) {
    if (!singular[k]) continue;
    for (auto [c, f] : cycles[k].entries)
      for (int w : S.faces[f]) {
        const Identification& g = C.across(c, w);
        int f2 = cells.lookup(Face, apply_perm(g.perm, S.faces[f]));
        links[c * nf + f].push_back({g.to_copy * nf + f2, face_sign(g, S.faces[f])});
      }
  }
  std::set<int> bad_orbits;
  for (auto& [o, list] : sides) {
    if (twisted_edge_orbit[o]) bad_orbits.insert(o);
    if (list.size() != 2 || std::fabs(side_count[o] - 2) > 1e-9) continue;
    int a = list[0].c * nf + list[0].f, b = list[1].c * nf + list[1].f;
    int s = -side_sign(list[0]) * side_sign(list[1]);
    links[a].push_back({b, s});
    links[b].push_back({a, s});
  }

  std::map<int, int> surface_of_root;
  std::vector<StratumSurface> out;
  for (std::size_t k = 0; k < cycles.size(); ++k) {
    if (!singular[k]) continue;
    int r = comp.find(static_cast<int>(k));
    if (!surface_of_root.count(r)) {
      surface_of_root[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[surface_of_root[r]].cycles.push_back(static_cast<int>(k));
  }

  std::vector<int> eps(n * nf, 0);
  std::size_t nfin = S.finite_vertices.size();
  for (auto& surf : out) {
    std::set<int> edge_orbits;
    for (int k : surf.cycles) {
      edge_orbits.insert(cycle_edges[k].begin(), cycle_edges[k].end());
      auto [c, f] = cycles[k].entries[0];
      std::vector<double> corners;
      for (std::size_t v = 0; v < nfin; ++v)
        if (subset_of(S.faces[f], S.finite_vertices[v])) corners.push_back(face_corner_angle(C.base, S.faces[f], S.finite_vertices[v]));
      for (auto& v : S.ideal_vertices)
        if (subset_of(S.faces[f], v)) corners.push_back(0);
      if (corners.size() >= 3) surf.area += hyperbolic_polygon_area(static_cast<int>(corners.size()), corners);
    }
    for (int o : edge_orbits) {
      double sc = side_count[o];
      if (sc < 1.5) ++surf.boundary_edges;
      if (sc > 2.5) ++surf.branched_edges;
      if (bad_orbits.count(o)) surf.orientable = false;
    }

    // 0-cells: vertex orbits, with the corner angles of the surface's flags.
    std::map<int, double> angle;
    std::map<int, bool> ideal;
    for (int k : surf.cycles)
      for (auto [c, f] : cycles[k].entries) {
        for (std::size_t v = 0; v < nfin; ++v)
          if (subset_of(S.faces[f], S.finite_vertices[v])) {
            int o = orbit.find(cells.id(Vertex, c, static_cast<int>(v)));
            angle[o] += face_corner_angle(C.base, S.faces[f], S.finite_vertices[v]) / cycle_len(c, f);
            ideal[o] = false;
          }
        for (std::size_t v = 0; v < S.ideal_vertices.size(); ++v)
          if (subset_of(S.faces[f], S.ideal_vertices[v])) {
            int o = orbit.find(cells.id(Ideal, c, static_cast<int>(v)));
            angle[o] += 0;
            ideal[o] = true;
          }
      }
    for (auto& [o, a] : angle) {
      if (ideal[o])
        ++surf.punctures;
      else if (std::fabs(a - 2 * kPi) > kAngleTol)
        surf.cone_angles.push_back(a);
    }
    std::sort(surf.cone_angles.begin(), surf.cone_angles.end());
    surf.euler_char = static_cast<long>(angle.size()) - static_cast<long>(edge_orbits.size()) +
                      static_cast<long>(surf.cycles.size());

    auto [c0, f0] = cycles[surf.cycles[0]].entries[0];
    std::deque<int> queue{c0 * nf + f0};
    eps[c0 * nf + f0] = 1;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (auto& l : links[x]) {
        int e = l.sign * eps[x];
        if (!eps[l.to]) {
          eps[l.to] = e;
          queue.push_back(l.to);
        } else if (eps[l.to] != e) {
          surf.orientable = false;
        }
      }
    }
  }
  return out;
}

std::vector<CuspCycle> cusp_cycles(const AssembledComplex& C) {
  Cells cells(C);
  const auto& keys = cells.keys[Ideal];
  int ni = static_cast<int>(keys.size());
  int n = static_cast<int>(C.copies.size());
  std::vector<int> comp(n * ni, -1), eps(n * ni, 0);
  std::vector<CuspCycle> out;
  for (int start = 0; start < n * ni; ++start) {
    if (comp[start] >= 0) continue;
    int id = static_cast<int>(out.size());
    CuspCycle cc;
    std::vector<int> members;
    std::deque<int> queue{start};
    comp[start] = id;
    eps[start] = 1;
    std::vector<std::pair<int, int>> mirror_links;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      members.push_back(x);
      int c = x / ni, v = x % ni;
      for (int w : keys[v]) {
        const Identification& g = C.across(c, w);
        int y = g.to_copy * ni + cells.lookup(Ideal, apply_perm(g.perm, keys[v]));
        if (is_mirror(g)) mirror_links.push_back({x, y});
        // Crossing a gluing face flips the local frame; g may flip it back.
        int e = -g.iso.orientation() * eps[x];
        if (comp[y] < 0) {
          comp[y] = id;
          eps[y] = e;
          queue.push_back(y);
        } else if (eps[y] != e) {
          cc.monodromy = -1;
        }
      }
    }
    std::sort(members.begin(), members.end());
    std::map<int, int> local;
    for (int x : members) {
      local[x] = static_cast<int>(local.size());
      cc.entries.push_back({x / ni, x % ni});
    }
    UnionFind blocks(members.size());
    for (auto [a, b] : mirror_links) blocks.unite(local[a], local[b]);
    for (std::size_t k = 0; k < members.size(); ++k)
      if (blocks.find(static_cast<int>(k)) == static_cast<int>(k)) ++cc.length;
    out.push_back(std::move(cc));
  }
  return out;
}

EulerCharacteristic complex_euler_char(const AssembledComplex& C) {
  Cells cells(C);
  UnionFind uf = cell_orbits(cells);
  int n = static_cast<int>(C.copies.size());
  EulerCharacteristic chi;
  std::optional<CoxeterDiagram> D;
  bool coxeter = std::all_of(C.strata.face_angles.begin(), C.strata.face_angles.end(),
                             [](double a) { return coxeter_label(a) != 0; });
  if (coxeter) D = diagram_of(C.base);
  Rational orb = 0;
  for (int cls = Interior; cls < Ideal; ++cls) {
    std::map<int, long> size;
    for (int c = 0; c < n; ++c)
      for (std::size_t i = 0; i < cells.keys[cls].size(); ++i) ++size[uf.find(cells.id(cls, c, static_cast<int>(i)))];
    long sign = kDim[cls] % 2 == 0 ? 1 : -1;
    chi.topological += sign * static_cast<long>(size.size());
    if (coxeter)
      for (std::size_t i = 0; i < cells.keys[cls].size(); ++i) {
        // Each copy of stratum i lies in some orbit; summing |O|/|Stab| over
        // orbits equals summing 1/|Stab| over all (copy, stratum) pairs.
        std::uint64_t order = cls == Interior ? 1 : coxeter_group_order(D->induced(cells.keys[cls][i]));
        Rational term(sign * n, static_cast<unsigned long>(order));
        term.canonicalize();
        orb += term;
      }
  }
  if (coxeter) chi.orbifold = orb;
  return chi;
}

InvolutionResult involution_quotient(const AssembledComplex& C, const IsometryMatrix& iso,
                                     const std::vector<int>& copy_perm) {
  int n = static_cast<int>(C.copies.size());
  if (static_cast<int>(copy_perm.size()) != n) throw std::invalid_argument("involution: copy permutation size");
  for (int c = 0; c < n; ++c)
    if (copy_perm[c] < 0 || copy_perm[c] >= n || copy_perm[copy_perm[c]] != c)
      throw std::invalid_argument("involution: copy permutation is not an involution");
  if (!((iso * iso) == IsometryMatrix::identity(iso.m.size())))
    throw std::invalid_argument("involution: " + iso.name + " does not square to the identity");
  std::vector<int> r = verify_symmetry(iso, C.base);
  IsometryMatrix rinv = iso.inverse();

  for (const Identification& g : C.glue) {
    const Identification& h = C.across(copy_perm[g.copy], r[g.wall]);
    if (h.to_copy != copy_perm[g.to_copy] || h.to_wall != r[g.to_wall] || !(h.iso == iso * g.iso * rinv))
      throw std::invalid_argument("involution: the map does not commute with the identifications");
  }

  Cells cells(C);
  UnionFind uf = cell_orbits(cells);
  InvolutionResult res;
  std::vector<bool> done(cells.total(), false);
  for (int cls = Interior; cls < Ideal; ++cls)
    for (int c = 0; c < n; ++c)
      for (std::size_t i = 0; i < cells.keys[cls].size(); ++i) {
        int x = uf.find(cells.id(cls, c, static_cast<int>(i)));
        if (done[x]) continue;
        done[x] = true;
        int j = cells.lookup(cls, apply_perm(r, cells.keys[cls][i]));
        if (uf.find(cells.id(cls, copy_perm[c], j)) == x) res.fixed.push_back({kDim[cls], c, cells.keys[cls][i]});
      }
  if (!res.fixed.empty()) return res;

  std::vector<int> rep(n, -1);
  std::vector<std::string> names;
  for (int c = 0; c < n; ++c)
    if (c < copy_perm[c]) {
      rep[c] = rep[copy_perm[c]] = static_cast<int>(names.size());
      names.push_back("{" + C.copies[c] + "," + C.copies[copy_perm[c]] + "}");
    }
  AssembledComplex Q;
  Q.base = C.base;
  Q.strata = C.strata;
  Q.copies = names;
  int m = static_cast<int>(C.walls());
  Q.glue.resize(names.size() * m);
  for (int c = 0; c < n; ++c) {
    if (c > copy_perm[c]) continue;
    for (int w = 0; w < m; ++w) {
      Identification g = C.across(c, w);
      g.copy = rep[c];
      if (g.to_copy > copy_perm[g.to_copy]) {
        // Land in the partner copy, then carry it back by the involution.
        g.to_wall = r[g.to_wall];
        g.iso = iso * g.iso;
        for (int& p : g.perm) p = r[p];
      }
      g.to_copy = rep[g.to_copy];
      Q.glue[g.copy * m + w] = std::move(g);
    }
  }
  check_glue(Q);
  res.quotient = std::move(Q);
  return res;
}

AssembledComplex m_complex(const FamilyTime& t) {
  AssembledComplex N = n_complex(t);
  // h swaps ij with (1-i)(1-j).
  InvolutionResult q = involution_quotient(N, minus_identity_spatial(), {3, 2, 1, 0});
  if (!q.quotient) throw std::runtime_error("m_complex: the involution has fixed points");
  return *q.quotient;
}

}  // namespace hypercox
