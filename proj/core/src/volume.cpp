#include "hypercox/volume.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hypercox {

namespace {

constexpr double kPi = std::numbers::pi;
const double kTetA = std::acos(1.0 / 3.0);

double mink(const Vec<double>& a, const Vec<double>& b) { return minkowski_product(a, b); }

// Inverse of a small symmetric matrix by Gauss-Jordan with partial pivoting.
Mat<double> invert(Mat<double> a) {
  std::size_t n = a.size();
  Mat<double> inv(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(a[i][k]) > std::fabs(a[p][k])) p = i;
    if (a[p][k] == 0) throw std::domain_error("singular Gram matrix at a finite vertex");
    std::swap(a[p], a[k]);
    std::swap(inv[p], inv[k]);
    double d = a[k][k];
    for (std::size_t j = 0; j < n; ++j) {
      a[k][j] /= d;
      inv[k][j] /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      double f = a[i][k];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[k][j];
        inv[i][j] -= f * inv[k][j];
      }
    }
  }
  return inv;
}

// Angle between the two edges of `face` at a vertex whose other walls are c, d,
// given the 4x4 Gram matrix of the unit normals ordered so that c, d are the
// indices ic, id.
double corner_from_gram(const Mat<double>& g, int ic, int id) {
  Mat<double> inv = invert(g);
  double c = inv[ic][id] / std::sqrt(inv[ic][ic] * inv[id][id]);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

std::vector<Vec<double>> unit_normals(const Polytope<double>& P) {
  std::vector<Vec<double>> out;
  for (auto& v : P.normals) {
    double n = std::sqrt(mink(v, v));
    Vec<double> u = v;
    for (auto& x : u) x /= n;
    out.push_back(u);
  }
  return out;
}

bool subset_of(const WallSet& small, const WallSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

template <class F>
double integrate(F f, double a, double b, double tol = 1e-12) {
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 12, tol);
}

}  // namespace

double hyperbolic_polygon_area(int k, const std::vector<double>& angles) {
  if (k < 3 || static_cast<int>(angles.size()) != k) throw std::invalid_argument("polygon needs k >= 3 angles");
  double s = 0;
  for (double a : angles) {
    if (a < 0 || a >= kPi) throw std::invalid_argument("polygon angle outside [0,pi)");
    s += a;
  }
  double area = (k - 2) * kPi - s;
  if (area < -1e-12) throw std::domain_error("angles too large for a hyperbolic polygon");
  return std::max(area, 0.0);
}

double spherical_polygon_area(int k, const std::vector<double>& angles) {
  if (k < 3 || static_cast<int>(angles.size()) != k) throw std::invalid_argument("polygon needs k >= 3 angles");
  double s = 0;
  for (double a : angles) s += a;
  return s - (k - 2) * kPi;
}

double cone_surface_area(long euler_char, const std::vector<double>& cone_angles) {
  double area = -2 * kPi * static_cast<double>(euler_char);
  for (double a : cone_angles) {
    if (a >= 2 * kPi) throw std::invalid_argument("cone angle must be below 2 pi");
    area += 2 * kPi - a;
  }
  if (area <= 0) throw std::domain_error("no hyperbolic cone structure with these data");
  return area;
}

double face_corner_angle(const Polytope<double>& P, const WallSet& face, const WallSet& vertex) {
  auto u = unit_normals(P.subset(vertex));
  Mat<double> g(4, std::vector<double>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g[i][j] = mink(u[i], u[j]);
  std::vector<int> others;
  for (int i = 0; i < 4; ++i)
    if (!std::binary_search(face.begin(), face.end(), vertex[i])) others.push_back(i);
  if (others.size() != 2) throw std::invalid_argument("face_corner_angle: face is not in the vertex");
  return corner_from_gram(g, others[0], others[1]);
}

std::vector<FaceGeometry> face_geometry(const Polytope<double>& P, const StrataComplex& S) {
  std::vector<FaceGeometry> out;
  for (std::size_t f = 0; f < S.faces.size(); ++f) {
    FaceGeometry fg;
    fg.walls = S.faces[f];
    fg.dihedral = S.face_angles[f];
    for (auto& v : S.finite_vertices)
      if (subset_of(fg.walls, v)) {
        fg.angles.push_back(face_corner_angle(P, fg.walls, v));
        fg.ideal.push_back(false);
      }
    for (auto& v : S.ideal_vertices)
      if (subset_of(fg.walls, v)) {
        fg.angles.push_back(0);
        fg.ideal.push_back(true);
      }
    fg.k = static_cast<int>(fg.angles.size());
    fg.area = fg.k >= 3 ? hyperbolic_polygon_area(fg.k, fg.angles) : 0;
    out.push_back(std::move(fg));
  }
  return out;
}

double eta_of_theta(double theta) {
  if (theta < kTetA - 1e-12 || theta > kPi + 1e-12) throw std::domain_error("eta: theta outside [arccos(1/3), pi]");
  double v = std::max(0.0, theta - kTetA);
  double c = std::cos(theta);
  // 1 - 3 cos(a + v) without cancellation near v = 0.
  double one_minus_3c = 2 * std::pow(std::sin(v / 2), 2) + 3 * std::sin(kTetA) * std::sin(v);
  return std::atan2(std::sqrt(std::max(0.0, one_minus_3c * (1 - c))), c);
}

double eta_integral(double theta) {
  if (theta < kTetA - 1e-12 || theta > kPi + 1e-12) throw std::domain_error("eta: theta outside [arccos(1/3), pi]");
  double top = std::sqrt(std::max(0.0, theta - kTetA));
  if (top == 0) return 0;
  // theta' = a + u^2 removes the square-root behaviour at a.
  return integrate([](double u) { return 2 * u * eta_of_theta(std::min(kPi, kTetA + u * u)); }, 0.0, top);
}

double coxeter_integral() { return eta_integral(kPi); }

double spherical_regular_tet_volume(double theta) { return 3 * eta_integral(theta); }

double closed_form_volume(const FamilyTime& t) {
  const double c = 4 * kPi * kPi / 3;
  double th = angle_theta(t);
  switch (t.regime) {
    case Regime::AtOne:
    case Regime::AboveT1:
    case Regime::AtT1: {
      double ph = t.regime == Regime::AtT1 ? 0.0 : angle_phi(t);
      return c * (2 - 3 * th / kPi - 2 * ph / kPi + 6 * th * ph / (kPi * kPi));
    }
    case Regime::BetweenT2T1:
    case Regime::AtT2:
      return c * (2 - 3 * th / kPi);
    case Regime::BelowT2:
      return c * (2 - 3 * th / kPi + 3 / (kPi * kPi) * eta_integral(th));
  }
  return 0;
}

double gauss_bonnet_volume(const Rational& chi) { return 4 * kPi * kPi / 3 * chi.get_d(); }

double manifold_volume_formula(double alpha, double beta) {
  if (alpha < 0 || beta < 0 || alpha > 2 * kPi + 1e-12 || beta > 2 * kPi + 1e-12)
    throw std::domain_error("cone angles must lie in [0, 2 pi]");
  return 8 * kPi * kPi / 3 * (2 - (alpha + beta) / (2 * kPi) + alpha * beta / (4 * kPi * kPi));
}

Rational orbifold_euler_char(const Polytope<double>& P, const StrataComplex& S) {
  for (double a : S.face_angles)
    if (coxeter_label(a) == 0) throw std::domain_error("not a Coxeter polytope: dihedral angle is not pi/k");
  CoxeterDiagram D = diagram_of(P);
  Rational chi = 1;
  Rational half_facets(static_cast<long>(S.facets.size()), 2);
  half_facets.canonicalize();
  chi -= half_facets;
  auto add = [&](const std::vector<WallSet>& strata, int sign) {
    for (auto& s : strata) {
      std::uint64_t order = coxeter_group_order(D.induced(s));
      chi += Rational(sign, static_cast<unsigned long>(order));
    }
  };
  add(S.faces, 1);
  add(S.edges, -1);
  add(S.finite_vertices, 1);
  return chi;
}

VertexLink vertex_link(const StrataComplex& S, const WallSet& v) {
  if (v.size() != 4) throw std::invalid_argument("vertex_link: a finite vertex has four walls");
  auto ang = [&](int i, int j) { return S.face_angle(v[i], v[j]); };
  // Opposite edge pairs of the link tetrahedron.
  const int opp[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
  const double tol = 1e-9;
  VertexLink L;
  for (auto& o : opp) {
    bool right = true;
    for (auto& q : opp) {
      if (&q == &o) continue;
      right = right && std::fabs(ang(q[0], q[1]) - kPi / 2) < tol && std::fabs(ang(q[2], q[3]) - kPi / 2) < tol;
    }
    if (right) {
      L.kind = VertexLink::Kind::Join;
      L.a = ang(o[0], o[1]);
      L.b = ang(o[2], o[3]);
      L.volume = L.a * L.b / 2;
      return L;
    }
  }
  // One wall orthogonal to the other three: the cone from a pole over a
  // spherical triangle, of volume (pi/4) * Area(triangle).
  for (int d = 0; d < 4; ++d) {
    std::vector<int> rest;
    bool right = true;
    for (int x = 0; x < 4; ++x)
      if (x != d) {
        rest.push_back(x);
        right = right && std::fabs(ang(std::min(x, d), std::max(x, d)) - kPi / 2) < tol;
      }
    if (!right) continue;
    L.kind = VertexLink::Kind::Cone;
    L.a = ang(rest[0], rest[1]) + ang(rest[0], rest[2]) + ang(rest[1], rest[2]) - kPi;
    L.b = kPi / 2;
    L.volume = kPi / 4 * L.a;
    return L;
  }
  double th = ang(0, 1);
  bool regular = true;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) regular = regular && std::fabs(ang(i, j) - th) < tol;
  if (!regular) throw std::domain_error("unsupported vertex link: not a join, a cone over a triangle or a regular tetrahedron");
  L.kind = VertexLink::Kind::Regular;
  L.a = L.b = th;
  L.volume = spherical_regular_tet_volume(th);
  return L;
}

double poincare_volume(const StrataComplex& S) {
  double faces = 0, edges = 0, verts = 0;
  for (double a : S.face_angles) faces += a;
  for (auto& e : S.edges)
    edges += spherical_polygon_area(3, {S.face_angle(e[0], e[1]), S.face_angle(e[0], e[2]), S.face_angle(e[1], e[2])});
  for (auto& v : S.finite_vertices) verts += vertex_link(S, v).volume;
  double n = static_cast<double>(S.facets.size());
  return 4 * kPi * kPi / 3 *
         (1 - n / 2 + faces / (2 * kPi) - edges / (4 * kPi) + verts / (2 * kPi * kPi));
}

namespace {

struct RegimeBounds {
  Regime regime;
  double lo, hi;
};

RegimeBounds open_regime_of(double t) {
  Regime r = FamilyTime::from_double(t).regime;
  switch (r) {
    case Regime::BelowT2: return {r, 0.0, kT2};
    case Regime::BetweenT2T1: return {r, kT2, kT1};
    case Regime::AboveT1: return {r, kT1, 1.0};
    default: throw std::domain_error("schlafli_integrate: sample time at a regime boundary");
  }
}

// Everything the Schlafli integrand needs, fixed along a regime.
class SchlafliIntegrand {
public:
  explicit SchlafliIntegrand(const RegimeBounds& rb) : rb_(rb) {
    FamilyTime mid = at((rb.lo + rb.hi) / 2);
    S_ = enumerate_strata(ks_normals<double>(mid), StrataMode::Geometric);
    for (auto& f : S_.faces) {
      FaceData d{f[0], f[1], {}, 0};
      for (auto& v : S_.finite_vertices)
        if (subset_of(f, v)) d.corners.push_back(v);
      for (auto& v : S_.ideal_vertices)
        if (subset_of(f, v)) ++d.ideal;
      faces_.push_back(d);
    }
  }

  // dVol/dt at t.
  double rate(double t) const {
    FamilyTime ft = at(t);
    Polytope<double> P = ks_normals<double>(ft), dP = ks_normals_derivative(ft);
    const std::size_t m = P.size();
    // Unit normals u and their derivatives du = (dn - u <u,dn>) / |n|.
    std::vector<Vec<double>> u(m), du(m);
    for (std::size_t i = 0; i < m; ++i) {
      double len = std::sqrt(mink(P.normals[i], P.normals[i]));
      u[i] = P.normals[i];
      for (auto& x : u[i]) x /= len;
      double proj = mink(u[i], dP.normals[i]);
      du[i] = dP.normals[i];
      for (std::size_t k = 0; k < du[i].size(); ++k) du[i][k] = (du[i][k] - u[i][k] * proj) / len;
    }
    auto g = [&](int a, int b) { return mink(u[a], u[b]); };
    double sum = 0;
    for (auto& f : faces_) {
      double dc = -(mink(du[f.a], u[f.b]) + mink(u[f.a], du[f.b]));
      if (dc == 0) continue;
      double c = -g(f.a, f.b);
      double s = std::sqrt(std::max(0.0, 1 - c * c));
      if (s == 0) throw std::domain_error("schlafli_integrate: degenerate face angle");
      double dalpha = -dc / s;
      std::vector<double> angles(f.ideal, 0.0);
      for (auto& v : f.corners) {
        Mat<double> g4(4, std::vector<double>(4));
        std::vector<int> others;
        for (int i = 0; i < 4; ++i) {
          for (int j = 0; j < 4; ++j) g4[i][j] = g(v[i], v[j]);
          if (v[i] != f.a && v[i] != f.b) others.push_back(i);
        }
        angles.push_back(corner_from_gram(g4, others[0], others[1]));
      }
      sum += hyperbolic_polygon_area(static_cast<int>(angles.size()), angles) * dalpha;
    }
    return -sum / 3;
  }

private:
  struct FaceData {
    int a, b;
    std::vector<WallSet> corners;
    int ideal;
  };

  FamilyTime at(double t) const {
    FamilyTime ft;
    ft.t = t;
    ft.regime = rb_.regime;
    return ft;
  }

  RegimeBounds rb_;
  StrataComplex S_;
  std::vector<FaceData> faces_;
};

double safe_phi(const FamilyTime& ft) {
  return ft.t2() >= 0.6 ? angle_phi(ft) : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

VolumeCurve schlafli_integrate(double t0, double vol0, const std::vector<double>& times) {
  if (times.empty()) return {};
  RegimeBounds rb = open_regime_of(times.front());
  for (double t : times)
    if (open_regime_of(t).regime != rb.regime) throw std::domain_error("schlafli_integrate: samples cross a regime boundary");
  double tol = default_eps();
  if (t0 < rb.lo - tol || t0 > rb.hi + tol) throw std::domain_error("schlafli_integrate: start outside the regime");
  t0 = std::clamp(t0, rb.lo, rb.hi);

  SchlafliIntegrand rate(rb);
  std::vector<std::size_t> order(times.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return std::fabs(times[a] - t0) < std::fabs(times[b] - t0); });

  VolumeCurve curve(times.size());
  double t_prev = t0, vol = vol0;
  for (std::size_t idx : order) {
    double ta = t_prev, tb = times[idx];
    if (tb != ta) {
      // t = ta + (tb - ta)(1 - cos pi u)/2 damps square-root behaviour at both ends.
      vol += integrate(
          [&](double u) {
            double t = ta + (tb - ta) * (1 - std::cos(kPi * u)) / 2;
            double dt = (tb - ta) * kPi * std::sin(kPi * u) / 2;
            return rate.rate(t) * dt;
          },
          0.0, 1.0, 1e-10);
    }
    FamilyTime ft = FamilyTime::from_double(tb);
    curve[idx] = {tb, angle_theta(ft), safe_phi(ft), vol, "schlafli"};
    t_prev = tb;
  }
  return curve;
}

VolumeCurve closed_form_curve(const std::vector<double>& times) {
  VolumeCurve out;
  for (double t : times) {
    FamilyTime ft = FamilyTime::from_double(t);
    out.push_back({t, angle_theta(ft), safe_phi(ft), closed_form_volume(ft), "closed-form"});
  }
  return out;
}

}  // namespace hypercox
