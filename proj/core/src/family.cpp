#include "hypercox/family.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hypercox {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::BelowT2: return "(0,t2)";
    case Regime::AtT2: return "t2";
    case Regime::BetweenT2T1: return "(t2,t1)";
    case Regime::AtT1: return "t1";
    case Regime::AboveT1: return "(t1,1)";
    case Regime::AtOne: return "1";
  }
  return "?";
}

namespace {

Regime regime_of(int vs_half, int vs_three_fifths, int vs_one) {
  if (vs_one == 0) return Regime::AtOne;
  if (vs_three_fifths > 0) return Regime::AboveT1;
  if (vs_three_fifths == 0) return Regime::AtT1;
  if (vs_half > 0) return Regime::BetweenT2T1;
  if (vs_half == 0) return Regime::AtT2;
  return Regime::BelowT2;
}

int cmp_tol(double a, double b) {
  double tol = default_eps();
  if (a > b + tol) return 1;
  if (a < b - tol) return -1;
  return 0;
}

Rational decimal_to_rational(const std::string& s) {
  std::size_t dot = s.find('.');
  std::string digits = s, frac;
  if (dot != std::string::npos) {
    digits = s.substr(0, dot);
    frac = s.substr(dot + 1);
  }
  if (digits.empty()) digits = "0";
  for (char c : digits + frac)
    if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("bad decimal '" + s + "'");
  Integer num(digits + frac, 10);
  Integer den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

FamilyTime FamilyTime::from_double(double t) {
  if (!(t > 0) || t > 1 + default_eps()) throw std::out_of_range("time t must lie in (0,1]");
  FamilyTime ft;
  ft.t = std::min(t, 1.0);
  double t2 = ft.t * ft.t;
  ft.regime = regime_of(cmp_tol(t2, 0.5), cmp_tol(t2, 0.6), cmp_tol(t2, 1.0));
  return ft;
}

FamilyTime FamilyTime::from_t_squared(const Rational& t2) {
  if (t2 <= 0 || t2 > 1) throw std::out_of_range("time t must lie in (0,1]");
  FamilyTime ft;
  ft.t_squared = t2;
  ft.t = std::sqrt(t2.get_d());
  ft.regime = regime_of(sgn(Rational(t2 - Rational(1, 2))), sgn(Rational(t2 - Rational(3, 5))),
                        sgn(Rational(t2 - 1)));
  return ft;
}

FamilyTime FamilyTime::parse(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "1") return from_t_squared(Rational(1));
  if (s == "t1") return from_t_squared(Rational(3, 5));
  if (s == "t2") return from_t_squared(Rational(1, 2));
  if (s == "tbar") return from_t_squared(Rational(1, 3));
  if (s.rfind("sqrt(", 0) == 0 && s.back() == ')') {
    std::string inner = s.substr(5, s.size() - 6);
    Rational q;
    try {
      std::size_t slash = inner.find('/');
      if (slash == std::string::npos)
        q = decimal_to_rational(inner);
      else
        q = decimal_to_rational(inner.substr(0, slash)) / decimal_to_rational(inner.substr(slash + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad time '" + raw + "'");
    }
    return from_t_squared(q);
  }
  if (s.find_first_of("eE") != std::string::npos) {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad time '" + raw + "'");
    return from_double(v);
  }
  Rational q = decimal_to_rational(s);
  return from_t_squared(Rational(q * q));
}

double FamilyTime::t2() const { return t_squared ? t_squared->get_d() : t * t; }

std::string FamilyTime::str() const {
  if (t_squared) {
    if (*t_squared == 1) return "1";
    return "sqrt(" + to_string(*t_squared) + ")";
  }
  std::ostringstream os;
  os.precision(12);
  os << t;
  return os.str();
}

namespace {

template <class T>
struct Entries {
  T sqrt2, t, inv_t, sqrt2_t;
};

template <class T>
Entries<T> entries(const FamilyTime& ft);

template <>
Entries<double> entries(const FamilyTime& ft) {
  double t = ft.t;
  return {std::sqrt(2.0), t, 1.0 / t, std::sqrt(2.0) * t};
}

template <>
Entries<MultiQuad> entries(const FamilyTime& ft) {
  if (!ft.t_squared) throw std::invalid_argument("exact normals need a rational t^2");
  const Rational& q = *ft.t_squared;
  return {MultiQuad::sqrt_of(2), MultiQuad::sqrt_rational(q), MultiQuad::sqrt_rational(Rational(1 / q)),
          MultiQuad::sqrt_rational(Rational(2 * q))};
}

bool has_gh(const FamilyTime& ft) {
  return ft.regime == Regime::BetweenT2T1 || ft.regime == Regime::AtT1 || ft.regime == Regime::AboveT1 ||
         ft.regime == Regime::AtOne;
}

// Signs of x1, x2, x3 and of the last coordinate of p_i.
constexpr int kOctet[8][4] = {{1, 1, 1, 1},   {1, -1, 1, -1},  {1, -1, -1, 1},  {1, 1, -1, -1},
                              {-1, 1, -1, 1}, {-1, 1, 1, -1},  {-1, -1, 1, 1},  {-1, -1, -1, -1}};

}  // namespace

template <class T>
Polytope<T> ks_normals(const FamilyTime& ft) {
  if (!(ft.t > 0) || ft.t > 1) throw std::out_of_range("ks_normals: t must lie in (0,1]");
  Entries<T> e = entries<T>(ft);
  Polytope<T> P;
  auto add = [&](std::string name, Vec<T> v) {
    P.names.push_back(std::move(name));
    P.normals.push_back(std::move(v));
  };
  for (int i = 0; i < 8; ++i) {
    const int* s = kOctet[i];
    add("p" + std::to_string(i), {e.sqrt2, T(s[0]), T(s[1]), T(s[2]), T(s[3]) * e.inv_t});
  }
  for (int i = 0; i < 8; ++i) {
    const int* s = kOctet[i];
    add("m" + std::to_string(i), {e.sqrt2, T(s[0]), T(s[1]), T(s[2]), T(-s[3]) * e.t});
  }
  T z(0), one(1);
  add("A", {one, e.sqrt2, z, z, z});
  add("B", {one, z, e.sqrt2, z, z});
  add("C", {one, z, z, e.sqrt2, z});
  add("D", {one, z, z, -e.sqrt2, z});
  add("E", {one, z, -e.sqrt2, z, z});
  add("F", {one, -e.sqrt2, z, z, z});
  if (has_gh(ft)) {
    add("G", {one, z, z, z, -e.sqrt2_t});
    add("H", {one, z, z, z, e.sqrt2_t});
  }
  return P;
}

Polytope<double> ks_normals_derivative(const FamilyTime& ft) {
  Polytope<double> P = ks_normals<double>(ft);
  double t = ft.t;
  for (std::size_t i = 0; i < P.size(); ++i) {
    Vec<double>& v = P.normals[i];
    const std::string& n = P.names[i];
    double last = v[4];
    std::fill(v.begin(), v.end(), 0.0);
    if (n[0] == 'p') v[4] = -last / t;  // d/dt (s/t) = -s/t^2
    if (n[0] == 'm') v[4] = last / t;   // d/dt (-s t) = -s
    if (n == "G" || n == "H") v[4] = last / t;
  }
  return P;
}

template <class T>
Vec<T> mirror_normal(char which) {
  switch (which) {
    case 'L': return {T(0), T(-1), T(1), T(0), T(0)};
    case 'M': return {T(0), T(0), T(-1), T(1), T(0)};
    case 'N': return {T(0), T(0), T(-1), T(-1), T(0)};
  }
  throw std::invalid_argument("mirror_normal: expected L, M or N");
}

template <class T>
Polytope<T> quotient_normals(const FamilyTime& ft) {
  Polytope<T> P = ks_normals<T>(ft);
  std::vector<int> keep;
  for (const char* n : {"p0", "m0", "p3", "m3", "G", "H", "A"}) {
    int i = P.index_of(n);
    if (i >= 0) keep.push_back(i);
  }
  Polytope<T> Q = P.subset(keep);
  for (char c : {'L', 'M', 'N'}) {
    Q.names.push_back(std::string(1, c));
    Q.normals.push_back(mirror_normal<T>(c));
  }
  return Q;
}

namespace {

// a * t^2 + b, exactly when t^2 is rational.
double lin(const FamilyTime& ft, long a, long b) {
  if (ft.t_squared) return Rational(a * *ft.t_squared + b).get_d();
  return a * ft.t2() + b;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

}  // namespace

double cos_theta(const FamilyTime& ft) { return lin(ft, 3, -1) / lin(ft, 1, 1); }

double angle_theta(const FamilyTime& ft) {
  double s = std::sqrt(8.0 * ft.t2() * std::max(0.0, lin(ft, -1, 1)));
  return std::atan2(s, lin(ft, 3, -1));
}

double angle_phi(const FamilyTime& ft) {
  double num = lin(ft, 5, -3);
  require(num >= -default_eps(), "angle_phi: t must lie in [t1,1]");
  return std::atan2(std::sqrt(std::max(0.0, num)), std::sqrt(2.0) * lin(ft, -1, 1));
}

double angle_psi(const FamilyTime& ft) {
  double a = lin(ft, -5, 3);
  require(a >= -default_eps() && ft.t2() < 1, "angle_psi: t must lie in (0,t1]");
  return std::atan2(std::sqrt(std::max(0.0, a) * lin(ft, 1, 1)), lin(ft, 3, -1));
}

double angle_eta(const FamilyTime& ft) {
  double a = lin(ft, -2, 1);
  require(a >= -default_eps(), "angle_eta: t must lie in (0,t2]");
  return std::atan2(std::sqrt(8.0 * std::max(0.0, a) * lin(ft, -1, 1)), lin(ft, 3, -1));
}

Vec<double> IsometryMatrix::apply(const Vec<double>& x) const {
  Vec<double> y(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += m[i][j] * x[j];
  return y;
}

Vec<MultiQuad> IsometryMatrix::apply(const Vec<MultiQuad>& x) const {
  if (!integral()) throw std::domain_error("exact action needs an integral isometry");
  Vec<MultiQuad> y(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) {
      long c = std::lround(m[i][j]);
      if (c != 0) y[i] += MultiQuad(c) * x[j];
    }
  return y;
}

IsometryMatrix IsometryMatrix::operator*(const IsometryMatrix& o) const {
  IsometryMatrix r;
  r.name = name + "*" + o.name;
  std::size_t n = m.size();
  r.m.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) r.m[i][j] += m[i][k] * o.m[k][j];
  return r;
}

IsometryMatrix IsometryMatrix::inverse() const {
  IsometryMatrix r;
  r.name = name + "^-1";
  std::size_t n = m.size();
  r.m.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = ((i == 0) != (j == 0)) ? -1.0 : 1.0;
      r.m[i][j] = s * m[j][i];
    }
  return r;
}

int IsometryMatrix::orientation() const {
  Mat<double> a = m;
  std::size_t n = a.size();
  double det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(a[i][k]) > std::fabs(a[p][k])) p = i;
    if (std::fabs(a[p][k]) < 1e-12) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      double f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det > 0 ? 1 : -1;
}

bool IsometryMatrix::is_lorentz(double tol) const {
  std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = -m[0][i] * m[0][j];
      for (std::size_t k = 1; k < n; ++k) s += m[k][i] * m[k][j];
      double target = i != j ? 0.0 : (i == 0 ? -1.0 : 1.0);
      if (std::fabs(s - target) > tol) return false;
    }
  return m[0][0] > 0;
}

bool IsometryMatrix::integral() const {
  for (auto& row : m)
    for (double x : row)
      if (x != std::round(x)) return false;
  return true;
}

bool IsometryMatrix::operator==(const IsometryMatrix& o) const {
  if (m.size() != o.m.size()) return false;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (std::fabs(m[i][j] - o.m[i][j]) > 1e-12) return false;
  return true;
}

IsometryMatrix IsometryMatrix::identity(std::size_t dim) {
  IsometryMatrix r;
  r.name = "id";
  r.m.assign(dim, std::vector<double>(dim, 0.0));
  for (std::size_t i = 0; i < dim; ++i) r.m[i][i] = 1;
  return r;
}

IsometryMatrix IsometryMatrix::signed_permutation(std::string name, const std::vector<int>& perm,
                                                  const std::vector<int>& signs) {
  IsometryMatrix r;
  r.name = std::move(name);
  std::size_t n = perm.size();
  r.m.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) r.m[i][perm[i]] = signs[i];
  return r;
}

SymmetryGenerators symmetry_generators() {
  using IM = IsometryMatrix;
  return {IM::signed_permutation("L", {0, 2, 1, 3, 4}, {1, 1, 1, 1, 1}),
          IM::signed_permutation("M", {0, 1, 3, 2, 4}, {1, 1, 1, 1, 1}),
          IM::signed_permutation("N", {0, 1, 3, 2, 4}, {1, 1, -1, -1, 1}),
          IM::signed_permutation("R", {0, 1, 2, 3, 4}, {1, 1, 1, -1, -1})};
}

PairingIsometries pairing_isometries() {
  using IM = IsometryMatrix;
  return {IM::signed_permutation("s_p1", {0, 3, 1, 2, 4}, {1, 1, 1, -1, -1}),
          IM::signed_permutation("s_p3", {0, 2, 3, 1, 4}, {1, 1, 1, -1, -1}),
          IM::signed_permutation("s_p5", {0, 3, 1, 2, 4}, {1, -1, 1, 1, -1}),
          IM::signed_permutation("s_p7", {0, 2, 3, 1, 4}, {1, 1, -1, 1, -1})};
}

IsometryMatrix minus_identity_spatial() {
  return IsometryMatrix::signed_permutation("r", {0, 1, 2, 3, 4}, {1, -1, -1, -1, -1});
}

std::vector<IsometryMatrix> group_closure(const std::vector<IsometryMatrix>& gens, std::size_t limit) {
  if (gens.empty()) return {};
  std::vector<IsometryMatrix> elems{IsometryMatrix::identity(gens[0].m.size())};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (auto& g : gens) {
      IsometryMatrix h = elems[i] * g;
      if (std::find(elems.begin(), elems.end(), h) == elems.end()) {
        elems.push_back(h);
        if (elems.size() > limit) throw std::runtime_error("group_closure: group too large");
      }
    }
  }
  return elems;
}

template <class T>
std::vector<int> verify_symmetry(const IsometryMatrix& iso, const Polytope<T>& P) {
  if (!iso.is_lorentz()) throw std::invalid_argument("verify_symmetry: matrix is not an orthochronous isometry");
  std::vector<int> perm(P.size(), -1);
  std::vector<bool> used(P.size(), false);
  for (std::size_t i = 0; i < P.size(); ++i) {
    Vec<T> w = iso.apply(P.normals[i]);
    for (std::size_t j = 0; j < P.size(); ++j) {
      if (used[j]) continue;
      const Vec<T>& v = P.normals[j];
      double scale = std::sqrt(euclid_norm2(w) * euclid_norm2(v));
      bool prop = true;
      T ip = T(0);
      for (std::size_t a = 0; a < v.size() && prop; ++a) {
        ip += w[a] * v[a];
        for (std::size_t b = a + 1; b < v.size(); ++b)
          if (ScalarTraits<T>::sign(w[a] * v[b] - w[b] * v[a], scale) != 0) {
            prop = false;
            break;
          }
      }
      if (prop && ScalarTraits<T>::sign(ip, scale) > 0) {
        perm[i] = static_cast<int>(j);
        used[j] = true;
        break;
      }
    }
    if (perm[i] < 0) throw std::runtime_error("verify_symmetry: " + iso.name + " does not preserve wall " + P.names[i]);
  }
  return perm;
}

PairRelation wall_angle_to_H3(const std::string& wall, const FamilyTime& t) {
  Polytope<double> P = ks_normals<double>(t);
  int i = P.index_of(wall);
  Vec<double> v;
  if (i >= 0)
    v = P.normals[i];
  else if (wall.size() == 1 && std::string("LMN").find(wall[0]) != std::string::npos)
    v = mirror_normal<double>(wall[0]);
  else
    throw std::invalid_argument("wall_angle_to_H3: unknown wall " + wall);
  PairRelation r = pair_relation(v, Vec<double>{0, 0, 0, 0, 1});
  if (r.kind == RelationKind::Angle) {
    r.alpha = std::fabs(r.alpha);
    r.value = std::acos(r.alpha);
  }
  return r;
}

std::vector<Vec<double>> cuboctahedron_section(const FamilyTime& t) {
  Polytope<double> P = ks_normals<double>(t);
  StrataComplex S = enumerate_strata(P, StrataMode::Geometric);
  std::vector<Vec<double>> out;
  for (auto& key : S.ideal_vertices) {
    bool letter = false;
    for (int w : key) letter = letter || (P.names[w].size() == 1 && P.names[w][0] >= 'A' && P.names[w][0] <= 'F');
    if (!letter) continue;
    std::vector<Vec<double>> rows;
    for (int w : key) rows.push_back(P.normals[w]);
    auto basis = lorentz_complement(rows, 5);
    if (basis.size() != 1) throw std::runtime_error("cuboctahedron_section: ideal vertex of wrong rank");
    Vec<double> x = basis[0];
    for (std::size_t k = 1; k < 5; ++k) x[k] /= x[0];
    x[0] = 1;
    for (auto& c : x)
      if (std::fabs(c) < 1e-12) c = 0;
    out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  if (out.size() != 12) throw std::runtime_error("cuboctahedron_section: expected 12 ideal vertices");
  for (auto& x : out)
    if (x[4] != 0) throw std::runtime_error("cuboctahedron_section: vertex off the boundary of H^3");
  return out;
}

Preset parse_preset(const std::string& name) {
  Preset p;
  p.name = name;
  auto at = name.find('@');
  if (at != 1 || (name[0] != 'P' && name[0] != 'Q')) throw std::invalid_argument("unknown preset '" + name + "'");
  p.kind = name[0];
  std::string rest = name.substr(2);
  if (rest.rfind("t=", 0) == 0) rest = rest.substr(2);
  p.time = FamilyTime::parse(rest);
  return p;
}

template <class T>
Polytope<T> preset_polytope(const Preset& p) {
  return p.kind == 'Q' ? quotient_normals<T>(p.time) : ks_normals<T>(p.time);
}

template Polytope<double> ks_normals(const FamilyTime&);
template Polytope<MultiQuad> ks_normals(const FamilyTime&);
template Polytope<double> quotient_normals(const FamilyTime&);
template Polytope<MultiQuad> quotient_normals(const FamilyTime&);
template Vec<double> mirror_normal(char);
template Vec<MultiQuad> mirror_normal(char);
template std::vector<int> verify_symmetry(const IsometryMatrix&, const Polytope<double>&);
template std::vector<int> verify_symmetry(const IsometryMatrix&, const Polytope<MultiQuad>&);
template Polytope<double> preset_polytope(const Preset&);
template Polytope<MultiQuad> preset_polytope(const Preset&);

}  // namespace hypercox
