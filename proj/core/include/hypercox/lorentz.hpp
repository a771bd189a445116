#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypercox/scalar.hpp"

namespace hypercox {

template <class T>
using Vec = std::vector<T>;

enum class VectorKind { Space, Time, Light };
enum class Side { Inside, Boundary, Outside };
enum class RelationKind { Angle, Parallel, Ultraparallel, Disjoint };

std::string to_string(VectorKind k);
std::string to_string(Side s);
std::string to_string(RelationKind k);

// Relation between two hyperplanes from alpha = -<v,w>/sqrt(<v,v><w,w>).
struct PairRelation {
  RelationKind kind = RelationKind::Angle;
  double alpha = 0;
  double value = 0;  // angle in radians for Angle, distance for Ultraparallel

  bool is_angle() const { return kind == RelationKind::Angle; }
};

// A point of closed H^n, stored with x0 = 1. Finite points are strictly inside
// the light cone, ideal points on it.
template <class T>
struct LorentzPoint {
  Vec<T> coords;
  bool ideal = false;

  // Finite points rescaled onto the hyperboloid <x,x> = -1.
  std::vector<double> hyperboloid() const;
};

template <class T>
T minkowski_product(const Vec<T>& u, const Vec<T>& v) {
  if (u.size() != v.size() || u.empty()) throw std::invalid_argument("minkowski_product: dimension mismatch");
  T s = -(u[0] * v[0]);
  for (std::size_t i = 1; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

template <class T>
double euclid_norm2(const Vec<T>& v) {
  double s = 0;
  for (auto& x : v) {
    double d = ScalarTraits<T>::to_double(x);
    s += d * d;
  }
  return s;
}

template <class T>
std::vector<double> to_doubles(const Vec<T>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (auto& x : v) out.push_back(ScalarTraits<T>::to_double(x));
  return out;
}

template <class T>
VectorKind classify_vector(const Vec<T>& v) {
  int s = ScalarTraits<T>::sign(minkowski_product(v, v), euclid_norm2(v));
  if (s > 0) return VectorKind::Space;
  if (s < 0) return VectorKind::Time;
  return VectorKind::Light;
}

template <class T>
PairRelation pair_relation(const Vec<T>& v, const Vec<T>& w) {
  T vv = minkowski_product(v, v), ww = minkowski_product(w, w), vw = minkowski_product(v, w);
  double scale = std::sqrt(euclid_norm2(v) * euclid_norm2(w));
  if (ScalarTraits<T>::sign(vv, euclid_norm2(v)) <= 0 || ScalarTraits<T>::sign(ww, euclid_norm2(w)) <= 0)
    throw std::invalid_argument("pair_relation: inputs must be space-like");
  PairRelation r;
  double dvv = ScalarTraits<T>::to_double(vv), dww = ScalarTraits<T>::to_double(ww);
  r.alpha = -ScalarTraits<T>::to_double(vw) / std::sqrt(dvv * dww);
  // Compare alpha^2 with 1 without square roots: <v,w>^2 - <v,v><w,w>.
  int c;
  int s = -ScalarTraits<T>::sign(vw, scale);
  if constexpr (ScalarTraits<T>::exact) {
    c = (vw * vw - vv * ww).sign();
  } else {
    c = ScalarTraits<double>::sign(std::fabs(r.alpha) - 1.0);
  }
  if (c < 0) {
    r.kind = RelationKind::Angle;
    double a = std::fmax(-1.0, std::fmin(1.0, r.alpha));
    r.value = std::acos(a);
  } else if (c == 0) {
    r.kind = s > 0 ? RelationKind::Parallel : RelationKind::Disjoint;
    r.alpha = s > 0 ? 1.0 : -1.0;
  } else if (s > 0) {
    r.kind = RelationKind::Ultraparallel;
    r.value = std::acosh(r.alpha);
  } else {
    r.kind = RelationKind::Disjoint;
  }
  return r;
}

template <class T>
Vec<T> project_to_wall(const Vec<T>& v, const Vec<T>& wall) {
  T ww = minkowski_product(wall, wall);
  if (ScalarTraits<T>::sign(ww, euclid_norm2(wall)) <= 0)
    throw std::invalid_argument("project_to_wall: wall must be space-like");
  T c = minkowski_product(v, wall) / ww;
  Vec<T> out = v;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] -= c * wall[i];
  return out;
}

// Basis of {x : <r, x> = 0 for every r in rows}. In the binary64 backend pivots
// below eps times the largest entry count as zero.
template <class T>
std::vector<Vec<T>> lorentz_complement(const std::vector<Vec<T>>& rows, std::size_t dim) {
  // Row i of the linear system is J r_i so that A x = 0 <=> <r_i, x> = 0.
  std::vector<Vec<T>> A;
  double maxabs = 0;
  for (auto& r : rows) {
    if (r.size() != dim) throw std::invalid_argument("lorentz_complement: dimension mismatch");
    Vec<T> a = r;
    a[0] = -a[0];
    for (auto& x : a) maxabs = std::fmax(maxabs, ScalarTraits<T>::magnitude(x));
    A.push_back(std::move(a));
  }
  std::vector<int> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < dim && row < A.size(); ++col) {
    std::size_t best = A.size();
    double bestmag = 0;
    for (std::size_t i = row; i < A.size(); ++i) {
      if (ScalarTraits<T>::sign(A[i][col], maxabs) == 0) continue;
      double mag = ScalarTraits<T>::magnitude(A[i][col]);
      if (best == A.size() || (!ScalarTraits<T>::exact && mag > bestmag)) {
        best = i;
        bestmag = mag;
        if constexpr (ScalarTraits<T>::exact) break;
      }
    }
    if (best == A.size()) continue;
    std::swap(A[row], A[best]);
    T inv = T(1) / A[row][col];
    for (auto& x : A[row]) x = x * inv;
    for (std::size_t i = 0; i < A.size(); ++i) {
      if (i == row) continue;
      if (ScalarTraits<T>::exact ? A[i][col] == T(0) : ScalarTraits<T>::to_double(A[i][col]) == 0.0) continue;
      T f = A[i][col];
      for (std::size_t j = 0; j < dim; ++j) A[i][j] -= f * A[row][j];
    }
    pivot_col.push_back(static_cast<int>(col));
    ++row;
  }
  std::vector<bool> is_pivot(dim, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<Vec<T>> basis;
  for (std::size_t free = 0; free < dim; ++free) {
    if (is_pivot[free]) continue;
    Vec<T> x(dim, T(0));
    x[free] = T(1);
    for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = -A[r][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

template <class T>
std::optional<LorentzPoint<T>> point_from_ray(Vec<T> x) {
  VectorKind kind = classify_vector(x);
  if (kind == VectorKind::Space) return std::nullopt;
  if (ScalarTraits<T>::sign(x[0], std::sqrt(euclid_norm2(x))) == 0) return std::nullopt;
  T inv = T(1) / x[0];
  for (auto& c : x) c = c * inv;
  LorentzPoint<T> p;
  p.coords = std::move(x);
  p.ideal = kind == VectorKind::Light;
  return p;
}

template <class T>
std::optional<LorentzPoint<T>> solve_vertex(const std::vector<Vec<T>>& normals) {
  if (normals.empty()) return std::nullopt;
  std::size_t dim = normals[0].size();
  if (normals.size() + 1 != dim) throw std::invalid_argument("solve_vertex: need n normals in R^{1,n}");
  auto basis = lorentz_complement(normals, dim);
  if (basis.size() != 1) return std::nullopt;
  return point_from_ray(basis[0]);
}

template <class T>
Side point_side(const LorentzPoint<T>& x, const Vec<T>& v) {
  T s = minkowski_product(v, x.coords);
  int sg = ScalarTraits<T>::sign(s, std::sqrt(euclid_norm2(v) * euclid_norm2(x.coords)));
  if (sg < 0) return Side::Inside;
  if (sg == 0) return Side::Boundary;
  return Side::Outside;
}

template <class T>
std::vector<double> LorentzPoint<T>::hyperboloid() const {
  std::vector<double> d = to_doubles(coords);
  if (ideal) return d;
  double q = -minkowski_product(d, d);
  double s = 1.0 / std::sqrt(q);
  for (auto& c : d) c *= s;
  return d;
}

}  // namespace hypercox
