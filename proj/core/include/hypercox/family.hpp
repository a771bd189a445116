#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypercox/coxeter.hpp"

namespace hypercox {

enum class Regime { BelowT2, AtT2, BetweenT2T1, AtT1, AboveT1, AtOne };
std::string to_string(Regime r);

// A time t in (0,1]. When t^2 is known as a rational (presets, decimal input,
// "sqrt(p/q)" input) the exact value is kept so that the exact backend applies.
struct FamilyTime {
  double t = 1.0;
  std::optional<Rational> t_squared;
  Regime regime = Regime::AtOne;

  static FamilyTime from_double(double t);
  static FamilyTime from_t_squared(const Rational& t2);
  // "0.9", "1", "sqrt(3/5)", or the names "t1", "t2", "tbar".
  static FamilyTime parse(const std::string& text);

  double t2() const;
  bool exact() const { return t_squared.has_value(); }
  std::string str() const;
};

inline const double kT2 = 0.70710678118654752440;   // sqrt(1/2)
inline const double kT1 = 0.77459666924148337704;   // sqrt(3/5)
inline const double kTbar = 0.57735026918962576451; // sqrt(1/3)

// Table 1 of the family; G and H are included only when t > t2.
template <class T>
Polytope<T> ks_normals(const FamilyTime& t);

// P_t cut by the mirrors L, M, N, in the order 0+,0-,3+,3-,[G,H],A,L,M,N.
// Componentwise derivative d/dt of ks_normals<double>(t).
Polytope<double> ks_normals_derivative(const FamilyTime& t);

template <class T>
Polytope<T> quotient_normals(const FamilyTime& t);

template <class T>
Vec<T> mirror_normal(char which);  // 'L', 'M' or 'N'

double angle_theta(const FamilyTime& t);
double angle_phi(const FamilyTime& t);
double angle_psi(const FamilyTime& t);
double angle_eta(const FamilyTime& t);
double cos_theta(const FamilyTime& t);

// Signed-permutation isometry of R^{1,4} (or any orthochronous matrix).
struct IsometryMatrix {
  std::string name;
  Mat<double> m;

  Vec<double> apply(const Vec<double>& x) const;
  Vec<MultiQuad> apply(const Vec<MultiQuad>& x) const;
  IsometryMatrix operator*(const IsometryMatrix& o) const;
  IsometryMatrix inverse() const;  // J m^T J
  int orientation() const;         // sign of det
  bool is_lorentz(double tol = 1e-12) const;
  bool integral() const;
  bool operator==(const IsometryMatrix& o) const;
  static IsometryMatrix identity(std::size_t dim = 5);
  // Coordinate map x -> (s_0 x_{p_0}, ..., s_n x_{p_n}).
  static IsometryMatrix signed_permutation(std::string name, const std::vector<int>& perm,
                                           const std::vector<int>& signs);
};

struct SymmetryGenerators {
  IsometryMatrix L, M, N, R;
};
SymmetryGenerators symmetry_generators();

struct PairingIsometries {
  IsometryMatrix s1, s3, s5, s7;
};
PairingIsometries pairing_isometries();
IsometryMatrix minus_identity_spatial();  // r: x -> (x0, -x1, ..., -x4)

// Elements of the group generated by `gens` (breadth-first closure).
std::vector<IsometryMatrix> group_closure(const std::vector<IsometryMatrix>& gens, std::size_t limit = 100000);

// Permutation induced on the walls of P, or throws if P is not preserved.
template <class T>
std::vector<int> verify_symmetry(const IsometryMatrix& iso, const Polytope<T>& P);

// Acute angle between the wall and the hyperplane H^3 = {x4 = 0}.
PairRelation wall_angle_to_H3(const std::string& wall, const FamilyTime& t);

// The 12 ideal vertices of P_t lying in the boundary of H^3, as rays with x0 = 1.
std::vector<Vec<double>> cuboctahedron_section(const FamilyTime& t);

struct Preset {
  char kind = 'P';  // 'P' for P_t, 'Q' for the quotient Q_t
  FamilyTime time;
  std::string name;
};
// "P@1", "P@t1", "P@t2", "P@tbar", "Q@1", "Q@t1", "Q@tbar", "P@t=0.9", "Q@t=sqrt(2/5)".
Preset parse_preset(const std::string& name);

template <class T>
Polytope<T> preset_polytope(const Preset& p);

}  // namespace hypercox
