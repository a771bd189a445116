#pragma once

#include <string>
#include <vector>

#include "hypercox/family.hpp"

namespace hypercox {

struct FaceGeometry {
  WallSet walls;
  int k = 0;                   // number of polygon vertices
  std::vector<double> angles;  // interior angles, 0 at ideal vertices
  std::vector<bool> ideal;
  double area = 0;
  double dihedral = 0;
};

double hyperbolic_polygon_area(int k, const std::vector<double>& angles);
double spherical_polygon_area(int k, const std::vector<double>& angles);
// -2 pi chi + sum (2 pi - angle); throws if the result is not positive.
double cone_surface_area(long euler_char, const std::vector<double>& cone_angles);

// Interior angle of the 2-face `face` at the finite vertex cut out by the four
// walls `vertex` (face is a subset of vertex).
double face_corner_angle(const Polytope<double>& P, const WallSet& face, const WallSet& vertex);
std::vector<FaceGeometry> face_geometry(const Polytope<double>& P, const StrataComplex& S);

// Edge length of the regular spherical tetrahedron with dihedral angle theta,
// eta = arccos(cos theta / (1 - 2 cos theta)), for theta in [arccos(1/3), pi].
double eta_of_theta(double theta);
// Integral of eta from arccos(1/3) to theta.
double eta_integral(double theta);
double coxeter_integral();
double spherical_regular_tet_volume(double theta);

double closed_form_volume(const FamilyTime& t);
double gauss_bonnet_volume(const Rational& chi);
double manifold_volume_formula(double alpha, double beta);

// Sum of (-1)^dim / |Stab| over the strata of a Coxeter polytope, interior
// included and ideal vertices excluded.
Rational orbifold_euler_char(const Polytope<double>& P, const StrataComplex& S);

// Spherical link of a finite vertex, restricted to the families met along the
// deformation: a join of two arcs, the cone from a pole over a spherical
// triangle, or a regular tetrahedron.
struct VertexLink {
  enum class Kind { Join, Cone, Regular } kind = Kind::Join;
  double a = 0, b = 0;  // join: arc lengths; cone: triangle area, pi/2; regular: dihedral angle twice
  double volume = 0;
};
VertexLink vertex_link(const StrataComplex& S, const WallSet& vertex);
double poincare_volume(const StrataComplex& S);

struct VolumeSample {
  double t = 0, theta = 0, phi = 0, vol = 0;
  std::string method;
};
using VolumeCurve = std::vector<VolumeSample>;

// Integrates dVol = -(1/3) sum Area(F) d(alpha_F) from (t0, vol0) to each of
// `times`, all of which must lie in one regime; t0 may be an endpoint of it.
VolumeCurve schlafli_integrate(double t0, double vol0, const std::vector<double>& times);

VolumeCurve closed_form_curve(const std::vector<double>& times);

}  // namespace hypercox
