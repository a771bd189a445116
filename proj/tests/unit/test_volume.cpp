#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hypercox/volume.hpp"

using namespace hypercox;
using std::numbers::pi;

namespace {

double vol(double t) { return closed_form_volume(FamilyTime::from_double(t)); }

}  // namespace

TEST_SUITE("volume") {
  TEST_CASE("polygon areas") {
    CHECK(hyperbolic_polygon_area(3, {0, 0, 0}) == doctest::Approx(pi));
    CHECK(hyperbolic_polygon_area(4, {pi / 3, pi / 3, pi / 3, pi / 3}) == doctest::Approx(2 * pi / 3));
    CHECK(spherical_polygon_area(3, {pi / 2, pi / 2, pi / 2}) == doctest::Approx(pi / 2));
    CHECK_THROWS(hyperbolic_polygon_area(3, {pi / 2, pi / 2, pi / 2}));
    CHECK_THROWS(hyperbolic_polygon_area(2, {0, 0}));
    // Torus with one cone point of angle a: area 2 pi - a.
    CHECK(cone_surface_area(0, {1.0}) == doctest::Approx(2 * pi - 1.0));
    CHECK(cone_surface_area(2, {1.0, 1.0, 1.0}) == doctest::Approx(3 * (2 * pi - 1.0) - 4 * pi));
    CHECK_THROWS(cone_surface_area(2, {3.0, 3.0, 3.0}));
  }

  TEST_CASE("regular spherical tetrahedra") {
    double a = std::acos(1.0 / 3);
    CHECK(eta_of_theta(a) == doctest::Approx(0));
    CHECK(eta_of_theta(pi) == doctest::Approx(std::acos(-1.0 / 3)));
    CHECK(spherical_regular_tet_volume(a) == doctest::Approx(0).epsilon(1e-9));
    CHECK(spherical_regular_tet_volume(pi / 2) == doctest::Approx(pi * pi / 8).epsilon(1e-9));
    CHECK(spherical_regular_tet_volume(2 * pi / 3) == doctest::Approx(2 * pi * pi / 5).epsilon(1e-9));
    CHECK(coxeter_integral() == doctest::Approx(pi * pi / 3).epsilon(1e-12));
    CHECK(eta_integral(a) == doctest::Approx(0));
    CHECK_THROWS(eta_of_theta(1.0));
  }

  TEST_CASE("closed forms at special times") {
    CHECK(vol(1) == doctest::Approx(4 * pi * pi / 3).epsilon(1e-14));
    CHECK(closed_form_volume(FamilyTime::parse("t1")) == doctest::Approx(4 * pi * pi / 3).epsilon(1e-14));
    CHECK(closed_form_volume(FamilyTime::parse("tbar")) == doctest::Approx(5 * pi * pi / 6).epsilon(1e-14));
    CHECK(gauss_bonnet_volume(Rational(5, 8)) == doctest::Approx(5 * pi * pi / 6));
    // Volume of M_t at t = 1 is twice that of P_1, with alpha = 0 and beta = 2 pi.
    CHECK(manifold_volume_formula(0, 2 * pi) == doctest::Approx(2 * vol(1)));
  }

  TEST_CASE("closed form is C1 across the regime boundaries") {
    // One-sided difference quotients carry a sqrt(h) term from the angle
    // that opens at the boundary, so the gap shrinks by about 10 per 100 in h.
    for (double tb : {kT1, kT2}) {
      CHECK(vol(tb - 1e-12) == doctest::Approx(vol(tb + 1e-12)).epsilon(1e-9));
      auto gap = [&](double h) {
        double left = (vol(tb - h) - vol(tb - 2 * h)) / h;
        double right = (vol(tb + 2 * h) - vol(tb + h)) / h;
        return std::fabs(left - right);
      };
      CHECK(gap(1e-7) < 0.1);
      CHECK(gap(1e-5) / gap(1e-7) > 5);
    }
  }

  TEST_CASE("volume tends to zero linearly") {
    double prev = vol(0.5);
    for (double t = 0.4; t > 1e-7; t /= 3) {
      double v = vol(t);
      CHECK(v < prev);
      prev = v;
    }
    // pi - theta ~ 2 sqrt 2 t and the bracket has slope (3/pi^2)(pi - eta(pi)) in theta.
    double slope = 8 * std::sqrt(2.0) * (pi - std::acos(-1.0 / 3));
    CHECK(vol(1e-6) / 1e-6 == doctest::Approx(slope).epsilon(1e-4));
  }

  TEST_CASE("schlafli integration against closed forms") {
    std::vector<double> ts;
    for (int k = 1; k < 10; ++k) ts.push_back(kT1 + (1 - kT1) * k / 10.0);
    for (auto& s : schlafli_integrate(1.0, vol(1), ts)) CHECK(s.vol == doctest::Approx(vol(s.t)).epsilon(1e-9));
    ts = {0.72, 0.74, 0.76};
    for (auto& s : schlafli_integrate(kT2, vol(kT2), ts)) CHECK(s.vol == doctest::Approx(vol(s.t)).epsilon(1e-9));
    ts = {0.05, 0.3, 0.6};
    for (auto& s : schlafli_integrate(kT2, vol(kT2), ts)) CHECK(s.vol == doctest::Approx(vol(s.t)).epsilon(1e-9));
    CHECK_THROWS(schlafli_integrate(1.0, vol(1), {0.9, 0.75}));
    CHECK_THROWS(schlafli_integrate(1.0, vol(1), {0.6}));
  }

  TEST_CASE("poincare formula and vertex links") {
    for (const char* t : {"0.97", "0.74", "0.4", "0.1"}) {
      FamilyTime ft = FamilyTime::parse(t);
      StrataComplex S = enumerate_strata(ks_normals<double>(ft), StrataMode::Geometric);
      CHECK(poincare_volume(S) == doctest::Approx(closed_form_volume(ft)).epsilon(1e-9));
      for (auto& v : S.finite_vertices) CHECK(vertex_link(S, v).volume > 0);
    }
  }

  TEST_CASE("orbifold euler characteristic") {
    Polytope<double> P = ks_normals<double>(FamilyTime::parse("0.9"));
    StrataComplex S = enumerate_strata(P, StrataMode::Geometric);
    CHECK_THROWS_AS(orbifold_euler_char(P, S), std::domain_error);
    Polytope<double> Q = preset_polytope<double>(parse_preset("Q@1"));
    Rational chi = orbifold_euler_char(Q, enumerate_strata(Q, StrataMode::Geometric));
    // Q_1 is a fundamental domain for the mirrors L, M, N acting on P_1.
    SymmetryGenerators g = symmetry_generators();
    auto group = group_closure({g.L, g.M, g.N});
    CHECK(gauss_bonnet_volume(chi) * static_cast<double>(group.size()) == doctest::Approx(vol(1)));
  }

  TEST_CASE("face geometry") {
    Polytope<double> P = ks_normals<double>(FamilyTime::parse("0.9"));
    StrataComplex S = enumerate_strata(P, StrataMode::Geometric);
    auto faces = face_geometry(P, S);
    CHECK(faces.size() == S.faces.size());
    for (auto& f : faces) {
      CHECK(f.k >= 3);
      CHECK(f.area > 0);
      CHECK(f.area == doctest::Approx(hyperbolic_polygon_area(f.k, f.angles)));
    }
  }
}
