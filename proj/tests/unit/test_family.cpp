#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hypercox/family.hpp"

using namespace hypercox;
using std::numbers::pi;

TEST_SUITE("family") {
  TEST_CASE("parsing times") {
    CHECK(FamilyTime::parse("t1").regime == Regime::AtT1);
    CHECK(FamilyTime::parse("sqrt(3/5)").regime == Regime::AtT1);
    CHECK(FamilyTime::parse("t2").regime == Regime::AtT2);
    CHECK(FamilyTime::parse("1").regime == Regime::AtOne);
    CHECK(FamilyTime::parse("0.9").regime == Regime::AboveT1);
    CHECK(FamilyTime::parse("0.75").regime == Regime::BetweenT2T1);
    CHECK(FamilyTime::parse("tbar").regime == Regime::BelowT2);
    CHECK(*FamilyTime::parse("0.9").t_squared == Rational(81, 100));
    CHECK(FamilyTime::parse("tbar").t == doctest::Approx(kTbar));
    CHECK(FamilyTime::from_double(kT1).regime == Regime::AtT1);
    CHECK_THROWS(FamilyTime::parse("1.5"));
    CHECK_THROWS(FamilyTime::parse("0"));
    CHECK_THROWS(FamilyTime::parse("abc"));
  }

  TEST_CASE("angle formulas") {
    for (double t = 0.05; t <= 1.0; t += 0.05) {
      FamilyTime ft = FamilyTime::from_double(t);
      double c = (3 * t * t - 1) / (1 + t * t);
      CHECK(std::cos(angle_theta(ft)) == doctest::Approx(c).epsilon(1e-12));
      CHECK(cos_theta(ft) == doctest::Approx(c).epsilon(1e-12));
    }
    CHECK(angle_theta(FamilyTime::parse("1")) == doctest::Approx(0));
    CHECK(angle_phi(FamilyTime::parse("1")) == doctest::Approx(pi / 2));
    CHECK(angle_phi(FamilyTime::parse("t1")) == doctest::Approx(0));
    CHECK_THROWS_AS(angle_phi(FamilyTime::parse("0.7")), std::domain_error);
    CHECK_THROWS_AS(angle_eta(FamilyTime::parse("0.75")), std::domain_error);
    CHECK(angle_psi(FamilyTime::parse("t1")) == doctest::Approx(0).epsilon(1e-7));
    // At t2 the eta angle closes up: theta = arccos(1/3) and eta = pi.
    CHECK(angle_eta(FamilyTime::parse("t2")) == doctest::Approx(0).epsilon(1e-7));
  }

  TEST_CASE("theta increases as t decreases") {
    double prev = -1;
    for (double t = 1.0; t > 0.01; t -= 0.01) {
      double th = angle_theta(FamilyTime::from_double(t));
      CHECK(th > prev);
      prev = th;
    }
    CHECK(prev < pi);
  }

  TEST_CASE("wall counts") {
    CHECK(ks_normals<double>(FamilyTime::parse("0.9")).size() == 24);
    CHECK(ks_normals<double>(FamilyTime::parse("t2")).size() == 22);
    CHECK(ks_normals<MultiQuad>(FamilyTime::parse("t1")).size() == 24);
    CHECK_THROWS(ks_normals<MultiQuad>(FamilyTime::from_double(0.8123456789)));
    Polytope<MultiQuad> Q = preset_polytope<MultiQuad>(parse_preset("Q@t1"));
    CHECK(Q.size() == 10);
    CHECK(preset_polytope<double>(parse_preset("Q@tbar")).size() == 8);
    CHECK_THROWS(parse_preset("X@1"));
  }

  TEST_CASE("exact and numeric normals agree") {
    FamilyTime ft = FamilyTime::parse("sqrt(2/5)");
    Polytope<MultiQuad> E = ks_normals<MultiQuad>(ft);
    Polytope<double> D = ks_normals<double>(ft);
    for (std::size_t i = 0; i < D.size(); ++i)
      for (std::size_t k = 0; k < 5; ++k) CHECK(E.normals[i][k].to_double() == doctest::Approx(D.normals[i][k]));
  }

  TEST_CASE("symmetries preserve P_t") {
    SymmetryGenerators g = symmetry_generators();
    for (const char* t : {"1", "0.9", "t1", "0.72", "0.5"}) {
      Polytope<double> P = ks_normals<double>(FamilyTime::parse(t));
      for (const IsometryMatrix* m : {&g.L, &g.M, &g.N, &g.R}) {
        CHECK(m->is_lorentz());
        auto perm = verify_symmetry(*m, P);
        std::vector<int> sorted = perm;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i) CHECK(sorted[i] == static_cast<int>(i));
      }
      auto r = verify_symmetry(minus_identity_spatial(), P);
      for (std::size_t i = 0; i < r.size(); ++i) CHECK(r[r[i]] == static_cast<int>(i));
    }
  }

  TEST_CASE("isometry algebra") {
    SymmetryGenerators g = symmetry_generators();
    CHECK(g.L * g.L == IsometryMatrix::identity());
    CHECK(g.R * g.R.inverse() == IsometryMatrix::identity());
    CHECK(g.L.orientation() == -1);
    auto group = group_closure({g.L, g.M, g.N});
    CHECK(group.size() % 2 == 0);
    for (auto& h : group) CHECK(h.integral());
  }

  TEST_CASE("cusp section at H^3") {
    auto pts = cuboctahedron_section(FamilyTime::parse("0.9"));
    CHECK(pts.size() == 12);
    for (auto& x : pts) CHECK(minkowski_product(x, x) == doctest::Approx(0));
    PairRelation r = wall_angle_to_H3("A", FamilyTime::parse("0.9"));
    CHECK(r.kind == RelationKind::Angle);
    CHECK(r.value == doctest::Approx(pi / 2));
  }
}
