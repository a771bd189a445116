#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hypercox/assembly.hpp"

using namespace hypercox;
using std::numbers::pi;

namespace {

std::vector<double> sorted_angles(const std::vector<FaceCycle>& cs) {
  std::vector<double> a;
  for (auto& c : cs) a.push_back(c.angle);
  std::sort(a.begin(), a.end());
  return a;
}

}  // namespace

TEST_SUITE("assembly") {
  TEST_CASE("W as a pairing complex equals the mirror complex") {
    FamilyTime ft = FamilyTime::parse("0.9");
    Polytope<double> P = ks_normals<double>(ft);
    MirrorColouring col = pnl_colouring(P);
    CHECK(col.k == 3);
    AssembledComplex W = mirror_complex(P, col);
    std::vector<PairingRule> rules;
    for (int c = 0; c < 8; ++c)
      for (int w = 0; w < static_cast<int>(P.size()); ++w) {
        int d = c ^ (1 << col.colour[w]);
        if (c < d) rules.push_back({c, w, d, w, IsometryMatrix::identity()});
      }
    AssembledComplex V = pairing_complex(P, W.copies, rules);
    for (int c = 0; c < 8; ++c)
      for (int w = 0; w < static_cast<int>(P.size()); ++w) {
        const Identification &a = W.across(c, w), &b = V.across(c, w);
        CHECK(a.to_copy == b.to_copy);
        CHECK(a.to_wall == b.to_wall);
        CHECK(a.perm == b.perm);
      }
    auto x = sorted_angles(face_cycles(W)), y = sorted_angles(face_cycles(V));
    REQUIRE(x.size() == y.size());
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(x[i] == doctest::Approx(y[i]));
    CHECK(complex_euler_char(V).topological == complex_euler_char(W).topological);
  }

  TEST_CASE("double of P_1") {
    Polytope<double> P = ks_normals<double>(FamilyTime::parse("1"));
    MirrorColouring one{std::vector<int>(P.size(), 0), 1};
    AssembledComplex D = mirror_complex(P, one);
    StrataComplex S = D.strata;
    for (auto& c : face_cycles(D)) {
      CHECK(c.entries.size() == 2);
      CHECK(c.trivial_return);
      CHECK(c.angle == doctest::Approx(2 * S.face_angles[c.entries[0].second]));
    }
    EulerCharacteristic chi = complex_euler_char(D);
    REQUIRE(chi.orbifold);
    CHECK(*chi.orbifold == 2);
    // Every ideal vertex gives one cusp made of its two copies.
    CHECK(cusp_cycles(D).size() == S.ideal_vertices.size());
  }

  TEST_CASE("W_t cycles, surfaces and cusps") {
    FamilyTime ft = FamilyTime::parse("0.9");
    AssembledComplex W = w_complex(ft);
    for (auto& c : face_cycles(W)) CHECK(c.trivial_return);
    auto surfaces = stratum_surfaces(W);
    CHECK(surfaces.size() == 20);
    for (auto& s : surfaces) {
      REQUIRE(s.is_surface());
      CHECK(s.orientable);
      CHECK(s.area == doctest::Approx(cone_surface_area(s.euler_char, s.cone_angles)).epsilon(1e-9));
    }
    auto cusps = cusp_cycles(W);
    CHECK(cusps.size() == 12);
    for (auto& c : cusps) {
      CHECK(c.entries.size() == 8);
      CHECK(c.length == 1);
      CHECK(c.monodromy == 1);
    }
    CHECK(complex_euler_char(W).topological == 8);
  }

  TEST_CASE("below t1 the singular set branches") {
    AssembledComplex W = w_complex(FamilyTime::parse("0.75"));
    auto surfaces = stratum_surfaces(W);
    bool branched = std::any_of(surfaces.begin(), surfaces.end(), [](auto& s) { return !s.is_surface(); });
    CHECK(branched);
  }

  TEST_CASE("N_t and its quotient") {
    FamilyTime ft = FamilyTime::parse("0.9");
    AssembledComplex N = n_complex(ft);
    double th = angle_theta(ft), ph = angle_phi(ft);
    for (auto& c : face_cycles(N)) {
      bool known = std::fabs(c.angle - 6 * th) < 1e-9 || std::fabs(c.angle - 4 * ph) < 1e-9 ||
                   std::fabs(c.angle - 2 * pi) < 1e-9;
      CHECK(known);
    }
    EulerCharacteristic chi = complex_euler_char(N);
    CHECK(chi.topological == 4);

    IsometryMatrix r = minus_identity_spatial();
    InvolutionResult same = involution_quotient(N, r, {0, 1, 2, 3});
    CHECK(same.fixed.size() == 4);
    CHECK_FALSE(same.quotient);
    for (auto& f : same.fixed) CHECK(f.dim == 4);

    InvolutionResult q = involution_quotient(N, r, {3, 2, 1, 0});
    REQUIRE(q.quotient);
    CHECK(q.fixed.empty());
    CHECK(q.quotient->copies.size() == 2);
    CHECK(complex_euler_char(*q.quotient).topological == 2);
    CHECK(cusp_cycles(*q.quotient).size() == 1);
    AssembledComplex M = m_complex(ft);
    CHECK(sorted_angles(face_cycles(M)).size() == sorted_angles(face_cycles(*q.quotient)).size());
  }

  TEST_CASE("gluing errors") {
    Polytope<double> P = ks_normals<double>(FamilyTime::parse("0.9"));
    IsometryMatrix id = IsometryMatrix::identity();
    CHECK_THROWS(pairing_complex(P, {"a"}, {{0, 0, 0, 1, id}}));
    CHECK_THROWS(pairing_complex(P, {"a", "b"}, {{0, 0, 1, 0, id}}));
    CHECK_THROWS(pairing_complex(P, {"a"}, {{0, 0, 3, 0, id}}));
    CHECK_THROWS(make_colouring(P, {{"A", 0}}));
  }
}
