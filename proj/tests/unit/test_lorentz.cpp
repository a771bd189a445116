#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hypercox/lorentz.hpp"

using namespace hypercox;

TEST_SUITE("lorentz") {
  TEST_CASE("vector kinds") {
    CHECK(classify_vector(Vec<double>{0, 1, 0, 0, 0}) == VectorKind::Space);
    CHECK(classify_vector(Vec<double>{1, 0, 0, 0, 0}) == VectorKind::Time);
    CHECK(classify_vector(Vec<double>{1, 1, 0, 0, 0}) == VectorKind::Light);
    CHECK(classify_vector(Vec<double>{1, 1 + 1e-12, 0, 0, 0}) == VectorKind::Light);
    MultiQuad s2 = MultiQuad::sqrt_of(2);
    CHECK(classify_vector(Vec<MultiQuad>{1, s2 / 2, s2 / 2, 0, 0}) == VectorKind::Light);
    CHECK(minkowski_product(Vec<double>{1, 2, 0, 0, 0}, Vec<double>{3, 1, 0, 0, 1}) == doctest::Approx(-1));
  }

  TEST_CASE("pair relations") {
    using std::numbers::pi;
    Vec<double> e1{0, 1, 0, 0, 0}, e2{0, 0, 1, 0, 0};
    PairRelation r = pair_relation(e1, e2);
    CHECK(r.kind == RelationKind::Angle);
    CHECK(r.value == doctest::Approx(pi / 2));
    Vec<double> w{0, -0.5, std::sqrt(3.0) / 2, 0, 0};
    CHECK(pair_relation(e1, w).value == doctest::Approx(pi / 3));
    // Walls x1 = 1 and x1 = -1 in the Klein model are ultraparallel-free:
    // normals (1, -1, 0, 0, 0) ... through the light cone.
    PairRelation p = pair_relation(Vec<double>{1, std::sqrt(2.0), 0, 0, 0}, Vec<double>{1, -std::sqrt(2.0), 0, 0, 0});
    CHECK(p.kind == RelationKind::Ultraparallel);
    CHECK(p.alpha == doctest::Approx(3));
    CHECK(p.value == doctest::Approx(std::acosh(3.0)));
    PairRelation q = pair_relation(Vec<double>{1, 1, 1, 0, 0}, Vec<double>{1, 1, -1, 0, 0});
    CHECK(q.kind == RelationKind::Parallel);
    CHECK_THROWS(pair_relation(Vec<double>{1, 0, 0, 0, 0}, e1));
  }

  TEST_CASE("exact parallel detection") {
    MultiQuad s2 = MultiQuad::sqrt_of(2);
    PairRelation q = pair_relation(Vec<MultiQuad>{1, 1, 1, 0, 0}, Vec<MultiQuad>{1, 1, -1, 0, 0});
    CHECK(q.kind == RelationKind::Parallel);
    PairRelation a = pair_relation(Vec<MultiQuad>{1, s2, 0, 0, 0}, Vec<MultiQuad>{0, -s2 / 2, s2 / 2, 0, 0});
    CHECK(a.kind == RelationKind::Parallel);
  }

  TEST_CASE("vertices and sides") {
    std::vector<Vec<double>> walls = {{0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}};
    auto v = solve_vertex(walls);
    REQUIRE(v);
    CHECK_FALSE(v->ideal);
    CHECK(v->coords[0] == 1);
    auto h = v->hyperboloid();
    CHECK(minkowski_product(h, h) == doctest::Approx(-1));
    // Half-spaces are <x, v> <= 0.
    CHECK(point_side(*v, Vec<double>{1, 2, 0, 0, 0}) == Side::Inside);
    CHECK(point_side(*v, Vec<double>{0, 1, 0, 0, 0}) == Side::Boundary);
    CHECK(point_side(*v, Vec<double>{-1, 2, 0, 0, 0}) == Side::Outside);

    std::vector<Vec<double>> ideal = {{1, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}};
    auto w = solve_vertex(ideal);
    REQUIRE(w);
    CHECK(w->ideal);
    // The common line of these walls is space-like, so it misses closed H^4.
    CHECK_FALSE(solve_vertex(std::vector<Vec<double>>{{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}}));
    CHECK_FALSE(solve_vertex(std::vector<Vec<double>>{{0, 1, 0, 0, 0}, {0, 2, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}}));
  }

  TEST_CASE("complements and projection") {
    auto basis = lorentz_complement(std::vector<Vec<double>>{{1, 2, 0, 0, 0}}, 5);
    CHECK(basis.size() == 4);
    for (auto& b : basis) CHECK(minkowski_product(b, Vec<double>{1, 2, 0, 0, 0}) == doctest::Approx(0));
    Vec<double> wall{0, 1, 1, 0, 0};
    Vec<double> p = project_to_wall(Vec<double>{2, 3, 0, 1, 0}, wall);
    CHECK(minkowski_product(p, wall) == doctest::Approx(0));
  }
}
