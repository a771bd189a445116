#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hypercox/family.hpp"

using namespace hypercox;

namespace {

// Gram-like polytope from pairwise angles pi/m_ij of a simplex in R^{1,4}.
Polytope<double> simplex_from_normals(std::vector<Vec<double>> n) {
  Polytope<double> P;
  for (std::size_t i = 0; i < n.size(); ++i) {
    P.names.push_back(std::string(1, static_cast<char>('a' + i)));
    P.normals.push_back(n[i]);
  }
  return P;
}

}  // namespace

TEST_SUITE("coxeter") {
  TEST_CASE("labels") {
    using std::numbers::pi;
    CHECK(coxeter_label(pi / 2) == 2);
    CHECK(coxeter_label(pi / 3) == 3);
    CHECK(coxeter_label(pi / 7) == 7);
    CHECK(coxeter_label(1.0) == 0);
    CHECK(coxeter_label(2 * pi / 5) == 0);
  }

  TEST_CASE("diagram of P_1") {
    Polytope<double> P = ks_normals<double>(FamilyTime::parse("1"));
    CoxeterDiagram D = diagram_of(P);
    CHECK(D.size() == 24);
    CHECK(D.acute());
    int A = P.index_of("A"), F = P.index_of("F");
    CHECK(D.at(A, F).kind == EdgeKind::Dashed);
    GramMatrix<double> G = gram_matrix(P);
    for (std::size_t i = 0; i < G.size(); ++i) CHECK(G.g[i][i] == doctest::Approx(1));
  }

  TEST_CASE("finite group orders") {
    Polytope<double> P = ks_normals<double>(FamilyTime::parse("1"));
    CoxeterDiagram D = diagram_of(P);
    StrataComplex S = enumerate_strata(P, StrataMode::Geometric);
    for (auto& v : S.finite_vertices) {
      auto order = coxeter_group_order(D.induced(v));
      CHECK(order > 0);
    }
    // A_4 from normals of the regular simplex walls meeting at pi/3.
    CHECK(coxeter_group_order(diagram_of(simplex_from_normals({{0, 1, 0, 0, 0}, {0, -0.5, std::sqrt(3.0) / 2, 0, 0}}))) == 6);
  }

  TEST_CASE("subdiagram types") {
    Polytope<double> P = ks_normals<double>(FamilyTime::parse("1"));
    GramMatrix<double> G = gram_matrix(P);
    StrataComplex S = enumerate_strata(P, StrataMode::Geometric);
    for (auto& v : S.finite_vertices) CHECK(classify_subdiagram(G, v).type == SubdiagramType::Elliptic);
    for (auto& v : S.ideal_vertices) {
      SubdiagramClass c = classify_subdiagram(G, v);
      CHECK(c.type == SubdiagramType::Parabolic);
      CHECK(c.rank == 3);
    }
    int A = P.index_of("A"), F = P.index_of("F");
    CHECK(classify_subdiagram(G, WallSet{std::min(A, F), std::max(A, F)}).type == SubdiagramType::Indefinite);
  }

  TEST_CASE("backends agree at decimal times") {
    for (const char* t : {"0.97", "0.85", "0.74", "0.72"}) {
      FamilyTime ft = FamilyTime::parse(t);
      StrataComplex a = enumerate_strata(ks_normals<double>(ft), StrataMode::Diagram);
      StrataComplex b = enumerate_strata(ks_normals<double>(ft), StrataMode::Geometric);
      CHECK_MESSAGE(compare_strata(a, b) == "", t);
      CHECK(finite_volume_check(b).finite);
    }
    // Further down the family some dihedral angles are obtuse.
    CHECK_THROWS(enumerate_strata(ks_normals<double>(FamilyTime::parse("0.2")), StrataMode::Diagram));
  }

  TEST_CASE("strata are consistent") {
    StrataComplex S = enumerate_strata(ks_normals<double>(FamilyTime::parse("0.9")), StrataMode::Geometric);
    auto f = S.fvector();
    // Euler relation for a 4-polytope with ideal vertices counted as vertices.
    CHECK(static_cast<long>(f.vertices) - static_cast<long>(f.edges) + static_cast<long>(f.faces) -
              static_cast<long>(f.walls) == 0);
    for (std::size_t e = 0; e < S.edges.size(); ++e) CHECK(S.edge_vertices[e].size() == 2);
    // Simple polytope: four edges at each finite vertex.
    std::vector<int> degree(S.finite_vertices.size() + S.ideal_vertices.size());
    for (auto& ev : S.edge_vertices)
      for (int v : ev) ++degree[v];
    for (std::size_t v = 0; v < S.finite_vertices.size(); ++v) CHECK(degree[v] == 4);
  }

  TEST_CASE("a truncated polytope has infinite volume") {
    Polytope<double> P = ks_normals<double>(FamilyTime::parse("0.9"));
    Polytope<double> Q = P.subset({0, 1, 2, 3, 4, 5});
    CHECK_FALSE(finite_volume_check(enumerate_strata(Q, StrataMode::Geometric)).finite);
  }
}
