#include "doctest.h"
#include "hypercox/commensurability.hpp"
#include "hypercox/family.hpp"

using namespace hypercox;

namespace {

ExactGram gram(const char* preset) {
  return ExactGram::from_polytope(preset_polytope<MultiQuad>(parse_preset(preset)));
}

RationalMatrix rationals(std::vector<std::vector<long>> num, long den) {
  RationalMatrix out;
  for (auto& row : num) {
    std::vector<Rational> r;
    for (long x : row) {
      Rational q(x, den);
      q.canonicalize();
      r.push_back(q);
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace

TEST_SUITE("commensurability") {
  TEST_CASE("printed bases give the printed forms") {
    ExactGram G1 = gram("Q@1");
    CHECK(form_matrix(G1, parse_basis("H, A, L, M, N", G1.names)) ==
          rationals({{2, -2, 0, 0, 0}, {-2, 2, -2, 0, 0}, {0, -2, 2, -1, -1}, {0, 0, -1, 2, 0}, {0, 0, -1, 0, 2}}, 2));
    ExactGram Gt1 = gram("Q@t1");
    CHECK(form_matrix(Gt1, parse_basis("sqrt(5)*H, A, L, M, N", Gt1.names)) ==
          rationals({{10, -10, 0, 0, 0}, {-10, 2, -2, 0, 0}, {0, -2, 2, -1, -1}, {0, 0, -1, 2, 0}, {0, 0, -1, 0, 2}}, 2));
    ExactGram Gb = gram("Q@tbar");
    CHECK(form_matrix(Gb, parse_basis("sqrt(3)*m3, sqrt(2)*A, sqrt(2)*L, sqrt(2)*M, sqrt(2)*N", Gb.names)) ==
          rationals({{3, 0, 0, -3, 0}, {0, 2, -2, 0, 0}, {0, -2, 2, -1, -1}, {-3, 0, -1, 2, 0}, {0, 0, -1, 0, 2}}, 1));
  }

  TEST_CASE("gram entries") {
    ExactGram G = gram("Q@t1");
    int p0 = 0, G_ = 4;
    REQUIRE(G.names[p0] == "p0");
    REQUIRE(G.names[G_] == "G");
    CHECK(G.g[p0][G_] == -MultiQuad::sqrt_of(15));
    for (std::size_t i = 0; i < G.g.size(); ++i) CHECK(G.g[i][i] == MultiQuad(1));
  }

  TEST_CASE("hasse sets") {
    CHECK(commensurability_class(gram("Q@1")).invariant.hasse.empty());
    CHECK(commensurability_class(gram("Q@t1")).invariant.hasse.str() == "{2,5}");
    CHECK(commensurability_class(gram("Q@tbar")).invariant.hasse.empty());
    auto a = commensurability_class(gram("Q@1")), b = commensurability_class(gram("Q@tbar"));
    CHECK(commensurable(a, b));
    CHECK(commensurable(a, a));
    CHECK_FALSE(commensurable(a, commensurability_class(gram("Q@t1"))));
  }

  TEST_CASE("generated span") {
    RationalSpan s = rational_span(gram("Q@t1"));
    CHECK(s.basis.size() == 5);
    CHECK(s.generated >= 10);
    CHECK(s.start_wall == 0);
  }

  TEST_CASE("bad bases") {
    ExactGram G = gram("Q@t1");
    CHECK_THROWS(parse_basis("H, A, L, M, X", G.names));
    CHECK_THROWS(parse_basis("H,, A", G.names));
    CHECK_THROWS(commensurability_class(G, parse_basis("H, A, L, M", G.names)));
    CHECK_THROWS(commensurability_class(G, parse_basis("H, H, L, M, N", G.names)));
    // sqrt(3) e_H does not give a rational form with e_A.
    CHECK_THROWS(commensurability_class(G, parse_basis("sqrt(3)*H, A, L, M, N", G.names)));
  }
}
