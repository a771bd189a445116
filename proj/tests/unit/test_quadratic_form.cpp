#include <random>

#include "doctest.h"
#include "hypercox/quadratic_form.hpp"

using namespace hypercox;

namespace {

Rational rnd(std::mt19937& rng, long lo = -20, long hi = 20) {
  std::uniform_int_distribution<long> num(lo, hi), den(1, 9);
  Rational q;
  do q = Rational(num(rng), den(rng)); while (q == 0);
  q.canonicalize();
  return q;
}

RationalMatrix diag_reconstruct(const Diagonalization& d) {
  std::size_t n = d.diagonal.size();
  RationalMatrix D(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) D[i][i] = d.diagonal[i];
  return multiply(multiply(transpose(d.P), D), d.P);
}

}  // namespace

TEST_SUITE("quadratic_form") {
  TEST_CASE("hilbert symbols with known values") {
    CHECK(hilbert_symbol(-1, -1, kInfinity) == -1);
    CHECK(hilbert_symbol(-1, -1, 2) == -1);
    CHECK(hilbert_symbol(-1, -1, 3) == 1);
    CHECK(hilbert_symbol(2, 3, 3) == -1);
    CHECK(hilbert_symbol(5, -3, 5) == -1);
    CHECK(hilbert_symbol(5, -3, 3) == -1);
    CHECK(hilbert_symbol(5, -3, 2) == 1);
    CHECK(hilbert_symbol(Rational(1, 4), 7, 7) == 1);
    CHECK(quaternion_ramification(-1, -1).str() == "{2,inf}");
    CHECK(quaternion_ramification(5, -3).str() == "{3,5}");
    CHECK(quaternion_ramification(-1, 3).str() == "{2,3}");
    CHECK((quaternion_ramification(5, -3) * quaternion_ramification(-1, 3)).str() == "{2,5}");
    CHECK(quaternion_ramification(3, -2).empty());
  }

  TEST_CASE("hilbert symbol is bilinear") {
    std::mt19937 rng(3);
    for (int i = 0; i < 300; ++i) {
      Rational a = rnd(rng), b1 = rnd(rng), b2 = rnd(rng);
      for (Place v : {kInfinity, 2L, 3L, 5L, 7L}) {
        CHECK(hilbert_symbol(a, b1 * b2, v) == hilbert_symbol(a, b1, v) * hilbert_symbol(a, b2, v));
        CHECK(hilbert_symbol(a, b1, v) == hilbert_symbol(b1, a, v));
      }
      CHECK(hilbert_symbol(a, -a, 2) == 1);
      if (a != 1)
        for (Place v : {kInfinity, 2L, 3L, 5L}) CHECK(hilbert_symbol(a, Rational(1 - a), v) == 1);
    }
  }

  TEST_CASE("product formula") {
    std::mt19937 rng(5);
    for (int i = 0; i < 500; ++i) {
      Rational a = rnd(rng, -500, 500), b = rnd(rng, -500, 500);
      std::set<Place> places{kInfinity, 2};
      for (const Integer& z : {Integer(a.get_num()), Integer(a.get_den()), Integer(b.get_num()), Integer(b.get_den())})
        for (auto& [p, e] : factorize(abs(z))) places.insert(p.get_si());
      int prod = 1;
      for (Place v : places) prod *= hilbert_symbol(a, b, v);
      CHECK(prod == 1);
      CHECK(quaternion_ramification(a, b).places().size() % 2 == 0);
    }
  }

  TEST_CASE("diagonalization is a congruence") {
    std::mt19937 rng(9);
    int done = 0;
    while (done < 100) {
      RationalMatrix Q(5, std::vector<Rational>(5));
      for (int i = 0; i < 5; ++i)
        for (int j = i; j < 5; ++j) Q[i][j] = Q[j][i] = rng() % 3 == 0 ? Rational(0) : rnd(rng);
      Diagonalization d;
      try {
        d = diagonalize(Q);
      } catch (const std::exception&) {
        continue;  // singular draw
      }
      ++done;
      CHECK(diag_reconstruct(d) == Q);
      for (auto& x : d.diagonal) CHECK(x != 0);
    }
  }

  TEST_CASE("zero diagonal entries are handled") {
    RationalMatrix H = {{0, 1}, {1, 0}};
    Diagonalization d = diagonalize(H);
    CHECK(diag_reconstruct(d) == H);
    CHECK(d.diagonal[0] * d.diagonal[1] < 0);
    CHECK_THROWS(diagonalize(RationalMatrix{{1, 1}, {1, 1}}));
  }

  TEST_CASE("form invariants") {
    std::vector<Rational> d = {5, -1, 3, 1, 1};
    CHECK(hasse_invariant(d).str() == "{2,5}");
    CHECK(hasse_invariant({1, 1, -1, 1, 1}).empty());
    CHECK(hasse_invariant({3, 2, 2, -1, 2}).empty());
    RationalMatrix Q = {{5, -5, 0, 0, 0},
                        {-5, 1, -1, 0, 0},
                        {0, -1, 1, Rational(-1, 2), Rational(-1, 2)},
                        {0, 0, Rational(-1, 2), 1, 0},
                        {0, 0, Rational(-1, 2), 0, 1}};
    QuadraticFormInvariant inv = form_invariants(Q);
    CHECK(inv.hasse.str() == "{2,5}");
    CHECK(inv.positive == 4);
    CHECK(inv.negative == 1);
  }

  TEST_CASE("hasse set is invariant under change of basis") {
    std::mt19937 rng(13);
    RationalMatrix Q = {{3, 0, 0, -3, 0}, {0, 2, -2, 0, 0}, {0, -2, 2, -1, -1}, {-3, 0, -1, 2, 0}, {0, 0, -1, 0, 2}};
    RamificationSet h = form_invariants(Q).hasse;
    int done = 0;
    while (done < 50) {
      RationalMatrix A(5, std::vector<Rational>(5));
      for (auto& row : A)
        for (auto& x : row) x = static_cast<long>(rng() % 7) - 3;
      RationalMatrix B = multiply(multiply(transpose(A), Q), A);
      QuadraticFormInvariant inv;
      try {
        inv = form_invariants(B);
      } catch (const std::exception&) {
        continue;
      }
      ++done;
      CHECK(inv.hasse == h);
    }
  }
}
