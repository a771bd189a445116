#include <random>

#include "doctest.h"
#include "hypercox/multiquad.hpp"

using namespace hypercox;

namespace {

MultiQuad random_element(std::mt19937& rng) {
  static const std::uint64_t radicands[] = {1, 2, 3, 5, 6, 10, 15};
  std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
  MultiQuad x;
  for (auto d : radicands)
    if (rng() % 2) x += MultiQuad::sqrt_times(Rational(num(rng), den(rng)), d);
  return x;
}

}  // namespace

TEST_SUITE("multiquad") {
  TEST_CASE("ring axioms on random elements") {
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
      MultiQuad a = random_element(rng), b = random_element(rng), c = random_element(rng);
      CHECK((a * b) * c == a * (b * c));
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a - a == MultiQuad());
      if (!a.is_zero()) CHECK(a * a.inverse() == MultiQuad(1));
    }
  }

  TEST_CASE("square roots and normal form") {
    CHECK(MultiQuad::sqrt_of(8) == MultiQuad::sqrt_times(Rational(2), 2));
    CHECK(MultiQuad::sqrt_of(2) * MultiQuad::sqrt_of(3) == MultiQuad::sqrt_of(6));
    CHECK(MultiQuad::sqrt_of(6) * MultiQuad::sqrt_of(10) == MultiQuad::sqrt_times(Rational(2), 15));
    CHECK(MultiQuad::sqrt_rational(Rational(3, 5)) == MultiQuad::sqrt_times(Rational(1, 5), 15));
    CHECK(MultiQuad::sqrt_of(4).is_rational());
    CHECK(MultiQuad::sqrt_of(15).coeff(15) == 1);
  }

  TEST_CASE("sign is exact near cancellation") {
    // 99 sqrt(2) - 140 is about 0.00714, 577 - 408 sqrt(2) about 0.00087.
    CHECK((MultiQuad(99) * MultiQuad::sqrt_of(2) - MultiQuad(140)).sign() > 0);
    CHECK((MultiQuad(140) - MultiQuad(99) * MultiQuad::sqrt_of(2)).sign() < 0);
    CHECK((MultiQuad(577) - MultiQuad(408) * MultiQuad::sqrt_of(2)).sign() > 0);
    MultiQuad x = MultiQuad::sqrt_of(2) + MultiQuad::sqrt_of(3) - MultiQuad::sqrt_of(10);
    CHECK(x.sign() == (x.to_double() > 0 ? 1 : -1));
  }

  TEST_CASE("parse and print round trip") {
    std::mt19937 rng(11);
    for (int i = 0; i < 100; ++i) {
      MultiQuad a = random_element(rng);
      CHECK(MultiQuad::parse(a.str()) == a);
    }
    CHECK(MultiQuad::parse("-1/2*sqrt(3) + 09") == MultiQuad(9) - MultiQuad::sqrt_times(Rational(1, 2), 3));
    CHECK_THROWS(MultiQuad::parse("sqrt(x)"));
    CHECK_THROWS(MultiQuad::parse(""));
  }

  TEST_CASE("conjugation and inverse") {
    MultiQuad a = MultiQuad(1) + MultiQuad::sqrt_of(5);
    CHECK(a * a.conjugate(5) == MultiQuad(-4));
    CHECK(a.inverse() == (MultiQuad::sqrt_of(5) - MultiQuad(1)) * MultiQuad(Rational(1, 4)));
    CHECK_THROWS(MultiQuad().inverse());
  }

  TEST_CASE("factorization") {
    auto f = factorize(Integer(360));
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::pair<Integer, unsigned>(2, 3));
    CHECK(f[1] == std::pair<Integer, unsigned>(3, 2));
    CHECK(f[2] == std::pair<Integer, unsigned>(5, 1));
    CHECK(square_class(Rational(-18, 50)) == -1);
    CHECK(square_class(Rational(12, 5)) == 15);
  }
}
