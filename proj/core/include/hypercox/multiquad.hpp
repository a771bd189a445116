#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hypercox {

using Rational = mpq_class;
using Integer = mpz_class;

// Element of Q(sqrt p1, ..., sqrt pk): a sum of q_d * sqrt(d) over squarefree d.
// Terms are kept sorted by radicand with no zero coefficients, so equality is
// structural.
class MultiQuad {
public:
  using Term = std::pair<std::uint64_t, Rational>;

  MultiQuad() = default;
  MultiQuad(long v);  // NOLINT: implicit from integers is convenient in formulas
  MultiQuad(const Rational& q);  // NOLINT
  MultiQuad(long num, long den);

  // q * sqrt(d) for any positive integer d (square factors are extracted).
  static MultiQuad sqrt_times(const Rational& q, std::uint64_t d);
  static MultiQuad sqrt_of(std::uint64_t d) { return sqrt_times(Rational(1), d); }
  // Square root of a nonnegative rational; always representable.
  static MultiQuad sqrt_rational(const Rational& q);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 1); }
  Rational rational_part() const;
  // Coefficient of sqrt(d); zero if absent.
  Rational coeff(std::uint64_t d) const;

  int sign() const;
  double to_double() const;
  long double to_long_double() const;

  // Galois conjugation sqrt(p) -> -sqrt(p) for a prime p.
  MultiQuad conjugate(std::uint64_t p) const;
  MultiQuad inverse() const;
  // Square root when the element is a nonnegative rational times sqrt of a
  // squarefree integer squared, i.e. when the result lies in the same kind of ring.
  std::optional<MultiQuad> sqrt() const;

  MultiQuad& operator+=(const MultiQuad& o);
  MultiQuad& operator-=(const MultiQuad& o);
  MultiQuad& operator*=(const MultiQuad& o);
  MultiQuad& operator/=(const MultiQuad& o) { return *this *= o.inverse(); }

  friend MultiQuad operator+(MultiQuad a, const MultiQuad& b) { return a += b; }
  friend MultiQuad operator-(MultiQuad a, const MultiQuad& b) { return a -= b; }
  friend MultiQuad operator*(const MultiQuad& a, const MultiQuad& b);
  friend MultiQuad operator/(const MultiQuad& a, const MultiQuad& b) { return a * b.inverse(); }
  MultiQuad operator-() const;

  friend bool operator==(const MultiQuad& a, const MultiQuad& b);
  friend bool operator!=(const MultiQuad& a, const MultiQuad& b) { return !(a == b); }
  friend bool operator<(const MultiQuad& a, const MultiQuad& b) { return (a - b).sign() < 0; }
  friend bool operator>(const MultiQuad& a, const MultiQuad& b) { return b < a; }

  // "3/4*sqrt(6) - 1/2" style rendering; parse() accepts the same grammar.
  std::string str() const;
  static MultiQuad parse(const std::string& text);

  // Primes dividing some radicand.
  std::vector<std::uint64_t> radicand_primes() const;

private:
  int exact_sign() const;
  void normalize();

  std::vector<Term> terms_;
};

std::string to_string(const Rational& q);

// Prime factorization by trial division. Divisors are tried up to 10^6; a
// leftover cofactor below 10^12 is then prime. Larger leftovers throw.
std::vector<std::pair<Integer, unsigned>> factorize(Integer n);

// Squarefree part of |n| (n != 0) and the square root of the removed square.
std::pair<Integer, Integer> squarefree_decompose(const Integer& n);

// Representative of the square class of a nonzero rational: sign times a
// squarefree integer.
Integer square_class(const Rational& q);

}  // namespace hypercox
