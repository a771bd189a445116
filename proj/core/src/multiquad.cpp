#include "hypercox/multiquad.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hypercox {

namespace {

constexpr unsigned long kTrialLimit = 1000000UL;

std::uint64_t to_u64(const Integer& z) {
  if (z < 0 || mpz_sizeinbase(z.get_mpz_t(), 2) > 63) throw std::overflow_error("radicand too large");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, z.get_mpz_t());
  return out;
}

Integer from_u64(std::uint64_t v) {
  Integer z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return z;
}

std::vector<std::uint64_t> small_prime_factors(std::uint64_t d) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= d; ++p) {
    if (d % p == 0) {
      out.push_back(p);
      while (d % p == 0) d /= p;
    }
  }
  if (d > 1) out.push_back(d);
  return out;
}

}  // namespace

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::vector<std::pair<Integer, unsigned>> factorize(Integer n) {
  if (n < 0) n = -n;
  if (n == 0) throw std::domain_error("factorize: zero");
  std::vector<std::pair<Integer, unsigned>> out;
  auto strip = [&](unsigned long p) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    if (e) out.emplace_back(Integer(p), e);
  };
  strip(2);
  for (unsigned long p = 3; p <= kTrialLimit; p += 2) {
    if (Integer(p) * p > n) break;
    strip(p);
  }
  if (n > 1) {
    Integer limit = Integer(kTrialLimit) * kTrialLimit;
    if (n >= limit) throw std::range_error("factorize: cofactor exceeds trial-division cap");
    out.emplace_back(n, 1);
  }
  return out;
}

std::pair<Integer, Integer> squarefree_decompose(const Integer& n) {
  Integer core = 1, root = 1;
  for (auto& [p, e] : factorize(n)) {
    if (e % 2) core *= p;
    for (unsigned i = 0; i < e / 2; ++i) root *= p;
  }
  return {core, root};
}

Integer square_class(const Rational& q) {
  if (q == 0) throw std::domain_error("square_class: zero");
  Integer n = q.get_num() * q.get_den();
  auto [core, root] = squarefree_decompose(n);
  return n < 0 ? Integer(-core) : core;
}

MultiQuad::MultiQuad(long v) {
  if (v != 0) terms_.emplace_back(1, Rational(v));
}

// gmpxx leaves Rational(n, d) uncanonicalized; equality here is structural.
MultiQuad::MultiQuad(const Rational& q) {
  if (q != 0) {
    terms_.emplace_back(1, q);
    terms_[0].second.canonicalize();
  }
}

MultiQuad::MultiQuad(long num, long den) : MultiQuad(Rational(num, den)) {
  if (!terms_.empty()) terms_[0].second.canonicalize();
}

MultiQuad MultiQuad::sqrt_times(const Rational& q, std::uint64_t d) {
  if (d == 0 || q == 0) return {};
  auto [core, root] = squarefree_decompose(from_u64(d));
  MultiQuad out;
  out.terms_.emplace_back(to_u64(core), q * root);
  out.terms_[0].second.canonicalize();
  return out;
}

MultiQuad MultiQuad::sqrt_rational(const Rational& q) {
  if (q < 0) throw std::domain_error("sqrt of negative rational");
  if (q == 0) return {};
  Integer n = q.get_num() * q.get_den();
  auto [core, root] = squarefree_decompose(n);
  MultiQuad out;
  out.terms_.emplace_back(to_u64(core), Rational(root, q.get_den()));
  out.terms_[0].second.canonicalize();
  return out;
}

Rational MultiQuad::rational_part() const { return coeff(1); }

Rational MultiQuad::coeff(std::uint64_t d) const {
  for (auto& [k, c] : terms_)
    if (k == d) return c;
  return Rational(0);
}

void MultiQuad::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](auto& a, auto& b) { return a.first < b.first; });
  std::vector<Term> merged;
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().first == t.first)
      merged.back().second += t.second;
    else
      merged.push_back(t);
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(), [](auto& t) { return t.second == 0; }),
               merged.end());
  terms_ = std::move(merged);
}

MultiQuad& MultiQuad::operator+=(const MultiQuad& o) {
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
      out.push_back(terms_[i++]);
    } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
      out.push_back(o.terms_[j++]);
    } else {
      Rational s = terms_[i].second + o.terms_[j].second;
      if (s != 0) out.emplace_back(terms_[i].first, s);
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

MultiQuad MultiQuad::operator-() const {
  MultiQuad r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

MultiQuad& MultiQuad::operator-=(const MultiQuad& o) { return *this += -o; }

MultiQuad operator*(const MultiQuad& a, const MultiQuad& b) {
  MultiQuad r;
  if (a.is_zero() || b.is_zero()) return r;
  r.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (auto& [da, ca] : a.terms_) {
    for (auto& [db, cb] : b.terms_) {
      std::uint64_t g = std::gcd(da, db);
      Rational c = ca * cb;
      if (g != 1) c *= Rational(from_u64(g));
      r.terms_.emplace_back((da / g) * (db / g), std::move(c));
    }
  }
  r.normalize();
  return r;
}

MultiQuad& MultiQuad::operator*=(const MultiQuad& o) { return *this = *this * o; }

bool operator==(const MultiQuad& a, const MultiQuad& b) { return a.terms_ == b.terms_; }

std::vector<std::uint64_t> MultiQuad::radicand_primes() const {
  std::vector<std::uint64_t> out;
  for (auto& [d, c] : terms_)
    for (auto p : small_prime_factors(d)) out.push_back(p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MultiQuad MultiQuad::conjugate(std::uint64_t p) const {
  MultiQuad r = *this;
  for (auto& [d, c] : r.terms_)
    if (d % p == 0) c = -c;
  return r;
}

MultiQuad MultiQuad::inverse() const {
  if (is_zero()) throw std::domain_error("MultiQuad: inverse of zero");
  if (is_rational()) return MultiQuad(Rational(1) / terms_[0].second);
  auto primes = radicand_primes();
  MultiQuad conj = conjugate(primes.back());
  MultiQuad norm = *this * conj;
  return conj * norm.inverse();
}

std::optional<MultiQuad> MultiQuad::sqrt() const {
  if (is_zero()) return MultiQuad();
  if (is_rational() && terms_[0].second > 0) return sqrt_rational(terms_[0].second);
  return std::nullopt;
}

long double MultiQuad::to_long_double() const {
  long double v = 0;
  for (auto& [d, c] : terms_) v += static_cast<long double>(c.get_d()) * std::sqrt(static_cast<long double>(d));
  return v;
}

double MultiQuad::to_double() const { return static_cast<double>(to_long_double()); }

int MultiQuad::sign() const {
  if (terms_.empty()) return 0;
  if (terms_.size() == 1) return sgn(terms_[0].second);
  long double v = 0, mag = 0;
  for (auto& [d, c] : terms_) {
    long double x = static_cast<long double>(c.get_d()) * std::sqrt(static_cast<long double>(d));
    v += x;
    mag += std::fabs(x);
  }
  if (std::fabs(v) > mag * 1e-12L) return v > 0 ? 1 : -1;
  return exact_sign();
}

int MultiQuad::exact_sign() const {
  if (is_rational()) return terms_.empty() ? 0 : sgn(terms_[0].second);
  std::uint64_t p = radicand_primes().back();
  MultiQuad a, b;
  for (auto& [d, c] : terms_) {
    if (d % p == 0)
      b.terms_.emplace_back(d / p, c);
    else
      a.terms_.emplace_back(d, c);
  }
  a.normalize();
  b.normalize();
  int sa = a.sign(), sb = b.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  MultiQuad diff = a * a - b * b * MultiQuad(static_cast<long>(p));
  return sa * diff.sign();
}

std::string MultiQuad::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [d, c] : terms_) {
    Rational mag = abs(c);
    if (c < 0)
      os << (first ? "-" : " - ");
    else if (!first)
      os << " + ";
    first = false;
    if (d == 1) {
      os << to_string(mag);
    } else {
      if (mag != 1) os << to_string(mag) << "*";
      os << "sqrt(" << d << ")";
    }
  }
  return os.str();
}

MultiQuad MultiQuad::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("empty MultiQuad literal");
  MultiQuad out;
  std::size_t i = 0;
  auto read_rational = [&](std::size_t& k) {
    std::size_t start = k;
    while (k < s.size() && (std::isdigit(static_cast<unsigned char>(s[k])) || s[k] == '/')) ++k;
    if (k == start) throw std::invalid_argument("bad number in '" + text + "'");
    Rational q(s.substr(start, k - start), 10);
    q.canonicalize();
    return q;
  };
  auto read_sqrt = [&](std::size_t& k) -> std::uint64_t {
    if (s.compare(k, 5, "sqrt(") != 0) throw std::invalid_argument("expected sqrt( in '" + text + "'");
    k += 5;
    std::size_t start = k;
    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
    if (k == start || k >= s.size() || s[k] != ')') throw std::invalid_argument("bad sqrt in '" + text + "'");
    auto d = std::stoull(s.substr(start, k - start));
    ++k;
    return d;
  };
  while (i < s.size()) {
    int sgn_ = 1;
    if (s[i] == '+' || s[i] == '-') {
      sgn_ = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      throw std::invalid_argument("expected sign in '" + text + "'");
    }
    Rational q(1);
    std::uint64_t d = 1;
    if (i < s.size() && s[i] == 's') {
      d = read_sqrt(i);
    } else {
      q = read_rational(i);
      if (i < s.size() && s[i] == '*') {
        ++i;
        d = read_sqrt(i);
      }
    }
    out += sqrt_times(Rational(q * sgn_), d);
  }
  return out;
}

}  // namespace hypercox
