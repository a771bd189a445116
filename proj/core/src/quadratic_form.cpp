#include "hypercox/quadratic_form.hpp"

#include <sstream>
#include <stdexcept>

namespace hypercox {

RamificationSet RamificationSet::operator*(const RamificationSet& o) const {
  std::set<Place> out;
  for (Place p : places_)
    if (!o.contains(p)) out.insert(p);
  for (Place p : o.places_)
    if (!contains(p)) out.insert(p);
  return RamificationSet(std::move(out));
}

std::string RamificationSet::str() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (Place p : places_) {
    if (p == kInfinity) continue;
    os << (first ? "" : ",") << p;
    first = false;
  }
  if (contains(kInfinity)) os << (first ? "" : ",") << "inf";
  os << "}";
  return os.str();
}

namespace {

// a = p^v * u with p not dividing u.
unsigned valuation(Integer& a, const Integer& p) {
  unsigned v = 0;
  while (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

int mod8(const Integer& u) {
  Integer r = u % 8;
  if (r < 0) r += 8;
  return static_cast<int>(r.get_si());
}

// Integer in the same square class as q.
Integer integral_rep(const Rational& q) { return q.get_num() * q.get_den(); }

}  // namespace

int hilbert_symbol(const Rational& qa, const Rational& qb, Place place) {
  if (qa == 0 || qb == 0) throw std::domain_error("hilbert_symbol: zero argument");
  if (place == kInfinity) return (qa < 0 && qb < 0) ? -1 : 1;
  if (place < 2) throw std::invalid_argument("hilbert_symbol: bad place");
  Integer p(place);
  Integer u = integral_rep(qa), w = integral_rep(qb);
  unsigned alpha = valuation(u, p), beta = valuation(w, p);
  if (place == 2) {
    int u8 = mod8(u), w8 = mod8(w);
    int eps_u = ((u8 - 1) / 2) & 1, eps_w = ((w8 - 1) / 2) & 1;
    int om_u = ((u8 * u8 - 1) / 8) & 1, om_w = ((w8 * w8 - 1) / 8) & 1;
    int e = eps_u * eps_w + static_cast<int>(alpha) * om_w + static_cast<int>(beta) * om_u;
    return (e & 1) ? -1 : 1;
  }
  int s = 1;
  long eps_p = ((place - 1) / 2) & 1;
  if ((alpha * beta * eps_p) & 1) s = -s;
  if (beta & 1) s *= mpz_legendre(u.get_mpz_t(), p.get_mpz_t());
  if (alpha & 1) s *= mpz_legendre(w.get_mpz_t(), p.get_mpz_t());
  return s;
}

RamificationSet quaternion_ramification(const Rational& a, const Rational& b) {
  std::set<Place> candidates{kInfinity, 2};
  for (const Rational* q : {&a, &b})
    for (auto& [pr, e] : factorize(square_class(*q))) {
      if (!pr.fits_slong_p()) throw std::range_error("prime too large");
      candidates.insert(pr.get_si());
    }
  std::set<Place> out;
  for (Place v : candidates)
    if (hilbert_symbol(a, b, v) == -1) out.insert(v);
  if (out.size() % 2 != 0) throw std::logic_error("quaternion_ramification: odd ramification set");
  return RamificationSet(std::move(out));
}

RationalMatrix transpose(const RationalMatrix& A) {
  if (A.empty()) return {};
  RationalMatrix T(A[0].size(), std::vector<Rational>(A.size()));
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < A[i].size(); ++j) T[j][i] = A[i][j];
  return T;
}

RationalMatrix multiply(const RationalMatrix& A, const RationalMatrix& B) {
  std::size_t n = A.size(), k = B.size(), m = B.empty() ? 0 : B[0].size();
  RationalMatrix C(n, std::vector<Rational>(m, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (A[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) C[i][j] += A[i][l] * B[l][j];
    }
  return C;
}

Diagonalization diagonalize(const RationalMatrix& Q) {
  const std::size_t n = Q.size();
  for (auto& row : Q)
    if (row.size() != n) throw std::invalid_argument("diagonalize: matrix not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (Q[i][j] != Q[j][i]) throw std::invalid_argument("diagonalize: matrix not symmetric");

  // Row operations E with E Q E^T = D, applied simultaneously to rows and columns.
  RationalMatrix A = Q;
  RationalMatrix E(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) E[i][i] = 1;

  auto add_multiple = [&](std::size_t dst, std::size_t src, const Rational& c) {
    for (std::size_t j = 0; j < n; ++j) A[dst][j] += c * A[src][j];
    for (std::size_t j = 0; j < n; ++j) A[j][dst] += c * A[j][src];
    for (std::size_t j = 0; j < n; ++j) E[dst][j] += c * E[src][j];
  };
  auto swap_idx = [&](std::size_t a, std::size_t b) {
    std::swap(A[a], A[b]);
    for (auto& row : A) std::swap(row[a], row[b]);
    std::swap(E[a], E[b]);
  };

  for (std::size_t k = 0; k < n; ++k) {
    if (A[k][k] == 0) {
      std::size_t piv = n;
      for (std::size_t j = k + 1; j < n; ++j)
        if (A[j][j] != 0) {
          piv = j;
          break;
        }
      if (piv != n) {
        swap_idx(k, piv);
      } else {
        for (std::size_t j = k + 1; j < n; ++j)
          if (A[k][j] != 0) {
            piv = j;
            break;
          }
        if (piv == n) throw std::domain_error("diagonalize: degenerate form");
        add_multiple(k, piv, Rational(1));
      }
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      if (A[j][k] == 0) continue;
      Rational c = -A[j][k] / A[k][k];
      add_multiple(j, k, c);
    }
  }

  Diagonalization out;
  out.diagonal.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.diagonal[i] = A[i][i];

  // P = E^{-T}; invert E by Gauss-Jordan.
  RationalMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  RationalMatrix M = E;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (r < n && M[r][c] == 0) ++r;
    if (r == n) throw std::logic_error("diagonalize: singular transform");
    std::swap(M[r], M[c]);
    std::swap(inv[r], inv[c]);
    Rational d = M[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      M[c][j] /= d;
      inv[c][j] /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || M[i][c] == 0) continue;
      Rational f = M[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        M[i][j] -= f * M[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  out.P = transpose(inv);
  return out;
}

std::vector<Integer> squarefree_diagonal(const std::vector<Rational>& diag) {
  std::vector<Integer> out;
  out.reserve(diag.size());
  for (auto& d : diag) out.push_back(square_class(d));
  return out;
}

RamificationSet hasse_invariant(const std::vector<Rational>& diag) {
  std::vector<Integer> sq = squarefree_diagonal(diag);
  RamificationSet acc;
  for (std::size_t i = 0; i < sq.size(); ++i)
    for (std::size_t j = i + 1; j < sq.size(); ++j)
      acc = acc * quaternion_ramification(Rational(sq[i]), Rational(sq[j]));
  return acc;
}

RamificationSet witt_invariant(const std::vector<Rational>& diag) {
  return hasse_invariant(diag) * quaternion_ramification(Rational(-1), Rational(-1));
}

QuadraticFormInvariant form_invariants(const RationalMatrix& Q) {
  Diagonalization d = diagonalize(Q);
  QuadraticFormInvariant inv;
  inv.diagonal = squarefree_diagonal(d.diagonal);
  inv.hasse = hasse_invariant(d.diagonal);
  inv.witt = witt_invariant(d.diagonal);
  Rational det(1);
  for (auto& x : d.diagonal) {
    det *= x;
    (x > 0 ? inv.positive : inv.negative)++;
  }
  inv.determinant_class = square_class(det);
  return inv;
}

}  // namespace hypercox
