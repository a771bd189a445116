#include "hypercox/commensurability.hpp"

#include <deque>
#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hypercox {

namespace {

constexpr std::size_t kMaxLines = 20000;

// Scale so that the first stored term has coefficient 1: one key per Q-line.
MultiQuad line_key(const MultiQuad& c) {
  return c * MultiQuad(Rational(1) / c.terms().front().second);
}

// Inverse of a nonsingular rational matrix by Gauss-Jordan.
RationalMatrix invert(RationalMatrix A) {
  std::size_t n = A.size();
  RationalMatrix I(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && A[p][k] == 0) ++p;
    if (p == n) throw std::domain_error("form is degenerate");
    std::swap(A[p], A[k]);
    std::swap(I[p], I[k]);
    Rational inv = 1 / A[k][k];
    for (std::size_t j = 0; j < n; ++j) {
      A[k][j] *= inv;
      I[k][j] *= inv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || A[i][k] == 0) continue;
      Rational f = A[i][k];
      for (std::size_t j = 0; j < n; ++j) {
        A[i][j] -= f * A[k][j];
        I[i][j] -= f * I[k][j];
      }
    }
  }
  return I;
}

// Row-reduces `rows` and returns the rank.
std::size_t rank(Mat<MultiQuad> A) {
  std::size_t r = 0, cols = A.empty() ? 0 : A[0].size();
  for (std::size_t k = 0; k < cols && r < A.size(); ++k) {
    std::size_t p = r;
    while (p < A.size() && A[p][k].is_zero()) ++p;
    if (p == A.size()) continue;
    std::swap(A[p], A[r]);
    MultiQuad inv = A[r][k].inverse();
    for (std::size_t i = r + 1; i < A.size(); ++i) {
      if (A[i][k].is_zero()) continue;
      MultiQuad f = A[i][k] * inv;
      for (std::size_t j = k; j < cols; ++j) A[i][j] -= f * A[r][j];
    }
    ++r;
  }
  return r;
}

bool nondegenerate(const ExactGram& G, const std::vector<SpanVector>& vs) {
  Mat<MultiQuad> A(vs.size(), std::vector<MultiQuad>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < vs.size(); ++j) A[i][j] = G.product(vs[i], vs[j]);
  return rank(A) == vs.size();
}

// The walls span the space and the form on it is nondegenerate, so v is
// determined by its products with the walls.
bool independent(const ExactGram& G, const std::vector<SpanVector>& vs) {
  Mat<MultiQuad> A;
  for (auto& v : vs) {
    std::vector<MultiQuad> row;
    for (auto& g : G.g[v.wall]) row.push_back(v.coeff * g);
    A.push_back(std::move(row));
  }
  return rank(A) == vs.size();
}

// Lines c * e_i reached from e_start by multiplying with Gram entries.
std::vector<SpanVector> closure(const ExactGram& G, int start) {
  std::size_t m = G.g.size();
  std::vector<SpanVector> out;
  std::set<std::pair<int, std::string>> seen;
  std::deque<SpanVector> queue{{start, MultiQuad(1)}};
  seen.insert({start, MultiQuad(1).str()});
  while (!queue.empty()) {
    SpanVector v = queue.front();
    queue.pop_front();
    out.push_back(v);
    for (std::size_t j = 0; j < m; ++j) {
      const MultiQuad& g = G.g[v.wall][j];
      if (g.is_zero() || static_cast<int>(j) == v.wall) continue;
      MultiQuad c = v.coeff * g;
      if (!seen.insert({static_cast<int>(j), line_key(c).str()}).second) continue;
      if (seen.size() > kMaxLines) throw std::runtime_error("rational_span: closure does not terminate");
      queue.push_back({static_cast<int>(j), c});
    }
  }
  return out;
}

// Coordinates of v in the basis, or false if some coordinate is irrational.
bool rational_coordinates(const ExactGram& G, const std::vector<SpanVector>& basis, const RationalMatrix& Qinv,
                          const SpanVector& v) {
  std::size_t n = basis.size();
  std::vector<MultiQuad> h(n);
  for (std::size_t j = 0; j < n; ++j) h[j] = G.product(v, basis[j]);
  for (std::size_t i = 0; i < n; ++i) {
    MultiQuad x;
    for (std::size_t j = 0; j < n; ++j) x += MultiQuad(Qinv[i][j]) * h[j];
    if (!x.is_rational()) return false;
  }
  return true;
}

}  // namespace

std::string SpanVector::str(const std::vector<std::string>& names) const {
  std::string c = coeff.str();
  std::string n = names.at(wall);
  if (c == "1") return n;
  if (coeff.terms().size() > 1) c = "(" + c + ")";
  return c + "*" + n;
}

ExactGram ExactGram::from_polytope(const Polytope<MultiQuad>& P) {
  GramMatrix<MultiQuad> g = gram_matrix(P);
  return {g.names, g.g};
}

MultiQuad ExactGram::product(const SpanVector& a, const SpanVector& b) const {
  return a.coeff * b.coeff * g[a.wall][b.wall];
}

RationalMatrix form_matrix(const ExactGram& G, const std::vector<SpanVector>& basis) {
  std::size_t n = basis.size();
  RationalMatrix Q(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      MultiQuad x = G.product(basis[i], basis[j]);
      if (!x.is_rational())
        throw std::domain_error("form_matrix: <" + basis[i].str(G.names) + ", " + basis[j].str(G.names) +
                                "> = " + x.str() + " is irrational");
      Q[i][j] = x.rational_part();
    }
  return Q;
}

RationalSpan rational_span(const ExactGram& G, const std::vector<SpanVector>& supplied) {
  std::size_t m = G.g.size();
  if (m == 0) throw std::invalid_argument("rational_span: empty Gram matrix");
  for (auto& row : G.g)
    if (row.size() != m) throw std::invalid_argument("rational_span: Gram matrix not square");
  for (auto& v : supplied)
    if (v.wall < 0 || v.wall >= static_cast<int>(m) || v.coeff.is_zero())
      throw std::invalid_argument("rational_span: bad basis vector");

  RationalSpan span;
  if (supplied.empty()) {
    std::vector<SpanVector> lines = closure(G, 0);
    span.generated = lines.size();
    for (auto& v : lines) {
      if (span.basis.size() == 5) break;
      span.basis.push_back(v);
      if (!independent(G, span.basis)) span.basis.pop_back();
    }
    if (span.basis.size() != 5)
      throw std::domain_error("rational_span: generated vectors span " + std::to_string(span.basis.size()) +
                              " dimensions, not 5");
    if (!nondegenerate(G, span.basis)) throw std::domain_error("rational_span: the form is degenerate");
    RationalMatrix Qinv = invert(form_matrix(G, span.basis));
    for (auto& v : lines)
      if (!rational_coordinates(G, span.basis, Qinv, v))
        throw std::domain_error("rational_span: " + v.str(G.names) + " is not in the rational span of the basis");
    return span;
  }
  if (supplied.size() != 5) throw std::invalid_argument("rational_span: a basis has five vectors");
  if (!independent(G, supplied)) throw std::domain_error("rational_span: supplied vectors are dependent");
  if (!nondegenerate(G, supplied)) throw std::domain_error("rational_span: the form is degenerate");
  span.basis = supplied;
  RationalMatrix Qinv = invert(form_matrix(G, span.basis));
  // Starting the closure at another wall rescales the space by a real factor
  // whose square is rational; accept the basis if it spans any of them.
  for (int start = 0; start < static_cast<int>(m); ++start) {
    std::vector<SpanVector> lines = closure(G, start);
    bool inside = std::all_of(lines.begin(), lines.end(),
                              [&](const SpanVector& v) { return rational_coordinates(G, span.basis, Qinv, v); });
    if (inside) {
      span.start_wall = start;
      span.generated = lines.size();
      return span;
    }
  }
  throw std::domain_error("rational_span: supplied basis does not span the generated vectors");
}

CommensurabilityReport commensurability_class(const ExactGram& G, const std::vector<SpanVector>& basis) {
  CommensurabilityReport r;
  r.span = rational_span(G, basis);
  r.form = form_matrix(G, r.span.basis);
  r.diagonal = diagonalize(r.form);
  r.invariant = form_invariants(r.form);
  return r;
}

CommensurabilityReport commensurability_class(const Polytope<MultiQuad>& P, const std::vector<SpanVector>& basis) {
  return commensurability_class(ExactGram::from_polytope(P), basis);
}

bool commensurable(const CommensurabilityReport& a, const CommensurabilityReport& b) {
  return a.invariant.same_class(b.invariant);
}

std::vector<SpanVector> parse_basis(const std::string& text, const std::vector<std::string>& names) {
  std::vector<SpanVector> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string s;
    for (char ch : item)
      if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("parse_basis: empty item");
    auto star = s.rfind('*');
    std::string name = star == std::string::npos ? s : s.substr(star + 1);
    SpanVector v;
    v.coeff = star == std::string::npos ? MultiQuad(1) : MultiQuad::parse(s.substr(0, star));
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw std::invalid_argument("parse_basis: unknown wall " + name);
    v.wall = static_cast<int>(it - names.begin());
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace hypercox
