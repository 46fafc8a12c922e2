#pragma once

#include <utility>
#include <vector>

#include "wallach/errors.hpp"
#include "wallach/exactnum/bigrational.hpp"
#include "wallach/exactnum/polynomial.hpp"

namespace wallach {

enum class Var { X, Y };

/// Bivariate polynomial over Q, dense in both variables: coefficient of x^i y^j.
class BiPoly {
 public:
  BiPoly() = default;
  BiPoly(const BigRational& c) { add_term(c, 0, 0); }  // NOLINT(google-explicit-constructor)
  BiPoly(long c) : BiPoly(BigRational(c)) {}           // NOLINT(google-explicit-constructor)

  static BiPoly term(const BigRational& c, int i, int j) {
    BiPoly p;
    p.add_term(c, i, j);
    return p;
  }
  static BiPoly x() { return term(1, 1, 0); }
  static BiPoly y() { return term(1, 0, 1); }

  bool is_zero() const { return c_.empty(); }
  BigRational coeff(int i, int j) const {
    if (i < 0 || j < 0 || i >= static_cast<int>(c_.size())) return 0;
    const auto& row = c_[static_cast<size_t>(i)];
    return j < static_cast<int>(row.size()) ? row[static_cast<size_t>(j)] : BigRational(0);
  }
  int degree_in(Var v) const {
    int d = -1;
    for (size_t i = 0; i < c_.size(); ++i)
      for (size_t j = 0; j < c_[i].size(); ++j)
        if (!c_[i][j].is_zero()) d = std::max(d, static_cast<int>(v == Var::X ? i : j));
    return d;
  }

  void add_term(const BigRational& c, int i, int j) {
    if (c_.size() <= static_cast<size_t>(i)) c_.resize(static_cast<size_t>(i) + 1);
    auto& row = c_[static_cast<size_t>(i)];
    if (row.size() <= static_cast<size_t>(j)) row.resize(static_cast<size_t>(j) + 1);
    row[static_cast<size_t>(j)] += c;
    trim();
  }

  friend BiPoly operator+(BiPoly a, const BiPoly& b) {
    for (size_t i = 0; i < b.c_.size(); ++i)
      for (size_t j = 0; j < b.c_[i].size(); ++j)
        if (!b.c_[i][j].is_zero()) a.add_term(b.c_[i][j], static_cast<int>(i), static_cast<int>(j));
    return a;
  }
  BiPoly operator-() const {
    BiPoly r = *this;
    for (auto& row : r.c_)
      for (auto& c : row) c = -c;
    return r;
  }
  friend BiPoly operator-(const BiPoly& a, const BiPoly& b) { return a + (-b); }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < a.c_[i].size(); ++j) {
        if (a.c_[i][j].is_zero()) continue;
        for (size_t k = 0; k < b.c_.size(); ++k)
          for (size_t l = 0; l < b.c_[k].size(); ++l)
            if (!b.c_[k][l].is_zero())
              r.add_term(a.c_[i][j] * b.c_[k][l], static_cast<int>(i + k), static_cast<int>(j + l));
      }
    return r;
  }
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.c_ == b.c_; }

  BigRational operator()(const BigRational& x, const BigRational& y) const {
    BigRational acc = 0;
    BigRational xp = 1;
    for (const auto& row : c_) {
      BigRational yp = 1, inner = 0;
      for (const auto& c : row) {
        inner += c * yp;
        yp *= y;
      }
      acc += inner * xp;
      xp *= x;
    }
    return acc;
  }

  /// View as a polynomial in `main` whose coefficients are polynomials in the other variable.
  Polynomial<UniPoly> as_poly_in(Var main) const {
    int dm = degree_in(main);
    int dother = degree_in(main == Var::X ? Var::Y : Var::X);
    std::vector<UniPoly> coeffs;
    for (int e = 0; e <= dm; ++e) {
      std::vector<BigRational> inner;
      for (int f = 0; f <= dother; ++f) inner.push_back(main == Var::X ? coeff(e, f) : coeff(f, e));
      coeffs.emplace_back(std::move(inner));
    }
    return Polynomial<UniPoly>(std::move(coeffs));
  }

 private:
  void trim() {
    for (auto& row : c_)
      while (!row.empty() && row.back().is_zero()) row.pop_back();
    while (!c_.empty() && c_.back().empty()) c_.pop_back();
  }
  std::vector<std::vector<BigRational>> c_;
};

inline bool is_zero(const BiPoly& p) { return p.is_zero(); }

namespace detail {

inline BigRational exact_quotient(const BigRational& a, const BigRational& b) { return a / b; }
inline UniPoly exact_quotient(const UniPoly& a, const UniPoly& b) { return exact_div(a, b); }

}  // namespace detail

/// Fraction-free (Bareiss) determinant over an integral domain with exact division.
template <class Ring>
Ring bareiss_determinant(std::vector<std::vector<Ring>> m) {
  const size_t n = m.size();
  if (n == 0) return Ring(1);
  Ring prev(1);
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(m[k][k])) {
      size_t swap = k + 1;
      while (swap < n && is_zero(m[swap][k])) ++swap;
      if (swap == n) return Ring{};
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j)
        m[i][j] = detail::exact_quotient(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

/// Resultant of two univariate polynomials over Q[other] via the Sylvester matrix.
inline UniPoly resultant(const Polynomial<UniPoly>& p, const Polynomial<UniPoly>& q) {
  if (p.is_zero() || q.is_zero()) fail(Errc::ZeroPolynomial, "resultant with a zero polynomial");
  const int m = p.degree(), n = q.degree();
  if (m == 0 && n == 0) fail(Errc::BothConstant, "neither polynomial depends on the eliminated variable");
  if (m == 0) return p.coeff(0).pow(static_cast<unsigned>(n));
  if (n == 0) return q.coeff(0).pow(static_cast<unsigned>(m));
  const size_t size = static_cast<size_t>(m + n);
  std::vector<std::vector<UniPoly>> s(size, std::vector<UniPoly>(size));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) s[static_cast<size_t>(r)][static_cast<size_t>(r + i)] = p.coeff(m - i);
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) s[static_cast<size_t>(n + r)][static_cast<size_t>(r + i)] = q.coeff(n - i);
  return bareiss_determinant(std::move(s));
}

/// Eliminates `eliminate` from the pair; the result is a polynomial in the other variable.
inline UniPoly resultant_eliminate(const BiPoly& p, const BiPoly& q, Var eliminate) {
  if (p.is_zero() || q.is_zero()) fail(Errc::ZeroPolynomial, "resultant_eliminate with a zero polynomial");
  return resultant(p.as_poly_in(eliminate), q.as_poly_in(eliminate));
}

}  // namespace wallach
