#pragma once

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wallach/errors.hpp"
#include "wallach/exactnum/bigrational.hpp"

namespace wallach {

template <class R>
class Polynomial;

template <class R>
bool is_zero(const Polynomial<R>& p) {
  return p.is_zero();
}

/// Dense univariate polynomial over a commutative ring R, ascending
/// coefficients. The leading coefficient is nonzero unless the polynomial is
/// zero (empty coefficient list). Division and gcd are available when R is
/// BigRational.
template <class R>
class Polynomial {
 public:
  using coeff_type = R;

  Polynomial() = default;
  Polynomial(const R& c) {  // NOLINT(google-explicit-constructor)
    if (!wallach::is_zero(c)) c_.push_back(c);
  }
  explicit Polynomial(long c) : Polynomial(R(c)) {}
  explicit Polynomial(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<R> coeffs) : c_(coeffs) { trim(); }

  /// The monomial c*x^n.
  static Polynomial monomial(const R& c, int n) {
    std::vector<R> v(static_cast<size_t>(n) + 1, R{});
    v.back() = c;
    return Polynomial(std::move(v));
  }
  static Polynomial x() { return monomial(R(1), 1); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<R>& coeffs() const { return c_; }
  R coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<size_t>(i)] : R{};
  }
  const R& leading() const {
    if (c_.empty()) fail(Errc::ZeroPolynomial, "leading coefficient of zero polynomial");
    return c_.back();
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R{});
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R{});
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<R> v(a.c_.size() + b.c_.size() - 1, R{});
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(v));
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  friend Polynomial operator*(const R& s, Polynomial p) {
    for (auto& c : p.c_) c = s * c;
    p.trim();
    return p;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// Horner evaluation at a point of any ring X that accepts R coefficients.
  template <class X>
  X operator()(const X& x) const {
    X acc = X(R{});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + X(*it);
    return acc;
  }
  R operator()(const R& x) const { return this->template operator()<R>(x); }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<R> v(c_.size() - 1, R{});
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = R(static_cast<long>(i)) * c_[i];
    return Polynomial(std::move(v));
  }

  Polynomial pow(unsigned e) const {
    Polynomial result(R(1));
    Polynomial base = *this;
    while (e) {
      if (e & 1U) result *= base;
      e >>= 1U;
      if (e) base *= base;
    }
    return result;
  }

  /// p(q(x)).
  Polynomial compose(const Polynomial& q) const {
    Polynomial acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + Polynomial(*it);
    return acc;
  }

  std::string str(const char* var = "x") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      const R& c = c_[static_cast<size_t>(i)];
      if (wallach::is_zero(c)) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << c << ")";
      if (i > 0) os << "*" << var;
      if (i > 1) os << "^" << i;
    }
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

 private:
  void trim() {
    while (!c_.empty() && wallach::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<R> c_;
};

using UniPoly = Polynomial<BigRational>;

// ---- field operations over Q ----

struct DivMod {
  UniPoly quotient;
  UniPoly remainder;
};

inline DivMod divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) fail(Errc::DivisionByZero, "polynomial division by zero");
  std::vector<BigRational> rem = a.coeffs();
  int db = b.degree();
  int da = a.degree();
  if (da < db) return {UniPoly{}, a};
  std::vector<BigRational> quo(static_cast<size_t>(da - db + 1));
  const BigRational inv_lead = BigRational(1) / b.leading();
  for (int i = da; i >= db; --i) {
    BigRational f = rem[static_cast<size_t>(i)] * inv_lead;
    quo[static_cast<size_t>(i - db)] = f;
    if (f.is_zero()) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<size_t>(i - db + j)] -= f * b.coeff(j);
  }
  rem.resize(static_cast<size_t>(db));
  return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

inline UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).remainder; }

/// Quotient that must be exact; a nonzero remainder is an internal error.
inline UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) fail(Errc::InvariantViolation, "inexact polynomial division");
  return q;
}

inline UniPoly monic(const UniPoly& p) {
  if (p.is_zero()) return p;
  return (BigRational(1) / p.leading()) * p;
}

/// Monic gcd; gcd(0,0) = 0.
inline UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

/// Multiplies by the lcm of denominators and divides by the content so the
/// polynomial has coprime integer coefficients and a positive leading term.
inline UniPoly primitive_part(const UniPoly& p) {
  if (p.is_zero()) return p;
  BigInt l = 1, g = 0;
  for (const auto& c : p.coeffs()) {
    BigInt d = c.den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  std::vector<BigRational> v;
  v.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    BigInt n = c.num() * (l / c.den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    v.emplace_back(n);
  }
  if (p.leading().sign() < 0) g = -g;
  for (auto& c : v) c /= BigRational(g);
  return UniPoly(std::move(v));
}

/// Yun square-free decomposition: p = lc * prod_i factors[i]^(i+1), each
/// factor monic and square-free, pairwise coprime (constant factors = 1).
inline std::vector<UniPoly> square_free_decomposition(const UniPoly& p) {
  if (p.is_zero()) fail(Errc::ZeroPolynomial, "square-free decomposition of zero");
  std::vector<UniPoly> out;
  if (p.degree() == 0) return out;
  UniPoly f = monic(p);
  UniPoly df = f.derivative();
  UniPoly a = gcd(f, df);
  UniPoly b = exact_div(f, a);
  UniPoly c = exact_div(df, a);
  UniPoly d = c - b.derivative();
  while (b.degree() > 0) {
    UniPoly g = gcd(b, d);
    out.push_back(g);
    b = exact_div(b, g);
    c = exact_div(d, g);
    d = c - b.derivative();
  }
  while (!out.empty() && out.back().degree() == 0) out.pop_back();
  return out;
}

/// Square-free part p / gcd(p, p'), monic.
inline UniPoly square_free_part(const UniPoly& p) {
  if (p.is_zero()) fail(Errc::ZeroPolynomial, "square-free part of zero");
  if (p.degree() <= 0) return UniPoly(BigRational(1));
  return monic(exact_div(p, gcd(p, p.derivative())));
}

}  // namespace wallach
