#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "wallach/errors.hpp"

namespace wallach {

using BigInt = mpz_class;

/// Exact rational number, always in lowest terms with a positive denominator.
class BigRational {
 public:
  BigRational() = default;
  BigRational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  BigRational(int v) : v_(v) {}   // NOLINT(google-explicit-constructor)
  BigRational(const BigInt& v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  BigRational(const BigInt& num, const BigInt& den) {
    if (den == 0) fail(Errc::DivisionByZero, "zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  BigRational(long num, long den) : BigRational(BigInt(num), BigInt(den)) {}

  /// Parses "p/q" or "p" (optional sign, decimal digits only).
  static BigRational parse(std::string_view s) {
    auto is_int = [](std::string_view t) {
      if (!t.empty() && (t.front() == '-' || t.front() == '+')) t.remove_prefix(1);
      if (t.empty()) return false;
      for (char c : t)
        if (c < '0' || c > '9') return false;
      return true;
    };
    auto to_int = [](std::string_view t) {
      if (!t.empty() && t.front() == '+') t.remove_prefix(1);
      return BigInt(std::string(t));
    };
    auto slash = s.find('/');
    if (slash == std::string_view::npos) {
      if (!is_int(s)) fail(Errc::ParseError, "not a rational: '" + std::string(s) + "'");
      return BigRational(to_int(s));
    }
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den.front() == '-' || den.front() == '+')
      fail(Errc::ParseError, "not a rational: '" + std::string(s) + "'");
    BigInt d = to_int(den);
    if (d == 0) fail(Errc::ParseError, "zero denominator in '" + std::string(s) + "'");
    return BigRational(to_int(num), d);
  }

  BigInt num() const { return v_.get_num(); }
  BigInt den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  BigRational operator-() const { return from(-v_); }
  BigRational& operator+=(const BigRational& o) { v_ += o.v_; return *this; }
  BigRational& operator-=(const BigRational& o) { v_ -= o.v_; return *this; }
  BigRational& operator*=(const BigRational& o) { v_ *= o.v_; return *this; }
  BigRational& operator/=(const BigRational& o) {
    if (o.is_zero()) fail(Errc::DivisionByZero, "rational division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  BigRational abs() const { return sign() < 0 ? -*this : *this; }

  BigRational pow(unsigned e) const {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), e);
    return BigRational(n, d);
  }

  /// Largest integer <= value.
  BigInt floor() const {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
  }

  double to_double() const { return v_.get_d(); }

  /// "p/q", or "p" when integral.
  std::string str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  /// Fixed-point decimal with `digits` fractional digits, rounded half away from zero.
  std::string to_decimal(int digits) const {
    if (digits < 0) digits = 0;
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    BigInt n = abs().num() * scale * 2 + den();
    BigInt d = den() * 2;
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    std::string s = q.get_str();
    if (digits > 0) {
      if (s.size() <= static_cast<size_t>(digits)) s.insert(0, digits + 1 - s.size(), '0');
      s.insert(s.size() - digits, ".");
    }
    if (sign() < 0 && q != 0) s.insert(0, "-");
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const BigRational& r) { return os << r.str(); }

 private:
  static BigRational from(mpq_class v) {
    BigRational r;
    r.v_ = std::move(v);
    return r;
  }
  mpq_class v_;
};

inline BigRational abs(const BigRational& r) { return r.abs(); }
inline int sign(const BigRational& r) { return r.sign(); }
inline bool is_zero(const BigRational& r) { return r.is_zero(); }

/// Integer square root test: returns true and sets root when n is a perfect square.
inline bool perfect_square(const BigInt& n, BigInt& root) {
  if (n < 0) return false;
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  return true;
}

/// Exact rational square root when it exists.
inline bool rational_sqrt(const BigRational& r, BigRational& root) {
  BigInt n, d;
  if (!perfect_square(r.num(), n) || !perfect_square(r.den(), d)) return false;
  root = BigRational(n, d);
  return true;
}

/// Rational bounds lo <= sqrt(r) <= hi with hi - lo <= 2^-bits (r >= 0).
inline void sqrt_bounds(const BigRational& r, unsigned bits, BigRational& lo, BigRational& hi) {
  if (r.sign() < 0) fail(Errc::InvalidArgument, "sqrt of negative rational");
  BigRational exact;
  if (rational_sqrt(r, exact)) {
    lo = hi = exact;
    return;
  }
  // sqrt(n/d) = sqrt(n*d*4^bits) / (d*2^bits)
  BigInt scale = BigInt(1) << bits;
  BigInt radicand = r.num() * r.den() * scale * scale;
  BigInt s;
  mpz_sqrt(s.get_mpz_t(), radicand.get_mpz_t());
  BigInt den = r.den() * scale;
  lo = BigRational(s, den);
  hi = BigRational(s + 1, den);
}

}  // namespace wallach
