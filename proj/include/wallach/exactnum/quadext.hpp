#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "wallach/errors.hpp"
#include "wallach/exactnum/bigrational.hpp"
#include "wallach/exactnum/interval.hpp"

namespace wallach {

/// Exact value p + q*sqrt(d) with d a positive integer free of small square
/// factors. Rational values carry q = 0 and adopt the radicand of whatever
/// they are combined with. Two nonzero surds interoperate only when d1*d2 is a
/// perfect square; anything else is MixedRadicand.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(const BigRational& p) : p_(p) {}  // NOLINT(google-explicit-constructor)
  QuadExt(long v) : p_(v) {}                // NOLINT(google-explicit-constructor)
  QuadExt(BigRational p, BigRational q, const BigInt& d) : p_(std::move(p)), q_(std::move(q)) {
    if (d <= 0) fail(Errc::InvalidArgument, "radicand must be positive");
    set_radicand(d);
  }

  /// sqrt(r) for a nonnegative rational r, exact.
  static QuadExt sqrt_of(const BigRational& r) {
    if (r.sign() < 0) fail(Errc::InvalidArgument, "sqrt of negative rational");
    // sqrt(n/m) = sqrt(n*m)/m
    return QuadExt(BigRational(0), BigRational(BigInt(1), r.den()), r.num() * r.den());
  }

  const BigRational& rational_part() const { return p_; }
  const BigRational& surd_coeff() const { return q_; }
  const BigInt& radicand() const { return d_; }
  bool is_rational() const { return q_.is_zero(); }

  QuadExt conjugate() const {
    QuadExt r = *this;
    r.q_ = -r.q_;
    return r;
  }
  /// p^2 - q^2 d.
  BigRational norm() const { return p_ * p_ - q_ * q_ * BigRational(d_); }

  int sign() const {
    int sp = p_.sign();
    int sq = q_.sign();
    if (sq == 0) return sp;
    if (sp == 0 || sp == sq) return sq;
    // opposite signs: the larger magnitude wins
    BigRational lhs = p_ * p_;
    BigRational rhs = q_ * q_ * BigRational(d_);
    if (lhs == rhs) return 0;
    return lhs > rhs ? sp : sq;
  }
  bool is_zero() const { return sign() == 0; }

  QuadExt operator-() const { return QuadExt(-p_, -q_, d_, Raw{}); }
  friend QuadExt operator+(const QuadExt& a, const QuadExt& b) {
    Aligned v = align(a, b);
    return QuadExt(v.p1 + v.p2, v.q1 + v.q2, v.d, Raw{});
  }
  friend QuadExt operator-(const QuadExt& a, const QuadExt& b) { return a + (-b); }
  friend QuadExt operator*(const QuadExt& a, const QuadExt& b) {
    Aligned v = align(a, b);
    return QuadExt(v.p1 * v.p2 + v.q1 * v.q2 * BigRational(v.d), v.p1 * v.q2 + v.q1 * v.p2, v.d, Raw{});
  }
  friend QuadExt operator/(const QuadExt& a, const QuadExt& b) {
    BigRational n = b.norm();
    if (n.is_zero()) fail(Errc::DivisionByZero, "QuadExt division by zero");
    QuadExt inv(b.p_ / n, -b.q_ / n, b.d_, Raw{});
    return a * inv;
  }
  QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
  QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
  QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }
  QuadExt& operator/=(const QuadExt& o) { return *this = *this / o; }

  friend bool operator==(const QuadExt& a, const QuadExt& b) { return (a - b).is_zero(); }
  friend bool operator<(const QuadExt& a, const QuadExt& b) { return (a - b).sign() < 0; }
  friend bool operator>(const QuadExt& a, const QuadExt& b) { return b < a; }
  friend bool operator<=(const QuadExt& a, const QuadExt& b) { return !(b < a); }
  friend bool operator>=(const QuadExt& a, const QuadExt& b) { return !(a < b); }

  /// Rational enclosure with sqrt(d) bounded to 2^-bits.
  Interval enclose(unsigned bits = 128) const {
    if (q_.is_zero()) return Interval(p_);
    BigRational lo, hi;
    sqrt_bounds(BigRational(d_), bits, lo, hi);
    return Interval(p_) + Interval(q_) * Interval(lo, hi);
  }

  double to_double() const { return enclose(64).midpoint().to_double(); }

  /// Correctly rounded fixed-point decimal (half away from zero).
  std::string to_decimal(int digits) const {
    if (q_.is_zero()) return p_.to_decimal(digits);
    for (unsigned bits = static_cast<unsigned>(digits) * 4 + 64;; bits *= 2) {
      Interval iv = enclose(bits);
      std::string a = iv.lo().to_decimal(digits), b = iv.hi().to_decimal(digits);
      if (a == b) return a;
    }
  }

  /// Exact square root inside the same field when one exists.
  std::optional<QuadExt> sqrt_in_field() const {
    if (sign() < 0) return std::nullopt;
    if (q_.is_zero()) return sqrt_of(p_);
    // (u + v sqrt d)^2 = u^2 + d v^2 + 2uv sqrt d
    BigRational root_norm;
    if (!rational_sqrt(norm(), root_norm)) return std::nullopt;
    for (int s : {1, -1}) {
      BigRational u2 = (p_ + BigRational(s) * root_norm) / BigRational(2);
      BigRational u;
      if (u2.sign() <= 0 || !rational_sqrt(u2, u)) continue;
      BigRational v = q_ / (BigRational(2) * u);
      QuadExt cand(u, v, d_, Raw{});
      if (cand.sign() < 0) cand = -cand;
      if (cand * cand == *this) return cand;
    }
    return std::nullopt;
  }

  std::string str() const {
    if (q_.is_zero()) return p_.str();
    std::string s;
    if (!p_.is_zero()) s = p_.str() + (q_.sign() > 0 ? " + " : " - ");
    else if (q_.sign() < 0) s = "-";
    return s + q_.abs().str() + "*sqrt(" + d_.get_str() + ")";
  }
  friend std::ostream& operator<<(std::ostream& os, const QuadExt& v) { return os << v.str(); }

 private:
  struct Raw {};
  QuadExt(BigRational p, BigRational q, BigInt d, Raw) : p_(std::move(p)), q_(std::move(q)), d_(std::move(d)) {
    if (q_.is_zero()) d_ = 1;
  }

  void set_radicand(const BigInt& d) {
    BigInt rest = d;
    BigInt out = 1;
    for (unsigned long pr = 2; pr < 10000; ++pr) {
      BigInt sq = BigInt(pr) * pr;
      if (sq > rest) break;
      while (mpz_divisible_p(rest.get_mpz_t(), sq.get_mpz_t()) != 0) {
        rest /= sq;
        out *= pr;
      }
    }
    BigInt root;
    if (perfect_square(rest, root)) {
      out *= root;
      rest = 1;
    }
    q_ *= BigRational(out);
    if (rest == 1) {
      p_ += q_;
      q_ = 0;
    }
    d_ = q_.is_zero() ? BigInt(1) : rest;
  }

  // Both operands rewritten over one radicand d.
  struct Aligned {
    BigRational p1, q1, p2, q2;
    BigInt d;
  };
  static Aligned align(const QuadExt& a, const QuadExt& b) {
    if (b.q_.is_zero() || a.d_ == b.d_) return {a.p_, a.q_, b.p_, b.q_, a.q_.is_zero() ? b.d_ : a.d_};
    if (a.q_.is_zero()) return {a.p_, a.q_, b.p_, b.q_, b.d_};
    BigInt s;
    if (!perfect_square(a.d_ * b.d_, s))
      fail(Errc::MixedRadicand, "sqrt(" + a.d_.get_str() + ") and sqrt(" + b.d_.get_str() + ")");
    // sqrt(b.d) = s / a.d * sqrt(a.d)
    return {a.p_, a.q_, b.p_, b.q_ * BigRational(s, a.d_), a.d_};
  }

  BigRational p_;
  BigRational q_;
  BigInt d_ = 1;
};

inline bool is_zero(const QuadExt& v) { return v.is_zero(); }

}  // namespace wallach
