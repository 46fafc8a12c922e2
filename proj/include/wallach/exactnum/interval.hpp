#pragma once

#include <algorithm>
#include <ostream>
#include <string>

#include "wallach/errors.hpp"
#include "wallach/exactnum/bigrational.hpp"

namespace wallach {

/// Closed interval [lo, hi] with exact rational endpoints. Arithmetic is
/// exact on the endpoints, so every result is a true enclosure with no
/// rounding to account for.
class Interval {
 public:
  Interval() = default;
  Interval(const BigRational& point) : lo_(point), hi_(point) {}  // NOLINT(google-explicit-constructor)
  Interval(long v) : Interval(BigRational(v)) {}                 // NOLINT(google-explicit-constructor)
  Interval(BigRational lo, BigRational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (hi_ < lo_) fail(Errc::InvalidArgument, "interval with lo > hi");
  }

  const BigRational& lo() const { return lo_; }
  const BigRational& hi() const { return hi_; }
  BigRational width() const { return hi_ - lo_; }
  BigRational midpoint() const { return (lo_ + hi_) / BigRational(2); }
  bool is_point() const { return lo_ == hi_; }

  bool contains(const BigRational& v) const { return lo_ <= v && v <= hi_; }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool overlaps(const Interval& o) const { return !(hi_ < o.lo_ || o.hi_ < lo_); }

  /// +1 / -1 when the interval excludes zero, 0 when it does not.
  int certified_sign() const {
    if (lo_.sign() > 0) return 1;
    if (hi_.sign() < 0) return -1;
    return 0;
  }

  BigRational magnitude() const { return std::max(lo_.abs(), hi_.abs()); }

  Interval operator-() const { return Interval(-hi_, -lo_); }
  friend Interval operator+(const Interval& a, const Interval& b) {
    return Interval(a.lo_ + b.lo_, a.hi_ + b.hi_);
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return Interval(a.lo_ - b.hi_, a.hi_ - b.lo_);
  }
  friend Interval operator*(const Interval& a, const Interval& b) {
    if (a.is_point() && b.is_point()) return Interval(a.lo_ * b.lo_);
    BigRational p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
    return Interval(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
  }
  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) fail(Errc::DivisionByZero, "interval division by an interval containing zero");
    return a * Interval(BigRational(1) / b.hi_, BigRational(1) / b.lo_);
  }
  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator-=(const Interval& o) { return *this = *this - o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }

  friend bool operator==(const Interval& a, const Interval& b) { return a.lo_ == b.lo_ && a.hi_ == b.hi_; }

  Interval hull(const Interval& o) const {
    return Interval(std::min(lo_, o.lo_), std::max(hi_, o.hi_));
  }

  std::string str() const { return "[" + lo_.str() + ", " + hi_.str() + "]"; }
  friend std::ostream& operator<<(std::ostream& os, const Interval& iv) { return os << iv.str(); }

 private:
  BigRational lo_;
  BigRational hi_;
};

inline bool is_zero(const Interval& iv) { return iv.is_point() && iv.lo().is_zero(); }

/// Enclosure of sqrt over a nonnegative interval, endpoints widened by at most 2^-bits.
inline Interval sqrt(const Interval& iv, unsigned bits = 128) {
  if (iv.hi().sign() < 0) fail(Errc::InvalidArgument, "sqrt of negative interval");
  BigRational lo_lo, lo_hi, hi_lo, hi_hi;
  BigRational base = iv.lo().sign() < 0 ? BigRational(0) : iv.lo();
  sqrt_bounds(base, bits, lo_lo, lo_hi);
  sqrt_bounds(iv.hi(), bits, hi_lo, hi_hi);
  return Interval(lo_lo, hi_hi);
}

}  // namespace wallach
