#pragma once

#include <optional>
#include <vector>

#include "wallach/errors.hpp"
#include "wallach/exactnum/bigrational.hpp"
#include "wallach/exactnum/interval.hpp"
#include "wallach/exactnum/polynomial.hpp"

namespace wallach {

namespace detail {

// Positive rescaling keeps the sign pattern of a Sturm chain intact while
// stopping the coefficient blow-up of plain remainder sequences.
inline UniPoly positive_normalize(const UniPoly& p) {
  if (p.is_zero()) return p;
  UniPoly q = primitive_part(p);
  return p.leading().sign() < 0 ? -q : q;
}

inline int sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace detail

/// Signed remainder chain p, p', -rem(p, p'), ... over exact rationals.
class SturmSequence {
 public:
  explicit SturmSequence(const UniPoly& p) {
    if (p.is_zero()) fail(Errc::ZeroPolynomial, "Sturm sequence of the zero polynomial");
    chain_.push_back(detail::positive_normalize(p));
    UniPoly next = detail::positive_normalize(p.derivative());
    while (!next.is_zero()) {
      chain_.push_back(next);
      const auto n = chain_.size();
      next = detail::positive_normalize(-(chain_[n - 2] % chain_[n - 1]));
    }
  }

  const UniPoly& poly() const { return chain_.front(); }
  const std::vector<UniPoly>& chain() const { return chain_; }

  int variations_at(const BigRational& x) const {
    std::vector<int> s;
    s.reserve(chain_.size());
    for (const auto& q : chain_) s.push_back(q(x).sign());
    return detail::sign_changes(s);
  }
  int variations_at_infinity(bool positive) const {
    std::vector<int> s;
    s.reserve(chain_.size());
    for (const auto& q : chain_) {
      int sg = q.leading().sign();
      if (!positive && (q.degree() % 2 != 0)) sg = -sg;
      s.push_back(sg);
    }
    return detail::sign_changes(s);
  }

  /// Distinct real roots in the open interval (lo, hi); neither endpoint may be a root.
  int count(const BigRational& lo, const BigRational& hi) const {
    if (!(lo < hi)) fail(Errc::InvalidArgument, "empty interval in Sturm count");
    if (poly()(lo).is_zero() || poly()(hi).is_zero())
      fail(Errc::EndpointRoot, "polynomial vanishes at an interval endpoint");
    return variations_at(lo) - variations_at(hi);
  }
  int count_all() const { return variations_at_infinity(false) - variations_at_infinity(true); }

 private:
  std::vector<UniPoly> chain_;
};

/// Exact number of distinct real roots of p in the open interval (iv.lo, iv.hi).
inline int sturm_root_count(const UniPoly& p, const Interval& iv) {
  if (p.is_zero()) fail(Errc::ZeroPolynomial, "sturm_root_count on zero polynomial");
  return SturmSequence(p).count(iv.lo(), iv.hi());
}

/// Strict bound: every real root r satisfies |r| < bound.
inline BigRational cauchy_bound(const UniPoly& p) {
  if (p.is_zero()) fail(Errc::ZeroPolynomial, "root bound of zero polynomial");
  BigRational m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, (p.coeff(i) / p.leading()).abs());
  return m + BigRational(1);
}

/// A root isolated in the open interval (iv.lo, iv.hi), or exactly located
/// when iv is a single point.
struct RootInterval {
  Interval iv;
  int multiplicity = 1;
};

namespace detail {

// A split point inside (lo, hi) where p does not vanish.
inline BigRational split_point(const UniPoly& p, const BigRational& lo, const BigRational& hi) {
  for (long den = 2;; ++den) {
    for (long k = 1; k < den; ++k) {
      BigRational m = lo + (hi - lo) * BigRational(k, den);
      if (!p(m).is_zero()) return m;
    }
  }
}

inline void bisect_isolate(const SturmSequence& s, BigRational lo, BigRational hi, int n,
                           std::vector<Interval>& out) {
  if (n == 0) return;
  if (n == 1) {
    out.emplace_back(std::move(lo), std::move(hi));
    return;
  }
  BigRational mid = split_point(s.poly(), lo, hi);
  int left = s.count(lo, mid);
  bisect_isolate(s, lo, mid, left, out);
  bisect_isolate(s, mid, hi, n - left, out);
}

}  // namespace detail

/// All real roots of p, in ascending order, each in its own open interval
/// with the multiplicity read off the square-free decomposition.
inline std::vector<RootInterval> isolate_roots(const UniPoly& p) {
  if (p.is_zero()) fail(Errc::ZeroPolynomial, "isolate_roots on zero polynomial");
  std::vector<RootInterval> out;
  if (p.degree() == 0) return out;
  const auto factors = square_free_decomposition(p);
  const UniPoly sqf = square_free_part(p);
  SturmSequence s(sqf);
  BigRational b = cauchy_bound(sqf);
  std::vector<Interval> ivs;
  detail::bisect_isolate(s, -b, b, s.count(-b, b), ivs);
  for (auto& iv : ivs) {
    int mult = 0;
    for (size_t i = 0; i < factors.size(); ++i) {
      if (factors[i].degree() < 1) continue;
      if (SturmSequence(factors[i]).count(iv.lo(), iv.hi()) == 1) {
        mult = static_cast<int>(i) + 1;
        break;
      }
    }
    if (mult == 0) fail(Errc::InvariantViolation, "root not attributed to a square-free factor");
    out.push_back({iv, mult});
  }
  return out;
}

/// Narrows an isolating interval of p to width <= width by bisection with
/// Sturm counts. Returns a point interval if an exact root is hit.
inline Interval refine_root(const UniPoly& p, const Interval& iv, const BigRational& width) {
  if (p.is_zero()) fail(Errc::ZeroPolynomial, "refine_root on zero polynomial");
  if (iv.is_point()) {
    if (!p(iv.lo()).is_zero()) fail(Errc::NotIsolating, "point interval is not a root");
    return iv;
  }
  SturmSequence s(p);
  if (s.count(iv.lo(), iv.hi()) != 1) fail(Errc::NotIsolating, "interval does not isolate one root");
  BigRational lo = iv.lo(), hi = iv.hi();
  while (hi - lo > width) {
    BigRational mid = (lo + hi) / BigRational(2);
    if (p(mid).is_zero()) return Interval(mid);
    if (s.count(lo, mid) == 1) hi = mid;
    else lo = mid;
  }
  return Interval(lo, hi);
}

/// The rational with smallest denominator (then numerator) in [lo, hi].
inline BigRational simplest_rational(const BigRational& lo, const BigRational& hi) {
  if (hi < lo) fail(Errc::InvalidArgument, "simplest_rational: lo > hi");
  if (lo.sign() <= 0 && hi.sign() >= 0) return BigRational(0);
  if (hi.sign() < 0) return -simplest_rational(-hi, -lo);
  BigRational fl(lo.floor());
  if (fl == lo) return lo;
  if (fl + BigRational(1) <= hi) return fl + BigRational(1);
  return fl + BigRational(1) / simplest_rational(BigRational(1) / (hi - fl), BigRational(1) / (lo - fl));
}

/// Roots of p in (0, +inf), isolated as in isolate_roots. A root at 0 is dropped.
inline std::vector<RootInterval> isolate_positive_roots(const UniPoly& p) {
  std::vector<RootInterval> out;
  for (auto& r : isolate_roots(p)) {
    if (r.iv.hi().sign() <= 0) continue;
    if (r.iv.lo().sign() >= 0) {
      out.push_back(r);
      continue;
    }
    if (p(BigRational(0)).is_zero()) continue;  // the isolated root is 0
    if (SturmSequence(p).count(BigRational(0), r.iv.hi()) == 1)
      out.push_back({Interval(BigRational(0), r.iv.hi()), r.multiplicity});
  }
  return out;
}

/// If the root isolated by iv is rational with a denominator small relative
/// to the interval width, returns it exactly.
inline std::optional<BigRational> rational_root_in(const UniPoly& p, const Interval& iv) {
  BigRational c = simplest_rational(iv.lo(), iv.hi());
  if (p(c).is_zero()) return c;
  return std::nullopt;
}

}  // namespace wallach
