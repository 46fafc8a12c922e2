#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <string_view>

#include "wallach/core.hpp"
#include "wallach/errors.hpp"
#include "wallach/exactnum.hpp"

namespace wallach {

struct SymTriple {
  BigRational s1, s2, s3;
};

template <class T>
struct SymOf {
  T s1, s2, s3;
};

template <class T>
SymOf<T> symfun(const T& a1, const T& a2, const T& a3) {
  return {a1 + a2 + a3, a1 * a2 + a1 * a3 + a2 * a3, a1 * a2 * a3};
}

inline SymTriple symfun(const AParams& a) {
  auto s = symfun(a[0], a[1], a[2]);
  return {s.s1, s.s2, s.s3};
}

/// Q in terms of s1, s2, s3. Works for any commutative ring T constructible
/// from long (rationals, polynomials, floats).
template <class T>
T eval_Q_sym(const T& s1, const T& s2, const T& s3) {
  auto c = [](long v) { return T(v); };
  const T s1_2 = s1 * s1, s1_3 = s1_2 * s1, s1_4 = s1_3 * s1, s1_5 = s1_4 * s1;
  const T s3_2 = s3 * s3, s3_3 = s3_2 * s3;
  const T s2_2 = s2 * s2, s2_3 = s2_2 * s2, s2_4 = s2_3 * s2;
  const T p = c(2) * s1 + c(4) * s3 - c(1);
  const T q = c(2) * s1 - c(32) * s3 - c(1);
  const T big = c(64) * s1_5 - c(64) * s1_4 + c(8) * s1_3 + c(12) * s1_2 - c(6) * s1 + c(1) +
                c(240) * s3 * s1_2 - c(240) * s3 * s1 - c(1536) * s3_2 * s1 - c(4096) * s3_3 + c(60) * s3 +
                c(768) * s3_2;
  const T mid = c(13) - c(52) * s1 + c(640) * s3 * s1 + c(1024) * s3_2 - c(320) * s3 + c(52) * s1_2;
  return p * big - c(8) * s1 * p * q * (c(10) * s1 + c(32) * s3 - c(5)) * s2 - c(16) * s1_2 * mid * s2_2 +
         c(64) * (c(2) * s1 - c(1)) * q * s2_3 + c(2048) * s1 * (c(2) * s1 - c(1)) * s2_4;
}

template <class T>
T eval_Q(const T& a1, const T& a2, const T& a3) {
  auto s = symfun(a1, a2, a3);
  return eval_Q_sym(s.s1, s.s2, s.s3);
}

inline BigRational eval_Q(const AParams& a) { return eval_Q(a[0], a[1], a[2]); }

// ---------------------------------------------------------------------------
// Expanded form in a1, a2, a3.

/// Sparse polynomial in three variables with rational coefficients.
class TriPoly {
 public:
  using Exp = std::array<int, 3>;

  TriPoly() = default;
  explicit TriPoly(long c) { add(Exp{0, 0, 0}, BigRational(c)); }
  static TriPoly var(int i) {
    TriPoly p;
    Exp e{0, 0, 0};
    e[static_cast<size_t>(i)] = 1;
    p.add(e, BigRational(1));
    return p;
  }

  const std::map<Exp, BigRational>& terms() const { return t_; }
  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : t_) d = std::max(d, e[0] + e[1] + e[2]);
    return d;
  }

  friend TriPoly operator+(TriPoly a, const TriPoly& b) {
    for (const auto& [e, c] : b.t_) a.add(e, c);
    return a;
  }
  friend TriPoly operator-(TriPoly a, const TriPoly& b) {
    for (const auto& [e, c] : b.t_) a.add(e, -c);
    return a;
  }
  friend TriPoly operator*(const TriPoly& a, const TriPoly& b) {
    TriPoly r;
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_) r.add(Exp{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    return r;
  }

  TriPoly derivative(int var) const {
    TriPoly r;
    const auto v = static_cast<size_t>(var);
    for (const auto& [e, c] : t_) {
      if (e[v] == 0) continue;
      Exp f = e;
      --f[v];
      r.add(f, c * BigRational(e[v]));
    }
    return r;
  }

  template <class T>
  T operator()(const T& x, const T& y, const T& z) const {
    T acc(0L);
    for (const auto& [e, c] : t_) {
      T term(c);
      for (int i = 0; i < e[0]; ++i) term = term * x;
      for (int i = 0; i < e[1]; ++i) term = term * y;
      for (int i = 0; i < e[2]; ++i) term = term * z;
      acc = acc + term;
    }
    return acc;
  }

 private:
  void add(const Exp& e, const BigRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = t_.emplace(e, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
  std::map<Exp, BigRational> t_;
};

/// Q and its gradient fully expanded in (a1, a2, a3); built on first use.
struct QTable {
  TriPoly q;
  std::array<TriPoly, 3> grad;
};

inline const QTable& q_table() {
  static const QTable table = [] {
    QTable t;
    t.q = eval_Q(TriPoly::var(0), TriPoly::var(1), TriPoly::var(2));
    for (int i = 0; i < 3; ++i) t.grad[static_cast<size_t>(i)] = t.q.derivative(i);
    return t;
  }();
  return table;
}

inline BigRational eval_Q_expanded(const AParams& a) { return q_table().q(a[0], a[1], a[2]); }

inline std::array<BigRational, 3> grad_Q(const AParams& a) {
  const auto& g = q_table().grad;
  return {g[0](a[0], a[1], a[2]), g[1](a[0], a[1], a[2]), g[2](a[0], a[1], a[2])};
}

// ---------------------------------------------------------------------------
// Plane sections a1 + a2 + a3 = h.

/// 16x^2 - (24h - 4)x + 8h^2 - 4h + 1, whose smaller root is x_hat(h).
template <class T>
T hat_quadratic(const T& h, const T& x) {
  return T(16L) * x * x - (T(24L) * h - T(4L)) * x + T(8L) * h * h - T(4L) * h + T(1L);
}

/// f(x) = 16x^3 - 16hx^2 + 2h - 1.
inline UniPoly tilde_cubic(const BigRational& h) {
  return UniPoly{BigRational(2) * h - BigRational(1), BigRational(0), BigRational(-16) * h, BigRational(16)};
}

/// (6h - 1 - sqrt(4h^2 + 4h - 3)) / 8 for 1/2 <= h <= 3/4.
inline Coord x_hat(const BigRational& h) {
  if (h < BigRational(1, 2) || h > BigRational(3, 4)) fail(Errc::OutOfRange, "x_hat needs 1/2 <= h <= 3/4");
  const BigRational disc = BigRational(4) * h * h + BigRational(4) * h - BigRational(3);
  BigRational root;
  if (rational_sqrt(disc, root)) return (BigRational(6) * h - BigRational(1) - root) / BigRational(8);
  return (QuadExt(BigRational(6) * h - BigRational(1)) - QuadExt::sqrt_of(disc)) / QuadExt(8);
}

inline Coord x_hat(const QuadExt& h) {
  if (h < QuadExt(BigRational(1, 2)) || h > QuadExt(BigRational(3, 4)))
    fail(Errc::OutOfRange, "x_hat needs 1/2 <= h <= 3/4");
  if (h.is_rational()) return x_hat(h.rational_part());
  const QuadExt disc = QuadExt(4) * h * h + QuadExt(4) * h - QuadExt(3);
  const QuadExt lin = QuadExt(6) * h - QuadExt(1);
  if (auto root = disc.sqrt_in_field()) {
    try {
      return (lin - *root) / QuadExt(8);
    } catch (const Error& e) {
      if (e.code() != Errc::MixedRadicand) throw;
    }
  }
  // No exact representation with one radicand: enclose instead.
  return (lin.enclose(256) - sqrt(disc.enclose(256), 256)) / Interval(8);
}

/// Enclosure of the root of f in (0, h/3), refined to `width`. With
/// `closed`, the endpoints h = 1/2 and h = 3/4 are admitted too.
inline Interval x_tilde(const BigRational& h, const BigRational& width, bool closed = false) {
  const BigRational lo(1, 2), hi(3, 4);
  const bool inside = closed ? (lo <= h && h <= hi) : (lo < h && h < hi);
  if (!inside) fail(Errc::OutOfRange, "x_tilde needs 1/2 < h < 3/4");
  const UniPoly f = tilde_cubic(h);
  const BigRational third = h / BigRational(3);
  if (f(BigRational(0)).is_zero()) return Interval(BigRational(0));
  if (f(third).is_zero()) return Interval(third);
  return refine_root(f, Interval(BigRational(0), third), width);
}

enum class TriangleResult { InsideIT_O1, OutsideST_O3, Indeterminate };

inline std::string_view triangle_name(TriangleResult r) {
  switch (r) {
    case TriangleResult::InsideIT_O1: return "InsideIT_O1";
    case TriangleResult::OutsideST_O3: return "OutsideST_O3";
    case TriangleResult::Indeterminate: return "Indeterminate";
  }
  return "?";
}

/// Inner/outer triangle membership in the plane s1 = h. Both tests reduce to
/// a sign of a polynomial that is monotone on the relevant range, so no surd
/// is ever compared.
inline TriangleResult triangle_test(const AParams& a) {
  const BigRational h = symfun(a).s1;
  if (!(BigRational(1, 2) < h && h < BigRational(3, 4))) fail(Errc::OutOfRange, "triangle_test needs 1/2 < s1 < 3/4");
  // a_i > h - 2 x_hat  <=>  x_hat > (h - a_i)/2  <=>  quadratic positive there
  bool inside = true;
  for (const auto& ai : a.values())
    if (hat_quadratic(h, (h - ai) / BigRational(2)).sign() <= 0) inside = false;
  if (inside) return TriangleResult::InsideIT_O1;
  // a_i < x_tilde  <=>  f(a_i) > 0, f decreasing on [0, 2h/3] and x_tilde < h/3
  const UniPoly f = tilde_cubic(h);
  const BigRational bound = BigRational(2) * h / BigRational(3);
  for (const auto& ai : a.values())
    if (ai <= bound && f(ai).sign() > 0) return TriangleResult::OutsideST_O3;
  return TriangleResult::Indeterminate;
}

/// (a1, t, t) on the singular edge, a1 = -(16t^3 - 4t + 1) / (2(8t^2 - 1)).
inline AParams edge_point(const BigRational& t) {
  const BigRational den = BigRational(8) * t * t - BigRational(1);
  if (den.is_zero()) fail(Errc::OutOfRange, "edge parametrization undefined at t = " + t.str());
  const BigRational a1 =
      -(BigRational(16) * t.pow(3) - BigRational(4) * t + BigRational(1)) / (BigRational(2) * den);
  const BigRational half(1, 2);
  for (const auto& v : {a1, t})
    if (v.sign() <= 0 || v >= half) fail(Errc::OutOfRange, "edge point for t = " + t.str() + " leaves the open cube");
  return AParams(a1, t, t);
}

// ---------------------------------------------------------------------------
// Region classification.

enum class Method { Sign, S1Shortcut, QuarterShortcut, SegmentTest };

inline std::string_view method_name(Method m) {
  switch (m) {
    case Method::Sign: return "sign";
    case Method::S1Shortcut: return "s1-shortcut";
    case Method::QuarterShortcut: return "quarter-shortcut";
    case Method::SegmentTest: return "segment-test";
  }
  return "?";
}

struct RegionLabel {
  Region label = Region::O1;
  int q_sign = 0;
  Method method = Method::Sign;
};

inline const AParams& o1_reference() {
  static const AParams p(BigRational(1, 6), BigRational(1, 6), BigRational(1, 6));
  return p;
}
inline const AParams& o2_reference() {
  static const AParams p(BigRational(7, 15), BigRational(7, 15), BigRational(7, 15));
  return p;
}
inline const AParams& o3_reference() {
  static const AParams p(BigRational(1, 6), BigRational(1, 4), BigRational(1, 3));
  return p;
}

/// Q along a + u (b - a) as a polynomial in u.
inline UniPoly q_on_segment(const AParams& a, const AParams& b) {
  std::array<UniPoly, 3> x;
  for (size_t i = 0; i < 3; ++i) x[i] = UniPoly{a[i], b[i] - a[i]};
  return eval_Q(x[0], x[1], x[2]);
}

/// Distinct zeros of Q strictly between a and b; both endpoints must be off Omega.
inline int segment_crossings(const AParams& a, const AParams& b) {
  return sturm_root_count(q_on_segment(a, b), Interval(BigRational(0), BigRational(1)));
}

inline RegionLabel classify_region(const AParams& a) {
  if (a.boundary()) fail(Errc::BoundaryInput, "classify_region works on the open cube");
  const int sg = eval_Q(a).sign();
  if (sg == 0) return {Region::Omega, 0, Method::Sign};
  if (sg > 0) return {Region::O3, 1, Method::Sign};
  if (symfun(a).s1 <= BigRational(1, 2)) return {Region::O1, -1, Method::S1Shortcut};
  const BigRational quarter(1, 4);
  if (std::any_of(a.values().begin(), a.values().end(), [&](const BigRational& v) { return v < quarter; }))
    return {Region::O1, -1, Method::QuarterShortcut};
  // A path inside {Q < 0} stays in one component.
  if (segment_crossings(a, o1_reference()) == 0) return {Region::O1, -1, Method::SegmentTest};
  if (segment_crossings(a, o2_reference()) == 0) return {Region::O2, -1, Method::SegmentTest};
  fail(Errc::SegmentInconclusive, "both reference segments from " + a.str() + " meet Omega");
}

}  // namespace wallach
