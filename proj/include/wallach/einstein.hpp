#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wallach/core.hpp"
#include "wallach/errors.hpp"
#include "wallach/exactnum.hpp"

namespace wallach {

/// Left-hand sides of the Einstein system for metric (x1, x2, x3).
template <class T>
std::array<T, 2> einstein_lhs(const std::array<T, 3>& a, const T& x1, const T& x2, const T& x3) {
  const T& a1 = a[0];
  const T& a2 = a[1];
  const T& a3 = a[2];
  T e1 = (a2 + a3) * (a1 * x2 * x2 + a1 * x3 * x3 - x2 * x3) + (a2 * x2 + a3 * x3) * x1 -
         (a1 * a2 + a1 * a3 + T(2L) * a2 * a3) * x1 * x1;
  T e2 = (a1 + a3) * (a2 * x1 * x1 + a2 * x3 * x3 - x1 * x3) + (a1 * x1 + a3 * x3) * x2 -
         (a1 * a2 + T(2L) * a1 * a3 + a2 * a3) * x2 * x2;
  return {e1, e2};
}

template <class T>
std::array<T, 3> lift(const AParams& a) {
  return {T(a[0]), T(a[1]), T(a[2])};
}

/// Exact residual when the metric is exact, an enclosure otherwise.
inline std::array<Coord, 2> residual(const AParams& a, const MetricTriple& x) {
  if (x.exact()) {
    try {
      auto r = einstein_lhs(lift<QuadExt>(a), to_quadext(x[0]), to_quadext(x[1]), to_quadext(x[2]));
      auto simplify = [](const QuadExt& q) -> Coord {
        if (q.is_rational()) return q.rational_part();
        return q;
      };
      return {simplify(r[0]), simplify(r[1])};
    } catch (const Error& e) {
      if (e.code() != Errc::MixedRadicand) throw;
    }
  }
  auto r = einstein_lhs(lift<Interval>(a), enclose(x[0]), enclose(x[1]), enclose(x[2]));
  return {r[0], r[1]};
}

struct EinsteinSolution {
  MetricTriple metric;  // x3 = 1
  int multiplicity = 1;
  bool exact = false;
  // largest magnitude over the residual enclosures; zero for exact solutions
  BigRational residual_bound;
  // index of the solution obtained by swapping two coordinates with equal a_i
  std::optional<size_t> isometric_to;
};

namespace detail {

// E1, E2 with x3 = 1, written as A y^2 + B(x) y + C(x) in y = x2, x = x1.
struct ReducedSystem {
  BigRational A1, A2;
  UniPoly B1, C1, B2, C2;
  BiPoly e1, e2;
  UniPoly lin_y, lin_0;  // A2 E1 - A1 E2 = lin_y(x) y + lin_0(x)
};

inline ReducedSystem reduce(const AParams& a) {
  const BigRational &a1 = a[0], &a2 = a[1], &a3 = a[2];
  const BigRational k1 = a1 * a2 + a1 * a3 + BigRational(2) * a2 * a3;
  const BigRational k2 = a1 * a2 + BigRational(2) * a1 * a3 + a2 * a3;
  ReducedSystem s;
  s.A1 = (a2 + a3) * a1;
  s.B1 = UniPoly{-(a2 + a3), a2};
  s.C1 = UniPoly{(a2 + a3) * a1, a3, -k1};
  s.A2 = -k2;
  s.B2 = UniPoly{a3, a1};
  s.C2 = UniPoly{(a1 + a3) * a2, -(a1 + a3), (a1 + a3) * a2};
  auto bi = [](const BigRational& A, const UniPoly& B, const UniPoly& C) {
    BiPoly p = BiPoly::term(A, 0, 2);
    for (int i = 0; i <= B.degree(); ++i) p.add_term(B.coeff(i), i, 1);
    for (int i = 0; i <= C.degree(); ++i) p.add_term(C.coeff(i), i, 0);
    return p;
  };
  s.e1 = bi(s.A1, s.B1, s.C1);
  s.e2 = bi(s.A2, s.B2, s.C2);
  s.lin_y = s.A2 * s.B1 - s.A1 * s.B2;
  s.lin_0 = s.A2 * s.C1 - s.A1 * s.C2;
  return s;
}

using XRoot = std::variant<QuadExt, Interval>;

struct Candidate {
  XRoot x;
  UniPoly poly;  // square-free polynomial the root belongs to
  int multiplicity;
  bool collision;  // lin_y(x) = 0: both y-roots of E1 solve the system
};

// Positive roots of a square-free p: rationals found exactly (their
// denominators divide the leading coefficient of the primitive form), a
// leftover quadratic in closed form, anything else as isolating intervals.
inline void positive_roots(UniPoly p, int mult, bool collision, std::vector<Candidate>& out) {
  if (p.degree() < 1) return;
  UniPoly prim = primitive_part(p);
  const BigInt lead = prim.leading().num();
  const BigRational fine(BigInt(1), BigInt(2) * lead * lead);
  std::vector<Interval> irrational;
  for (const auto& r : isolate_positive_roots(prim)) {
    Interval iv = refine_root(prim, r.iv, fine);
    BigRational cand = simplest_rational(iv.lo(), iv.hi());
    if (prim(cand).is_zero()) {
      out.push_back({QuadExt(cand), UniPoly{-cand, BigRational(1)}, mult, collision});
      prim = exact_div(prim, UniPoly{-cand, BigRational(1)});
    } else {
      irrational.push_back(r.iv);
    }
  }
  if (irrational.empty()) return;
  if (prim.degree() == 2) {
    const BigRational &c0 = prim.coeff(0), &c1 = prim.coeff(1), &c2 = prim.coeff(2);
    const BigRational disc = c1 * c1 - BigRational(4) * c0 * c2;
    for (int s : {-1, 1}) {
      QuadExt root = (QuadExt(-c1) + QuadExt(BigRational(s)) * QuadExt::sqrt_of(disc)) / QuadExt(BigRational(2) * c2);
      if (root.sign() > 0) out.push_back({root, prim, mult, collision});
    }
    return;
  }
  for (auto& iv : irrational) out.push_back({iv, prim, mult, collision});
}

}  // namespace detail

/// Certification width 10^-30.
inline BigRational default_width() { return BigRational(BigInt(1), BigInt("1000000000000000000000000000000")); }

/// Every positive solution of the Einstein system up to homothety, normalized
/// to x3 = 1 and ordered by x1 then x2. Irrational coordinates that do not fit
/// a single quadratic field come back as intervals of width <= width.
inline std::vector<EinsteinSolution> solve(const AParams& a, const BigRational& width = default_width()) {
  using detail::Candidate;
  const auto sys = detail::reduce(a);
  if (sys.e1.is_zero() || sys.e2.is_zero()) fail(Errc::DegenerateSystem, "an equation vanishes identically");
  const UniPoly elim = resultant_eliminate(sys.e1, sys.e2, Var::Y);
  if (elim.is_zero()) fail(Errc::DegenerateSystem, "equations share a common factor at " + a.str());

  std::vector<Candidate> cands;
  const auto factors = square_free_decomposition(elim);
  for (size_t i = 0; i < factors.size(); ++i) {
    const UniPoly& f = factors[i];
    if (f.degree() < 1) continue;
    const int mult = static_cast<int>(i) + 1;
    UniPoly g = gcd(f, sys.lin_y);
    if (g.degree() >= 1) {
      detail::positive_roots(g, mult, true, cands);
      detail::positive_roots(exact_div(f, g), mult, false, cands);
    } else {
      detail::positive_roots(f, mult, false, cands);
    }
  }

  std::vector<EinsteinSolution> out;
  const auto aq = lift<QuadExt>(a);
  const auto ai = lift<Interval>(a);

  auto push_exact = [&](const QuadExt& x, const QuadExt& y, int mult) {
    if (y.sign() <= 0) return;
    auto r = einstein_lhs(aq, x, y, QuadExt(1));
    if (!r[0].is_zero() || !r[1].is_zero())
      fail(Errc::CertificationFailure, "exact candidate fails back-substitution");
    auto as_coord = [](const QuadExt& q) -> Coord {
      if (q.is_rational()) return q.rational_part();
      return q;
    };
    out.push_back({MetricTriple(as_coord(x), as_coord(y), BigRational(1)), mult, true, BigRational(0), std::nullopt});
  };
  auto push_interval = [&](const Interval& x, const Interval& y, int mult) {
    auto r = einstein_lhs(ai, x, y, Interval(1));
    if (!r[0].contains_zero() || !r[1].contains_zero())
      fail(Errc::CertificationFailure, "enclosure excludes a zero residual");
    out.push_back({MetricTriple(x, y, BigRational(1)), mult, false, std::max(r[0].magnitude(), r[1].magnitude()),
                   std::nullopt});
  };

  for (const auto& c : cands) {
    if (auto* xq = std::get_if<QuadExt>(&c.x)) {
      const QuadExt& x = *xq;
      if (!c.collision) {
        QuadExt y = -sys.lin_0(x) / sys.lin_y(x);
        push_exact(x, y, c.multiplicity);
        continue;
      }
      // both y-roots of E1 at this x are common roots
      const QuadExt A(sys.A1), B = sys.B1(x), C = sys.C1(x);
      const QuadExt disc = B * B - QuadExt(4) * A * C;
      if (disc.sign() < 0) continue;
      if (disc.is_zero()) {
        push_exact(x, -B / (QuadExt(2) * A), c.multiplicity);
        continue;
      }
      const int half = std::max(1, c.multiplicity / 2);
      std::optional<QuadExt> root = disc.sqrt_in_field();
      if (root) {
        std::optional<std::pair<QuadExt, QuadExt>> ys;
        try {
          ys.emplace((-B - *root) / (QuadExt(2) * A), (-B + *root) / (QuadExt(2) * A));
        } catch (const Error& e) {
          if (e.code() != Errc::MixedRadicand) throw;
        }
        if (ys) {
          push_exact(x, ys->first, half);
          push_exact(x, ys->second, half);
          continue;
        }
      }
      Interval xi = x.enclose(512), bi = B.enclose(512), di = disc.enclose(512);
      Interval sq = sqrt(di, 512);
      for (const Interval& y : {(-bi - sq) / Interval(BigRational(2) * sys.A1), (-bi + sq) / Interval(BigRational(2) * sys.A1)}) {
        if (y.certified_sign() > 0) push_interval(xi, y, half);
        else if (y.certified_sign() == 0) fail(Errc::CertificationFailure, "cannot certify the sign of x2");
      }
      continue;
    }

    // interval root: refine until x2 is certified and narrow enough
    Interval xi = std::get<Interval>(c.x);
    BigRational w = width;
    bool done = false;
    for (int round = 0; round < 12 && !done; ++round, w = w / BigRational(BigInt(BigInt(1) << 64))) {
      xi = refine_root(c.poly, xi, w);
      if (!c.collision) {
        Interval den = sys.lin_y(xi);
        if (den.contains_zero()) continue;
        Interval y = -sys.lin_0(xi) / den;
        if (y.width() > width || y.certified_sign() == 0) continue;
        if (y.certified_sign() > 0) push_interval(xi, y, c.multiplicity);
        done = true;
      } else {
        Interval A(sys.A1), B = sys.B1(xi), C = sys.C1(xi);
        Interval disc = B * B - Interval(4) * A * C;
        if (disc.certified_sign() < 0) { done = true; continue; }
        if (disc.certified_sign() == 0) continue;
        Interval sq = sqrt(disc, 512);
        Interval y1 = (-B - sq) / (Interval(2) * A), y2 = (-B + sq) / (Interval(2) * A);
        if (y1.width() > width || y2.width() > width || y1.certified_sign() == 0 || y2.certified_sign() == 0) continue;
        const int half = std::max(1, c.multiplicity / 2);
        if (y1.certified_sign() > 0) push_interval(xi, y1, half);
        if (y2.certified_sign() > 0) push_interval(xi, y2, half);
        done = true;
      }
    }
    if (!done) fail(Errc::CertificationFailure, "root near x1 = " + xi.midpoint().to_decimal(12) + " not certified");
  }

  std::sort(out.begin(), out.end(), [](const EinsteinSolution& u, const EinsteinSolution& v) {
    Interval ux = enclose(u.metric[0]), vx = enclose(v.metric[0]);
    if (!ux.overlaps(vx)) return ux.hi() < vx.lo();
    return enclose(u.metric[1]).hi() < enclose(v.metric[1]).lo();
  });

  // Swapping coordinates i, j with a_i = a_j maps solutions to solutions.
  const BigRational tol = width * BigRational(BigInt(BigInt(1) << 40));
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = i + 1; j < 3; ++j) {
      if (a[i] != a[j]) continue;
      for (size_t s = 0; s < out.size(); ++s) {
        auto coords = out[s].metric.coords();
        std::swap(coords[i], coords[j]);
        MetricTriple swapped(coords[0], coords[1], coords[2]);
        if (homothetic(swapped, out[s].metric, tol)) continue;
        for (size_t t = 0; t < out.size(); ++t)
          if (t != s && homothetic(swapped, out[t].metric, tol)) out[s].isometric_to = t;
      }
    }
  return out;
}

/// Number of homothety classes of Einstein metrics.
inline int count(const AParams& a) { return static_cast<int>(solve(a).size()); }

// ---------------------------------------------------------------------------
// Closed forms.

/// SO(2(t^2+t+1)) / SO(t^2+1) x SO(t^2+1) x SO(2t).
inline GWSpace t_family_space(long t) {
  if (t < 1) fail(Errc::BadParam, "t must be positive");
  const long k = t * t + 1, m = 2 * t;
  const BigRational A(k, 4 * t * (t + 1));
  return GWSpace{AParams(A, A, BigRational(1, 2 * (t + 1))), {BigRational(k * m), BigRational(k * m), BigRational(k * k)},
                 SOProvenance{k, k, m}};
}

/// The three Einstein metrics of t_family_space(t), exactly.
inline std::vector<MetricTriple> closed_forms_t_family(long t) {
  if (t < 2) fail(Errc::BadParam, "closed forms need t >= 2");
  const BigRational tt(t);
  const QuadExt root = QuadExt::sqrt_of(BigRational(t, t + 2));
  const QuadExt base(BigRational(2) * tt * tt), shift = QuadExt(tt * tt - BigRational(1)) * root;
  const BigRational x3 = BigRational(2 * t * (t * t + 1), t + 1);
  return {MetricTriple(t + 1, t + 1, 2 * t), MetricTriple(base + shift, base - shift, x3),
          MetricTriple(base - shift, base + shift, x3)};
}

}  // namespace wallach
