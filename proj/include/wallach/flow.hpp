#pragma once

#include <array>
#include <cmath>
#include <ios>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "json.hpp"

#include "wallach/core.hpp"
#include "wallach/einstein.hpp"
#include "wallach/errors.hpp"
#include "wallach/exactnum.hpp"

namespace wallach {

/// Floating kernel: 50 significant decimal digits.
using Num = boost::multiprecision::cpp_bin_float_50;
using Vec3 = std::array<Num, 3>;

inline Num to_num(const BigRational& r) { return Num(r.num().get_str()) / Num(r.den().get_str()); }
inline Num to_num(const Coord& c) {
  Interval iv = enclose(c, 256);
  return (to_num(iv.lo()) + to_num(iv.hi())) / 2;
}

inline std::string fixed(const Num& v, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  std::string s = os.str();
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);  // no "-0.000"
  return s;
}

// ---------------------------------------------------------------------------
// Ricci components and the normalized field.

/// r_i = 1/(2 x_i) + (a_i / 2)(x_i^2 - x_j^2 - x_k^2) / (x1 x2 x3).
template <class T>
std::array<T, 3> ricci(const std::array<T, 3>& a, const std::array<T, 3>& x) {
  const T prod = x[0] * x[1] * x[2];
  const T sq[3] = {x[0] * x[0], x[1] * x[1], x[2] * x[2]};
  std::array<T, 3> r;
  for (size_t i = 0; i < 3; ++i) {
    const size_t j = (i + 1) % 3, k = (i + 2) % 3;
    r[i] = T(1L) / (T(2L) * x[i]) + a[i] * (sq[i] - sq[j] - sq[k]) / (T(2L) * prod);
  }
  return r;
}

/// d r_i / d x_m.
template <class T>
std::array<std::array<T, 3>, 3> ricci_jacobian(const std::array<T, 3>& a, const std::array<T, 3>& x) {
  std::array<std::array<T, 3>, 3> J;
  const T two(2L);
  for (size_t i = 0; i < 3; ++i) {
    const size_t j = (i + 1) % 3, k = (i + 2) % 3;
    const T &xi = x[i], &xj = x[j], &xk = x[k];
    // r_i = 1/(2xi) + (a_i/2)(xi/(xj xk) - xj/(xi xk) - xk/(xi xj))
    J[i][i] = -T(1L) / (two * xi * xi) + a[i] / two * (T(1L) / (xj * xk) + xj / (xi * xi * xk) + xk / (xi * xi * xj));
    J[i][j] = a[i] / two * (-xi / (xj * xj * xk) - T(1L) / (xi * xk) + xk / (xi * xj * xj));
    J[i][k] = a[i] / two * (-xi / (xk * xk * xj) - T(1L) / (xi * xj) + xj / (xi * xk * xk));
  }
  return J;
}

/// S = sum d_j r_j / sum d_j.
template <class T>
T mean_scalar(const std::array<T, 3>& d, const std::array<T, 3>& r) {
  return (d[0] * r[0] + d[1] * r[1] + d[2] * r[2]) / (d[0] + d[1] + d[2]);
}

/// dx_i/dt = -2 x_i (r_i - S); the volume prod x_i^{d_i} is a first integral.
template <class T>
std::array<T, 3> flow_field(const std::array<T, 3>& a, const std::array<T, 3>& d, const std::array<T, 3>& x) {
  const auto r = ricci(a, x);
  const T s = mean_scalar(d, r);
  return {T(-2L) * x[0] * (r[0] - s), T(-2L) * x[1] * (r[1] - s), T(-2L) * x[2] * (r[2] - s)};
}

inline Vec3 num_a(const GWSpace& s) { return {to_num(s.params[0]), to_num(s.params[1]), to_num(s.params[2])}; }
inline Vec3 num_d(const GWSpace& s) { return {to_num(s.d[0]), to_num(s.d[1]), to_num(s.d[2])}; }

inline void check_positive(const Vec3& x) {
  for (const auto& v : x)
    if (!(v > 0)) fail(Errc::NonPositiveMetric, "metric entries must be positive");
}

/// Exact when the metric is exact, enclosures otherwise.
inline std::array<Coord, 3> ricci_components(const GWSpace& space, const MetricTriple& x) {
  if (x.exact()) {
    try {
      auto r = ricci(lift<QuadExt>(space.params), {to_quadext(x[0]), to_quadext(x[1]), to_quadext(x[2])});
      std::array<Coord, 3> out;
      for (size_t i = 0; i < 3; ++i) out[i] = r[i].is_rational() ? Coord(r[i].rational_part()) : Coord(r[i]);
      return out;
    } catch (const Error& e) {
      if (e.code() != Errc::MixedRadicand) throw;
    }
  }
  auto r = ricci(lift<Interval>(space.params), {enclose(x[0]), enclose(x[1]), enclose(x[2])});
  return {r[0], r[1], r[2]};
}

inline Vec3 vector_field(const GWSpace& space, const Vec3& x) {
  check_positive(x);
  return flow_field(num_a(space), num_d(space), x);
}

inline Num volume(const Vec3& d, const Vec3& x) {
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  return exp(d[0] * log(x[0]) + d[1] * log(x[1]) + d[2] * log(x[2]));
}

/// Rescales x onto the volume-1 surface.
inline Vec3 volume_normalize(const Vec3& d, const Vec3& x) {
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  const Num lv = d[0] * log(x[0]) + d[1] * log(x[1]) + d[2] * log(x[2]);
  const Num lambda = exp(-lv / (d[0] + d[1] + d[2]));
  return {lambda * x[0], lambda * x[1], lambda * x[2]};
}

// ---------------------------------------------------------------------------
// Chart on the volume-1 surface: x3 = (x1^d1 x2^d2)^(-1/d3).

inline Num chart_x3(const Vec3& d, const Num& x1, const Num& x2) {
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  return exp(-(d[0] * log(x1) + d[1] * log(x2)) / d[2]);
}

inline std::array<Num, 2> reduced_field(const GWSpace& space, const Num& x1, const Num& x2) {
  const Vec3 d = num_d(space);
  const Vec3 f = flow_field(num_a(space), d, Vec3{x1, x2, chart_x3(d, x1, x2)});
  return {f[0], f[1]};
}

using Mat2 = std::array<std::array<Num, 2>, 2>;

/// Jacobian of the reduced field, from closed-form derivatives of r_i and the chart.
inline Mat2 reduced_jacobian(const GWSpace& space, const Num& x1, const Num& x2) {
  const Vec3 a = num_a(space), d = num_d(space);
  const Vec3 x{x1, x2, chart_x3(d, x1, x2)};
  const auto r = ricci(a, x);
  const auto dr = ricci_jacobian(a, x);
  const Num s = mean_scalar(d, r);
  const Num dsum = d[0] + d[1] + d[2];
  // full 3x3 derivative of f_i = -2 x_i (r_i - S)
  std::array<std::array<Num, 3>, 3> df;
  for (size_t m = 0; m < 3; ++m) {
    const Num ds = (d[0] * dr[0][m] + d[1] * dr[1][m] + d[2] * dr[2][m]) / dsum;
    for (size_t i = 0; i < 3; ++i) {
      df[i][m] = -2 * x[i] * (dr[i][m] - ds);
      if (i == m) df[i][m] -= 2 * (r[i] - s);
    }
  }
  Mat2 J;
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) {
      const Num dx3 = -(d[j] / d[2]) * x[2] / x[j];
      J[i][j] = df[i][j] + df[i][2] * dx3;
    }
  return J;
}

// ---------------------------------------------------------------------------
// Equilibria.

enum class Stability { StableNode, UnstableNode, Saddle, Focus, Degenerate };

inline std::string_view stability_name(Stability s) {
  switch (s) {
    case Stability::StableNode: return "stable node";
    case Stability::UnstableNode: return "unstable node";
    case Stability::Saddle: return "saddle";
    case Stability::Focus: return "focus";
    case Stability::Degenerate: return "degenerate";
  }
  return "?";
}

struct EquilibriumReport {
  Vec3 x;                  // volume 1
  MetricTriple source;     // solver output, x3 = 1
  Mat2 jacobian;
  std::array<Num, 2> eig_re, eig_im;  // ascending real parts
  Stability cls = Stability::Degenerate;
};

inline const Num& degeneracy_threshold() {
  static const Num t("1e-12");
  return t;
}

inline EquilibriumReport reduce_and_linearize(const GWSpace& space, const MetricTriple& x_star) {
  using boost::multiprecision::abs;
  using boost::multiprecision::sqrt;
  const Vec3 d = num_d(space);
  const Vec3 xn = volume_normalize(d, {to_num(x_star[0]), to_num(x_star[1]), to_num(x_star[2])});
  EquilibriumReport rep{xn, x_star, reduced_jacobian(space, xn[0], xn[1]), {}, {}, Stability::Degenerate};
  const Mat2& J = rep.jacobian;
  const Num tr = J[0][0] + J[1][1];
  const Num det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
  Num disc = tr * tr - 4 * det;
  // repeated eigenvalues: keep rounding noise from turning them complex
  if (disc < 0 && -disc <= Num("1e-20") * (tr * tr + abs(det))) disc = 0;
  if (disc < 0) {
    const Num im = sqrt(-disc) / 2;
    rep.eig_re = {tr / 2, tr / 2};
    rep.eig_im = {-im, im};
    rep.cls = abs(tr / 2) < degeneracy_threshold() ? Stability::Degenerate : Stability::Focus;
    return rep;
  }
  const Num root = sqrt(disc);
  rep.eig_re = {(tr - root) / 2, (tr + root) / 2};
  rep.eig_im = {0, 0};
  const Num& l1 = rep.eig_re[0];
  const Num& l2 = rep.eig_re[1];
  if (abs(l1) < degeneracy_threshold() || abs(l2) < degeneracy_threshold()) rep.cls = Stability::Degenerate;
  else if (l1 > 0) rep.cls = Stability::UnstableNode;
  else if (l2 < 0) rep.cls = Stability::StableNode;
  else rep.cls = Stability::Saddle;
  return rep;
}

/// All equilibria of the normalized flow, one per Einstein metric.
inline std::vector<EquilibriumReport> equilibria(const GWSpace& space) {
  std::vector<EquilibriumReport> out;
  for (const auto& s : solve(space.params)) out.push_back(reduce_and_linearize(space, s.metric));
  return out;
}

// ---------------------------------------------------------------------------
// Trajectories.

struct FlowSample {
  Num t;
  Vec3 x, v;
  Num volume, scalar;
};

struct Trajectory {
  std::vector<FlowSample> samples;
  bool halted = false;  // some x_i fell below the floor, or the field blew up
  std::string halt_reason;
  Num max_volume_drift = 0;
};

/// Classical RK4 on the full 3D field, sampled every `sample_every` steps
/// (and at the end).
inline Trajectory integrate(const GWSpace& space, const Vec3& x0, const Num& t_max, const Num& step,
                            int sample_every = 1, const Num& floor = Num("1e-8")) {
  using boost::multiprecision::abs;
  for (const auto& v : x0)
    if (!(v > 0)) fail(Errc::NonPositiveStart, "start point must be positive");
  if (!(step > 0) || !(t_max > 0) || !(step < t_max)) fail(Errc::StepTooLarge, "need 0 < step < t_max");
  if (sample_every < 1) sample_every = 1;
  const Vec3 a = num_a(space), d = num_d(space);
  auto field = [&](const Vec3& x) { return flow_field(a, d, x); };
  auto sample = [&](const Num& t, const Vec3& x) {
    const auto r = ricci(a, x);
    return FlowSample{t, x, field(x), volume(d, x), mean_scalar(d, r)};
  };
  auto axpy = [](const Vec3& x, const Num& h, const Vec3& k) { return Vec3{x[0] + h * k[0], x[1] + h * k[1], x[2] + h * k[2]}; };

  Trajectory tr;
  Vec3 x = x0;
  const Num v0 = volume(d, x0);
  tr.samples.push_back(sample(0, x));
  const long steps = static_cast<long>(boost::multiprecision::ceil(t_max / step).convert_to<double>());
  Num t = 0;
  for (long n = 1; n <= steps; ++n) {
    const Num h = n == steps ? t_max - t : step;
    const Vec3 k1 = field(x);
    const Vec3 k2 = field(axpy(x, h / 2, k1));
    const Vec3 k3 = field(axpy(x, h / 2, k2));
    const Vec3 k4 = field(axpy(x, h, k3));
    Vec3 next;
    for (size_t i = 0; i < 3; ++i) next[i] = x[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    t += h;
    if (next[0] < floor || next[1] < floor || next[2] < floor) {
      if (n == 1) fail(Errc::StepTooLarge, "first step leaves the positive cone");
      tr.halted = true;
      tr.halt_reason = "floor";
      break;
    }
    const Num drift = abs(volume(d, next) - v0) / v0;
    // A step that visibly breaks the conservation law: from the start this
    // means the step is too coarse, later it signals finite-time collapse.
    if (drift - tr.max_volume_drift > Num("1e-6")) {
      if (n == 1) fail(Errc::StepTooLarge, "volume drift " + fixed(drift, 12) + " on the first step");
      tr.halted = true;
      tr.halt_reason = "blow-up";
      break;
    }
    if (drift > tr.max_volume_drift) tr.max_volume_drift = drift;
    x = next;
    if (n % sample_every == 0 || n == steps) tr.samples.push_back(sample(t, x));
  }
  if (tr.halted) tr.samples.push_back(sample(t, x));
  return tr;
}

// ---------------------------------------------------------------------------
// Phase portrait on the chart.

struct Bounds {
  Num x1_lo, x1_hi, x2_lo, x2_hi;
};

struct PortraitSample {
  Num x1, x2, v1, v2;
};

struct Portrait {
  std::vector<PortraitSample> samples;
  std::vector<EquilibriumReport> equilibria;
};

inline Portrait portrait_grid(const GWSpace& space, int grid_n, const Bounds& b) {
  if (grid_n < 2) fail(Errc::BadBounds, "grid needs at least 2 points per side");
  if (!(b.x1_lo > 0) || !(b.x2_lo > 0) || !(b.x1_lo < b.x1_hi) || !(b.x2_lo < b.x2_hi))
    fail(Errc::BadBounds, "bounds must be positive with lo < hi");
  Portrait p;
  for (int i = 0; i < grid_n; ++i)
    for (int j = 0; j < grid_n; ++j) {
      const Num x1 = b.x1_lo + (b.x1_hi - b.x1_lo) * i / (grid_n - 1);
      const Num x2 = b.x2_lo + (b.x2_hi - b.x2_lo) * j / (grid_n - 1);
      const auto f = reduced_field(space, x1, x2);
      p.samples.push_back({x1, x2, f[0], f[1]});
    }
  p.equilibria = equilibria(space);
  return p;
}

// ---------------------------------------------------------------------------
// Serialization.

inline std::string trajectory_csv(const Trajectory& tr, int digits) {
  std::string out = "t,x1,x2,x3,v1,v2,v3,volume\n";
  for (const auto& s : tr.samples) {
    out += fixed(s.t, digits);
    for (const auto& v : s.x) out += "," + fixed(v, digits);
    for (const auto& v : s.v) out += "," + fixed(v, digits);
    out += "," + fixed(s.volume, digits) + "\n";
  }
  return out;
}

inline nlohmann::json equilibrium_json(const EquilibriumReport& e, int digits) {
  nlohmann::json j;
  j["x"] = {fixed(e.x[0], digits), fixed(e.x[1], digits), fixed(e.x[2], digits)};
  j["source"] = {coord_str(e.source[0]), coord_str(e.source[1]), coord_str(e.source[2])};
  j["jacobian"] = {{fixed(e.jacobian[0][0], digits), fixed(e.jacobian[0][1], digits)},
                   {fixed(e.jacobian[1][0], digits), fixed(e.jacobian[1][1], digits)}};
  j["eigenvalues"] = {{fixed(e.eig_re[0], digits), fixed(e.eig_im[0], digits)},
                      {fixed(e.eig_re[1], digits), fixed(e.eig_im[1], digits)}};
  j["class"] = std::string(stability_name(e.cls));
  return j;
}

inline nlohmann::json trajectory_json(const Trajectory& tr, int digits) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& s : tr.samples) {
    rows.push_back({{"t", fixed(s.t, digits)},
                    {"x", {fixed(s.x[0], digits), fixed(s.x[1], digits), fixed(s.x[2], digits)}},
                    {"v", {fixed(s.v[0], digits), fixed(s.v[1], digits), fixed(s.v[2], digits)}},
                    {"volume", fixed(s.volume, digits)},
                    {"scalar", fixed(s.scalar, digits)}});
  }
  return {{"samples", rows}, {"halted", tr.halted}, {"halt_reason", tr.halt_reason}, {"max_volume_drift", fixed(tr.max_volume_drift, digits)}};
}

inline std::string portrait_csv(const Portrait& p, int digits) {
  std::string out = "x1,x2,v1,v2\n";
  for (const auto& s : p.samples)
    out += fixed(s.x1, digits) + "," + fixed(s.x2, digits) + "," + fixed(s.v1, digits) + "," + fixed(s.v2, digits) + "\n";
  return out;
}

inline nlohmann::json portrait_json(const Portrait& p, int digits) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& s : p.samples)
    rows.push_back({fixed(s.x1, digits), fixed(s.x2, digits), fixed(s.v1, digits), fixed(s.v2, digits)});
  nlohmann::json eq = nlohmann::json::array();
  for (const auto& e : p.equilibria) eq.push_back(equilibrium_json(e, digits));
  return {{"columns", {"x1", "x2", "v1", "v2"}}, {"samples", rows}, {"equilibria", eq}};
}

}  // namespace wallach
