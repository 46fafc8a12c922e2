#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "wallach/errors.hpp"
#include "wallach/exactnum.hpp"

namespace wallach {

/// Point (a1, a2, a3) of the parameter cube. Entries stay in the order given.
class AParams {
 public:
  AParams() = default;
  AParams(BigRational a1, BigRational a2, BigRational a3, bool allow_boundary = false)
      : a_{std::move(a1), std::move(a2), std::move(a3)} {
    const BigRational half(1, 2);
    for (const auto& v : a_) {
      if (v.sign() <= 0 || v > half)
        fail(Errc::OutOfRange, "a_i = " + v.str() + " outside (0, 1/2]");
      if (v == half) boundary_ = true;
    }
    if (boundary_ && !allow_boundary) fail(Errc::BoundaryInput, "a_i = 1/2 requires the boundary flag");
  }

  static AParams parse(std::string_view a1, std::string_view a2, std::string_view a3,
                       bool allow_boundary = false) {
    return AParams(BigRational::parse(a1), BigRational::parse(a2), BigRational::parse(a3), allow_boundary);
  }

  const BigRational& operator[](size_t i) const { return a_.at(i); }
  const std::array<BigRational, 3>& values() const { return a_; }
  bool boundary() const { return boundary_; }

  AParams permuted(const std::array<int, 3>& p) const {
    return AParams(a_[static_cast<size_t>(p[0])], a_[static_cast<size_t>(p[1])], a_[static_cast<size_t>(p[2])],
                   boundary_);
  }

  std::string str() const { return "(" + a_[0].str() + ", " + a_[1].str() + ", " + a_[2].str() + ")"; }

  friend bool operator==(const AParams& x, const AParams& y) { return x.a_ == y.a_; }

 private:
  std::array<BigRational, 3> a_{BigRational(1, 6), BigRational(1, 6), BigRational(1, 6)};
  bool boundary_ = false;
};

struct Table1Line {
  int line = 0;
  std::vector<long> params;
};
struct SOProvenance {
  long k = 0, l = 0, m = 0;
};
struct AbstractPoint {};
using Provenance = std::variant<Table1Line, SOProvenance, AbstractPoint>;

/// A generalized Wallach space as seen by the rest of the library: its
/// a-point, module weights d_i and where it came from.
struct GWSpace {
  AParams params;
  std::array<BigRational, 3> d;
  Provenance provenance = AbstractPoint{};

  /// Weights d_i = 1/a_i; only ratios of d matter to the flow.
  static GWSpace abstract(const AParams& a) {
    return GWSpace{a, {BigRational(1) / a[0], BigRational(1) / a[1], BigRational(1) / a[2]}, AbstractPoint{}};
  }

  std::string describe() const {
    if (auto* t = std::get_if<Table1Line>(&provenance)) {
      std::string s = "line " + std::to_string(t->line);
      for (size_t i = 0; i < t->params.size(); ++i) s += (i == 0 ? " (" : ", ") + std::to_string(t->params[i]);
      return t->params.empty() ? s : s + ")";
    }
    if (auto* so = std::get_if<SOProvenance>(&provenance))
      return "SO(" + std::to_string(so->k) + "," + std::to_string(so->l) + "," + std::to_string(so->m) + ")";
    return "abstract " + params.str();
  }
};

// ---------------------------------------------------------------------------
// Metrics

using Coord = std::variant<BigRational, QuadExt, Interval>;

inline int certified_sign(const Coord& c) {
  return std::visit(
      [](const auto& v) -> int {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Interval>) return v.certified_sign();
        else return v.sign();
      },
      c);
}

inline bool is_exact(const Coord& c) { return !std::holds_alternative<Interval>(c); }

inline Interval enclose(const Coord& c, unsigned bits = 256) {
  if (auto* r = std::get_if<BigRational>(&c)) return Interval(*r);
  if (auto* q = std::get_if<QuadExt>(&c)) return q->enclose(bits);
  return std::get<Interval>(c);
}

/// Exact coordinates only.
inline QuadExt to_quadext(const Coord& c) {
  if (auto* r = std::get_if<BigRational>(&c)) return QuadExt(*r);
  if (auto* q = std::get_if<QuadExt>(&c)) return *q;
  fail(Errc::InvalidArgument, "interval coordinate has no exact value");
}

inline std::string coord_str(const Coord& c) {
  return std::visit([](const auto& v) { return v.str(); }, c);
}

inline std::string coord_decimal(const Coord& c, int digits) {
  if (auto* r = std::get_if<BigRational>(&c)) return r->to_decimal(digits);
  if (auto* q = std::get_if<QuadExt>(&c)) return q->to_decimal(digits);
  return std::get<Interval>(c).midpoint().to_decimal(digits);
}

inline double coord_double(const Coord& c) {
  if (auto* r = std::get_if<BigRational>(&c)) return r->to_double();
  if (auto* q = std::get_if<QuadExt>(&c)) return q->to_double();
  return std::get<Interval>(c).midpoint().to_double();
}

/// Invariant metric (x1, x2, x3); positivity is certified on construction.
class MetricTriple {
 public:
  MetricTriple(Coord x1, Coord x2, Coord x3) : x_{std::move(x1), std::move(x2), std::move(x3)} {
    for (const auto& c : x_)
      if (certified_sign(c) <= 0) fail(Errc::NonPositiveMetric, "metric entry " + coord_str(c) + " not certified positive");
  }
  MetricTriple(long x1, long x2, long x3) : MetricTriple(BigRational(x1), BigRational(x2), BigRational(x3)) {}

  const Coord& operator[](size_t i) const { return x_.at(i); }
  const std::array<Coord, 3>& coords() const { return x_; }
  bool exact() const { return is_exact(x_[0]) && is_exact(x_[1]) && is_exact(x_[2]); }

  std::string str() const {
    return "(" + coord_str(x_[0]) + ", " + coord_str(x_[1]) + ", " + coord_str(x_[2]) + ")";
  }

 private:
  std::array<Coord, 3> x_;
};

namespace detail {

enum class Same { Yes, No, Unknown };

inline Same same_exact(const QuadExt& a, const QuadExt& b) {
  try {
    return a == b ? Same::Yes : Same::No;
  } catch (const Error& e) {
    // p1 + q1 sqrt(d1) = p2 + q2 sqrt(d2) is impossible with d1 d2 non-square
    if (e.code() == Errc::MixedRadicand) return Same::No;
    throw;
  }
}

inline Same same_ratio(const MetricTriple& u, const MetricTriple& v, size_t i, const BigRational& tol) {
  if (u.exact() && v.exact()) {
    try {
      // x_i/x_3 == y_i/y_3  <=>  x_i y_3 == y_i x_3
      return same_exact(to_quadext(u[i]) * to_quadext(v[2]), to_quadext(v[i]) * to_quadext(u[2]));
    } catch (const Error& e) {
      if (e.code() != Errc::MixedRadicand) throw;
    }
  }
  Interval ru = enclose(u[i]) / enclose(u[2]);
  Interval rv = enclose(v[i]) / enclose(v[2]);
  if (!ru.overlaps(rv)) return Same::No;
  if (ru.hull(rv).width() <= tol) return Same::Yes;
  return Same::Unknown;
}

}  // namespace detail

/// True when the two metrics differ by a positive factor.
inline bool homothetic(const MetricTriple& u, const MetricTriple& v, const BigRational& tol) {
  detail::Same s1 = detail::same_ratio(u, v, 0, tol);
  if (s1 == detail::Same::No) return false;
  detail::Same s2 = detail::same_ratio(u, v, 1, tol);
  if (s2 == detail::Same::No) return false;
  if (s1 == detail::Same::Yes && s2 == detail::Same::Yes) return true;
  fail(Errc::IndistinguishableAtTolerance, u.str() + " vs " + v.str());
}

/// Partition into homothety classes; each class lists indices into `metrics`
/// in input order, classes ordered by their first member.
inline std::vector<std::vector<size_t>> homothety_classes(const std::vector<MetricTriple>& metrics,
                                                          const BigRational& tol) {
  std::vector<std::vector<size_t>> classes;
  for (size_t i = 0; i < metrics.size(); ++i) {
    bool placed = false;
    for (auto& c : classes) {
      if (homothetic(metrics[c.front()], metrics[i], tol)) {
        c.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({i});
  }
  return classes;
}

// ---------------------------------------------------------------------------
// Catalog of the 15 lines and their listed regions

enum class Region { O1, O2, O3, Omega, BoundaryCube };

inline std::string_view region_name(Region r) {
  switch (r) {
    case Region::O1: return "O1";
    case Region::O2: return "O2";
    case Region::O3: return "O3";
    case Region::Omega: return "Omega";
    case Region::BoundaryCube: return "BoundaryCube";
  }
  return "?";
}

/// Listed region of a catalog line; line 1 spans several regions.
enum class Expected { O1, O2, O3, Mixed };

inline std::string_view expected_name(Expected e) {
  switch (e) {
    case Expected::O1: return "O1";
    case Expected::O2: return "O2";
    case Expected::O3: return "O3";
    case Expected::Mixed: return "O1|O3|Omega";
  }
  return "?";
}

inline bool matches(Expected e, Region r) {
  switch (e) {
    case Expected::O1: return r == Region::O1;
    case Expected::O2: return r == Region::O2;
    case Expected::O3: return r == Region::O3;
    case Expected::Mixed: return r == Region::O1 || r == Region::O3 || r == Region::Omega;
  }
  return false;
}

namespace detail {

struct CatalogRow {
  int line;
  const char* g;
  const char* h;
  int n_params;  // 0, 1 (l) or 3 (k, l, m)
  long min_param;
  Expected expected;
  // closed forms for the families, fixed values otherwise
  const char* d_formula[3];
  const char* a_formula[3];
};

// Listed regions copied verbatim.
inline const std::array<CatalogRow, 15>& catalog_rows() {
  static const std::array<CatalogRow, 15> rows{{
      {1, "so(k+l+m)", "so(k)+so(l)+so(m)", 3, 1, Expected::Mixed,
       {"kl", "km", "lm"}, {"m/(2(k+l+m-2))", "l/(2(k+l+m-2))", "k/(2(k+l+m-2))"}},
      {2, "su(k+l+m)", "s(u(k)+u(l)+u(m))", 3, 1, Expected::O1,
       {"2kl", "2km", "2lm"}, {"m/(2(k+l+m))", "l/(2(k+l+m))", "k/(2(k+l+m))"}},
      {3, "sp(k+l+m)", "sp(k)+sp(l)+sp(m)", 3, 1, Expected::O1,
       {"4kl", "4km", "4lm"}, {"m/(2(k+l+m+1))", "l/(2(k+l+m+1))", "k/(2(k+l+m+1))"}},
      {4, "su(2l)", "u(l)", 1, 2, Expected::O1, {"l(l-1)", "l(l+1)", "l^2-1"}, {"(l+1)/(4l)", "(l-1)/(4l)", "1/4"}},
      {5, "so(2l)", "u(1)+u(l-1)", 1, 4, Expected::O3,
       {"2(l-1)", "2(l-1)", "(l-1)(l-2)"}, {"(l-2)/(4(l-1))", "(l-2)/(4(l-1))", "1/(2(l-1))"}},
      {6, "e6", "su(4)+2sp(1)+R", 0, 0, Expected::O3, {"16", "16", "24"}, {"1/4", "1/4", "1/6"}},
      {7, "e6", "so(8)+R^2", 0, 0, Expected::O1, {"16", "16", "16"}, {"1/6", "1/6", "1/6"}},
      {8, "e6", "sp(3)+sp(1)", 0, 0, Expected::O3, {"14", "28", "12"}, {"1/4", "1/8", "7/24"}},
      {9, "e7", "so(8)+3sp(1)", 0, 0, Expected::O1, {"32", "32", "32"}, {"2/9", "2/9", "2/9"}},
      {10, "e7", "su(6)+sp(1)+R", 0, 0, Expected::O3, {"30", "40", "24"}, {"2/9", "1/6", "5/18"}},
      {11, "e7", "so(8)", 0, 0, Expected::O2, {"35", "35", "35"}, {"5/18", "5/18", "5/18"}},
      {12, "e8", "so(12)+2sp(1)", 0, 0, Expected::O3, {"64", "64", "48"}, {"1/5", "1/5", "4/15"}},
      {13, "e8", "so(8)+so(8)", 0, 0, Expected::O2, {"64", "64", "64"}, {"4/15", "4/15", "4/15"}},
      {14, "f4", "so(5)+2sp(1)", 0, 0, Expected::O3, {"8", "8", "20"}, {"5/18", "5/18", "1/9"}},
      {15, "f4", "so(8)", 0, 0, Expected::O1, {"8", "8", "8"}, {"1/9", "1/9", "1/9"}},
  }};
  return rows;
}

inline const CatalogRow& catalog_row(int line) {
  if (line < 1 || line > 15) fail(Errc::BadLine, "catalog has lines 1..15, got " + std::to_string(line));
  return catalog_rows()[static_cast<size_t>(line - 1)];
}

}  // namespace detail

inline int catalog_param_count(int line) { return detail::catalog_row(line).n_params; }

/// Space of catalog line `line`. Lines 1-3 take (k, l, m), lines 4-5 take l,
/// the rest take nothing.
inline GWSpace catalog_space(int line, const std::vector<long>& params = {}) {
  const auto& row = detail::catalog_row(line);
  if (static_cast<int>(params.size()) != row.n_params)
    fail(Errc::BadParams, "line " + std::to_string(line) + " expects " + std::to_string(row.n_params) +
                              " parameter(s), got " + std::to_string(params.size()));
  for (long p : params)
    if (p < row.min_param)
      fail(Errc::BadParams, "line " + std::to_string(line) + " requires parameters >= " + std::to_string(row.min_param));
  using R = BigRational;
  Table1Line prov{line, params};
  if (row.n_params == 3) {
    const long k = params[0], l = params[1], m = params[2];
    const long shift = line == 1 ? -2 : line == 2 ? 0 : 1;
    const long n = k + l + m + shift;
    const long scale = line == 1 ? 1 : line == 2 ? 2 : 4;
    // Line 1 with two of k, l, m equal to 1 lands on the cube boundary.
    const bool boundary_ok = line == 1;
    if (n <= 0) fail(Errc::BadParams, "degenerate triple");
    AParams a(R(m, 2 * n), R(l, 2 * n), R(k, 2 * n), boundary_ok);
    return GWSpace{a, {R(scale * k * l), R(scale * k * m), R(scale * l * m)}, prov};
  }
  if (row.n_params == 1) {
    const long l = params[0];
    if (line == 4)
      return GWSpace{AParams(R(l + 1, 4 * l), R(l - 1, 4 * l), R(1, 4)), {R(l * (l - 1)), R(l * (l + 1)), R(l * l - 1)},
                     prov};
    return GWSpace{AParams(R(l - 2, 4 * (l - 1)), R(l - 2, 4 * (l - 1)), R(1, 2 * (l - 1))),
                   {R(2 * (l - 1)), R(2 * (l - 1)), R((l - 1) * (l - 2))}, prov};
  }
  return GWSpace{AParams(R::parse(row.a_formula[0]), R::parse(row.a_formula[1]), R::parse(row.a_formula[2])),
                 {R::parse(row.d_formula[0]), R::parse(row.d_formula[1]), R::parse(row.d_formula[2])}, prov};
}

inline Expected expected_region(int line) { return detail::catalog_row(line).expected; }

/// Whole catalog: per line the algebras, parameter constraints, a_i and d_i
/// (formulas for families, exact rationals otherwise) and the listed region.
inline nlohmann::json catalog_json() {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : detail::catalog_rows()) {
    nlohmann::json j;
    j["line"] = row.line;
    j["g"] = row.g;
    j["h"] = row.h;
    j["params"] = row.n_params == 3 ? nlohmann::json{"k", "l", "m"}
                  : row.n_params == 1 ? nlohmann::json{"l"}
                                      : nlohmann::json::array();
    if (row.n_params > 0) j["min_param"] = row.min_param;
    j["d"] = {row.d_formula[0], row.d_formula[1], row.d_formula[2]};
    j["a"] = {row.a_formula[0], row.a_formula[1], row.a_formula[2]};
    j["region"] = std::string(expected_name(row.expected));
    out.push_back(std::move(j));
  }
  return out;
}

/// One instance of a line as JSON.
inline nlohmann::json space_json(const GWSpace& s) {
  nlohmann::json j;
  j["a"] = {s.params[0].str(), s.params[1].str(), s.params[2].str()};
  j["d"] = {s.d[0].str(), s.d[1].str(), s.d[2].str()};
  j["boundary"] = s.params.boundary();
  j["provenance"] = s.describe();
  return j;
}

}  // namespace wallach
