#pragma once

#include <algorithm>
#include <array>
#include <cstdlib>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "wallach/core.hpp"
#include "wallach/einstein.hpp"
#include "wallach/errors.hpp"
#include "wallach/exactnum.hpp"
#include "wallach/omega.hpp"

namespace wallach {

/// (k, l, m) for SO(k+l+m)/SO(k)xSO(l)xSO(m), stored with k >= l >= m >= 1.
class SOTriple {
 public:
  SOTriple(long k, long l, long m) {
    if (k < 1 || l < 1 || m < 1) fail(Errc::BadParams, "triple entries must be >= 1");
    std::array<long, 3> v{k, l, m};
    std::sort(v.begin(), v.end(), std::greater<>());
    k_ = v[0], l_ = v[1], m_ = v[2];
  }

  long k() const { return k_; }
  long l() const { return l_; }
  long m() const { return m_; }
  long n() const { return k_ + l_ + m_; }
  bool boundary() const { return l_ == 1 && m_ == 1; }
  BigRational h0() const { return BigRational(n(), 2 * (n() - 2)); }
  std::string str() const {
    return "(" + std::to_string(k_) + "," + std::to_string(l_) + "," + std::to_string(m_) + ")";
  }
  bool operator==(const SOTriple&) const = default;

 private:
  long k_ = 1, l_ = 1, m_ = 1;
};

struct ElemTriple {
  BigInt t1, t2, t3;
  static ElemTriple of(const SOTriple& s) {
    const BigInt k(s.k()), l(s.l()), m(s.m());
    return {k + l + m, k * l + k * m + l * m, k * l * m};
  }
};

/// a = (k,l,m)/(2(n-2)), d = (lm, km, kl).
inline GWSpace so_space(const SOTriple& t, bool allow_boundary = false) {
  if (t.boundary() && !allow_boundary) fail(Errc::BoundaryTriple, t.str() + " has a1 = 1/2");
  const long den = 2 * (t.n() - 2);
  AParams a(BigRational(t.k(), den), BigRational(t.l(), den), BigRational(t.m(), den), true);
  return GWSpace{a, {BigRational(t.l() * t.m()), BigRational(t.k() * t.m()), BigRational(t.k() * t.l())},
                 SOProvenance{t.k(), t.l(), t.m()}};
}

/// G in terms of the elementary symmetric functions of (k, l, m).
inline BigInt eval_H(const ElemTriple& e) {
  const BigInt &t1 = e.t1, &t2 = e.t2, &t3 = e.t3;
  const BigInt u = t1 - 2;
  auto pw = [](const BigInt& b, unsigned p) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), p);
    return r;
  };
  const BigInt u2 = u * u, u3 = pw(u, 3), u4 = pw(u, 4), u5 = pw(u, 5), u6 = pw(u, 6);
  const BigInt A = 16 * u2 + 4 * t3;
  const BigInt inner = 1024 * pw(t1, 5) * u4 - 2048 * pw(t1, 4) * u5 + 512 * pw(t1, 3) * u6 +
                       1536 * t1 * t1 * pw(u, 7) - 1536 * t1 * pw(u, 8) + 512 * pw(u, 9) +
                       3840 * t3 * t1 * t1 * u4 - 4096 * pw(t3, 3) - 7680 * t3 * t1 * u5 -
                       6144 * t3 * t3 * t1 * u2 + 3840 * t3 * u6 + 6144 * t3 * t3 * u3;
  const BigInt B = 16 * u2 - 32 * t3;
  const BigInt c2 = 832 * u6 - 1664 * t1 * u5 + 2560 * t3 * t1 * u2 + 1024 * t3 * t3 - 2560 * t3 * u3 +
                    832 * t1 * t1 * u4;
  return A * inner - 8 * t1 * A * B * (80 * u2 + 32 * t3) * t2 - 16 * t1 * t1 * c2 * t2 * t2 +
         1024 * u2 * B * pw(t2, 3) + 32768 * t1 * pw(t2, 4) * u2;
}

inline BigInt eval_G(const SOTriple& t) { return eval_H(ElemTriple::of(t)); }

/// 2^12 n'^12 Q(a) with n' = k+l+m-2; equals G.
inline BigRational g_via_q(const SOTriple& t) {
  BigRational scale(2 * (t.n() - 2));
  BigRational p(1);
  for (int i = 0; i < 12; ++i) p *= scale;
  return p * eval_Q(so_space(t, true).params);
}

// ---------------------------------------------------------------------------

/// Integer-arithmetic bound checks for l >= 2.
struct BoundFlags {
  bool four_metrics = false;  // m^2 > 2k+2l-4
  bool two_metrics = false;   // m^2 < k+l
  bool o3_poly = false;       // (k+l-1)m^2 - 2(k+l-2)m - (k+l)^2 + 4(k+l) - 4 < 0
  bool small_m = false;       // m=1; m=2, k+l>=5; m=3, k+l>=7

  static BoundFlags of(const SOTriple& t) {
    const long m = t.m(), s = t.k() + t.l();
    BoundFlags f;
    f.four_metrics = m * m > 2 * s - 4;
    f.two_metrics = m * m < s;
    f.o3_poly = (s - 1) * m * m - 2 * (s - 2) * m - s * s + 4 * s - 4 < 0;
    f.small_m = m == 1 || (m == 2 && s >= 5) || (m == 3 && s >= 7);
    return f;
  }

  std::string str() const {
    std::string out;
    auto add = [&](bool on, const char* name) {
      if (!on) return;
      if (!out.empty()) out += '|';
      out += name;
    };
    add(four_metrics, "four");
    add(two_metrics, "two");
    add(o3_poly, "o3poly");
    add(small_m, "smallm");
    return out;
  }
};

struct CensusRecord {
  SOTriple triple{1, 1, 1};
  BigInt g;
  Region region = Region::Omega;
  std::optional<int> predicted;  // empty: unresolved (G = 0)
  std::optional<int> solved;
  BoundFlags flags;
  std::optional<MetricTriple> closed_form;  // boundary rows only
};

inline int g_sign(const CensusRecord& r) { return sgn(r.g); }

/// Boundary row (k,1,1): unique metric (2k, k+1, k+1) in so_space order.
inline CensusRecord boundary_record(const SOTriple& t, bool run_solve) {
  CensusRecord rec;
  rec.triple = t;
  rec.g = eval_G(t);
  rec.region = Region::BoundaryCube;
  rec.predicted = 1;
  rec.closed_form = MetricTriple(2 * t.k(), t.k() + 1, t.k() + 1);
  if (run_solve) rec.solved = count(so_space(t, true).params);
  return rec;
}

inline CensusRecord classify_so(const SOTriple& t, bool run_solve = false) {
  if (t.boundary()) fail(Errc::BoundaryTriple, t.str() + " lies on the boundary; use its closed-form metric");
  CensusRecord rec;
  rec.triple = t;
  rec.g = eval_G(t);
#ifndef NDEBUG
  if (g_via_q(t) != BigRational(rec.g)) fail(Errc::InvariantViolation, "G/Q identity broken at " + t.str());
#endif
  const int sg = sgn(rec.g);
  rec.region = sg < 0 ? Region::O1 : sg > 0 ? Region::O3 : Region::Omega;
  if (sg != 0) rec.predicted = sg < 0 ? 4 : 2;
  rec.flags = BoundFlags::of(t);
  if ((rec.flags.four_metrics && sg >= 0) ||
      ((rec.flags.two_metrics || rec.flags.o3_poly || rec.flags.small_m) && sg <= 0))
    fail(Errc::InvariantViolation, "bound flags contradict the sign of G at " + t.str());
  if (run_solve) {
    rec.solved = count(so_space(t).params);
    if (rec.predicted && *rec.solved != *rec.predicted)
      fail(Errc::InvariantViolation, "solver count disagrees with the sign of G at " + t.str());
  }
  return rec;
}

inline CensusRecord census_record(const SOTriple& t, bool run_solve) {
  return t.boundary() ? boundary_record(t, run_solve) : classify_so(t, run_solve);
}

/// All sorted triples with k+l+m <= n_max, ordered by (k+l+m, k, l).
inline std::vector<SOTriple> sweep_triples(long n_max) {
  std::vector<SOTriple> out;
  for (long n = 3; n <= n_max; ++n)
    for (long k = 1; k <= n; ++k)
      for (long l = 1; l <= k; ++l) {
        const long m = n - k - l;
        if (m >= 1 && m <= l) out.emplace_back(k, l, m);
      }
  return out;
}

inline int default_workers() {
  if (const char* env = std::getenv("WALLACH_WORKERS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

inline std::vector<CensusRecord> sweep(long n_max, bool run_solve, int workers = default_workers()) {
  if (n_max < 5) fail(Errc::BadParam, "sweep needs n_max >= 5");
  const auto triples = sweep_triples(n_max);
  std::vector<std::optional<CensusRecord>> slots(triples.size());
  std::vector<std::exception_ptr> errors(static_cast<size_t>(std::max(1, workers)));
  auto work = [&](size_t w, size_t stride) {
    try {
      for (size_t i = w; i < triples.size(); i += stride) slots[i] = census_record(triples[i], run_solve);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  const size_t stride = errors.size();
  if (stride == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (size_t w = 0; w < stride; ++w) pool.emplace_back(work, w, stride);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<CensusRecord> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// ---------------------------------------------------------------------------
// G = 0 scanner.

struct ZeroTriple {
  SOTriple triple;
  std::optional<long> family_t;  // (t^2+1, t^2+1, 2t)
};

inline std::optional<long> family_parameter(const SOTriple& s) {
  if (s.k() != s.l() || s.m() % 2 != 0) return std::nullopt;
  const long t = s.m() / 2;
  if (s.k() == t * t + 1) return t;
  return std::nullopt;
}

inline std::vector<ZeroTriple> scan_zeros(long n_max) {
  if (n_max < 6) fail(Errc::BadParam, "scan needs n_max >= 6");
  std::vector<ZeroTriple> out;
  for (const auto& t : sweep_triples(n_max)) {
    if (t.l() < 2) continue;
    if (sgn(eval_G(t)) != 0) continue;
    if (!eval_Q(so_space(t).params).is_zero()) fail(Errc::InvariantViolation, "G = 0 but Q != 0 at " + t.str());
    out.push_back({t, family_parameter(t)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Small-triple fixture, in printed order.

struct Table3Row {
  SOTriple triple;
  Region expected;
};

inline const std::vector<Table3Row>& table3() {
  static const std::vector<Table3Row> rows = [] {
    const Region o1 = Region::O1, o3 = Region::O3;
    return std::vector<Table3Row>{
        {{4, 2, 1}, o3}, {{3, 3, 1}, o3}, {{3, 2, 2}, o3}, {{5, 2, 1}, o3}, {{4, 3, 1}, o3},
        {{4, 2, 2}, o3}, {{3, 3, 2}, o3}, {{6, 2, 1}, o3}, {{5, 3, 1}, o3}, {{4, 4, 1}, o3},
        {{5, 2, 2}, o3}, {{4, 3, 2}, o3}, {{3, 3, 3}, o1}, {{7, 2, 1}, o3}, {{6, 3, 1}, o3},
        {{5, 4, 1}, o3}, {{6, 2, 2}, o3}, {{5, 3, 2}, o3}, {{4, 4, 2}, o3}, {{4, 3, 3}, o3},
        {{8, 2, 1}, o3}, {{7, 3, 1}, o3}, {{6, 4, 1}, o3}, {{5, 5, 1}, o3}, {{7, 2, 2}, o3},
        {{6, 3, 2}, o3}, {{5, 4, 2}, o3}, {{5, 3, 3}, o3}, {{4, 4, 3}, o3}, {{9, 2, 1}, o3},
        {{8, 3, 1}, o3}, {{7, 4, 1}, o3}, {{6, 5, 1}, o3}, {{8, 2, 2}, o3}, {{7, 3, 2}, o3},
        {{6, 4, 2}, o3}, {{5, 5, 2}, o3}, {{6, 3, 3}, o3}, {{5, 4, 3}, o3}, {{4, 4, 4}, o1},
        {{5, 4, 4}, o1}, {{6, 4, 4}, o1}, {{5, 5, 4}, o3}, {{6, 5, 5}, o1}, {{7, 6, 5}, o1},
    };
  }();
  return rows;
}

struct Table3Result {
  Table3Row row;
  CensusRecord record;
  bool pass = false;
};

inline std::vector<Table3Result> check_table3(bool run_solve = false) {
  std::vector<Table3Result> out;
  for (const auto& row : table3()) {
    auto rec = classify_so(row.triple, run_solve);
    const bool pass = rec.region == row.expected;
    out.push_back({row, std::move(rec), pass});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization.

inline std::string sign_str(int s) { return s < 0 ? "-" : s > 0 ? "+" : "0"; }

inline std::string census_csv(const std::vector<CensusRecord>& recs) {
  std::string out = "k,l,m,G_sign,region,predicted_count,solved_count,flags\n";
  for (const auto& r : recs) {
    out += std::to_string(r.triple.k()) + "," + std::to_string(r.triple.l()) + "," + std::to_string(r.triple.m()) +
           "," + sign_str(g_sign(r)) + "," + std::string(region_name(r.region)) + "," +
           (r.predicted ? std::to_string(*r.predicted) : "Unresolved") + "," +
           (r.solved ? std::to_string(*r.solved) : "") + "," + r.flags.str() + "\n";
  }
  return out;
}

inline nlohmann::json census_record_json(const CensusRecord& r) {
  nlohmann::json j;
  j["triple"] = {r.triple.k(), r.triple.l(), r.triple.m()};
  j["G"] = r.g.get_str();
  j["G_sign"] = sign_str(g_sign(r));
  j["region"] = std::string(region_name(r.region));
  j["predicted_count"] = r.predicted ? nlohmann::json(*r.predicted) : nlohmann::json("Unresolved");
  j["solved_count"] = r.solved ? nlohmann::json(*r.solved) : nlohmann::json(nullptr);
  j["flags"] = r.flags.str();
  if (r.closed_form) j["closed_form"] = {coord_str((*r.closed_form)[0]), coord_str((*r.closed_form)[1]),
                                         coord_str((*r.closed_form)[2])};
  return j;
}

inline nlohmann::json census_json(const std::vector<CensusRecord>& recs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : recs) out.push_back(census_record_json(r));
  return out;
}

inline std::string table3_csv(const std::vector<Table3Result>& rows) {
  std::string out = "k,l,m,G_sign,region,expected,status\n";
  for (const auto& r : rows) {
    const auto& t = r.row.triple;
    out += std::to_string(t.k()) + "," + std::to_string(t.l()) + "," + std::to_string(t.m()) + "," +
           sign_str(g_sign(r.record)) + "," + std::string(region_name(r.record.region)) + "," +
           std::string(region_name(r.row.expected)) + "," + (r.pass ? "PASS" : "FAIL") + "\n";
  }
  return out;
}

inline nlohmann::json table3_json(const std::vector<Table3Result>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    auto j = census_record_json(r.record);
    j["expected"] = std::string(region_name(r.row.expected));
    j["status"] = r.pass ? "PASS" : "FAIL";
    out.push_back(std::move(j));
  }
  return out;
}

inline std::string zeros_csv(const std::vector<ZeroTriple>& zs) {
  std::string out = "k,l,m,family\n";
  for (const auto& z : zs)
    out += std::to_string(z.triple.k()) + "," + std::to_string(z.triple.l()) + "," + std::to_string(z.triple.m()) +
           "," + (z.family_t ? "t=" + std::to_string(*z.family_t) : "NOVEL") + "\n";
  return out;
}

inline nlohmann::json zeros_json(const std::vector<ZeroTriple>& zs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& z : zs)
    out.push_back({{"triple", {z.triple.k(), z.triple.l(), z.triple.m()}},
                   {"family", z.family_t ? "t=" + std::to_string(*z.family_t) : "NOVEL"}});
  return out;
}

}  // namespace wallach
