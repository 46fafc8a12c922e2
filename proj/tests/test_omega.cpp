#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "test_support.hpp"
#include "wallach/omega.hpp"

using namespace wallach;
using wallach::testing::code_of;
using wallach::testing::R;

namespace {

AParams A(const BigRational& a1, const BigRational& a2, const BigRational& a3) { return AParams(a1, a2, a3); }

AParams diag(const BigRational& a) { return AParams(a, a, a); }

std::array<BigRational, 3> zero3() { return {R(0), R(0), R(0)}; }

std::vector<std::array<int, 3>> permutations() {
  std::vector<std::array<int, 3>> out;
  std::array<int, 3> p{0, 1, 2};
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

TEST(Symfun, Examples) {
  auto s = symfun(diag(R(1, 6)));
  EXPECT_EQ(s.s1, R(1, 2));
  EXPECT_EQ(s.s2, R(1, 12));
  EXPECT_EQ(s.s3, R(1, 216));
  auto t = symfun(diag(R(1, 4)));
  EXPECT_EQ(t.s1, R(3, 4));
  EXPECT_EQ(t.s2, R(3, 16));
  EXPECT_EQ(t.s3, R(1, 64));
  EXPECT_EQ(symfun(A(R(1, 6), R(1, 4), R(1, 3))).s1, R(3, 4));
}

TEST(EvalQ, FrozenValues) {
  EXPECT_EQ(eval_Q(R(0), R(0), R(1, 2)), R(0));
  EXPECT_EQ(eval_Q(diag(R(1, 6))), R(-256, 531441));
  EXPECT_EQ(eval_Q(A(R(1, 6), R(1, 4), R(1, 3))), R(2107, 1679616));
  EXPECT_EQ(eval_Q(diag(R(7, 15))), BigRational(BigInt("-576950840079601"), BigInt("129746337890625")));
  EXPECT_EQ(eval_Q(A(R(29, 70), R(3, 10), R(3, 10))), R(0));
}

TEST(EvalQ, DiagonalClosedForm) {
  // Q(s, s, s) = -(2s + 1)^4 (4s - 1)^8
  for (long n = 1; n < 50; ++n) {
    BigRational s(n, 100);
    BigRational expect = -(R(2) * s + R(1)).pow(4) * (R(4) * s - R(1)).pow(8);
    EXPECT_EQ(eval_Q(diag(s)), expect);
  }
}

TEST(EvalQ, ExpandedFormAgreesAndIsSymmetric) {
  EXPECT_EQ(q_table().q.total_degree(), 12);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(1, 49);
  for (int i = 0; i < 60; ++i) {
    AParams a(R(num(rng), 100), R(num(rng), 100), R(num(rng), 100));
    const BigRational q = eval_Q(a);
    EXPECT_EQ(eval_Q_expanded(a), q);
    for (const auto& p : permutations()) EXPECT_EQ(eval_Q(a.permuted(p)), q);
  }
}

TEST(GradQ, Examples) {
  EXPECT_EQ(grad_Q(diag(R(1, 4))), zero3());
  EXPECT_EQ(grad_Q(A(R(29, 70), R(3, 10), R(3, 10))), zero3());
  auto g = grad_Q(diag(R(1, 6)));
  for (const auto& c : g) EXPECT_EQ(c, R(2560, 177147));
}

TEST(EdgePoint, ExamplesAndErrors) {
  EXPECT_EQ(edge_point(R(1, 4)), diag(R(1, 4)));
  EXPECT_EQ(edge_point(R(3, 10)), A(R(29, 70), R(3, 10), R(3, 10)));
  EXPECT_EQ(edge_point(R(1, 5)), A(R(41, 170), R(1, 5), R(1, 5)));
  EXPECT_EQ(code_of([] { edge_point(R(2, 5)); }), Errc::OutOfRange);
  EXPECT_EQ(code_of([] { edge_point(R(0)); }), Errc::OutOfRange);
}

TEST(EdgePoint, SingularEverywhere) {
  int checked = 0;
  for (long n = 1; n < 200; ++n) {
    BigRational t(n, 400);
    AParams a;
    try {
      a = edge_point(t);
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), Errc::OutOfRange);
      continue;
    }
    ++checked;
    EXPECT_EQ(eval_Q(a), R(0)) << t;
    EXPECT_EQ(grad_Q(a), zero3()) << t;
  }
  EXPECT_GT(checked, 100);
}

TEST(XHat, Examples) {
  EXPECT_EQ(std::get<BigRational>(x_hat(R(1, 2))), R(1, 4));
  EXPECT_EQ(std::get<BigRational>(x_hat(R(3, 4))), R(1, 4));
  QuadExt r2 = QuadExt::sqrt_of(R(2));
  QuadExt h_star = (QuadExt(3) * r2 - QuadExt(2)) / QuadExt(4);
  EXPECT_EQ(std::get<QuadExt>(x_hat(h_star)), (r2 - QuadExt(1)) / QuadExt(2));
  EXPECT_EQ(code_of([] { x_hat(R(4, 5)); }), Errc::OutOfRange);
  EXPECT_EQ(code_of([] { x_hat(R(1, 3)); }), Errc::OutOfRange);
}

TEST(XHat, SatisfiesItsQuadratic) {
  for (long n = 50; n <= 75; ++n) {
    BigRational h(n, 100);
    QuadExt x = to_quadext(x_hat(h));
    EXPECT_TRUE(hat_quadratic(QuadExt(h), x).is_zero()) << h;
    // the smaller root lies in [0, h/2]
    EXPECT_TRUE(x >= QuadExt(0) && x <= QuadExt(h / R(2))) << h;
  }
}

TEST(XTilde, Examples) {
  Interval at34 = x_tilde(R(3, 4), R(1, 1000000), true);
  EXPECT_TRUE(at34.contains(R(1, 4)));
  EXPECT_EQ(code_of([] { x_tilde(R(3, 4), R(1, 1000)); }), Errc::OutOfRange);

  Interval iv = x_tilde(R(7, 10), R(1, 1000000));
  EXPECT_GT(iv.lo(), R(0));
  EXPECT_LT(iv.hi(), R(7, 30));
}

TEST(XTilde, BracketsARootAndStaysBelowXHat) {
  for (long n = 51; n < 75; ++n) {
    BigRational h(n, 100);
    Interval iv = x_tilde(h, R(1, 1000000000));
    UniPoly f = tilde_cubic(h);
    if (!iv.is_point()) {
      EXPECT_LT(f(iv.lo()).sign() * f(iv.hi()).sign(), 0) << h;
    }
    EXPECT_LE(iv.width(), R(1, 1000000000));
    EXPECT_LT(iv.hi(), enclose(x_hat(h)).lo()) << h;
  }
}

TEST(TriangleTest, Examples) {
  // SO(9,9,9) and SO(10,10,2) points
  EXPECT_EQ(triangle_test(diag(R(9, 50))), TriangleResult::InsideIT_O1);
  EXPECT_EQ(triangle_test(A(R(1, 4), R(1, 4), R(1, 20))), TriangleResult::OutsideST_O3);
  EXPECT_EQ(triangle_test(edge_point(R(1, 5))), TriangleResult::Indeterminate);
  EXPECT_EQ(code_of([] { triangle_test(edge_point(R(3, 10))); }), Errc::OutOfRange);
  EXPECT_EQ(code_of([] { triangle_test(diag(R(1, 6))); }), Errc::OutOfRange);
}

TEST(TriangleTest, AgreesWithRegionWheneverDecisive) {
  for (long i = 5; i < 50; i += 3)
    for (long j = 5; j < 50; j += 3)
      for (long k = 5; k < 50; k += 3) {
        AParams a(R(i, 100), R(j, 100), R(k, 100));
        BigRational h = symfun(a).s1;
        if (!(R(1, 2) < h && h < R(3, 4))) continue;
        auto t = triangle_test(a);
        if (t == TriangleResult::Indeterminate) continue;
        Region r = classify_region(a).label;
        EXPECT_EQ(r, t == TriangleResult::InsideIT_O1 ? Region::O1 : Region::O3) << a.str();
      }
}

TEST(ClassifyRegion, ReferencePoints) {
  auto o1 = classify_region(diag(R(1, 6)));
  EXPECT_EQ(o1.label, Region::O1);
  EXPECT_EQ(o1.q_sign, -1);
  EXPECT_EQ(o1.method, Method::S1Shortcut);
  auto o2 = classify_region(diag(R(7, 15)));
  EXPECT_EQ(o2.label, Region::O2);
  EXPECT_EQ(o2.method, Method::SegmentTest);
  auto o3 = classify_region(A(R(1, 6), R(1, 4), R(1, 3)));
  EXPECT_EQ(o3.label, Region::O3);
  EXPECT_EQ(o3.q_sign, 1);
  auto om = classify_region(A(R(29, 70), R(3, 10), R(3, 10)));
  EXPECT_EQ(om.label, Region::Omega);
  EXPECT_EQ(om.q_sign, 0);
  EXPECT_EQ(classify_region(diag(R(5, 18))).label, Region::O2);
  EXPECT_EQ(code_of([] { classify_region(AParams(R(1, 2), R(1, 6), R(1, 6), true)); }), Errc::BoundaryInput);
}

TEST(ClassifyRegion, SegmentBetweenDiagonalReferencesCrossesOnce) {
  // the only zero is at u = 5/18 (a = 1/4), of even multiplicity
  UniPoly q = q_on_segment(diag(R(1, 6)), diag(R(7, 15)));
  EXPECT_EQ(q.degree(), 12);
  EXPECT_EQ(segment_crossings(diag(R(1, 6)), diag(R(7, 15))), 1);
  EXPECT_EQ(q(R(5, 18)), R(0));
  for (long n = 1; n < 100; ++n) EXPECT_LE(q(R(n, 100)).sign(), 0);
}

TEST(ClassifyRegion, Diagonal) {
  for (long n = 1; n < 50; ++n) {
    BigRational a(n, 100);
    Region expect = a < R(1, 4) ? Region::O1 : a > R(1, 4) ? Region::O2 : Region::Omega;
    EXPECT_EQ(classify_region(diag(a)).label, expect) << a;
  }
}

TEST(ClassifyRegion, PermutationInvariantOnGrid) {
  for (long i = 1; i < 10; ++i)
    for (long j = i; j < 10; ++j)
      for (long k = j; k < 10; ++k) {
        AParams a(R(i, 20), R(j, 20), R(k, 20));
        RegionLabel base = classify_region(a);
        EXPECT_EQ(base.q_sign, eval_Q(a).sign());
        for (const auto& p : permutations()) EXPECT_EQ(classify_region(a.permuted(p)).label, base.label) << a.str();
      }
}

TEST(ClassifyRegion, CatalogLinesMatchTableTwoExceptFourAndFive) {
  const std::vector<std::vector<long>> triples{{1, 1, 2}, {3, 2, 1}, {5, 5, 4}};
  for (int line = 2; line <= 15; ++line) {
    std::vector<std::vector<long>> params;
    if (line <= 3) params = triples;
    else if (line == 4) continue;
    else if (line == 5) continue;
    else params = {{}};
    for (const auto& p : params) {
      auto s = catalog_space(line, p);
      EXPECT_TRUE(matches(expected_region(line), classify_region(s.params).label)) << "line " << line;
    }
  }
}

TEST(ClassifyRegion, LinesFourAndFiveByExactSign) {
  // su(2l)/u(l) has s1 = 3/4 and Q > 0; so(2l)/u(1)+u(l-1) has s1 = 1/2 and Q < 0
  for (long l : {2L, 3L, 4L, 7L, 20L}) {
    auto s = catalog_space(4, {l});
    EXPECT_EQ(symfun(s.params).s1, R(3, 4));
    EXPECT_EQ(classify_region(s.params).label, Region::O3) << l;
  }
  for (long l : {4L, 5L, 6L, 9L, 20L}) {
    auto s = catalog_space(5, {l});
    EXPECT_EQ(symfun(s.params).s1, R(1, 2));
    EXPECT_EQ(classify_region(s.params).label, Region::O1) << l;
  }
}
