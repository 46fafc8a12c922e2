#include <gtest/gtest.h>

#include <algorithm>

#include "test_support.hpp"
#include "wallach/core.hpp"

using namespace wallach;
using wallach::testing::code_of;
using wallach::testing::R;

namespace {

void expect_a(const GWSpace& s, const BigRational& a1, const BigRational& a2, const BigRational& a3) {
  EXPECT_EQ(s.params[0], a1);
  EXPECT_EQ(s.params[1], a2);
  EXPECT_EQ(s.params[2], a3);
}

void expect_d(const GWSpace& s, long d1, long d2, long d3) {
  EXPECT_EQ(s.d[0], R(d1));
  EXPECT_EQ(s.d[1], R(d2));
  EXPECT_EQ(s.d[2], R(d3));
}

std::vector<long> sample_params(int line) {
  switch (catalog_param_count(line)) {
    case 3: return {4, 3, 2};
    case 1: return {line == 4 ? 3L : 6L};
    default: return {};
  }
}

}  // namespace

TEST(AParams, RangeAndBoundary) {
  EXPECT_EQ(code_of([] { AParams(R(0), R(1, 4), R(1, 4)); }), Errc::OutOfRange);
  EXPECT_EQ(code_of([] { AParams(R(3, 5), R(1, 4), R(1, 4)); }), Errc::OutOfRange);
  EXPECT_EQ(code_of([] { AParams(R(1, 2), R(1, 4), R(1, 4)); }), Errc::BoundaryInput);
  AParams b(R(1, 2), R(1, 4), R(1, 4), true);
  EXPECT_TRUE(b.boundary());
  EXPECT_FALSE(AParams(R(1, 3), R(1, 4), R(1, 5)).boundary());
  EXPECT_EQ(AParams::parse("1/6", "2/8", "1/3"), AParams(R(1, 6), R(1, 4), R(1, 3)));
  EXPECT_EQ(code_of([] { AParams::parse("1/6", "x", "1/3"); }), Errc::ParseError);
}

TEST(Catalog, Examples) {
  auto l4 = catalog_space(4, {2});
  expect_d(l4, 2, 6, 3);
  expect_a(l4, R(3, 8), R(1, 8), R(1, 4));

  auto l15 = catalog_space(15);
  expect_d(l15, 8, 8, 8);
  expect_a(l15, R(1, 9), R(1, 9), R(1, 9));

  auto l1 = catalog_space(1, {3, 3, 3});
  expect_d(l1, 9, 9, 9);
  expect_a(l1, R(3, 14), R(3, 14), R(3, 14));

  auto l11 = catalog_space(11);
  expect_a(l11, R(5, 18), R(5, 18), R(5, 18));
  EXPECT_EQ(l11.describe(), "line 11");
  EXPECT_EQ(catalog_space(5, {4}).describe(), "line 5 (4)");
}

TEST(Catalog, Errors) {
  EXPECT_EQ(code_of([] { catalog_space(0); }), Errc::BadLine);
  EXPECT_EQ(code_of([] { catalog_space(16); }), Errc::BadLine);
  EXPECT_EQ(code_of([] { catalog_space(4, {1}); }), Errc::BadParams);
  EXPECT_EQ(code_of([] { catalog_space(5, {3}); }), Errc::BadParams);
  EXPECT_EQ(code_of([] { catalog_space(4); }), Errc::BadParams);
  EXPECT_EQ(code_of([] { catalog_space(7, {1}); }), Errc::BadParams);
  EXPECT_EQ(code_of([] { catalog_space(2, {1, 0, 1}); }), Errc::BadParams);
  EXPECT_EQ(code_of([] { expected_region(99); }), Errc::BadLine);
}

TEST(Catalog, LineOneBoundaryAdmitted) {
  auto s = catalog_space(1, {3, 1, 1});
  EXPECT_TRUE(s.params.boundary());
  expect_a(s, R(1, 6), R(1, 6), R(1, 2));
}

TEST(Catalog, ExpectedRegionVerbatim) {
  EXPECT_EQ(expected_region(11), Expected::O2);
  EXPECT_EQ(expected_region(5), Expected::O3);
  EXPECT_EQ(expected_region(4), Expected::O1);
  EXPECT_EQ(expected_region(1), Expected::Mixed);
  EXPECT_TRUE(matches(Expected::Mixed, Region::Omega));
  EXPECT_FALSE(matches(Expected::Mixed, Region::O2));
}

TEST(Catalog, RowIdentities) {
  for (long k = 1; k <= 6; ++k)
    for (long l = 1; l <= 6; ++l)
      for (long m = 1; m <= 6; ++m) {
        auto s2 = catalog_space(2, {k, l, m});
        EXPECT_EQ(s2.params[0] + s2.params[1] + s2.params[2], R(1, 2));
        auto s3 = catalog_space(3, {k, l, m});
        EXPECT_LT(s3.params[0] + s3.params[1] + s3.params[2], R(1, 2));
      }
}

TEST(Catalog, ProductADIsConstantOnEveryLine) {
  // a_i = A / d_i for one A per space.
  for (int line = 1; line <= 15; ++line) {
    auto s = catalog_space(line, sample_params(line));
    EXPECT_EQ(s.params[0] * s.d[0], s.params[1] * s.d[1]) << line;
    EXPECT_EQ(s.params[0] * s.d[0], s.params[2] * s.d[2]) << line;
  }
}

TEST(Catalog, LineOnePermutationEquivariance) {
  std::array<long, 3> t{5, 3, 2};
  auto base = catalog_space(1, {t[0], t[1], t[2]});
  std::array<int, 3> perm{0, 1, 2};
  do {
    auto s = catalog_space(1, {t[static_cast<size_t>(perm[0])], t[static_cast<size_t>(perm[1])],
                               t[static_cast<size_t>(perm[2])]});
    std::vector<BigRational> a0(base.params.values().begin(), base.params.values().end());
    std::vector<BigRational> a1(s.params.values().begin(), s.params.values().end());
    std::vector<BigRational> d0(base.d.begin(), base.d.end()), d1(s.d.begin(), s.d.end());
    std::sort(a0.begin(), a0.end());
    std::sort(a1.begin(), a1.end());
    std::sort(d0.begin(), d0.end());
    std::sort(d1.begin(), d1.end());
    EXPECT_EQ(a0, a1);
    EXPECT_EQ(d0, d1);
    for (size_t i = 0; i < 3; ++i) EXPECT_EQ(s.params[i] * s.d[i], base.params[0] * base.d[0]);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST(Catalog, Json) {
  auto j = catalog_json();
  ASSERT_EQ(j.size(), 15u);
  EXPECT_EQ(j[0]["region"], "O1|O3|Omega");
  EXPECT_EQ(j[3]["min_param"], 2);
  EXPECT_EQ(j[4]["min_param"], 4);
  EXPECT_EQ(j[7]["a"][2], "7/24");
  EXPECT_EQ(nlohmann::json::parse(j.dump()), j);
  auto s = space_json(catalog_space(8));
  EXPECT_EQ(s["d"][1], "28");
}

TEST(Homothety, Examples) {
  std::vector<MetricTriple> a{{1, 1, 2}, {2, 2, 4}};
  EXPECT_EQ(homothety_classes(a, R(1, 1000)).size(), 1u);

  std::vector<MetricTriple> b{{1, 1, 1}, {2, 1, 1}, {1, 2, 1}, {1, 1, 2}};
  EXPECT_EQ(homothety_classes(b, R(1, 1000)).size(), 4u);

  QuadExt s2 = QuadExt::sqrt_of(R(2));
  std::vector<MetricTriple> c{{3, 3, 4},
                              {6, 6, 8},
                              {QuadExt(R(8)) + QuadExt(R(3, 2)) * s2, QuadExt(R(8)) - QuadExt(R(3, 2)) * s2, R(20, 3)}};
  auto classes = homothety_classes(c, R(1, 1000));
  ASSERT_EQ(classes.size(), 2u);
  EXPECT_EQ(classes[0], (std::vector<size_t>{0, 1}));
}

TEST(Homothety, IntervalsSeparateMergeOrRefuse) {
  Interval near1(R(999999, 1000000), R(1000001, 1000000));
  std::vector<MetricTriple> merged{{Interval(near1), R(1), R(1)}, {R(1), R(1), R(1)}};
  EXPECT_EQ(homothety_classes(merged, R(1, 1000)).size(), 1u);

  std::vector<MetricTriple> split{{Interval(R(3, 2), R(8, 5)), R(1), R(1)}, {R(1), R(1), R(1)}};
  EXPECT_EQ(homothety_classes(split, R(1, 1000000000)).size(), 2u);

  EXPECT_EQ(code_of([&] { homothety_classes(merged, R(1, 10000000)); }), Errc::IndistinguishableAtTolerance);
}

TEST(Homothety, MixedRadicandsAreDistinct) {
  QuadExt r2 = QuadExt::sqrt_of(R(2)), r3 = QuadExt::sqrt_of(R(3));
  std::vector<MetricTriple> m{{r2, R(1), R(1)}, {r3, R(1), R(1)}, {r2 * QuadExt(2), R(2), R(2)}};
  auto classes = homothety_classes(m, R(1, 1000));
  ASSERT_EQ(classes.size(), 2u);
  EXPECT_EQ(classes[0], (std::vector<size_t>{0, 2}));
}

TEST(Homothety, InvariantUnderGlobalRescaling) {
  std::vector<MetricTriple> base{{1, 1, 2}, {2, 1, 1}, {3, 3, 4}, {6, 6, 8}, {1, 2, 1}};
  for (long lambda : {2L, 7L}) {
    std::vector<MetricTriple> scaled;
    for (const auto& m : base)
      scaled.emplace_back(R(lambda) * std::get<BigRational>(m[0]), R(lambda) * std::get<BigRational>(m[1]),
                          R(lambda) * std::get<BigRational>(m[2]));
    EXPECT_EQ(homothety_classes(scaled, R(1, 1000)), homothety_classes(base, R(1, 1000)));
  }
}

TEST(MetricTriple, RejectsNonPositive) {
  EXPECT_EQ(code_of([] { MetricTriple(1, 0, 1); }), Errc::NonPositiveMetric);
  EXPECT_EQ(code_of([] { MetricTriple(Interval(R(-1), R(1)), R(1), R(1)); }), Errc::NonPositiveMetric);
  EXPECT_EQ(code_of([] { MetricTriple(QuadExt(R(1)) - QuadExt::sqrt_of(R(2)), R(1), R(1)); }),
            Errc::NonPositiveMetric);
}
