#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "vlink/theorem_fixtures.hpp"

namespace {

using namespace vlink;
using namespace vlink::testing;

TEST(Fixtures, Shapes) {
  const auto fx = build_fixtures();
  EXPECT_EQ(fx.d1.crossing_count(), 1);
  EXPECT_EQ(fx.d2.crossing_count(), 2);
  EXPECT_EQ(fx.d3.crossing_count(), 2);
  EXPECT_EQ(fx.d4.crossing_count(), 4);
  EXPECT_EQ(fx.d5l.crossing_count(), 6);
  EXPECT_EQ(fx.d5r.crossing_count(), 6);
  EXPECT_EQ(fx.d5rr.crossing_count(), 6);
  EXPECT_EQ(fx.d1, Diagram::from_edges(1, 0, {{{1, 2}, {1, 3}}, {{1, 1}, {1, 4}}}));
  EXPECT_EQ(fx.d2, Diagram::from_edges(2, 0, {{{1, 2}, {1, 3}}, {{2, 2}, {2, 3}}, {{1, 1}, {2, 1}}, {{1, 4}, {2, 4}}}));
}

TEST(Fixtures, IdentityValuesByIndexAlgebra) {
  const auto fx = build_fixtures();
  for (int n = 1; n <= 3; ++n) {
    auto r = ExactVertexModel::identity(n);
    EXPECT_EQ(eval(r, fx.d1), n);
    EXPECT_EQ(eval_bruteforce(r, fx.d1), n);
    EXPECT_EQ(eval(r, fx.d2), n);
    EXPECT_EQ(eval(r, fx.d3), n * n);
    EXPECT_EQ(eval(r, fx.d4), n * n);
  }
}

TEST(Fixtures, ResidualReconstructionExact) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> val(-3, 3);
  for (int n = 1; n <= 2; ++n)
    for (int trial = 0; trial < 4; ++trial) {
      auto r = ExactVertexModel::zero(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) r.set(i, j, k, l, make_rational(val(rng), 2));
      auto direct = residuals(r);
      auto rebuilt = residuals_from_fixtures(r);
      EXPECT_EQ(direct.r1, rebuilt.r1);
      EXPECT_EQ(direct.r2, rebuilt.r2);
      EXPECT_EQ(direct.r3, rebuilt.r3);
    }
}

TEST(Fixtures, ResidualReconstructionNumeric) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + trial % 3;
    auto r = random_symmetric(n, rng);
    auto direct = residuals(r);
    auto rebuilt = residuals_from_fixtures(r);
    EXPECT_NEAR(direct.r1, rebuilt.r1, 1e-9 * std::max(1.0, direct.r1));
    EXPECT_NEAR(direct.r2, rebuilt.r2, 1e-9 * std::max(1.0, direct.r2));
    EXPECT_NEAR(direct.r3, rebuilt.r3, 1e-9 * std::max(1.0, direct.r3));
    auto gaps = check_theorem_conditions(r);
    EXPECT_NEAR(gaps.gap1, direct.r1, 1e-9 * std::max(1.0, direct.r1));
    EXPECT_NEAR(gaps.gap2, direct.r2, 1e-9 * std::max(1.0, direct.r2));
    EXPECT_NEAR(2 * gaps.gap3, direct.r3, 1e-9 * std::max(1.0, direct.r3));
  }
}

TEST(TheoremConditions, Identity) {
  for (int n = 1; n <= 3; ++n) {
    auto gaps = check_theorem_conditions(VertexModel::identity(n));
    EXPECT_NEAR(gaps.gap1, 0.0, 1e-10);
    EXPECT_NEAR(gaps.gap2, 0.0, 1e-10);
    EXPECT_NEAR(gaps.gap3, 0.0, 1e-10);
  }
}

TEST(TheoremConditions, ZeroModel) {
  auto gaps = check_theorem_conditions(VertexModel::zero(2));
  EXPECT_DOUBLE_EQ(gaps.gap1, 2.0);
  EXPECT_DOUBLE_EQ(gaps.gap2, 4.0);
  EXPECT_DOUBLE_EQ(gaps.gap3, 0.0);
}

TEST(TheoremConditions, OrthogonalConjugatesOfIdentity) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    auto r = orthogonal_transform(VertexModel::identity(3), random_orthogonal(3, rng));
    auto gaps = check_theorem_conditions(r);
    EXPECT_LT(gaps.gap1, 1e-8);
    EXPECT_LT(gaps.gap2, 1e-8);
    EXPECT_LT(gaps.gap3, 1e-8);
  }
}

}  // namespace
