#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "vlink/brauer.hpp"
#include "vlink/gram.hpp"

namespace {

using namespace vlink;
using namespace vlink::testing;

TEST(Gram, CirclePowerRankOne) {
  auto f = InvariantFunction::circle_power(-2);
  auto rep = gram_matrix(f, {Diagram{}, Diagram::unknots(1), Diagram::unknots(2)}, 0);
  ASSERT_EQ(rep.matrix.rows(), 3);
  for (int s = 0; s < 3; ++s)
    for (int t = 0; t < 3; ++t) EXPECT_DOUBLE_EQ(rep.matrix(s, t), std::pow(-2.0, s + t));
  EXPECT_TRUE(rep.is_psd(1e-8));
  EXPECT_NEAR(rep.norm, 1 + 4 + 16, 1e-9);
}

TEST(Gram, FamilyIsDeduplicated) {
  auto f = InvariantFunction::circle_power(3);
  std::vector<int> perm{1, 0};
  auto beta = fixture_beta();
  auto rep = gram_matrix(f, {beta, beta.relabeled(perm), curl_12_34(), curl_12_34().rotated(0)}, 1);
  EXPECT_EQ(rep.family.size(), 2u);
}

TEST(Gram, EntriesAreZeroWhenKExceedsCrossings) {
  auto f = InvariantFunction::circle_power(2);
  auto rep = gram_matrix(f, {Diagram::unknots(1), curl_12_34()}, 1);
  EXPECT_EQ(rep.matrix(0, 0), 0.0);
  EXPECT_EQ(rep.matrix(0, 1), 0.0);
  // curl ⋈_1 curl: both reconnections close into circles only.
  EXPECT_GT(rep.matrix(1, 1), 0.0);
}

TEST(Gram, PartitionFunctionsArePositive) {
  std::mt19937_64 rng(17);
  const auto family = all_canonical_diagrams(2);
  for (int trial = 0; trial < 3; ++trial) {
    auto f = InvariantFunction::from_model(random_symmetric(2, rng));
    for (int k = 0; k <= 2; ++k) {
      auto rep = gram_matrix(f, family, k);
      EXPECT_TRUE(rep.is_psd(1e-8)) << "k=" << k << " min=" << rep.min_eigenvalue << " norm=" << rep.norm;
    }
  }
}

TEST(Gram, NegativeCirclePowersOnMatchingDiagrams) {
  std::vector<Diagram> family;
  for (const auto& m : enumerate_matchings(8)) family.push_back(matching_diagram(m));
  for (double c : {-2.0, -4.0}) {
    auto rep = gram_matrix(InvariantFunction::circle_power(c), family, 2);
    EXPECT_TRUE(rep.is_psd(1e-8)) << c;
  }
}

TEST(Gram, NegativeCirclePowerCanFailForOddValues) {
  std::vector<Diagram> family;
  for (const auto& m : enumerate_matchings(8)) family.push_back(matching_diagram(m));
  auto rep = gram_matrix(InvariantFunction::circle_power(-3), family, 2);
  EXPECT_FALSE(rep.is_psd(1e-6));
}

TEST(Gram, JsonShape) {
  auto rep = gram_matrix(InvariantFunction::circle_power(2), {Diagram{}, Diagram::unknots(1)}, 0);
  auto j = to_json(rep);
  EXPECT_EQ(j["k"], 0);
  EXPECT_EQ(j["matrix"].size(), 2u);
  EXPECT_DOUBLE_EQ(j["matrix"][1][1].get<double>(), 4.0);
}

TEST(DerivativeIdentity, Unknot) {
  std::mt19937_64 rng(3);
  auto r = random_symmetric(2, rng);
  EXPECT_EQ(derivative_identity_gap(r, Diagram::unknots(1), Diagram::unknots(1)), 0.0);
}

TEST(DerivativeIdentity, ScalarCurlByHand) {
  auto r = make_model<double>(1, {{1, 1, 1, 1, 1.0}}, false);
  // f(curl ⋈_1 curl) = 1 (circles only, mass 1); d f(curl) = 1 in the one coordinate.
  EXPECT_NEAR(eval(r, k_join(curl_12_34(), curl_12_34(), 1)), 1.0, 1e-12);
  EXPECT_NEAR(gradient(r, curl_12_34())[0], 1.0, 1e-12);
  EXPECT_LE(derivative_identity_gap(r, curl_12_34(), curl_12_34()), 1e-10);
}

TEST(DerivativeIdentity, RandomModels) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    auto r = random_symmetric(2, rng);
    auto g = random_diagram(rng, 1 + static_cast<int>(rng() % 2));
    auto h = random_diagram(rng, 1 + static_cast<int>(rng() % 2), static_cast<int>(rng() % 2));
    EXPECT_LE(derivative_identity_gap(r, g, h), 1e-6) << "trial " << trial;
  }
}

TEST(DerivativeIdentity, AgreesWithFiniteDifferenceGradients) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    auto r = random_symmetric(2, rng);
    auto g = random_diagram(rng, 2), h = random_diagram(rng, 1);
    auto dg = finite_difference_gradient(r, [&](const VertexModel& m) { return eval(m, g); });
    auto dh = finite_difference_gradient(r, [&](const VertexModel& m) { return eval(m, h); });
    double rhs = 0;
    for (std::size_t i = 0; i < dg.size(); ++i) rhs += dg[i] * dh[i];
    EXPECT_NEAR(eval(r, k_join(g, h, 1)), rhs, 1e-6);
  }
}

}  // namespace
