#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "vlink/vertex_model.hpp"

namespace {

using namespace vlink;
using namespace vlink::testing;

/// Residuals straight from the defining sums, with Kronecker deltas spelled
/// out over every index tuple.
ResidualTriple<Rational> residual_oracle(const ExactVertexModel& r) {
  const int n = r.n();
  auto delta = [](int a, int b) { return Rational(a == b ? 1 : 0); };
  ResidualTriple<Rational> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rational s = 0;
      for (int a = 0; a < n; ++a) s += r(i, a, a, j);
      out.r1 += (s - delta(i, j)) * (s - delta(i, j));
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Rational s = 0;
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) s += r(i, j, a, b) * r(a, l, k, b);
          Rational d = s - delta(i, k) * delta(j, l);
          out.r2 += d * d;
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          for (int m = 0; m < n; ++m)
            for (int h = 0; h < n; ++h) {
              Rational lhs = 0, rhs = 0;
              for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                  for (int c = 0; c < n; ++c) {
                    lhs += r(i, a, b, h) * r(j, k, c, a) * r(b, c, l, m);
                    rhs += r(i, j, b, c) * r(b, k, l, a) * r(c, a, m, h);
                  }
              out.r3 += (lhs - rhs) * (lhs - rhs);
            }
  return out;
}

TEST(MakeModel, ScalarModel) {
  auto r = make_model<double>(1, {{1, 1, 1, 1, 1.0}}, false);
  EXPECT_EQ(r.n(), 1);
  EXPECT_EQ(r(0, 0, 0, 0), 1.0);
}

TEST(MakeModel, AsymmetricInputIsRejected) {
  try {
    make_model<double>(2, {{1, 2, 2, 1, 5.0}}, false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SymmetryViolation);
  }
}

TEST(MakeModel, SymmetrizeAverages) {
  auto r = make_model<double>(2, {{1, 2, 2, 1, 5.0}}, true);
  EXPECT_EQ(r(0, 1, 1, 0), 2.5);
  EXPECT_EQ(r(1, 0, 0, 1), 2.5);
}

TEST(MakeModel, IndexOutOfRange) {
  try {
    make_model<double>(2, {{1, 3, 1, 1, 1.0}}, true);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IndexOutOfRange);
  }
}

TEST(MakeModel, SymmetrizeIsAProjection) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> idx(1, 3), val(-9, 9);
  std::vector<ModelEntry<Rational>> entries;
  for (int t = 0; t < 30; ++t) entries.push_back({idx(rng), idx(rng), idx(rng), idx(rng), make_rational(val(rng), 7)});
  auto once = make_model<Rational>(3, std::span<const ModelEntry<Rational>>(entries), true);
  std::vector<ModelEntry<Rational>> again;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      for (int k = 1; k <= 3; ++k)
        for (int l = 1; l <= 3; ++l) again.push_back({i, j, k, l, once(i - 1, j - 1, k - 1, l - 1)});
  EXPECT_EQ(make_model<Rational>(3, std::span<const ModelEntry<Rational>>(again), true), once);
}

TEST(Residuals, IdentityIsExactlyZero) {
  for (int n = 1; n <= 4; ++n) {
    auto res = residuals(ExactVertexModel::identity(n));
    EXPECT_EQ(res.r1, 0) << n;
    EXPECT_EQ(res.r2, 0) << n;
    EXPECT_EQ(res.r3, 0) << n;
    auto oracle = residual_oracle(ExactVertexModel::identity(n));
    EXPECT_EQ(oracle.r1, 0);
    EXPECT_EQ(oracle.r2, 0);
    EXPECT_EQ(oracle.r3, 0);
  }
}

TEST(Residuals, ZeroModel) {
  for (int n = 1; n <= 3; ++n) {
    auto res = residuals(VertexModel::zero(n));
    EXPECT_EQ(res.r1, n);
    EXPECT_EQ(res.r2, n * n);
    EXPECT_EQ(res.r3, 0);
  }
}

TEST(Residuals, ScalarModel) {
  for (double r : {-2.0, -0.5, 0.0, 0.75, 1.0, 3.0}) {
    auto res = residuals(make_model<double>(1, {{1, 1, 1, 1, r}}, false));
    EXPECT_DOUBLE_EQ(res.r1, (r - 1) * (r - 1));
    EXPECT_DOUBLE_EQ(res.r2, (r * r - 1) * (r * r - 1));
    EXPECT_DOUBLE_EQ(res.r3, 0.0);
  }
}

TEST(Residuals, MatchOracleOnRandomRationalModels) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> val(-5, 5);
  for (int n = 1; n <= 2; ++n)
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<ModelEntry<Rational>> entries;
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          for (int k = 1; k <= n; ++k)
            for (int l = 1; l <= n; ++l) entries.push_back({i, j, k, l, make_rational(val(rng), 3)});
      auto r = make_model<Rational>(n, std::span<const ModelEntry<Rational>>(entries), true);
      auto got = residuals(r);
      auto want = residual_oracle(r);
      EXPECT_EQ(got.r1, want.r1);
      EXPECT_EQ(got.r2, want.r2);
      EXPECT_EQ(got.r3, want.r3);
    }
}

TEST(IsRMatrix, Examples) {
  EXPECT_TRUE(is_rmatrix(VertexModel::identity(3), 1e-12));
  EXPECT_FALSE(is_rmatrix(VertexModel::zero(2), 1e-12));
  EXPECT_TRUE(is_rmatrix(make_model<double>(1, {{1, 1, 1, 1, 1.0}}, false), 1e-12));
}

TEST(OrthogonalTransform, IdentityAndNegation) {
  std::mt19937_64 rng(9);
  auto r = random_symmetric(3, rng);
  auto id = orthogonal_transform(r, Eigen::MatrixXd::Identity(3, 3));
  auto neg = orthogonal_transform(r, -Eigen::MatrixXd::Identity(3, 3));
  for (std::size_t f = 0; f < r.size(); ++f) {
    EXPECT_DOUBLE_EQ(id.entries()[f], r.entries()[f]);
    EXPECT_DOUBLE_EQ(neg.entries()[f], r.entries()[f]);
  }
}

TEST(OrthogonalTransform, RejectsNonOrthogonal) {
  Eigen::MatrixXd u = Eigen::MatrixXd::Identity(2, 2);
  u(0, 1) = 1e-6;
  try {
    orthogonal_transform(VertexModel::identity(2), u);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotOrthogonal);
  }
}

TEST(OrthogonalTransform, ResidualsAreInvariant) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    auto r = random_symmetric(2, rng);
    auto u = random_orthogonal(2, rng);
    auto a = residuals(r);
    auto b = residuals(orthogonal_transform(r, u));
    EXPECT_NEAR(a.r1, b.r1, 1e-9);
    EXPECT_NEAR(a.r2, b.r2, 1e-9);
    EXPECT_NEAR(a.r3, b.r3, 1e-9);
  }
}

TEST(SymmetricBasis, DimensionAndRoundTrip) {
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(symmetric_basis(n).size(), static_cast<std::size_t>((n * n * n * n + n * n) / 2));
  std::mt19937_64 rng(2);
  auto r = random_symmetric(3, rng);
  auto back = from_coordinates(3, coordinates(r));
  for (std::size_t f = 0; f < r.size(); ++f) EXPECT_NEAR(back.entries()[f], r.entries()[f], 1e-15);
  // Orthonormal coordinates preserve the Frobenius norm.
  double frob = 0, coord = 0;
  for (double v : r.entries()) frob += v * v;
  for (double v : coordinates(r)) coord += v * v;
  EXPECT_NEAR(frob, coord, 1e-12);
}

}  // namespace
