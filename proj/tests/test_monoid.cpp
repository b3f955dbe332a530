#include <gtest/gtest.h>

#include <set>

#include "symplex/error.hpp"
#include "symplex/monoid.hpp"

using namespace symplex;

namespace {

// All non-negative combinations with coefficients up to `depth`.
std::set<IntVector> brute_force_members(const std::vector<IntVector>& gens, int depth) {
  std::set<IntVector> out{IntVector(gens.front().size(), 0)};
  for (int round = 0; round < depth; ++round) {
    std::set<IntVector> next = out;
    for (const auto& x : out) {
      for (const auto& g : gens) {
        IntVector y = x;
        for (std::size_t k = 0; k < y.size(); ++k) y[k] += g[k];
        next.insert(y);
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

TEST(MonoidFreeMixed, SignPattern) {
  auto m = MonoidSpec::free_mixed(1, 1);
  EXPECT_TRUE(m->contains(ExponentVector({3, -2})));
  EXPECT_FALSE(m->contains(ExponentVector({-1, 0})));
  EXPECT_FALSE(m->is_positive());
  EXPECT_TRUE(MonoidSpec::free_mixed(2, 0)->is_positive());
}

TEST(MonoidAffine, MatchesEnumerationInBox) {
  const std::vector<IntVector> gens{{1, 0}, {1, 1}, {1, 2}};
  auto m = MonoidSpec::affine(gens);
  // Any member with x <= 6 needs at most 6 generators (each adds 1 to x).
  const auto members = brute_force_members(gens, 6);
  for (std::int64_t x = -2; x <= 6; ++x) {
    for (std::int64_t y = -2; y <= 13; ++y) {
      EXPECT_EQ(m->contains(ExponentVector({x, y})), members.count({x, y}) > 0) << x << "," << y;
    }
  }
}

TEST(MonoidAffine, NonNormalGapsAreDetected) {
  // <2, 3> misses 1.
  auto m = MonoidSpec::affine({{2}, {3}});
  EXPECT_FALSE(m->contains(ExponentVector({1})));
  EXPECT_TRUE(m->contains(ExponentVector({5})));
  EXPECT_TRUE(m->contains(ExponentVector({7})));
}

TEST(MonoidAffine, CertificateReconstructs) {
  const std::vector<IntVector> gens{{1, 0, 0}, {0, 1, 0}, {1, 1, 2}, {0, 0, 2}};
  auto m = MonoidSpec::affine(gens);
  for (const auto& v : brute_force_members(gens, 4)) {
    auto cert = m->certificate(ExponentVector(v));
    ASSERT_TRUE(cert.has_value());
    IntVector sum(3, 0);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      EXPECT_GE((*cert)[i], 0);
      for (std::size_t k = 0; k < 3; ++k) sum[k] += (*cert)[i] * gens[i][k];
    }
    EXPECT_EQ(sum, v);
  }
  EXPECT_FALSE(m->certificate(ExponentVector({0, 0, 1})).has_value());
}

TEST(MonoidAffine, BoundExceededIsAnError) {
  auto m = MonoidSpec::affine({{1}}, 3);
  EXPECT_TRUE(m->contains(ExponentVector({3})));
  EXPECT_FALSE(m->contains(ExponentVector({-1})));
  try {
    (void)m->contains(ExponentVector({10}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MembershipBoundExceeded);
  }
}

TEST(MonoidAffine, LinealityDirections) {
  auto m = MonoidSpec::affine({{1, 0}, {-1, 0}, {0, 1}});
  EXPECT_FALSE(m->is_positive());
  EXPECT_TRUE(m->contains(ExponentVector({-5, 3})));
  EXPECT_FALSE(m->contains(ExponentVector({2, -1})));
}

TEST(MonoidAffine, ValidatesGenerators) {
  EXPECT_THROW((void)MonoidSpec::affine({{1, 0}, {1, 0}}), Error);
  EXPECT_THROW((void)MonoidSpec::affine({{0, 0}}), Error);
  try {
    (void)MonoidSpec::affine({{1, 0, 0, 0, 0, 0, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RankTooLarge);
  }
}

TEST(MonoidCDivisible, ScaledMembership) {
  auto m = MonoidSpec::c_divisible(MonoidSpec::free_mixed(1, 0), 2, 3);
  EXPECT_EQ(m->denominator(), 8);
  EXPECT_TRUE(m->contains(ExponentVector({1}, 8)));
  EXPECT_TRUE(m->contains(ExponentVector({1}, 2)));
  EXPECT_FALSE(m->contains(ExponentVector({1}, 16)));
  EXPECT_FALSE(m->contains(ExponentVector({-1}, 8)));
}

TEST(MonoidAdjoinInverse, LaurentExtension) {
  auto m = MonoidSpec::free_mixed(2, 0, {"c", "t"});
  auto ext = MonoidSpec::adjoin_inverse(m, m->unit_vector(1));
  EXPECT_EQ(ext->kind(), MonoidSpec::Kind::FreeMixed);
  EXPECT_EQ(ext->laurent_vars(), 1U);
  EXPECT_TRUE(ext->contains(ExponentVector({0, -3})));
  EXPECT_FALSE(ext->contains(ExponentVector({-1, 0})));

  auto a = MonoidSpec::affine({{1, 0}, {1, 1}});
  auto b = MonoidSpec::adjoin_inverse(a, ExponentVector({1, 0}));
  EXPECT_TRUE(b->contains(ExponentVector({-1, 1})));
  EXPECT_EQ(MonoidSpec::adjoin_inverse(b, ExponentVector({1, 0})), b);
}
