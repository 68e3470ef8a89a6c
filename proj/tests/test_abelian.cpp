#include "iwk/oracles/oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace iwk;

namespace {

void expect_snf(const IntMatrix& m) {
  const SmithForm s = smith_normal_form(m);
  EXPECT_TRUE(oracle::verify_smith(m, s.U, s.D, s.V));
}

}  // namespace

TEST(Smith, DiagonalTwoThree) {
  const IntMatrix m{{2, 0}, {0, 3}};
  const SmithForm s = smith_normal_form(m);
  EXPECT_EQ(s.D, (IntMatrix{{1, 0}, {0, 6}}));
  expect_snf(m);
}

TEST(Smith, ZeroAndIdentity) {
  EXPECT_EQ(smith_normal_form(IntMatrix{{0}}).D, (IntMatrix{{0}}));
  EXPECT_EQ(smith_normal_form(IntMatrix::identity(3)).D, IntMatrix::identity(3));
}

TEST(Smith, RandomMatricesVerified) {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> entry(-6, 6), dim(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = dim(rng), c = dim(rng);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = entry(rng);
    expect_snf(m);
  }
}

TEST(Coinvariants, Swap) {
  const FgAbelian g = coinvariants(2, IntMatrix{{0, 1}, {1, 0}});
  EXPECT_EQ(g.free_rank(), 1u);
  EXPECT_TRUE(g.torsion().empty());
  EXPECT_EQ(g.project({Int(1), Int(0)}), g.project({Int(0), Int(1)}));
  EXPECT_EQ(abs_int(g.project({Int(1), Int(1)})[0]), Int(2));
}

TEST(Coinvariants, IdentityAndNegation) {
  EXPECT_TRUE(coinvariants(3, IntMatrix::identity(3)).same_structure(FgAbelian::canonical(3, {})));
  const FgAbelian g = coinvariants(1, IntMatrix{{-1}});
  EXPECT_EQ(g.free_rank(), 0u);
  EXPECT_EQ(g.torsion(), std::vector<Int>{Int(2)});
}

TEST(FixedSubgroup, Examples) {
  const FgAbelian z = FgAbelian::canonical(1, {});
  EXPECT_TRUE(fixed_subgroup(z, IntMatrix{{1}}).group.same_structure(z));
  EXPECT_TRUE(fixed_subgroup(z, IntMatrix{{-1}}).group.is_trivial());
  const FgAbelian z2 = FgAbelian::canonical(0, {Int(2)});
  EXPECT_TRUE(fixed_subgroup(z2, IntMatrix{{1}}).group.same_structure(z2));
}

TEST(FixedSubgroup, SwapOnZ2) {
  const FgAbelian g = FgAbelian::canonical(2, {});
  const Subgroup s = fixed_subgroup(g, IntMatrix{{0, 1}, {1, 0}});
  EXPECT_EQ(s.group.free_rank(), 1u);
  EXPECT_TRUE(s.group.torsion().empty());
}

TEST(FgAbelian, ReduceAndDescribe) {
  const FgAbelian g = FgAbelian::canonical(1, {Int(2), Int(4)});
  EXPECT_EQ(g.describe(), "Z + Z/2 + Z/4");
  EXPECT_EQ(g.reduce({Int(3), Int(3), Int(-1)}), (std::vector<Int>{Int(3), Int(1), Int(3)}));
  EXPECT_THROW(FgAbelian::canonical(0, {Int(2), Int(3)}), Error);
}
