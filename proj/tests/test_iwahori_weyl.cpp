#include "iwk/oracles/suites.hpp"

#include <gtest/gtest.h>

using namespace iwk;

namespace {

IwElement t(const DatumPtr& d, const std::string& s) { return translation(d, parse_coweight(*d, s)); }

}  // namespace

TEST(Group, InverseAndSigma) {
  for (const auto& n : {"GL2", "GSp4", "ResE2-GL2", "U3-unram"}) {
    const auto d = preset(n);
    for (const auto& x : oracle::elements_up_to(d, 3)) {
      EXPECT_EQ(mul(x, inv(x)), identity(d)) << n;
      EXPECT_EQ(sigma_power(x, d->sigma_order()), x) << n;
      EXPECT_EQ(mul(x, identity(d)), oracle::times(x, identity(d)));
    }
  }
}

TEST(Length, Examples) {
  const auto gl2 = preset("GL2");
  EXPECT_EQ(length(identity(gl2)), 0);
  EXPECT_EQ(length(t(gl2, "1,0")), 1);
  EXPECT_EQ(oracle::bfs_length(t(gl2, "1,0")), 1);
  const auto sl2 = preset("SL2");
  EXPECT_EQ(length(t(sl2, "1")), 2);
  EXPECT_EQ(oracle::bfs_length(t(sl2, "1")), 2);
}

TEST(Length, MatchesBfsOnSmallPresets) {
  for (const auto& n : {"GL2", "SL2", "PGL2", "SU3-unram"}) {
    const auto r = oracle::suite_length(preset(n), 4);
    EXPECT_TRUE(r.passed()) << n;
    EXPECT_GT(r.checked, 0u);
  }
}

TEST(ReducedWord, Examples) {
  const auto gl2 = preset("GL2");
  const ReducedWord c = reduced_word(t(gl2, "1,1"));
  EXPECT_TRUE(c.word.empty());
  EXPECT_EQ(c.omega, t(gl2, "1,1"));
  const IwElement x = t(gl2, "1,0");
  const ReducedWord w = reduced_word(x);
  EXPECT_EQ(w.word.size(), 1u);
  EXPECT_EQ(length(w.omega), 0);
  EXPECT_EQ(from_word(gl2, w.word, w.omega), x);
}

TEST(OmegaComponent, Examples) {
  const auto gl2 = preset("GL2");
  EXPECT_EQ(abs_int(omega_component(t(gl2, "2,1"))[0]), Int(3));
  for (int w = 0; w < static_cast<int>(gl2->weyl_order()); ++w)
    EXPECT_EQ(omega_component(finite(gl2, w)), gl2->pi1().zero());
  const auto sl2 = preset("SL2");
  EXPECT_TRUE(omega_component(t(sl2, "3")).empty());
}

TEST(Bruhat, Examples) {
  const auto gl2 = preset("GL2");
  const IwElement a = t(gl2, "1,0"), b = t(gl2, "0,1");
  EXPECT_TRUE(bruhat_leq(a, a));
  EXPECT_FALSE(bruhat_leq(a, b));
  EXPECT_FALSE(bruhat_leq(b, a));
  EXPECT_FALSE(oracle::subword_leq(a, b));
  for (const auto& x : oracle::elements_up_to(gl2, 3))
    if (omega_component(x) == gl2->pi1().zero()) EXPECT_TRUE(bruhat_leq(identity(gl2), x));
}

TEST(Bruhat, MatchesSubwordOrder) {
  for (const auto& n : {"GL2", "SL2", "PGL2"}) EXPECT_TRUE(oracle::suite_bruhat(preset(n), 3).passed()) << n;
}

TEST(MinCosetRep, Examples) {
  const auto gl2 = preset("GL2");
  const int s = gl2->generator_of_simple(0);
  const IwElement x = t(gl2, "1,0");
  EXPECT_EQ(min_coset_rep({}, x, CosetSide::left), x);
  EXPECT_EQ(min_coset_rep({s}, generator(gl2, s), CosetSide::left), identity(gl2));
  const IwElement sx = left_mul_gen(x, s);
  const IwElement m = min_coset_rep({s}, sx, CosetSide::left);
  EXPECT_EQ(length(m), std::min(length(sx), length(x)));
  EXPECT_TRUE(m == sx || m == x);
}

TEST(SubgroupFinite, Examples) {
  const auto sl2 = preset("SL2");
  EXPECT_TRUE(subgroup_finite(*sl2, {}));
  EXPECT_FALSE(subgroup_finite(*sl2, {0, 1}));
  EXPECT_TRUE(subgroup_finite(*sl2, {0}));
  for (const auto& n : {"GL2", "SL3", "GSp4", "ResE2-GL2", "U3-unram"})
    EXPECT_TRUE(oracle::suite_finite(preset(n)).passed()) << n;
}

TEST(Canonical, LabelsAndJsonRoundTrip) {
  const auto d = preset("GSp4");
  for (const auto& x : oracle::elements_up_to(d, 2)) {
    EXPECT_EQ(element_from_json(d, element_to_json(x)), x);
    EXPECT_FALSE(element_label(x).empty());
  }
}
