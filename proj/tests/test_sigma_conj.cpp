#include "iwk/oracles/suites.hpp"

#include <gtest/gtest.h>

using namespace iwk;

namespace {

CoWeight cw(const DatumPtr& d, const std::string& s) { return parse_coweight(*d, s); }
RatCoWeight rats(std::initializer_list<Rat> v) { return RatCoWeight{std::vector<Rat>(v)}; }

}  // namespace

TEST(Newton, Gl2) {
  const auto d = preset("GL2");
  EXPECT_EQ(newton(translation(d, cw(d, "1,0"))).nu, rats({1, 0}));
  EXPECT_EQ(newton(tau_of(d, cw(d, "1,0"))).nu_dom, rats({Rat(1, 2), Rat(1, 2)}));
}

TEST(Kottwitz, Examples) {
  const auto gl2 = preset("GL2");
  EXPECT_EQ(abs_int(kottwitz(translation(gl2, cw(gl2, "1,0")))[0]), Int(1));
  EXPECT_EQ(kottwitz(identity(gl2)), gl2->pi1_coinvariants().zero());
  const auto res = preset("ResE2-GL2");
  const auto k = kottwitz(translation(res, cw(res, "1,0,0,0")));
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(abs_int(k[0]), Int(1));
}

TEST(Straight, Examples) {
  const auto d = preset("GL2");
  EXPECT_TRUE(is_straight(tau_of(d, cw(d, "1,0"))));
  EXPECT_FALSE(is_straight(generator(d, d->generator_of_simple(0))));
  EXPECT_TRUE(is_straight(translation(d, cw(d, "1,0"))));
  EXPECT_EQ(straight_elements(adm(d, cw(d, "1,0"))).size(), 3u);
  EXPECT_EQ(straight_elements(adm(d, d->zero())), std::vector<IwElement>{identity(d)});
}

TEST(BGMu, Gl2) {
  const auto d = preset("GL2");
  const auto b = b_g_mu(d, cw(d, "1,0"));
  ASSERT_EQ(b.size(), 2u);
  std::set<RatCoWeight> nus;
  int basic = 0;
  for (const auto& e : b) {
    nus.insert(e.invariants.newton);
    basic += e.invariants.is_basic;
    EXPECT_EQ(e.invariants.kottwitz, b.front().invariants.kottwitz);
  }
  EXPECT_EQ(nus, (std::set<RatCoWeight>{rats({1, 0}), rats({Rat(1, 2), Rat(1, 2)})}));
  EXPECT_EQ(basic, 1);
}

TEST(BGMu, ZeroAndSl2) {
  const auto gl2 = preset("GL2");
  const auto z = b_g_mu(gl2, gl2->zero());
  ASSERT_EQ(z.size(), 1u);
  EXPECT_TRUE(z[0].invariants.is_basic);
  const auto sl2 = preset("SL2");
  const auto b = b_g_mu(sl2, cw(sl2, "1"));
  ASSERT_EQ(b.size(), 2u);
  std::set<RatCoWeight> nus;
  for (const auto& e : b) nus.insert(e.invariants.newton);
  EXPECT_EQ(nus, (std::set<RatCoWeight>{rats({0}), rats({1})}));
}

TEST(BGMu, RoutesAgreeAndWitnessesAreStraight) {
  for (const auto& n : {"GL3", "GSp4", "ResE2-GL2", "U3-unram", "SU4-unram"}) {
    const auto d = preset(n);
    for (const auto& mu : oracle::dominant_matrix(*d, 1)) {
      const auto a = b_g_mu_by_straight(d, mu);
      const auto b = b_g_mu_by_invariants(d, mu);
      std::set<SigmaClassInvariants> sa, sb(b.begin(), b.end());
      for (const auto& e : a) {
        sa.insert(e.invariants);
        EXPECT_EQ(Rat(length(e.witness)), two_rho_pairing(*d, e.invariants.newton)) << n;
      }
      EXPECT_EQ(sa, sb) << n << to_string(mu);
      EXPECT_EQ(sa.size(), a.size()) << n;
    }
  }
}

TEST(LeqB, Gl2) {
  const auto d = preset("GL2");
  const auto b = b_g_mu(d, cw(d, "1,0"));
  const auto& basic = b[0].invariants.is_basic ? b[0] : b[1];
  const auto& ord = b[0].invariants.is_basic ? b[1] : b[0];
  EXPECT_TRUE(leq_b(*d, basic.invariants, basic.invariants));
  EXPECT_TRUE(leq_b(*d, basic.invariants, ord.invariants));
  EXPECT_FALSE(leq_b(*d, ord.invariants, basic.invariants));
}

TEST(SigmaClasses, MatchOrbitClosure) {
  for (const auto& n : {"GL2", "SL3", "ResE2-GL2", "U3-unram"}) {
    const auto d = preset(n);
    EXPECT_TRUE(oracle::suite_sigma(d, oracle::dominant_matrix(*d, 1)).passed()) << n;
  }
}
