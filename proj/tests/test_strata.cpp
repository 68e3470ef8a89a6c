#include "iwk/oracles/suites.hpp"
#include "iwk/strata.hpp"

#include <gtest/gtest.h>

using namespace iwk;

namespace {

CoWeight cw(const DatumPtr& d, const std::string& s) { return parse_coweight(*d, s); }

}  // namespace

TEST(SuppSigma, Examples) {
  const auto sl2 = preset("SL2");
  const IwElement e = identity(sl2);
  EXPECT_TRUE(supp_sigma(e, e).empty());
  EXPECT_EQ(supp_sigma(generator(sl2, 0), e), std::vector<int>{0});
  const auto gl2 = preset("GL2");
  const IwElement tau = tau_of(gl2, cw(gl2, "1,0"));
  EXPECT_EQ(supp_sigma(generator(gl2, 0), tau), (std::vector<int>{0, 1}));
}

TEST(KrBasic, Examples) {
  const auto sl2 = preset("SL2");
  EXPECT_TRUE(kr_basic_flag(identity(sl2), identity(sl2)));
  EXPECT_TRUE(kr_basic_flag(generator(sl2, 0), identity(sl2)));
  const auto gl2 = preset("GL2");
  const IwElement tau = tau_of(gl2, cw(gl2, "1,0"));
  EXPECT_TRUE(kr_basic_flag(identity(gl2), tau));
  EXPECT_FALSE(kr_basic_flag(generator(gl2, 0), tau));
}

TEST(KrBasic, DownwardClosed) {
  for (const auto& n : {"GL2", "GSp4", "ResE2-GL2", "U3-unram"}) {
    const auto d = preset(n);
    for (const auto& mu : oracle::dominant_matrix(*d, 1)) {
      const AdmissibleSet a = adm(d, mu);
      const ClosurePoset p = closure_poset(a);
      for (const auto& [lo, hi] : p.covers)
        if (kr_basic_flag(p.nodes[hi])) EXPECT_TRUE(kr_basic_flag(p.nodes[lo])) << n;
      EXPECT_TRUE(kr_basic_flag(tau_of(d, mu))) << n;
    }
  }
}

TEST(CompactType, Examples) {
  const auto sl2 = preset("SL2");
  EXPECT_EQ(compact_type_factors(identity(sl2)), std::vector<bool>{false});
  const auto gl2 = preset("GL2");
  EXPECT_EQ(compact_type_factors(tau_of(gl2, cw(gl2, "1,0"))), std::vector<bool>{true});
  const auto gl3 = preset("GL3");
  bool found = false;
  for (const auto& mu : oracle::dominant_matrix(*gl3, 1)) {
    const IwElement tau = tau_of(gl3, mu);
    if (std::abs(omega_component(tau)[0].convert_to<long>()) % 3 == 0) continue;
    EXPECT_EQ(compact_type_factors(tau), std::vector<bool>{true});
    found = true;
  }
  EXPECT_TRUE(found);
}

TEST(Pi1Sigma, Structures) {
  EXPECT_EQ(pi1_I_sigma(*preset("GL2")).group.describe(), "Z");
  EXPECT_EQ(pi1_I_sigma(*preset("GL3")).group.describe(), "Z");
  EXPECT_EQ(pi1_I_sigma(*preset("SL2")).group.describe(), "0");
  EXPECT_EQ(pi1_I_sigma(*preset("SL3")).group.describe(), "0");
  EXPECT_EQ(pi1_I_sigma(*preset("PGL2")).group.describe(), "Z/2");
  EXPECT_EQ(pi1_I_sigma(*preset("ResE2-GL2")).group.describe(), "Z");
  for (const auto& n : preset_names()) EXPECT_TRUE(oracle::suite_smith(preset(n)).passed()) << n;
}

TEST(OrbitParahorics, Examples) {
  const auto sl2 = preset("SL2");
  const auto a = sigma_orbit_parahorics(identity(sl2));
  ASSERT_EQ(a.size(), 2u);
  EXPECT_TRUE(a[0].finite && a[1].finite);
  const auto gl2 = preset("GL2");
  const auto b = sigma_orbit_parahorics(tau_of(gl2, cw(gl2, "1,0")));
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].generators, (std::vector<int>{0, 1}));
  EXPECT_FALSE(b[0].finite);
  EXPECT_EQ(sigma_orbit_parahorics(identity(preset("SL3"))).size(), 3u);
}

TEST(Components, Reports) {
  const auto gl2 = preset("GL2");
  const CoWeight mu = cw(gl2, "1,0");
  for (const auto& e : b_g_mu(gl2, mu)) {
    const auto r = component_report(gl2, mu, e.invariants);
    EXPECT_FALSE(r.count.has_value());
    EXPECT_EQ(r.status, "predicted");
  }
  const auto pgl2 = preset("PGL2");
  const CoWeight nu = cw(pgl2, "1");
  for (const auto& e : b_g_mu(pgl2, nu)) {
    if (!e.invariants.is_basic) continue;
    const auto r = component_report(pgl2, nu, e.invariants);
    ASSERT_TRUE(r.count.has_value());
    EXPECT_EQ(*r.count, Int(2));
  }
  const auto z = b_g_mu(gl2, gl2->zero());
  const auto r0 = component_report(gl2, gl2->zero(), z[0].invariants);
  EXPECT_FALSE(r0.count.has_value());
  EXPECT_FALSE(r0.symbolic.empty());
  SigmaClassInvariants bogus = z[0].invariants;
  bogus.newton.coords[0] += 5;
  EXPECT_THROW(component_report(gl2, mu, bogus), Error);
}

TEST(StrataTable, Examples) {
  const auto gl2 = preset("GL2");
  const auto z = strata_table(gl2, gl2->zero(), {});
  ASSERT_EQ(z.size(), 1u);
  EXPECT_TRUE(z[0].basic);
  const auto rows = strata_table(gl2, cw(gl2, "1,0"), {});
  ASSERT_EQ(rows.size(), 3u);
  int basic = 0;
  for (const auto& r : rows) {
    basic += r.basic;
    EXPECT_EQ(r.basic, r.length == 0);
  }
  EXPECT_EQ(basic, 1);
}
