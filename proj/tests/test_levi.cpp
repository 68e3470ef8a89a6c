#include "iwk/levi.hpp"
#include "iwk/oracles/suites.hpp"

#include <gtest/gtest.h>

using namespace iwk;

namespace {

CoWeight cw(const DatumPtr& d, const std::string& s) { return parse_coweight(*d, s); }
RatCoWeight rats(std::initializer_list<Rat> v) { return RatCoWeight{std::vector<Rat>(v)}; }

}  // namespace

TEST(LeviOfNewton, Examples) {
  const auto d = preset("GL2");
  EXPECT_EQ(levi_of_newton(d, rats({Rat(1, 2), Rat(1, 2)})).J, std::vector<int>{0});
  EXPECT_TRUE(levi_of_newton(d, rats({1, 0})).J.empty());
  EXPECT_EQ(levi_of_newton(d, rats({0, 0})).J, std::vector<int>{0});
  EXPECT_THROW(levi_of_newton(d, rats({0, 1})), Error);
}

TEST(MinusculeRep, Gl2) {
  const auto d = preset("GL2");
  const LeviDatum G = levi_from_subset(d, {0});
  const auto one = class_in_m(G, cw(d, "1,0"));
  EXPECT_EQ(minuscule_dominant_rep(G, one).mu, cw(d, "1,0"));
  EXPECT_EQ(minuscule_dominant_rep(G, G.pi1_M().zero()).mu, d->zero());
}

TEST(MinusculeRep, IsASection) {
  for (const auto& n : {"GL3", "GSp4", "U3-unram"}) {
    const auto d = preset(n);
    const int r = static_cast<int>(d->rank());
    for (int mask = 0; mask < (1 << r); ++mask) {
      std::vector<int> J;
      bool stable = true;
      for (int j = 0; j < r; ++j)
        if (mask & (1 << j)) {
          J.push_back(j);
          stable = stable && (mask & (1 << d->twist_perm()[j]));
        }
      if (!stable) continue;
      const LeviDatum L = levi_from_subset(d, J);
      for (const auto& mu : oracle::dominant_matrix(*d, 2))
        for (const auto& l : weyl_orbit(*d, mu)) {
          const auto x = class_in_m(L, l);
          const CoWeight r = minuscule_dominant_rep(L, x).mu;
          EXPECT_EQ(class_in_m(L, r), L.pi1_M().reduce(x)) << n;
          EXPECT_TRUE(is_m_dominant(L, r) && is_m_minuscule(L, r)) << n;
        }
    }
  }
}

TEST(IMuBM, Gl2) {
  const auto d = preset("GL2");
  const CoWeight mu = cw(d, "1,0");
  for (const auto& e : b_g_mu(d, mu)) {
    const LeviDatum L = levi_of_newton(d, e.invariants.newton);
    const auto I = i_mu_b_m(d, mu, e.invariants, L);
    ASSERT_EQ(I.size(), 1u);
    EXPECT_EQ(minuscule_dominant_rep(L, I[0]).mu, mu);
  }
  const auto z = b_g_mu(d, d->zero());
  const LeviDatum G = levi_of_newton(d, z[0].invariants.newton);
  EXPECT_EQ(i_mu_b_m(d, d->zero(), z[0].invariants, G), std::vector<std::vector<Int>>{G.pi1_M().zero()});
}

TEST(Moves, ResE2RejectsOvershoot) {
  const auto d = preset("ResE2-GL2");
  const LeviDatum T = levi_from_subset(d, {});
  const CoWeight mu = cw(d, "1,0,1,0");
  const auto x = class_in_m(T, cw(d, "1,0,0,1"));
  const int alpha = d->find_root({1, 0});
  EXPECT_FALSE(move_applicable(mu, T, x, alpha, 1));
  const auto far = class_in_m(T, cw(d, "3,0,0,0"));
  for (const auto& [a, rmax] : allowed_moves(T))
    for (int r = 1; r <= rmax; ++r) EXPECT_FALSE(move_applicable(mu, T, far, a, r));
}

TEST(Paths, TrivialAndResE2) {
  const auto gl2 = preset("GL2");
  const LeviDatum T = levi_from_subset(gl2, {});
  const auto x = class_in_m(T, cw(gl2, "1,0"));
  EXPECT_EQ(find_path(cw(gl2, "1,0"), T, x, x)->size(), 0u);
  const auto d = preset("ResE2-GL2");
  const CoWeight mu = cw(d, "1,-1,1,-1");
  std::size_t big = 0;
  for (const auto& e : b_g_mu(d, mu)) {
    const LeviDatum L = levi_of_newton(d, e.invariants.newton);
    const auto I = i_mu_b_m(d, mu, e.invariants, L);
    if (I.size() >= 2) ++big;
    for (const auto& a : I)
      for (const auto& b : I) {
        const auto p = find_path(mu, L, a, b);
        ASSERT_TRUE(p.has_value());
        std::vector<Int> cur = L.pi1_M().reduce(a);
        for (const Move& m : *p) {
          EXPECT_TRUE(move_applicable(mu, L, cur, m.alpha, m.r));
          cur = move_target(L, cur, m.alpha, m.r);
        }
        EXPECT_EQ(cur, L.pi1_M().reduce(b));
      }
  }
  EXPECT_GT(big, 0u);
}

TEST(OrbitSize, Classification) {
  const auto sl3 = preset("SL3");
  for (std::size_t k = 0; k < sl3->roots().size(); ++k) {
    const OrbitSize o = orbit_size(*sl3, static_cast<int>(k));
    EXPECT_EQ(o.size, 1);
    EXPECT_EQ(o.h, 1);
  }
  const auto res = preset("ResE2-GL2");
  for (std::size_t k = 0; k < res->roots().size(); ++k) {
    const OrbitSize o = orbit_size(*res, static_cast<int>(k));
    EXPECT_EQ(o.h, 2);
    EXPECT_EQ(o.multiple, 1);
  }
  const auto d4 = preset("D4-triality");
  std::set<int> multiples;
  for (std::size_t k = 0; k < d4->roots().size(); ++k) multiples.insert(orbit_size(*d4, static_cast<int>(k)).multiple);
  EXPECT_EQ(multiples, (std::set<int>{1, 3}));
}

TEST(ShortElement, AllStraightElements) {
  for (const auto& n : {"GL2", "GSp4", "ResE2-GL2", "U3-unram", "SU3-unram"}) {
    const auto d = preset(n);
    for (const auto& mu : oracle::dominant_matrix(*d, 1))
      for (const auto& x : straight_elements(adm(d, mu))) EXPECT_TRUE(short_element_check(x).ok) << n;
  }
}

TEST(WeakDominance, SplitPresets) {
  for (const auto& n : {"GL2", "GL3", "GSp4"}) {
    const auto d = preset(n);
    for (const auto& mu : oracle::dominant_matrix(*d, 2))
      for (const auto& e : b_g_mu(d, mu)) {
        const LeviDatum L = levi_of_newton(d, e.invariants.newton);
        const auto I = i_mu_b_m(d, mu, e.invariants, L);
        EXPECT_FALSE(I.empty());
        for (const auto& x : I) EXPECT_TRUE(is_weakly_dominant(*d, minuscule_dominant_rep(L, x).mu)) << n;
      }
  }
}
