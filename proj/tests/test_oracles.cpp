#include "iwk/oracles/suites.hpp"

#include <gtest/gtest.h>

using namespace iwk;

TEST(Oracle, TrivialExamples) {
  const auto d = preset("SL2");
  EXPECT_EQ(oracle::bfs_length(identity(d)), 0);
  const IwElement x = translation(d, parse_coweight(*d, "1"));
  EXPECT_TRUE(oracle::subword_leq(x, x));
  EXPECT_TRUE(oracle::cone_member(*d, d->simple_coroots()[0], {d->simple_coroots()[0]}));
  EXPECT_FALSE(oracle::cone_member(*d, d->neg(d->simple_coroots()[0]), {d->simple_coroots()[0]}));
}

TEST(Oracle, CapExceeded) {
  const auto d = preset("SL2");
  EXPECT_THROW(oracle::bfs_length(translation(d, parse_coweight(*d, "9"))), Error);
}

TEST(Oracle, ProductAgreesWithMain) {
  const auto d = preset("U3-unram");
  const auto xs = oracle::elements_up_to(d, 2);
  for (const auto& x : xs)
    for (const auto& y : xs) EXPECT_EQ(oracle::times(x, y), mul(x, y));
}

TEST(Oracle, OrbitClosureContainsSeed) {
  const auto d = preset("GL2");
  const IwElement tau = tau_of(d, parse_coweight(*d, "1,0"));
  EXPECT_TRUE(oracle::orbit_closure(tau, 3).count(tau));
}

TEST(Oracle, EverySuiteOnSmallPresets) {
  for (const auto& n : {"GL2", "PGL2", "SU3-unram"})
    for (const auto& s : oracle::suite_names()) {
      const auto r = oracle::run_suite(s, preset(n));
      EXPECT_TRUE(r.passed()) << n << " " << s;
    }
  EXPECT_THROW(oracle::run_suite("nope", preset("GL2")), Error);
}
