#include "iwk/fold.hpp"
#include "iwk/oracles/suites.hpp"

#include <gtest/gtest.h>

using namespace iwk;

namespace {

CoWeight cw(const RootDatum& d, const std::string& s) { return parse_coweight(d, s); }

RatCoWeight rats(std::initializer_list<Rat> v) { return RatCoWeight{std::vector<Rat>(v)}; }

}  // namespace

TEST(Build, Presets) {
  for (const auto& n : preset_names()) EXPECT_NO_THROW(preset(n)) << n;
  const auto gl2 = preset("GL2");
  EXPECT_EQ(gl2->dim(), 2u);
  EXPECT_EQ(gl2->simple_coroots()[0], cw(*gl2, "1,-1"));
  EXPECT_TRUE(gl2->twist_trivial());
  const auto sl2 = preset("SL2");
  EXPECT_EQ(sl2->pair(sl2->root_pairing()[0], sl2->simple_coroots()[0]), Int(2));
  const auto res = preset("ResE2-GL2");
  EXPECT_EQ(res->dim(), 4u);
  EXPECT_FALSE(res->twist_trivial());
}

TEST(Build, WeylOrders) {
  const std::map<std::string, std::size_t> expect{{"GL2", 2}, {"SL3", 6}, {"GSp4", 8}, {"ResE2-GL2", 4},
                                                  {"D4-triality", 192}};
  for (const auto& [n, o] : expect) EXPECT_EQ(preset(n)->weyl_order(), o) << n;
}

TEST(Build, RejectsMalformedSpecs) {
  EXPECT_THROW(resolve_spec("preset:NOPE"), Error);
  EXPECT_THROW(DatumSpec::from_json(nlohmann::json::parse(R"({"name":"x"})")), Error);
}

TEST(Fold, SplitIsIdentity) {
  const auto s = fold(preset("SL3"));
  EXPECT_EQ(s.type, "A2");
  EXPECT_EQ(s.weyl_order, 6u);
}

TEST(Fold, TwistedTypes) {
  EXPECT_EQ(fold(preset("SU4-unram")).type, "C2");
  EXPECT_EQ(fold(preset("D4-triality")).type, "G2");
  EXPECT_EQ(fold(preset("D4-triality")).weyl_order, 12u);
}

TEST(Dominance, Gl2Examples) {
  const auto d = preset("GL2");
  EXPECT_EQ(dominant_rep(*d, cw(*d, "0,1")), cw(*d, "1,0"));
  EXPECT_TRUE(is_dominant(*d, cw(*d, "1,0")));
  EXPECT_EQ(dominant_rep(*d, rats({Rat(1, 2), Rat(1, 2)})), rats({Rat(1, 2), Rat(1, 2)}));
  EXPECT_TRUE(dominance_leq(*d, cw(*d, "1,0"), cw(*d, "1,0")));
  EXPECT_TRUE(dominance_leq(*d, cw(*d, "1,1"), cw(*d, "2,0")));
  EXPECT_FALSE(dominance_leq(*d, cw(*d, "2,0"), cw(*d, "1,1")));
}

TEST(Dominance, MatchesBoxEnumeration) {
  for (const auto& n : oracle::criterion_presets()) {
    const auto d = preset(n);
    const auto r = oracle::suite_dominance(d, oracle::dominant_matrix(*d));
    EXPECT_TRUE(r.passed()) << n << ": " << r.mismatches.front().input;
    EXPECT_GT(r.checked, 0u);
  }
}

TEST(GaloisAverage, Examples) {
  const auto gl2 = preset("GL2");
  EXPECT_EQ(galois_average(*gl2, cw(*gl2, "1,0")), rats({1, 0}));
  const auto res = preset("ResE2-GL2");
  EXPECT_EQ(galois_average(*res, cw(*res, "1,0,0,0")), rats({Rat(1, 2), 0, Rat(1, 2), 0}));
  EXPECT_EQ(galois_average(*res, res->zero()), rats({0, 0, 0, 0}));
}

TEST(ParseCoweight, ArityAndSyntax) {
  const auto d = preset("GL2");
  EXPECT_THROW(cw(*d, "1"), Error);
  EXPECT_THROW(cw(*d, "1,x"), Error);
  EXPECT_EQ(cw(*d, " 2 , -1 "), d->reduce({Int(2), Int(-1)}));
}
