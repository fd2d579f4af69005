#include <gtest/gtest.h>

#include "pretence/errors.hpp"
#include "pretence/spaces.hpp"
#include "support/corpus.hpp"

namespace pretence {
namespace {

Proposition P(const char* text) { return *parse_proposition(text).value; }

TEST(SpaceTree, ParallelSiblings) {
  SpaceTree t;
  t.create_space("reality", SpaceKind::reality(), std::nullopt);
  t.create_space("m-see", SpaceKind::metaphor("believing-as-seeing"), "reality");
  t.create_space("m-build", SpaceKind::metaphor("theories-as-buildings"), "reality");
  auto kids = t.children("reality");
  ASSERT_EQ(kids.size(), 2u);
  EXPECT_EQ(kids[0]->id(), "m-see");
  EXPECT_EQ(kids[1]->id(), "m-build");
  EXPECT_EQ(kids[1]->depth(), 1u);
}

TEST(SpaceTree, SerialChain) {
  SpaceTree t;
  t.create_space("reality", SpaceKind::reality(), std::nullopt);
  t.create_space("m1", SpaceKind::metaphor("mind-parts-as-persons"), "reality");
  t.create_space("m2", SpaceKind::metaphor("anger-as-heat"), "m1");
  EXPECT_EQ(t.at("m2").depth(), 2u);
  EXPECT_EQ(*t.at("m2").parent(), "m1");
}

TEST(SpaceTree, CreateErrors) {
  SpaceTree t;
  EXPECT_THROW(t.create_space("m1", SpaceKind::metaphor("m"), std::nullopt), SpaceError);
  EXPECT_THROW(t.create_space("reality", SpaceKind::reality(), "x"), SpaceError);
  t.create_space("reality", SpaceKind::reality(), std::nullopt);
  EXPECT_THROW(t.create_space("reality", SpaceKind::reality(), std::nullopt), SpaceError);
  EXPECT_THROW(t.create_space("again", SpaceKind::reality(), std::nullopt), SpaceError);
  EXPECT_THROW(t.create_space("m1", SpaceKind::metaphor("m"), "nowhere"), SpaceError);
  t.create_space("m1", SpaceKind::metaphor("m"), "reality");
  EXPECT_THROW(t.create_space("m1", SpaceKind::metaphor("m"), "reality"), SpaceError);
}

TEST(SpaceTree, AssertStoresGround) {
  SpaceTree t;
  t.create_space("reality", SpaceKind::reality(), std::nullopt);
  t.create_space("m-see", SpaceKind::metaphor("believing-as-seeing"), "reality");
  auto out = t.assert_prop("m-see", P("(shines-light critique shaky-state1)"), Certainty::certain,
                           Provenance::seed());
  EXPECT_TRUE(out.inserted);
  EXPECT_EQ(t.prop(out.id).certainty, Certainty::certain);
  EXPECT_EQ(t.space_of(out.id).id(), "m-see");
  EXPECT_THROW(t.assert_prop("m-see", P("(p ?x)"), Certainty::certain, Provenance::seed()),
               SpaceError);
  EXPECT_THROW(t.assert_prop("m-see", P("(p a)"), Certainty::undecided, Provenance::seed()),
               CertaintyError);
  EXPECT_THROW(t.assert_prop("nowhere", P("(p a)"), Certainty::certain, Provenance::seed()),
               SpaceError);
}

TEST(SpaceTree, ReassertUpgradesByMax) {
  SpaceTree t;
  t.create_space("reality", SpaceKind::reality(), std::nullopt);
  auto a = t.assert_prop("reality", P("(p a)"), Certainty::suggested, Provenance::seed());
  auto b = t.assert_prop("reality", P("(p a)"), Certainty::presumed, Provenance::rule("r", {}));
  auto c = t.assert_prop("reality", P("(p a)"), Certainty::possible, Provenance::rule("s", {}));
  EXPECT_EQ(a.id, b.id);
  EXPECT_TRUE(b.upgraded);
  EXPECT_FALSE(c.changed());
  EXPECT_EQ(t.reality()->size(), 1u);
  EXPECT_EQ(t.prop(a.id).certainty, Certainty::presumed);
  EXPECT_EQ(t.prop(a.id).provenance.size(), 3u);
}

TEST(SpaceTree, StoresAreSeparate) {
  SpaceTree t;
  t.create_space("reality", SpaceKind::reality(), std::nullopt);
  t.create_space("m", SpaceKind::metaphor("x"), "reality");
  auto a = t.assert_prop("m", P("(p a)"), Certainty::certain, Provenance::seed());
  auto b = t.assert_prop("reality", P("(p a)"), Certainty::certain, Provenance::seed());
  EXPECT_NE(a.id, b.id);
  EXPECT_EQ(t.reality()->find(P("(p a)"))->id, b.id);
}

TEST(SpaceTree, CopyIsDeep) {
  SpaceTree t;
  t.create_space("reality", SpaceKind::reality(), std::nullopt);
  t.assert_prop("reality", P("(p a)"), Certainty::certain, Provenance::seed());
  SpaceTree copy = t;
  t.assert_prop("reality", P("(p b)"), Certainty::certain, Provenance::seed());
  EXPECT_EQ(copy.reality()->size(), 1u);
  EXPECT_EQ(t.reality()->size(), 2u);
}

TEST(LiteralizedDomains, SerialChain) {
  auto ex = testing::load_example(3);
  SpaceTree t;
  t.create_space("reality", SpaceKind::reality(), std::nullopt);
  t.create_space("m1", SpaceKind::metaphor("mind-parts-as-persons"), "reality");
  t.create_space("m2", SpaceKind::metaphor("anger-as-heat"), "m1");
  using S = std::set<std::string>;
  EXPECT_EQ(t.literalized_domains("reality", ex.kb), (S{"mental-states", "persons"}));
  EXPECT_EQ(t.literalized_domains("m1", ex.kb), (S{"mental-states", "persons"}));
  EXPECT_EQ(t.literalized_domains("m2", ex.kb), (S{"heat", "mental-states", "persons"}));
}

TEST(LiteralizedDomains, ParallelMix) {
  auto ex = testing::load_example(2);
  SpaceTree t;
  t.create_space("reality", SpaceKind::reality(), std::nullopt);
  t.create_space("m-see", SpaceKind::metaphor("believing-as-seeing"), "reality");
  t.create_space("m-build", SpaceKind::metaphor("theories-as-buildings"), "reality");
  using S = std::set<std::string>;
  EXPECT_EQ(t.literalized_domains("reality", ex.kb), S{"theories"});
  EXPECT_EQ(t.literalized_domains("m-see", ex.kb), (S{"light", "theories"}));
  EXPECT_EQ(t.literalized_domains("m-build", ex.kb), (S{"buildings", "theories"}));
}

TEST(LiteralizedDomains, UnclaimedVehicleIsLiteral) {
  // Without an active light metaphor, light-domain rules are ordinary knowledge.
  auto ex = testing::load_example(2);
  SpaceTree t;
  t.create_space("reality", SpaceKind::reality(), std::nullopt);
  t.set_active_metaphors({"theories-as-buildings"});
  EXPECT_EQ(t.literalized_domains("reality", ex.kb), (std::set<std::string>{"light", "theories"}));
}

}  // namespace
}  // namespace pretence
