#include <gtest/gtest.h>

#include "pretence/kb.hpp"
#include "pretence/term.hpp"

namespace pretence {
namespace {

Term A(const char* n) { return Term::atom(n); }
Term V(const char* n) { return Term::variable(n); }
Term C(const char* f, std::vector<Term> args) { return Term::compound(f, std::move(args)); }

Proposition P(const char* text) {
  auto parsed = parse_proposition(text);
  EXPECT_TRUE(parsed.ok()) << text;
  return *parsed.value;
}

TEST(Term, EmptyCompoundIsAtom) {
  Term t = Term::compound("a", {});
  EXPECT_TRUE(t.is_atom());
  EXPECT_EQ(t, A("a"));
}

TEST(Term, GroundAndDepth) {
  EXPECT_TRUE(A("a").is_ground());
  EXPECT_FALSE(V("x").is_ground());
  Term nested = C("f", {C("g", {A("a")}), V("x")});
  EXPECT_FALSE(nested.is_ground());
  EXPECT_EQ(nested.depth(), 3u);
  EXPECT_EQ(A("a").depth(), 1u);
}

TEST(Term, RendersVariablesWithMark) {
  EXPECT_EQ(to_string(C("f", {V("x"), A("b")})), "(f ?x b)");
  EXPECT_EQ(to_string(P("(not p a)")), "(not p a)");
  EXPECT_EQ(to_string(P("(q)")), "(q)");
}

TEST(Unify, BindsVariable) {
  auto s = unify(P("(can-be-seen ?x)"), P("(can-be-seen shaky-state1)"));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->apply(V("x")), A("shaky-state1"));
}

TEST(Unify, ClashFails) {
  EXPECT_FALSE(unify(P("(can-be-seen a)"), P("(can-be-seen b)")));
  EXPECT_FALSE(unify(P("(p a)"), P("(q a)")));
  EXPECT_FALSE(unify(P("(p a)"), P("(p a b)")));
  EXPECT_FALSE(unify(P("(p a)"), P("(not p a)")));
}

TEST(Unify, OccursCheck) {
  EXPECT_FALSE(unify(V("x"), C("f", {V("x")})));
  EXPECT_FALSE(unify(P("(p ?x ?x)"), P("(p ?y (f ?y))")));
}

TEST(Unify, SharedVariablesPropagate) {
  auto s = unify(P("(p ?x ?y ?x)"), P("(p ?y b ?z)"));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->apply(V("x")), A("b"));
  EXPECT_EQ(s->apply(V("y")), A("b"));
  EXPECT_EQ(s->apply(V("z")), A("b"));
}

TEST(Unify, ResultIsIdempotentUnifier) {
  Proposition a = P("(p ?x (f ?y) ?z)");
  Proposition b = P("(p (g ?z) ?w c)");
  auto s = unify(a, b);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->apply(a), s->apply(b));
  EXPECT_EQ(s->apply(s->apply(a)), s->apply(a));
}

TEST(Unify, RespectsExistingBindings) {
  auto first = unify(V("x"), A("a"));
  ASSERT_TRUE(first);
  EXPECT_FALSE(unify(V("x"), A("b"), *first));
  auto again = unify(C("f", {V("x")}), C("f", {V("y")}), *first);
  ASSERT_TRUE(again);
  EXPECT_EQ(again->apply(V("y")), A("a"));
}

TEST(Unify, ChainedBindingThroughBoundTerm) {
  // ?x is bound to a term containing ?y, and ?y is then bound through it.
  auto s = unify(P("(p ?x ?x)"), P("(p (f ?y) (f a))"));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->apply(V("x")), C("f", {A("a")}));
  EXPECT_EQ(s->apply(V("y")), A("a"));
}

TEST(Variant, RenamingIsVariant) {
  EXPECT_TRUE(is_variant(P("(p ?x ?y)"), P("(p ?a ?b)")));
  EXPECT_FALSE(is_variant(P("(p ?x ?x)"), P("(p ?a ?b)")));
  EXPECT_FALSE(is_variant(P("(p ?x a)"), P("(p ?a ?b)")));
}

TEST(RenameApart, SuffixesEveryVariable) {
  Proposition r = rename_apart(P("(p ?x (f ?y) a)"), "r1");
  EXPECT_EQ(to_string(r), "(p ?x_r1 (f ?y_r1) a)");
  EXPECT_TRUE(is_variant(r, P("(p ?x (f ?y) a)")));
}

TEST(Variables, InOrderOfFirstOccurrence) {
  auto vs = variables_of(P("(p ?b (f ?a ?b) ?c)"));
  EXPECT_EQ(vs, (std::vector<std::string>{"b", "a", "c"}));
}

TEST(Proposition, ComplementFlipsPolarity) {
  EXPECT_EQ(P("(hot q1)").complement(), P("(not hot q1)"));
  EXPECT_EQ(P("(not (hot q1))"), P("(not hot q1)"));
}

}  // namespace
}  // namespace pretence
