#include <gtest/gtest.h>

#include <algorithm>
#include <iterator>
#include <vector>

#include "pretence/certainty.hpp"
#include "pretence/errors.hpp"

namespace pretence {
namespace {

using enum Certainty;

TEST(Certainty, CombineIsMinimum) {
  EXPECT_EQ(combine(presumed, std::vector{certain, certain}), presumed);
  EXPECT_EQ(combine(certain, std::vector{presumed, suggested}), suggested);
  EXPECT_EQ(combine(possible, std::vector<Certainty>{}), possible);
}

TEST(Certainty, CombineRejectsUndecided) {
  EXPECT_THROW(combine(presumed, std::vector{undecided}), CertaintyError);
  EXPECT_THROW(combine(undecided, std::vector{certain}), CertaintyError);
}

TEST(Certainty, Adjudicate) {
  EXPECT_EQ(adjudicate(presumed, suggested), Verdict::keep_for);
  EXPECT_EQ(adjudicate(suggested, presumed), Verdict::keep_against);
  EXPECT_EQ(adjudicate(presumed, presumed), Verdict::both_undecided);
}

TEST(Certainty, CombineIgnoresOrder) {
  std::vector<Certainty> levels(std::begin(kAnnotatableLevels), std::end(kAnnotatableLevels));
  for (Certainty rule : kAnnotatableLevels) {
    for (std::size_t n = 0; n <= levels.size(); ++n) {
      std::vector<Certainty> xs(levels.begin(), levels.begin() + static_cast<long>(n));
      Certainty first = combine(rule, xs);
      while (std::next_permutation(xs.begin(), xs.end())) EXPECT_EQ(combine(rule, xs), first);
      std::vector<Certainty> pair{rule};
      pair.insert(pair.end(), xs.begin(), xs.end());
      EXPECT_EQ(first, *std::min_element(pair.begin(), pair.end()));
    }
  }
}

TEST(Certainty, CombineIsAssociative) {
  for (Certainty a : kAnnotatableLevels)
    for (Certainty b : kAnnotatableLevels)
      for (Certainty c : kAnnotatableLevels) {
        Certainty ab = combine(a, std::vector{b});
        EXPECT_EQ(combine(ab, std::vector{c}), combine(a, std::vector{combine(b, std::vector{c})}));
      }
}

TEST(Certainty, AdjudicateIsAntisymmetric) {
  for (Certainty a : kAnnotatableLevels) {
    for (Certainty b : kAnnotatableLevels) {
      Verdict v = adjudicate(a, b);
      Verdict w = adjudicate(b, a);
      if (v == Verdict::both_undecided) {
        EXPECT_EQ(w, Verdict::both_undecided);
      } else {
        EXPECT_NE(v, w);
        EXPECT_NE(w, Verdict::both_undecided);
      }
    }
  }
}

TEST(Certainty, OrderAndParsing) {
  EXPECT_TRUE(stronger_than(certain, presumed));
  EXPECT_TRUE(stronger_than(suggested, possible));
  EXPECT_THROW(stronger_than(undecided, possible), CertaintyError);
  EXPECT_THROW(at_least(possible, undecided), CertaintyError);
  EXPECT_EQ(parse_certainty("suggested"), suggested);
  EXPECT_FALSE(parse_certainty("undecided"));
  EXPECT_FALSE(parse_certainty("sure"));
  EXPECT_EQ(to_string(undecided), "undecided");
}

}  // namespace
}  // namespace pretence
