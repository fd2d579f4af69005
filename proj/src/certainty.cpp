#include "pretence/certainty.hpp"

#include <string>

#include "pretence/errors.hpp"

namespace pretence {

namespace {

int rank(Certainty c) {
  if (!is_annotatable(c)) throw CertaintyError("undecided certainty cannot be ordered or combined");
  return static_cast<int>(c);
}

}  // namespace

bool stronger_than(Certainty a, Certainty b) { return rank(a) > rank(b); }

bool at_least(Certainty a, Certainty b) { return rank(a) >= rank(b); }

Certainty strongest(Certainty a, Certainty b) { return rank(a) >= rank(b) ? a : b; }

Certainty weakest(Certainty a, Certainty b) { return rank(a) <= rank(b) ? a : b; }

Certainty combine(Certainty rule_certainty, std::span<const Certainty> antecedents) {
  Certainty result = rule_certainty;
  rank(result);
  for (Certainty c : antecedents) result = weakest(result, c);
  return result;
}

Verdict adjudicate(Certainty for_certainty, Certainty against_certainty) {
  int pro = rank(for_certainty);
  int con = rank(against_certainty);
  if (pro > con) return Verdict::keep_for;
  if (con > pro) return Verdict::keep_against;
  return Verdict::both_undecided;
}

std::string_view to_string(Certainty c) noexcept {
  switch (c) {
    case Certainty::possible: return "possible";
    case Certainty::suggested: return "suggested";
    case Certainty::presumed: return "presumed";
    case Certainty::certain: return "certain";
    case Certainty::undecided: return "undecided";
  }
  return "undecided";
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::keep_for: return "keep_for";
    case Verdict::keep_against: return "keep_against";
    case Verdict::both_undecided: return "both_undecided";
  }
  return "both_undecided";
}

std::optional<Certainty> parse_certainty(std::string_view text) noexcept {
  for (Certainty c : kAnnotatableLevels) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

std::ostream& operator<<(std::ostream& os, Certainty c) { return os << to_string(c); }

}  // namespace pretence
