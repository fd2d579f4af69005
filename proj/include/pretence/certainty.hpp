#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>

namespace pretence {

/// Qualitative certainty. The four annotatable levels are totally ordered
/// certain > presumed > suggested > possible. `undecided` marks a tied
/// conflict; it is incomparable and never annotates a rule or fact.
enum class Certainty : std::uint8_t { possible, suggested, presumed, certain, undecided };

/// Every level a rule, fact or seed may carry, weakest first.
inline constexpr Certainty kAnnotatableLevels[] = {Certainty::possible, Certainty::suggested,
                                                   Certainty::presumed, Certainty::certain};

constexpr bool is_annotatable(Certainty c) noexcept { return c != Certainty::undecided; }

/// Strict order on annotatable levels. Throws CertaintyError on `undecided`.
bool stronger_than(Certainty a, Certainty b);
/// a >= b on annotatable levels. Throws CertaintyError on `undecided`.
bool at_least(Certainty a, Certainty b);
Certainty strongest(Certainty a, Certainty b);
Certainty weakest(Certainty a, Certainty b);

/// Weakest-link combination: min over the rule level and every antecedent level.
Certainty combine(Certainty rule_certainty, std::span<const Certainty> antecedents);

enum class Verdict : std::uint8_t { keep_for, keep_against, both_undecided };

/// Strictly greater level wins; a tie leaves both sides undecided.
Verdict adjudicate(Certainty for_certainty, Certainty against_certainty);

std::string_view to_string(Certainty c) noexcept;
std::string_view to_string(Verdict v) noexcept;
/// Parses the four annotatable keywords; `undecided` is not accepted.
std::optional<Certainty> parse_certainty(std::string_view text) noexcept;

std::ostream& operator<<(std::ostream& os, Certainty c);

}  // namespace pretence
