#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pretence/certainty.hpp"
#include "pretence/term.hpp"

namespace pretence {

/// Name of the root space every scenario implicitly contains.
inline constexpr std::string_view kRealitySpace = "reality";

struct SourceLocation {
  std::string file;
  int line = 0;
  int column = 0;

  friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
};

enum class Severity : std::uint8_t { warning, error };

struct Diagnostic {
  Severity severity = Severity::error;
  std::string code;  // e.g. "E-CONV-VARS"
  SourceLocation where;
  std::string message;
};

/// `LEVEL CODE file:line:col message`
std::string format_diagnostic(const Diagnostic& d);
bool has_errors(std::span<const Diagnostic> diagnostics);

// Declarations carry their source location; equality ignores it.

struct Domain {
  std::string name;
  SourceLocation where;

  friend bool operator==(const Domain& a, const Domain& b) { return a.name == b.name; }
};

struct Fact {
  Proposition prop;
  Certainty certainty = Certainty::certain;
  SourceLocation where;

  friend bool operator==(const Fact& a, const Fact& b) {
    return a.prop == b.prop && a.certainty == b.certainty;
  }
};

struct Rule {
  std::string name;
  std::string domain;
  std::vector<Proposition> antecedents;
  Proposition consequent;
  /// Variables of the consequent witnessed by fresh skolem constants.
  std::vector<std::string> existentials;
  Certainty certainty = Certainty::presumed;
  SourceLocation where;

  bool is_existential() const noexcept { return !existentials.empty(); }

  friend bool operator==(const Rule& a, const Rule& b) {
    return a.name == b.name && a.domain == b.domain && a.antecedents == b.antecedents &&
           a.consequent == b.consequent && a.existentials == b.existentials &&
           a.certainty == b.certainty;
  }
};

/// Bidirectional correspondence between a vehicle pattern and a tenor pattern.
struct ConversionRule {
  std::string name;
  std::string metaphor;
  Proposition vehicle_pattern;
  Proposition tenor_pattern;
  Certainty certainty = Certainty::presumed;
  SourceLocation where;

  friend bool operator==(const ConversionRule& a, const ConversionRule& b) {
    return a.name == b.name && a.metaphor == b.metaphor && a.vehicle_pattern == b.vehicle_pattern &&
           a.tenor_pattern == b.tenor_pattern && a.certainty == b.certainty;
  }
};

struct Metaphor {
  std::string name;
  std::vector<std::string> vehicle_domains;
  std::string tenor_domain;
  /// Indices into KnowledgeBase::conversions, declaration order.
  std::vector<std::size_t> conversions;
  SourceLocation where;

  friend bool operator==(const Metaphor& a, const Metaphor& b) {
    return a.name == b.name && a.vehicle_domains == b.vehicle_domains &&
           a.tenor_domain == b.tenor_domain && a.conversions == b.conversions;
  }
};

struct KnowledgeBase {
  std::vector<Domain> domains;
  std::vector<Metaphor> metaphors;
  std::vector<Rule> rules;
  std::vector<ConversionRule> conversions;
  std::vector<Fact> facts;

  const Domain* find_domain(std::string_view name) const;
  const Metaphor* find_metaphor(std::string_view name) const;
  const Rule* find_rule(std::string_view name) const;
  const ConversionRule* find_conversion(std::string_view name) const;

  /// Domains that some metaphor uses as its tenor.
  std::set<std::string> tenor_domains() const;
  /// Domains that some metaphor uses as a vehicle.
  std::set<std::string> vehicle_domains() const;

  /// Copy without the named rule (no-op when absent).
  KnowledgeBase without_rule(std::string_view name) const;
  /// Copy without the named conversion; metaphor indices are rebuilt.
  KnowledgeBase without_conversion(std::string_view name) const;

  friend bool operator==(const KnowledgeBase&, const KnowledgeBase&) = default;
};

struct SpaceDecl {
  std::string name;
  std::string metaphor;
  std::string parent;
  SourceLocation where;

  friend bool operator==(const SpaceDecl& a, const SpaceDecl& b) {
    return a.name == b.name && a.metaphor == b.metaphor && a.parent == b.parent;
  }
};

struct Seed {
  std::string space;
  Proposition prop;
  Certainty certainty = Certainty::certain;
  SourceLocation where;

  friend bool operator==(const Seed& a, const Seed& b) {
    return a.space == b.space && a.prop == b.prop && a.certainty == b.certainty;
  }
};

struct Query {
  std::string space;
  Proposition pattern;
  SourceLocation where;

  friend bool operator==(const Query& a, const Query& b) {
    return a.space == b.space && a.pattern == b.pattern;
  }
};

struct Expectation {
  std::string space;
  Proposition prop;
  Certainty minimum = Certainty::possible;
  SourceLocation where;

  friend bool operator==(const Expectation& a, const Expectation& b) {
    return a.space == b.space && a.prop == b.prop && a.minimum == b.minimum;
  }
};

struct Scenario {
  std::string name;
  /// Cocoon declarations, ordered so that every parent precedes its children
  /// (declaration order otherwise preserved).
  std::vector<SpaceDecl> spaces;
  std::vector<Seed> seeds;
  std::vector<Query> queries;
  std::vector<Expectation> expectations;

  const SpaceDecl* find_space(std::string_view name) const;
  /// Number of edges from `name` up to reality; reality itself is 0.
  std::size_t depth_of(std::string_view name) const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// One named chunk of input text.
struct SourceText {
  std::string file;
  std::string text;
};

template <typename T>
struct Parsed {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;

  bool ok() const noexcept { return value.has_value(); }
};

/// Parses and cross-validates a KB. Multiple sources concatenate their
/// declaration lists in order and are resolved together.
Parsed<KnowledgeBase> parse_kb(std::span<const SourceText> sources);
Parsed<KnowledgeBase> parse_kb(std::string_view text, std::string_view file = "<input>");

Parsed<Scenario> parse_scenario(std::string_view text, const KnowledgeBase& kb,
                                std::string_view file = "<input>");

/// Parses a single proposition pattern, e.g. a query goal given on the command line.
Parsed<Proposition> parse_proposition(std::string_view text, std::string_view file = "<goal>");

/// Cross-reference and shape checks shared by the parser and the linter.
std::vector<Diagnostic> validate_kb(const KnowledgeBase& kb);

/// Static filter-discipline checks. `seeded_predicates` names predicates a
/// caller knows will be seeded (e.g. from scenarios); KB facts always count.
std::vector<Diagnostic> lint_kb(const KnowledgeBase& kb,
                                std::span<const std::string> seeded_predicates = {});

/// Canonical text for a KB / scenario; reparses to an equal value.
std::string render_kb(const KnowledgeBase& kb);
std::string render_scenario(const Scenario& scenario);

/// Renames every variable of a rule apart with the given suffix.
Rule rename_apart(const Rule& rule, std::string_view suffix);

}  // namespace pretence
