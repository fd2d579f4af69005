#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pretence/certainty.hpp"
#include "pretence/kb.hpp"
#include "pretence/spaces.hpp"

namespace pretence {

struct EngineLimits {
  std::size_t max_rounds = 8;
  std::size_t max_term_depth = 8;
  /// Skolem witnesses one rule may mint in a run (each antecedent binding
  /// mints at most one per existential variable).
  std::size_t max_skolems_per_rule = 64;
  std::size_t max_store_size = 10000;
  /// Rule applications plus boundary crossings along one backward proof branch.
  std::size_t max_proof_depth = 12;

  /// Throws ResourceError naming the first zero limit.
  void validate() const;
};

enum class StepKind : std::uint8_t {
  create_space,
  seed,
  rule_fire,
  skolem,
  convert_out,
  convert_in,
  conflict
};

std::string_view to_string(StepKind k) noexcept;

struct TraceStep {
  std::size_t step_id = 0;
  StepKind kind = StepKind::seed;
  /// Space the step writes to (a conversion's target space).
  std::string space;
  /// Rule or conversion name; the verdict for conflict steps.
  std::string rule;
  std::vector<PropId> inputs;
  std::optional<PropId> output;
  std::string output_prop;
  /// Absent for create_space; `undecided` for tied conflicts.
  std::optional<Certainty> certainty;
  bool defeated = false;
};

/// Append-only record of a run; step ids are dense from 1.
struct Derivation {
  std::vector<TraceStep> steps;

  std::size_t count(StepKind kind) const;
};

struct QueryAnswer {
  Query query;
  /// Matching stored propositions in the query's space, defeated ones flagged.
  std::vector<StoredProposition> matches;
};

struct ExpectationVerdict {
  Expectation expectation;
  bool passed = false;
  std::optional<Certainty> found;
  bool found_defeated = false;
};

struct RunResult {
  SpaceTree tree;
  Derivation trace;
  std::vector<QueryAnswer> queries;
  std::vector<ExpectationVerdict> expectations;
  std::size_t rounds = 0;

  std::size_t conflicts() const { return trace.count(StepKind::conflict); }
  bool all_passed() const;
};

/// One scenario run over one space tree.
///
/// Reality is created and seeded on construction (KB facts, then reality
/// seeds). Cocoons open lazily: the first time a round visits a declared
/// space, its ancestors are opened, then the space is created and seeded.
class Engine {
 public:
  Engine(const KnowledgeBase& kb, const Scenario& scenario, EngineLimits limits = {});

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  const KnowledgeBase& kb() const noexcept { return kb_; }
  const Scenario& scenario() const noexcept { return scenario_; }
  const EngineLimits& limits() const noexcept { return limits_; }
  const SpaceTree& tree() const noexcept { return tree_; }
  const Derivation& trace() const noexcept { return trace_; }
  std::size_t rounds() const noexcept { return rounds_; }

  /// Creates and seeds a declared space (ancestors first); no-op once open.
  const Space& open_space(std::string_view id);
  /// Opens every declared space in declaration order.
  void open_all();

  /// Forward closure of one space. Returns the number of new propositions.
  std::size_t saturate(std::string_view space);
  /// Converts the cocoon's propositions outward through its metaphor's
  /// conversion rules. Unmatched propositions stay behind.
  std::size_t map_out(std::string_view space);
  /// Converts one parent proposition inward (tenor side matched).
  std::size_t map_in(std::string_view space, PropId parent_prop);
  /// Adjudicates every P / not-P pair inside the space.
  std::size_t resolve_conflicts(std::string_view space);

  /// Visits cocoons deepest-first (declaration order within a depth), then
  /// reality. Returns the number of trace steps the round added.
  std::size_t run_round();
  /// Runs rounds until one adds no steps. Throws ResourceError past max_rounds.
  void run_to_fixpoint();

  /// Skolem constant for an existential variable of `rule` fired in `space`
  /// with the given ground antecedents. Reuses the name for a repeated binding.
  std::string skolem_name(const Rule& rule, std::string_view space,
                          const std::vector<Proposition>& ground_antecedents,
                          const std::string& variable);

  /// Evaluates queries and expectations and hands over the frozen state.
  RunResult finish() &&;

 private:
  struct FireKey {
    StepKind kind;
    std::string space;
    std::string rule;
    std::vector<PropId> inputs;

    friend auto operator<=>(const FireKey&, const FireKey&) = default;
  };

  struct ConflictState {
    Verdict verdict;
    Certainty pro;
    Certainty con;

    friend bool operator==(const ConflictState&, const ConflictState&) = default;
  };

  AssertOutcome store(std::string_view space, const Proposition& prop, Certainty certainty,
                      Provenance provenance);
  void record(StepKind kind, std::string space, std::string rule, std::vector<PropId> inputs,
              std::optional<PropId> output, std::optional<Certainty> certainty);
  const Space& require_space(std::string_view id) const;
  /// Returns whether the derivation is new or improves on the last recorded one.
  bool should_fire(const FireKey& key, Certainty certainty) const;

  const KnowledgeBase& kb_;
  const Scenario& scenario_;
  EngineLimits limits_;
  SpaceTree tree_;
  Derivation trace_;
  std::size_t rounds_ = 0;
  std::map<FireKey, Certainty> fired_;
  std::map<PropId, ConflictState> conflicts_;
  std::set<std::string> used_symbols_;
  std::map<std::string, std::map<std::string, std::string>> skolems_;
  std::map<std::string, std::size_t> skolems_per_rule_;
  std::vector<std::string> processing_order_;
};

RunResult run_scenario(const KnowledgeBase& kb, const Scenario& scenario, EngineLimits limits = {});

}  // namespace pretence
