#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pretence/certainty.hpp"
#include "pretence/engine.hpp"
#include "pretence/term.hpp"

namespace pretence {

struct ProofStep {
  enum class Kind : std::uint8_t { stored, rule, skolem, convert_out, convert_in };

  Kind kind = Kind::stored;
  std::string space;
  /// Rule or conversion used; empty for stored lookups.
  std::string rule;
  Proposition prop;
  Certainty certainty = Certainty::possible;
};

std::string_view to_string(ProofStep::Kind k) noexcept;

struct Proof {
  /// Bindings for the goal's own variables.
  Substitution bindings;
  Proposition instance;
  Certainty certainty = Certainty::possible;
  /// Post-order: premises before the step that uses them; the last step
  /// concludes the goal.
  std::vector<ProofStep> steps;
};

struct ProveOptions {
  /// Allow crossing into a cocoon's parent through a conversion's tenor side.
  /// Off by default so proofs agree with forward runs, which never map inward.
  bool allow_map_in = false;
  /// Stop after this many proofs of the top goal.
  std::size_t max_proofs = 10000;
};

struct ProveResult {
  std::vector<Proof> proofs;
  /// Some branch reached the depth limit (or max_proofs was hit).
  bool truncated = false;
};

/// Depth-bounded backward chaining over the engine's current stores (usually
/// opened and seeded, not yet saturated). A goal is closed by a non-defeated
/// stored proposition, by an applicable rule whose antecedents are proved in
/// the same space, or by a conversion from a child cocoon. Existential rules
/// take their witnesses from the engine's skolem registry.
ProveResult prove(Engine& engine, const Proposition& goal, std::string_view space,
                  ProveOptions options = {});

}  // namespace pretence
