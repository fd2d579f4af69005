#pragma once

#include <cstdint>
#include <string>

namespace pretence::testing {

struct GeneratorOptions {
  int max_rules = 6;
  int max_seeds = 8;
  int max_cocoons = 2;
  bool existentials = false;
  bool negation = false;
  /// Allows one level of compound arguments in seeds and consequents.
  bool compounds = false;
};

struct GeneratedCase {
  std::uint64_t seed = 0;
  std::string kb_text;
  std::string scenario_text;
};

/// Well-formed KB and scenario text, fully determined by `seed`.
///
/// Domains: t0 (tenor), v0 and v1 (vehicles), g0 (unclaimed). Metaphor ma
/// maps v0 to t0; mb maps v1 to t0 (siblings) or to v0 (a serial chain).
GeneratedCase generate_case(std::uint64_t seed, const GeneratorOptions& options = {});

}  // namespace pretence::testing
