#include <algorithm>
#include <set>

#include "pretence/kb.hpp"

namespace pretence {

namespace {

void warn(std::vector<Diagnostic>& diags, std::string code, const SourceLocation& at,
          std::string message) {
  diags.push_back({Severity::warning, std::move(code), at, std::move(message)});
}

}  // namespace

// Reachability is computed on predicate names only. A rule is "useful" when
// its consequent predicate (either polarity) can reach a conversion's vehicle
// side, directly or by feeding another useful rule. Rules whose domain may be
// literal in reality (a tenor domain, or no metaphor's vehicle) are sinks.
std::vector<Diagnostic> lint_kb(const KnowledgeBase& kb,
                                std::span<const std::string> seeded_predicates) {
  std::vector<Diagnostic> diags = validate_kb(kb);

  auto tenors = kb.tenor_domains();
  auto vehicles = kb.vehicle_domains();
  auto candidate = [&](const Rule& r) {
    return vehicles.contains(r.domain) && !tenors.contains(r.domain);
  };

  std::set<std::string> useful;
  for (const auto& c : kb.conversions) useful.insert(c.vehicle_pattern.predicate);
  for (const auto& r : kb.rules) {
    if (candidate(r)) continue;
    for (const auto& a : r.antecedents) useful.insert(a.predicate);
  }

  std::vector<bool> reached(kb.rules.size(), false);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < kb.rules.size(); ++i) {
      const Rule& r = kb.rules[i];
      if (reached[i] || !candidate(r) || !useful.contains(r.consequent.predicate)) continue;
      reached[i] = true;
      changed = true;
      for (const auto& a : r.antecedents) useful.insert(a.predicate);
    }
  }
  for (std::size_t i = 0; i < kb.rules.size(); ++i) {
    const Rule& r = kb.rules[i];
    if (candidate(r) && !reached[i]) {
      warn(diags, "W-UNREACHABLE-RULE", r.where,
           "rule '" + r.name + "' derives '" + r.consequent.predicate +
               "', which no conversion can map out");
    }
  }

  std::set<std::string> produced(seeded_predicates.begin(), seeded_predicates.end());
  for (const auto& r : kb.rules) {
    if (!r.consequent.negated) produced.insert(r.consequent.predicate);
  }
  for (const auto& f : kb.facts) produced.insert(f.prop.predicate);
  for (const auto& c : kb.conversions) produced.insert(c.tenor_pattern.predicate);
  for (const auto& c : kb.conversions) {
    // A predicate that rules of the vehicle domain read as input is vocabulary
    // a scenario can seed.
    bool plausible_seed = false;
    if (const Metaphor* m = kb.find_metaphor(c.metaphor)) {
      for (const auto& r : kb.rules) {
        if (std::ranges::find(m->vehicle_domains, r.domain) == m->vehicle_domains.end()) continue;
        for (const auto& a : r.antecedents) {
          plausible_seed = plausible_seed || a.predicate == c.vehicle_pattern.predicate;
        }
      }
    }
    if (!plausible_seed && !produced.contains(c.vehicle_pattern.predicate)) {
      warn(diags, "W-DEAD-CONVERSION", c.where,
           "conversion '" + c.name + "' consumes '" + c.vehicle_pattern.predicate +
               "', which no rule, fact or known seed produces");
    }
  }

  for (const auto& r : kb.rules) {
    if (r.certainty == Certainty::certain) {
      warn(diags, "W-CERTAIN-RULE", r.where,
           "rule '" + r.name + "' is annotated certain; that level is reserved for premises");
    }
  }
  for (const auto& c : kb.conversions) {
    if (c.certainty == Certainty::certain) {
      warn(diags, "W-CERTAIN-RULE", c.where,
           "conversion '" + c.name + "' is annotated certain; that level is reserved for premises");
    }
  }
  return diags;
}

}  // namespace pretence
