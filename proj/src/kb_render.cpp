#include <sstream>

#include "pretence/kb.hpp"

namespace pretence {

std::string render_kb(const KnowledgeBase& kb) {
  std::ostringstream os;
  for (const auto& d : kb.domains) os << "(domain " << d.name << ")\n";
  for (const auto& m : kb.metaphors) {
    os << "(metaphor " << m.name << " vehicle";
    for (const auto& v : m.vehicle_domains) os << ' ' << v;
    os << " tenor " << m.tenor_domain << ")\n";
  }
  for (const auto& c : kb.conversions) {
    os << "(conversion " << c.name << " metaphor " << c.metaphor << ' ' << c.vehicle_pattern
       << " <-> " << c.tenor_pattern << ' ' << c.certainty << ")\n";
  }
  for (const auto& r : kb.rules) {
    os << "(rule " << r.name << " domain " << r.domain << " (if";
    for (const auto& a : r.antecedents) os << ' ' << a;
    os << ") (then ";
    if (r.is_existential()) {
      os << "exists (";
      for (std::size_t i = 0; i < r.existentials.size(); ++i) {
        os << (i ? " ?" : "?") << r.existentials[i];
      }
      os << ") ";
    }
    os << r.consequent << ") " << r.certainty << ")\n";
  }
  for (const auto& f : kb.facts) os << "(fact " << f.prop << ' ' << f.certainty << ")\n";
  return os.str();
}

std::string render_scenario(const Scenario& scenario) {
  std::ostringstream os;
  os << "(scenario " << scenario.name;
  for (const auto& s : scenario.spaces) {
    os << "\n  (space " << s.name << " metaphor " << s.metaphor << " parent " << s.parent << ')';
  }
  for (const auto& s : scenario.seeds) {
    os << "\n  (seed " << s.space << ' ' << s.prop << ' ' << s.certainty << ')';
  }
  for (const auto& q : scenario.queries) os << "\n  (query " << q.space << ' ' << q.pattern << ')';
  for (const auto& x : scenario.expectations) {
    os << "\n  (expect " << x.space << ' ' << x.prop << ' ' << x.minimum << ')';
  }
  os << ")\n";
  return os.str();
}

}  // namespace pretence
