#include "support/invariants.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace pretence::testing {

namespace {

std::string where(const TraceStep& s) {
  return "step #" + std::to_string(s.step_id) + " (" + std::string(to_string(s.kind)) + " " +
         s.rule + "): ";
}

bool adjacent(const SpaceTree& tree, const std::string& a, const std::string& b) {
  const Space& sa = tree.at(a);
  const Space& sb = tree.at(b);
  return (sa.parent() && *sa.parent() == b) || (sb.parent() && *sb.parent() == a);
}

}  // namespace

std::vector<std::string> audit_run(const KnowledgeBase& kb, const RunResult& run) {
  std::vector<std::string> bad;
  const SpaceTree& tree = run.tree;
  std::map<PropId, Certainty> level;
  std::map<PropId, bool> defeated;

  for (std::size_t i = 0; i < run.trace.steps.size(); ++i) {
    const TraceStep& s = run.trace.steps[i];
    if (s.step_id != i + 1) bad.push_back(where(s) + "step ids are not dense");
    if (tree.find(s.space) == nullptr) {
      bad.push_back(where(s) + "unknown space " + s.space);
      continue;
    }

    if (s.kind == StepKind::conflict) {
      if (s.inputs.size() != 2) {
        bad.push_back(where(s) + "conflict needs two inputs");
        continue;
      }
      PropId pos = s.inputs[0];
      PropId neg = s.inputs[1];
      if (tree.prop(pos).prop.complement() != tree.prop(neg).prop) {
        bad.push_back(where(s) + "conflict inputs are not complementary");
      }
      if (tree.space_of(pos).id() != s.space || tree.space_of(neg).id() != s.space) {
        bad.push_back(where(s) + "conflict spans spaces");
      }
      defeated[pos] = s.rule != "keep_for";
      defeated[neg] = s.rule != "keep_against";
      continue;
    }
    if (s.kind == StepKind::create_space) continue;
    if (!s.output || !s.certainty) {
      bad.push_back(where(s) + "missing output or certainty");
      continue;
    }
    PropId out = *s.output;
    if (tree.space_of(out).id() != s.space) bad.push_back(where(s) + "output lives elsewhere");

    Certainty bound = Certainty::certain;
    if (s.kind == StepKind::rule_fire || s.kind == StepKind::skolem) {
      const Rule* r = kb.find_rule(s.rule);
      if (r == nullptr) {
        bad.push_back(where(s) + "unknown rule");
        continue;
      }
      bound = r->certainty;
      if (s.inputs.size() != r->antecedents.size()) bad.push_back(where(s) + "premise count");
      auto scope = tree.literalized_domains(s.space, kb);
      if (!scope.contains(r->domain)) bad.push_back(where(s) + "rule domain not literal here");
      for (PropId p : s.inputs) {
        if (tree.space_of(p).id() != s.space) bad.push_back(where(s) + "premise from other space");
      }
    } else if (s.kind == StepKind::convert_out || s.kind == StepKind::convert_in) {
      const ConversionRule* c = kb.find_conversion(s.rule);
      if (c == nullptr || s.inputs.size() != 1) {
        bad.push_back(where(s) + "unknown conversion or bad inputs");
        continue;
      }
      bound = c->certainty;
      PropId src = s.inputs[0];
      const Space& from = tree.space_of(src);
      if (!adjacent(tree, from.id(), s.space)) bad.push_back(where(s) + "non-adjacent crossing");
      bool outward = s.kind == StepKind::convert_out;
      const Space& child = outward ? from : tree.at(s.space);
      const Space& parent = outward ? tree.at(s.space) : from;
      if (!child.parent() || *child.parent() != parent.id()) {
        bad.push_back(where(s) + "crossing direction does not match the tree");
      }
      if (child.kind().subject != c->metaphor) {
        bad.push_back(where(s) + "conversion of another metaphor");
      }
      const Proposition& src_prop = tree.prop(src).prop;
      const Proposition& src_side = outward ? c->vehicle_pattern : c->tenor_pattern;
      const Proposition& dst_side = outward ? c->tenor_pattern : c->vehicle_pattern;
      auto m = unify(src_side, src_prop);
      if (!m) {
        bad.push_back(where(s) + "source does not match the conversion pattern");
      } else if (m->apply(dst_side) != tree.prop(out).prop) {
        bad.push_back(where(s) + "target is not the converted instance");
      }
    } else if (s.kind == StepKind::seed) {
      if (!s.inputs.empty()) bad.push_back(where(s) + "seed with inputs");
    }

    for (PropId p : s.inputs) {
      auto it = level.find(p);
      if (it == level.end()) {
        bad.push_back(where(s) + "input p" + std::to_string(p) + " used before it exists");
        continue;
      }
      if (defeated[p]) bad.push_back(where(s) + "defeated input p" + std::to_string(p));
      bound = std::min(bound, it->second);
    }
    if (s.kind != StepKind::seed && *s.certainty > bound) {
      bad.push_back(where(s) + "certainty rises along a derivation");
    }
    auto [it, fresh] = level.emplace(out, *s.certainty);
    if (!fresh) it->second = std::max(it->second, *s.certainty);
  }

  for (const Space* sp : tree.spaces()) {
    for (const auto& stored : sp->store()) {
      auto it = level.find(stored.id);
      if (it == level.end()) {
        bad.push_back("p" + std::to_string(stored.id) + " has no producing step");
      } else if (it->second != stored.certainty) {
        bad.push_back("p" + std::to_string(stored.id) + " certainty is not the max over steps");
      }
      if (!stored.prop.is_ground()) bad.push_back("p" + std::to_string(stored.id) + " not ground");
      if (stored.defeated != defeated[stored.id]) {
        bad.push_back("p" + std::to_string(stored.id) + " defeat flag disagrees with the trace");
      }
      for (const auto& prov : stored.provenance) {
        if (prov.kind == Provenance::Kind::converted &&
            !adjacent(tree, prov.source_space, sp->id())) {
          bad.push_back("p" + std::to_string(stored.id) + " converted from a non-adjacent space");
        }
        for (PropId p : prov.premises) {
          if (tree.space_of(p).id() != sp->id()) {
            bad.push_back("p" + std::to_string(stored.id) + " premise from another space");
          }
        }
      }
    }
  }
  return bad;
}

}  // namespace pretence::testing
