#include "pretence/engine.hpp"

#include <algorithm>

#include "pretence/errors.hpp"

namespace pretence {

void EngineLimits::validate() const {
  if (max_rounds == 0) throw ResourceError("max_rounds", "limit must be positive");
  if (max_term_depth == 0) throw ResourceError("max_term_depth", "limit must be positive");
  if (max_skolems_per_rule == 0) {
    throw ResourceError("max_skolems_per_rule", "limit must be positive");
  }
  if (max_store_size == 0) throw ResourceError("max_store_size", "limit must be positive");
  if (max_proof_depth == 0) throw ResourceError("max_proof_depth", "limit must be positive");
}

std::string_view to_string(StepKind k) noexcept {
  switch (k) {
    case StepKind::create_space: return "create_space";
    case StepKind::seed: return "seed";
    case StepKind::rule_fire: return "rule_fire";
    case StepKind::skolem: return "skolem";
    case StepKind::convert_out: return "convert_out";
    case StepKind::convert_in: return "convert_in";
    case StepKind::conflict: return "conflict";
  }
  return "seed";
}

std::size_t Derivation::count(StepKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(steps.begin(), steps.end(), [&](const TraceStep& s) { return s.kind == kind; }));
}

bool RunResult::all_passed() const {
  return std::all_of(expectations.begin(), expectations.end(),
                     [](const ExpectationVerdict& v) { return v.passed; });
}

// ---------------------------------------------------------------------------

namespace {

void collect_symbols(const Proposition& p, std::set<std::string>& out) {
  std::vector<std::string> names;
  for (const auto& a : p.args) collect_symbols(a, names);
  out.insert(names.begin(), names.end());
}

struct Binding {
  Substitution subst;
  std::vector<PropId> premises;
};

void join(const std::vector<Proposition>& antecedents, std::size_t i, const Space& space,
          const Substitution& subst, std::vector<PropId>& premises, std::vector<Binding>& out) {
  if (i == antecedents.size()) {
    out.push_back({subst, premises});
    return;
  }
  for (const auto& sp : space.store()) {
    if (sp.defeated) continue;
    auto next = unify(antecedents[i], sp.prop, subst);
    if (!next) continue;
    premises.push_back(sp.id);
    join(antecedents, i + 1, space, *next, premises, out);
    premises.pop_back();
  }
}

}  // namespace

Engine::Engine(const KnowledgeBase& kb, const Scenario& scenario, EngineLimits limits)
    : kb_(kb), scenario_(scenario), limits_(limits) {
  limits_.validate();

  std::set<std::string> active;
  for (const auto& s : scenario_.spaces) active.insert(s.metaphor);
  tree_.set_active_metaphors(std::move(active));

  for (const auto& r : kb_.rules) {
    for (const auto& a : r.antecedents) collect_symbols(a, used_symbols_);
    collect_symbols(r.consequent, used_symbols_);
  }
  for (const auto& c : kb_.conversions) {
    collect_symbols(c.vehicle_pattern, used_symbols_);
    collect_symbols(c.tenor_pattern, used_symbols_);
  }
  for (const auto& f : kb_.facts) collect_symbols(f.prop, used_symbols_);
  // Queries and expectations may name the witnesses a run is expected to
  // mint, so they do not reserve names.
  for (const auto& s : scenario_.seeds) collect_symbols(s.prop, used_symbols_);

  std::vector<const SpaceDecl*> order;
  for (const auto& s : scenario_.spaces) order.push_back(&s);
  std::stable_sort(order.begin(), order.end(), [&](const SpaceDecl* a, const SpaceDecl* b) {
    return scenario_.depth_of(a->name) > scenario_.depth_of(b->name);
  });
  for (const auto* s : order) processing_order_.push_back(s->name);

  tree_.create_space(std::string(kRealitySpace), SpaceKind::reality(), std::nullopt);
  record(StepKind::create_space, std::string(kRealitySpace), "", {}, std::nullopt, std::nullopt);
  for (const auto& f : kb_.facts) {
    auto out = store(kRealitySpace, f.prop, f.certainty, Provenance::seed());
    record(StepKind::seed, std::string(kRealitySpace), "", {}, out.id, f.certainty);
  }
  for (const auto& s : scenario_.seeds) {
    if (s.space != kRealitySpace) continue;
    auto out = store(kRealitySpace, s.prop, s.certainty, Provenance::seed());
    record(StepKind::seed, std::string(kRealitySpace), "", {}, out.id, s.certainty);
  }
}

AssertOutcome Engine::store(std::string_view space, const Proposition& prop, Certainty certainty,
                            Provenance provenance) {
  if (prop.depth() > limits_.max_term_depth) {
    throw ResourceError("max_term_depth", to_string(prop) + " in " + std::string(space));
  }
  auto out = tree_.assert_prop(space, prop, certainty, std::move(provenance));
  if (tree_.total_size() > limits_.max_store_size) {
    throw ResourceError("max_store_size", "space " + std::string(space));
  }
  return out;
}

void Engine::record(StepKind kind, std::string space, std::string rule,
                    std::vector<PropId> inputs, std::optional<PropId> output,
                    std::optional<Certainty> certainty) {
  TraceStep step;
  step.step_id = trace_.steps.size() + 1;
  step.kind = kind;
  step.space = std::move(space);
  step.rule = std::move(rule);
  step.inputs = std::move(inputs);
  step.output = output;
  step.certainty = certainty;
  if (output) {
    const auto& sp = tree_.prop(*output);
    step.output_prop = to_string(sp.prop);
    step.defeated = sp.defeated;
  }
  trace_.steps.push_back(std::move(step));
}

const Space& Engine::require_space(std::string_view id) const {
  const Space* s = tree_.find(id);
  if (s == nullptr) throw SpaceError("space '" + std::string(id) + "' is not open");
  return *s;
}

bool Engine::should_fire(const FireKey& key, Certainty certainty) const {
  auto it = fired_.find(key);
  return it == fired_.end() || stronger_than(certainty, it->second);
}

const Space& Engine::open_space(std::string_view id) {
  if (const Space* s = tree_.find(id)) return *s;
  const SpaceDecl* decl = scenario_.find_space(id);
  if (decl == nullptr) throw ReferenceError("scenario declares no space '" + std::string(id) + "'");
  if (decl->parent != kRealitySpace) open_space(decl->parent);
  if (kb_.find_metaphor(decl->metaphor) == nullptr) {
    throw ReferenceError("space '" + decl->name + "' names unknown metaphor '" + decl->metaphor +
                         "'");
  }
  tree_.create_space(decl->name, SpaceKind::metaphor(decl->metaphor), decl->parent);
  record(StepKind::create_space, decl->name, decl->metaphor, {}, std::nullopt, std::nullopt);
  for (const auto& s : scenario_.seeds) {
    if (s.space != decl->name) continue;
    auto out = store(decl->name, s.prop, s.certainty, Provenance::seed());
    record(StepKind::seed, decl->name, "", {}, out.id, s.certainty);
  }
  return tree_.at(id);
}

void Engine::open_all() {
  for (const auto& s : scenario_.spaces) open_space(s.name);
}

std::string Engine::skolem_name(const Rule& rule, std::string_view space,
                                const std::vector<Proposition>& ground_antecedents,
                                const std::string& variable) {
  std::string key = std::string(space) + '|' + rule.name;
  for (const auto& a : ground_antecedents) key += '|' + to_string(a);
  auto& names = skolems_[key];
  if (auto it = names.find(variable); it != names.end()) return it->second;

  auto& minted = skolems_per_rule_[rule.name];
  if (minted >= limits_.max_skolems_per_rule) {
    throw ResourceError("max_skolems_per_rule", "rule " + rule.name);
  }
  ++minted;
  std::size_t n = 1;
  std::string name;
  do {
    name = variable + std::to_string(n++);
  } while (used_symbols_.contains(name));
  used_symbols_.insert(name);
  names.emplace(variable, name);
  return name;
}

std::size_t Engine::saturate(std::string_view space_id) {
  const Space& space = require_space(space_id);
  const std::string sid = space.id();
  auto domains = tree_.literalized_domains(sid, kb_);
  std::size_t added = 0;

  for (bool progressed = true; progressed;) {
    progressed = false;
    for (const auto& rule : kb_.rules) {
      if (!domains.contains(rule.domain)) continue;
      std::vector<Binding> bindings;
      std::vector<PropId> premises;
      join(rule.antecedents, 0, tree_.at(sid), {}, premises, bindings);

      for (auto& b : bindings) {
        std::vector<Certainty> levels;
        for (PropId p : b.premises) levels.push_back(tree_.prop(p).certainty);
        Certainty level = combine(rule.certainty, levels);
        StepKind kind = rule.is_existential() ? StepKind::skolem : StepKind::rule_fire;
        FireKey key{kind, sid, rule.name, b.premises};
        if (!should_fire(key, level)) continue;

        Substitution subst = b.subst;
        if (rule.is_existential()) {
          std::vector<Proposition> ground;
          for (const auto& a : rule.antecedents) ground.push_back(subst.apply(a));
          for (const auto& var : rule.existentials) {
            subst.bind(var, Term::atom(skolem_name(rule, sid, ground, var)));
          }
        }
        Proposition conclusion = subst.apply(rule.consequent);
        auto prov = rule.is_existential() ? Provenance::skolem(rule.name, b.premises)
                                          : Provenance::rule(rule.name, b.premises);
        auto out = store(sid, conclusion, level, std::move(prov));
        fired_[key] = level;
        record(kind, sid, rule.name, b.premises, out.id, level);
        if (out.inserted) ++added;
        progressed = true;
      }
    }
  }
  return added;
}

std::size_t Engine::map_out(std::string_view space_id) {
  const Space& space = require_space(space_id);
  if (space.kind().is_reality()) throw SpaceError("map_out called on reality");
  if (!space.kind().is_metaphor()) return 0;
  const Metaphor* metaphor = kb_.find_metaphor(space.kind().subject);
  if (metaphor == nullptr) throw ReferenceError("unknown metaphor " + space.kind().subject);
  const std::string sid = space.id();
  const std::string parent = *space.parent();

  std::size_t transferred = 0;
  const std::size_t n = space.size();
  for (std::size_t i = 0; i < n; ++i) {
    const StoredProposition& sp = tree_.at(sid).store()[i];
    if (sp.defeated) continue;
    for (std::size_t ci : metaphor->conversions) {
      const ConversionRule& conv = kb_.conversions[ci];
      auto match = unify(conv.vehicle_pattern, sp.prop);
      if (!match) continue;
      const Certainty level = combine(conv.certainty, std::vector<Certainty>{sp.certainty});
      FireKey key{StepKind::convert_out, sid, conv.name, {sp.id}};
      if (!should_fire(key, level)) continue;
      const PropId source = sp.id;
      auto out = store(parent, match->apply(conv.tenor_pattern), level,
                       Provenance::converted(conv.name, sid, source));
      fired_[key] = level;
      record(StepKind::convert_out, parent, conv.name, {source}, out.id, level);
      ++transferred;
    }
  }
  return transferred;
}

std::size_t Engine::map_in(std::string_view space_id, PropId parent_prop) {
  const Space& space = require_space(space_id);
  if (space.kind().is_reality()) throw SpaceError("map_in called on reality");
  if (!space.kind().is_metaphor()) return 0;
  const Metaphor* metaphor = kb_.find_metaphor(space.kind().subject);
  if (metaphor == nullptr) throw ReferenceError("unknown metaphor " + space.kind().subject);
  const std::string sid = space.id();
  const std::string parent = *space.parent();
  if (tree_.space_of(parent_prop).id() != parent) {
    throw SpaceError("map_in source must live in the parent space '" + parent + "'");
  }
  const StoredProposition source = tree_.prop(parent_prop);
  if (source.defeated) return 0;

  std::size_t transferred = 0;
  for (std::size_t ci : metaphor->conversions) {
    const ConversionRule& conv = kb_.conversions[ci];
    auto match = unify(conv.tenor_pattern, source.prop);
    if (!match) continue;
    const Certainty level = combine(conv.certainty, std::vector<Certainty>{source.certainty});
    FireKey key{StepKind::convert_in, sid, conv.name, {source.id}};
    if (!should_fire(key, level)) continue;
    auto out = store(sid, match->apply(conv.vehicle_pattern), level,
                     Provenance::converted(conv.name, parent, source.id));
    fired_[key] = level;
    record(StepKind::convert_in, sid, conv.name, {source.id}, out.id, level);
    ++transferred;
  }
  return transferred;
}

std::size_t Engine::resolve_conflicts(std::string_view space_id) {
  const Space& space = require_space(space_id);
  const std::string sid = space.id();
  std::size_t adjudications = 0;

  const std::size_t n = space.size();
  for (std::size_t i = 0; i < n; ++i) {
    const StoredProposition& pos_ref = tree_.at(sid).store()[i];
    if (pos_ref.prop.negated) continue;
    const StoredProposition* neg_ref = tree_.at(sid).find(pos_ref.prop.complement());
    if (neg_ref == nullptr) continue;

    const PropId pos_id = pos_ref.id;
    const PropId neg_id = neg_ref->id;
    StoredProposition& pos = tree_.prop_mut(pos_id);
    StoredProposition& neg = tree_.prop_mut(neg_id);
    ConflictState state{adjudicate(pos.certainty, neg.certainty), pos.certainty, neg.certainty};
    if (auto it = conflicts_.find(pos_id); it != conflicts_.end() && it->second == state) continue;
    conflicts_[pos_id] = state;

    PropId loser = neg_id;
    Certainty shown = neg.certainty;
    switch (state.verdict) {
      case Verdict::keep_for:
        pos.defeated = pos.undecided = false;
        neg.defeated = true;
        neg.undecided = false;
        break;
      case Verdict::keep_against:
        neg.defeated = neg.undecided = false;
        pos.defeated = true;
        pos.undecided = false;
        loser = pos_id;
        shown = pos.certainty;
        break;
      case Verdict::both_undecided:
        pos.defeated = pos.undecided = true;
        neg.defeated = neg.undecided = true;
        loser = pos_id;
        shown = Certainty::undecided;
        break;
    }
    record(StepKind::conflict, sid, std::string(to_string(state.verdict)), {pos_id, neg_id},
           loser, shown);
    ++adjudications;
  }
  return adjudications;
}

std::size_t Engine::run_round() {
  const std::size_t before = trace_.steps.size();
  for (const auto& id : processing_order_) {
    open_space(id);
    saturate(id);
    resolve_conflicts(id);
    map_out(id);
  }
  saturate(kRealitySpace);
  resolve_conflicts(kRealitySpace);
  ++rounds_;
  return trace_.steps.size() - before;
}

void Engine::run_to_fixpoint() {
  while (true) {
    if (rounds_ >= limits_.max_rounds) {
      throw ResourceError("max_rounds", "no fixpoint after " + std::to_string(rounds_) + " rounds");
    }
    if (run_round() == 0) return;
  }
}

RunResult Engine::finish() && {
  RunResult result;
  for (const auto& q : scenario_.queries) {
    QueryAnswer answer{q, {}};
    if (const Space* s = tree_.find(q.space)) {
      for (const auto& sp : s->store()) {
        if (unify(q.pattern, sp.prop)) answer.matches.push_back(sp);
      }
    }
    result.queries.push_back(std::move(answer));
  }
  for (const auto& x : scenario_.expectations) {
    ExpectationVerdict verdict{x, false, std::nullopt, false};
    if (const Space* s = tree_.find(x.space)) {
      if (const StoredProposition* sp = s->find(x.prop)) {
        verdict.found = sp->shown_certainty();
        verdict.found_defeated = sp->defeated;
        verdict.passed = !sp->defeated && at_least(sp->certainty, x.minimum);
      }
    }
    result.expectations.push_back(std::move(verdict));
  }
  result.rounds = rounds_;
  result.trace = std::move(trace_);
  result.tree = std::move(tree_);
  return result;
}

RunResult run_scenario(const KnowledgeBase& kb, const Scenario& scenario, EngineLimits limits) {
  Engine engine(kb, scenario, limits);
  engine.run_to_fixpoint();
  return std::move(engine).finish();
}

}  // namespace pretence
