#include "pretence/prove.hpp"

#include <map>

#include "pretence/errors.hpp"

namespace pretence {

std::string_view to_string(ProofStep::Kind k) noexcept {
  switch (k) {
    case ProofStep::Kind::stored: return "stored";
    case ProofStep::Kind::rule: return "rule";
    case ProofStep::Kind::skolem: return "skolem";
    case ProofStep::Kind::convert_out: return "convert_out";
    case ProofStep::Kind::convert_in: return "convert_in";
  }
  return "stored";
}

namespace {

using Steps = std::vector<ProofStep>;

struct Answer {
  Proposition instance;
  Certainty certainty;
  Steps steps;
};

/// Answers found so far for one goal variant in one space.
struct Table {
  std::vector<Answer> answers;
  std::map<Proposition, std::size_t> index;
  std::size_t expanded_in = 0;
};

/// Goal variant with variables numbered by first occurrence.
std::string variant_key(std::string_view space, const Proposition& goal) {
  Substitution canon;
  std::size_t n = 0;
  for (const auto& v : variables_of(goal)) canon.bind(v, Term::variable("_" + std::to_string(n++)));
  return std::string(space) + "|" + to_string(canon.apply(goal));
}

// Linear tabling: every call to a goal variant reads and extends that
// variant's table. Each pass expands each variant at most once (recursive
// calls see the partial table), and passes repeat until no table gains an
// answer or a better certainty.
class Prover {
 public:
  Prover(Engine& engine, ProveOptions options)
      : engine_(engine), kb_(engine.kb()), tree_(engine.tree()), options_(options) {}

  const Table& run(const Proposition& goal, const Space& space) {
    do {
      changed_ = false;
      ++pass_;
      solve(goal, space, 0);
    } while (changed_);
    return tables_.at(variant_key(space.id(), goal));
  }

  bool truncated() const noexcept { return truncated_; }

 private:
  Table& solve(const Proposition& goal, const Space& space, std::size_t depth) {
    Table& table = tables_[variant_key(space.id(), goal)];
    if (table.expanded_in == pass_) return table;
    table.expanded_in = pass_;

    for (const auto& sp : space.store()) {
      if (sp.defeated || !unify(goal, sp.prop)) continue;
      add(table, sp.prop, sp.certainty, Steps{{ProofStep::Kind::stored, space.id(), "", sp.prop, sp.certainty}});
    }
    if (depth >= engine_.limits().max_proof_depth) {
      truncated_ = true;
      return table;
    }

    for (const auto& rule : kb_.rules) {
      if (!domains(space).contains(rule.domain)) continue;
      Rule renamed = rename_apart(rule, "p" + std::to_string(++renames_));
      auto head = unify(goal, renamed.consequent);
      if (!head) continue;
      join(renamed.antecedents, 0, space, depth, *head, {}, {}, [&](const Substitution& s,
                                                                   const std::vector<Certainty>& levels,
                                                                   const Steps& steps) {
        Substitution done = s;
        if (renamed.is_existential()) {
          std::vector<Proposition> ground;
          for (const auto& a : renamed.antecedents) ground.push_back(done.apply(a));
          for (std::size_t i = 0; i < rule.existentials.size(); ++i) {
            std::string name = engine_.skolem_name(rule, space.id(), ground, rule.existentials[i]);
            auto bound = unify(Term::variable(renamed.existentials[i]), Term::atom(name), done);
            if (!bound) return;
            done = std::move(*bound);
          }
        }
        Proposition instance = done.apply(renamed.consequent);
        if (!instance.is_ground()) return;
        Certainty level = combine(rule.certainty, levels);
        Steps all = steps;
        all.push_back({renamed.is_existential() ? ProofStep::Kind::skolem : ProofStep::Kind::rule,
                       space.id(), rule.name, instance, level});
        add(table, instance, level, std::move(all));
      });
    }

    for (const Space* child : tree_.children(space.id())) {
      const Metaphor* m = metaphor_of(*child);
      if (m == nullptr) continue;
      for (std::size_t ci : m->conversions) {
        cross(table, goal, kb_.conversions[ci], *child, space, ProofStep::Kind::convert_out, depth);
      }
    }
    if (options_.allow_map_in && space.parent()) {
      if (const Metaphor* m = metaphor_of(space)) {
        const Space& parent = tree_.at(*space.parent());
        for (std::size_t ci : m->conversions) {
          cross(table, goal, kb_.conversions[ci], parent, space, ProofStep::Kind::convert_in, depth);
        }
      }
    }
    return table;
  }

  /// Proves `goal` in `here` through one conversion whose other side lives in `there`.
  void cross(Table& table, const Proposition& goal, const ConversionRule& conv, const Space& there,
             const Space& here, ProofStep::Kind kind, std::size_t depth) {
    bool outward = kind == ProofStep::Kind::convert_out;
    std::string suffix = "p" + std::to_string(++renames_);
    Proposition near = rename_apart(outward ? conv.tenor_pattern : conv.vehicle_pattern, suffix);
    Proposition far = rename_apart(outward ? conv.vehicle_pattern : conv.tenor_pattern, suffix);
    auto s = unify(goal, near);
    if (!s) return;
    Proposition sub = s->apply(far);
    Table& source = solve(sub, there, depth + 1);
    for (std::size_t i = 0; i < source.answers.size(); ++i) {
      const Answer& a = source.answers[i];
      auto s2 = unify(sub, a.instance, *s);
      if (!s2) continue;
      Proposition instance = s2->apply(near);
      Certainty level = combine(conv.certainty, std::vector<Certainty>{a.certainty});
      Steps all = a.steps;
      all.push_back({kind, here.id(), conv.name, instance, level});
      add(table, instance, level, std::move(all));
    }
  }

  template <typename K>
  void join(const std::vector<Proposition>& goals, std::size_t i, const Space& space,
            std::size_t depth, const Substitution& subst, std::vector<Certainty> levels, Steps steps,
            const K& k) {
    if (i == goals.size()) {
      k(subst, levels, steps);
      return;
    }
    Proposition sub = subst.apply(goals[i]);
    Table& source = solve(sub, space, depth + 1);
    for (std::size_t a = 0; a < source.answers.size(); ++a) {
      auto next = unify(sub, source.answers[a].instance, subst);
      if (!next) continue;
      std::vector<Certainty> more = levels;
      more.push_back(source.answers[a].certainty);
      Steps joined = steps;
      joined.insert(joined.end(), source.answers[a].steps.begin(), source.answers[a].steps.end());
      join(goals, i + 1, space, depth, *next, std::move(more), std::move(joined), k);
    }
  }

  void add(Table& table, const Proposition& instance, Certainty level, Steps steps) {
    if (instance.depth() > engine_.limits().max_term_depth) {
      throw ResourceError("max_term_depth", to_string(instance) + " while proving");
    }
    auto [it, fresh] = table.index.emplace(instance, table.answers.size());
    if (fresh) {
      table.answers.push_back({instance, level, std::move(steps)});
      changed_ = true;
    } else if (stronger_than(level, table.answers[it->second].certainty)) {
      table.answers[it->second].certainty = level;
      table.answers[it->second].steps = std::move(steps);
      changed_ = true;
    }
  }

  const Metaphor* metaphor_of(const Space& s) const {
    if (!s.kind().is_metaphor()) return nullptr;
    return kb_.find_metaphor(s.kind().subject);
  }

  const std::set<std::string>& domains(const Space& s) {
    auto it = domains_.find(s.id());
    if (it == domains_.end()) it = domains_.emplace(s.id(), tree_.literalized_domains(s.id(), kb_)).first;
    return it->second;
  }

  Engine& engine_;
  const KnowledgeBase& kb_;
  const SpaceTree& tree_;
  ProveOptions options_;
  std::map<std::string, Table> tables_;
  std::map<std::string, std::set<std::string>> domains_;
  std::size_t pass_ = 0;
  std::size_t renames_ = 0;
  bool changed_ = false;
  bool truncated_ = false;
};

}  // namespace

ProveResult prove(Engine& engine, const Proposition& goal, std::string_view space,
                  ProveOptions options) {
  const Space* root = engine.tree().find(space);
  if (root == nullptr) throw ReferenceError("prove: space '" + std::string(space) + "' is not open");
  Prover prover(engine, options);
  const Table& table = prover.run(goal, *root);
  ProveResult result;
  result.truncated = prover.truncated();
  auto goal_vars = variables_of(goal);
  for (const auto& a : table.answers) {
    if (result.proofs.size() >= options.max_proofs) {
      result.truncated = true;
      break;
    }
    auto s = unify(goal, a.instance);
    result.proofs.push_back({s->restricted_to(goal_vars), a.instance, a.certainty, a.steps});
  }
  return result;
}

}  // namespace pretence
