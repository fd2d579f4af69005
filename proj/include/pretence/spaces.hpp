#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pretence/certainty.hpp"
#include "pretence/kb.hpp"
#include "pretence/term.hpp"

namespace pretence {

/// Run-wide identifier of a stored proposition, dense from 1.
using PropId = std::uint32_t;

struct SpaceKind {
  enum class Tag : std::uint8_t { reality, metaphor_pretence, simulation_pretence };

  Tag tag = Tag::reality;
  /// Metaphor name for metaphor-pretence spaces, agent for simulation-pretence.
  std::string subject;

  static SpaceKind reality() { return {Tag::reality, {}}; }
  static SpaceKind metaphor(std::string name) { return {Tag::metaphor_pretence, std::move(name)}; }
  static SpaceKind simulation(std::string agent) {
    return {Tag::simulation_pretence, std::move(agent)};
  }

  bool is_reality() const noexcept { return tag == Tag::reality; }
  bool is_metaphor() const noexcept { return tag == Tag::metaphor_pretence; }

  friend bool operator==(const SpaceKind&, const SpaceKind&) = default;
};

struct Provenance {
  enum class Kind : std::uint8_t { seed, rule, converted, skolem };

  Kind kind = Kind::seed;
  /// Rule or conversion name; empty for seeds.
  std::string name;
  /// Same-space premises of a rule or skolem firing.
  std::vector<PropId> premises;
  /// For converted propositions: where the source lives.
  std::string source_space;
  PropId source = 0;

  static Provenance seed() { return {}; }
  static Provenance rule(std::string name, std::vector<PropId> premises) {
    return {Kind::rule, std::move(name), std::move(premises), {}, 0};
  }
  static Provenance skolem(std::string name, std::vector<PropId> premises) {
    return {Kind::skolem, std::move(name), std::move(premises), {}, 0};
  }
  static Provenance converted(std::string conversion, std::string source_space, PropId source) {
    return {Kind::converted, std::move(conversion), {}, std::move(source_space), source};
  }
};

struct StoredProposition {
  PropId id = 0;
  Proposition prop;
  Certainty certainty = Certainty::possible;
  /// Every derivation that asserted this proposition, first one first.
  std::vector<Provenance> provenance;
  bool defeated = false;
  /// Defeated by a tie; renders as `undecided`.
  bool undecided = false;

  Certainty shown_certainty() const noexcept {
    return undecided ? Certainty::undecided : certainty;
  }
};

struct AssertOutcome {
  PropId id = 0;
  bool inserted = false;
  bool upgraded = false;

  bool changed() const noexcept { return inserted || upgraded; }
};

class Space {
 public:
  Space(std::string id, SpaceKind kind, std::optional<std::string> parent, std::size_t depth)
      : id_(std::move(id)), kind_(std::move(kind)), parent_(std::move(parent)), depth_(depth) {}

  const std::string& id() const noexcept { return id_; }
  const SpaceKind& kind() const noexcept { return kind_; }
  const std::optional<std::string>& parent() const noexcept { return parent_; }
  std::size_t depth() const noexcept { return depth_; }

  /// Insertion-ordered store.
  const std::vector<StoredProposition>& store() const noexcept { return store_; }
  std::size_t size() const noexcept { return store_.size(); }
  const StoredProposition* find(const Proposition& p) const;

 private:
  friend class SpaceTree;

  std::string id_;
  SpaceKind kind_;
  std::optional<std::string> parent_;
  std::size_t depth_ = 0;
  std::vector<StoredProposition> store_;
  std::map<Proposition, std::size_t> index_;
};

/// The tree of reasoning spaces for one run: reality at the root, pretence
/// cocoons beneath. Spaces never read each other's stores; every cross-space
/// transfer goes through the engine's conversion steps.
class SpaceTree {
 public:
  SpaceTree() = default;
  SpaceTree(const SpaceTree& other);
  SpaceTree& operator=(const SpaceTree& other);
  SpaceTree(SpaceTree&&) noexcept = default;
  SpaceTree& operator=(SpaceTree&&) noexcept = default;

  /// Throws SpaceError on a duplicate id, a second reality, a reality with a
  /// parent, or a non-reality space without a registered parent.
  Space& create_space(std::string id, SpaceKind kind, std::optional<std::string> parent);

  /// Asserts a ground proposition. Re-assertion keeps one entry, raises its
  /// certainty to the max of old and new, and appends the provenance.
  /// Throws SpaceError for non-ground propositions or unknown spaces, and
  /// CertaintyError for `undecided`.
  AssertOutcome assert_prop(std::string_view space, const Proposition& prop, Certainty certainty,
                            Provenance provenance);

  Space* find(std::string_view id);
  const Space* find(std::string_view id) const;
  const Space& at(std::string_view id) const;
  const Space* reality() const;

  /// Spaces in creation order.
  std::vector<const Space*> spaces() const;
  std::vector<const Space*> children(std::string_view id) const;
  std::size_t total_size() const noexcept { return next_id_ - 1; }

  const StoredProposition& prop(PropId id) const;
  StoredProposition& prop_mut(PropId id);
  const Space& space_of(PropId id) const;

  /// Restricts which metaphors count as active when literalizing reality.
  /// Unset means: the metaphors of the cocoons created so far.
  void set_active_metaphors(std::set<std::string> metaphors) {
    active_metaphors_ = std::move(metaphors);
  }
  std::set<std::string> active_metaphors() const;

  /// Domains whose rules apply inside the space. Reality literalizes every
  /// tenor domain and every domain no active metaphor claims as a vehicle;
  /// a metaphor cocoon adds its vehicle domains to its parent's set.
  std::set<std::string> literalized_domains(std::string_view space, const KnowledgeBase& kb) const;

 private:
  std::vector<std::unique_ptr<Space>> spaces_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
  /// PropId -> (space index, store index); slot 0 unused.
  std::vector<std::pair<std::size_t, std::size_t>> locator_{{0, 0}};
  PropId next_id_ = 1;
  std::optional<std::set<std::string>> active_metaphors_;
};

}  // namespace pretence
