#include "pretence/spaces.hpp"

#include "pretence/errors.hpp"

namespace pretence {

const StoredProposition* Space::find(const Proposition& p) const {
  auto it = index_.find(p);
  return it == index_.end() ? nullptr : &store_[it->second];
}

SpaceTree::SpaceTree(const SpaceTree& other)
    : by_id_(other.by_id_),
      locator_(other.locator_),
      next_id_(other.next_id_),
      active_metaphors_(other.active_metaphors_) {
  spaces_.reserve(other.spaces_.size());
  for (const auto& s : other.spaces_) spaces_.push_back(std::make_unique<Space>(*s));
}

SpaceTree& SpaceTree::operator=(const SpaceTree& other) {
  if (this != &other) {
    SpaceTree copy(other);
    *this = std::move(copy);
  }
  return *this;
}

Space& SpaceTree::create_space(std::string id, SpaceKind kind, std::optional<std::string> parent) {
  if (by_id_.contains(id)) throw SpaceError("space '" + id + "' already exists");
  std::size_t depth = 0;
  if (kind.is_reality()) {
    if (parent) throw SpaceError("reality space cannot have a parent");
    if (reality() != nullptr) throw SpaceError("a run has exactly one reality space");
  } else {
    if (!parent) throw SpaceError("space '" + id + "' needs a parent");
    const Space* p = find(*parent);
    if (p == nullptr) {
      throw SpaceError("space '" + id + "' names unregistered parent '" + *parent + "'");
    }
    depth = p->depth() + 1;
  }
  by_id_.emplace(id, spaces_.size());
  spaces_.push_back(std::make_unique<Space>(std::move(id), std::move(kind), std::move(parent), depth));
  return *spaces_.back();
}

AssertOutcome SpaceTree::assert_prop(std::string_view space, const Proposition& prop,
                                     Certainty certainty, Provenance provenance) {
  if (!is_annotatable(certainty)) throw CertaintyError("cannot store an undecided proposition");
  if (!prop.is_ground()) throw SpaceError("cannot store non-ground proposition " + to_string(prop));
  auto it = by_id_.find(space);
  if (it == by_id_.end()) throw SpaceError("unknown space '" + std::string(space) + "'");
  Space& s = *spaces_[it->second];

  if (auto found = s.index_.find(prop); found != s.index_.end()) {
    StoredProposition& sp = s.store_[found->second];
    sp.provenance.push_back(std::move(provenance));
    AssertOutcome out{sp.id, false, false};
    if (stronger_than(certainty, sp.certainty)) {
      sp.certainty = certainty;
      out.upgraded = true;
    }
    return out;
  }

  StoredProposition sp;
  sp.id = next_id_++;
  sp.prop = prop;
  sp.certainty = certainty;
  sp.provenance.push_back(std::move(provenance));
  s.index_.emplace(prop, s.store_.size());
  locator_.emplace_back(it->second, s.store_.size());
  s.store_.push_back(std::move(sp));
  return {s.store_.back().id, true, false};
}

Space* SpaceTree::find(std::string_view id) {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : spaces_[it->second].get();
}

const Space* SpaceTree::find(std::string_view id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : spaces_[it->second].get();
}

const Space& SpaceTree::at(std::string_view id) const {
  const Space* s = find(id);
  if (s == nullptr) throw SpaceError("unknown space '" + std::string(id) + "'");
  return *s;
}

const Space* SpaceTree::reality() const {
  for (const auto& s : spaces_) {
    if (s->kind().is_reality()) return s.get();
  }
  return nullptr;
}

std::vector<const Space*> SpaceTree::spaces() const {
  std::vector<const Space*> out;
  out.reserve(spaces_.size());
  for (const auto& s : spaces_) out.push_back(s.get());
  return out;
}

std::vector<const Space*> SpaceTree::children(std::string_view id) const {
  std::vector<const Space*> out;
  for (const auto& s : spaces_) {
    if (s->parent() && *s->parent() == id) out.push_back(s.get());
  }
  return out;
}

const StoredProposition& SpaceTree::prop(PropId id) const {
  if (id == 0 || id >= locator_.size()) throw SpaceError("unknown proposition id");
  auto [space, slot] = locator_[id];
  return spaces_[space]->store_[slot];
}

StoredProposition& SpaceTree::prop_mut(PropId id) {
  if (id == 0 || id >= locator_.size()) throw SpaceError("unknown proposition id");
  auto [space, slot] = locator_[id];
  return spaces_[space]->store_[slot];
}

const Space& SpaceTree::space_of(PropId id) const {
  if (id == 0 || id >= locator_.size()) throw SpaceError("unknown proposition id");
  return *spaces_[locator_[id].first];
}

std::set<std::string> SpaceTree::active_metaphors() const {
  if (active_metaphors_) return *active_metaphors_;
  std::set<std::string> out;
  for (const auto& s : spaces_) {
    if (s->kind().is_metaphor()) out.insert(s->kind().subject);
  }
  return out;
}

std::set<std::string> SpaceTree::literalized_domains(std::string_view space,
                                                     const KnowledgeBase& kb) const {
  const Space& s = at(space);
  if (s.kind().is_reality()) {
    std::set<std::string> claimed;
    for (const auto& name : active_metaphors()) {
      if (const Metaphor* m = kb.find_metaphor(name)) {
        claimed.insert(m->vehicle_domains.begin(), m->vehicle_domains.end());
      }
    }
    auto out = kb.tenor_domains();
    for (const auto& d : kb.domains) {
      if (!claimed.contains(d.name)) out.insert(d.name);
    }
    return out;
  }
  auto out = literalized_domains(*s.parent(), kb);
  if (s.kind().is_metaphor()) {
    if (const Metaphor* m = kb.find_metaphor(s.kind().subject)) {
      out.insert(m->vehicle_domains.begin(), m->vehicle_domains.end());
    }
  }
  return out;
}

}  // namespace pretence
