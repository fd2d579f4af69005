#include "pretence/term.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace pretence {

Term Term::atom(std::string name) { return Term(Kind::atom, std::move(name), {}); }

Term Term::variable(std::string name) { return Term(Kind::variable, std::move(name), {}); }

Term Term::compound(std::string functor, std::vector<Term> args) {
  if (args.empty()) return atom(std::move(functor));
  return Term(Kind::compound, std::move(functor), std::move(args));
}

bool Term::is_ground() const noexcept {
  if (kind_ == Kind::variable) return false;
  return std::all_of(args_.begin(), args_.end(), [](const Term& t) { return t.is_ground(); });
}

std::size_t Term::depth() const noexcept {
  std::size_t deepest = 0;
  for (const auto& a : args_) deepest = std::max(deepest, a.depth());
  return deepest + 1;
}

bool operator==(const Term& a, const Term& b) noexcept {
  return a.kind_ == b.kind_ && a.name_ == b.name_ && a.args_ == b.args_;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = a.name_ <=> b.name_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.args_.begin(), a.args_.end(), b.args_.begin(),
                                                b.args_.end());
}

bool Proposition::is_ground() const noexcept {
  return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_ground(); });
}

std::size_t Proposition::depth() const noexcept {
  std::size_t deepest = 0;
  for (const auto& a : args) deepest = std::max(deepest, a.depth());
  return deepest;
}

Proposition Proposition::complement() const {
  Proposition p = *this;
  p.negated = !negated;
  return p;
}

std::strong_ordering operator<=>(const Proposition& a, const Proposition& b) noexcept {
  if (auto c = a.negated <=> b.negated; c != 0) return c;
  if (auto c = a.predicate <=> b.predicate; c != 0) return c;
  return std::lexicographical_compare_three_way(a.args.begin(), a.args.end(), b.args.begin(),
                                                b.args.end());
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

bool occurs(const std::string& var, const Term& t) {
  if (t.is_variable()) return t.name() == var;
  return std::any_of(t.args().begin(), t.args().end(),
                     [&](const Term& a) { return occurs(var, a); });
}

Term replace_var(const Term& t, const std::string& var, const Term& value) {
  if (t.is_variable()) return t.name() == var ? value : t;
  if (!t.is_compound()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(replace_var(a, var, value));
  return Term::compound(t.name(), std::move(args));
}

}  // namespace

const Term* Substitution::lookup(const std::string& var) const {
  auto it = bindings_.find(var);
  return it == bindings_.end() ? nullptr : &it->second;
}

bool Substitution::bind(const std::string& name, const Term& value) {
  // Both arguments may alias terms held in bindings_, which the loop rewrites.
  const std::string var = name;
  if (bindings_.contains(var)) return false;
  Term resolved = apply(value);
  if (resolved.is_variable() && resolved.name() == var) return true;
  if (occurs(var, resolved)) return false;
  for (auto& [_, bound] : bindings_) bound = replace_var(bound, var, resolved);
  bindings_.emplace(var, std::move(resolved));
  return true;
}

Term Substitution::apply(const Term& t) const {
  if (bindings_.empty()) return t;
  if (t.is_variable()) {
    const Term* bound = lookup(t.name());
    return bound ? *bound : t;
  }
  if (!t.is_compound()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(apply(a));
  return Term::compound(t.name(), std::move(args));
}

Proposition Substitution::apply(const Proposition& p) const {
  Proposition out;
  out.negated = p.negated;
  out.predicate = p.predicate;
  out.args.reserve(p.args.size());
  for (const auto& a : p.args) out.args.push_back(apply(a));
  return out;
}

Substitution Substitution::restricted_to(std::span<const std::string> vars) const {
  Substitution out;
  for (const auto& v : vars) {
    if (const Term* t = lookup(v)) out.bindings_.emplace(v, *t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Unification

namespace {

bool unify_into(const Term& a, const Term& b, Substitution& s) {
  if (a.is_variable()) {
    if (const Term* bound = s.lookup(a.name())) return unify_into(*bound, b, s);
  }
  if (b.is_variable()) {
    if (const Term* bound = s.lookup(b.name())) return unify_into(a, *bound, s);
  }
  if (a.is_variable()) return s.bind(a.name(), b);
  if (b.is_variable()) return s.bind(b.name(), a);
  if (a.kind() != b.kind() || a.name() != b.name() || a.args().size() != b.args().size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    if (!unify_into(a.args()[i], b.args()[i], s)) return false;
  }
  return true;
}

}  // namespace

std::optional<Substitution> unify(const Term& a, const Term& b, const Substitution& under) {
  Substitution s = under;
  if (!unify_into(a, b, s)) return std::nullopt;
  return s;
}

std::optional<Substitution> unify(std::span<const Term> a, std::span<const Term> b,
                                  const Substitution& under) {
  if (a.size() != b.size()) return std::nullopt;
  Substitution s = under;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!unify_into(a[i], b[i], s)) return std::nullopt;
  }
  return s;
}

std::optional<Substitution> unify(const Proposition& a, const Proposition& b,
                                  const Substitution& under) {
  if (a.negated != b.negated || a.predicate != b.predicate) return std::nullopt;
  return unify(std::span<const Term>(a.args), std::span<const Term>(b.args), under);
}

namespace {

bool variant_terms(const Term& a, const Term& b, std::map<std::string, std::string>& fwd,
                   std::map<std::string, std::string>& back) {
  if (a.kind() != b.kind()) return false;
  if (a.is_variable()) {
    auto [f, fnew] = fwd.emplace(a.name(), b.name());
    auto [r, rnew] = back.emplace(b.name(), a.name());
    return f->second == b.name() && r->second == a.name();
  }
  if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    if (!variant_terms(a.args()[i], b.args()[i], fwd, back)) return false;
  }
  return true;
}

}  // namespace

bool is_variant(const Proposition& a, const Proposition& b) {
  if (a.negated != b.negated || a.predicate != b.predicate || a.args.size() != b.args.size()) {
    return false;
  }
  std::map<std::string, std::string> fwd, back;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!variant_terms(a.args[i], b.args[i], fwd, back)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Variables, symbols, renaming

void collect_variables(const Term& t, std::vector<std::string>& out) {
  if (t.is_variable()) {
    if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
    return;
  }
  for (const auto& a : t.args()) collect_variables(a, out);
}

void collect_variables(const Proposition& p, std::vector<std::string>& out) {
  for (const auto& a : p.args) collect_variables(a, out);
}

std::vector<std::string> variables_of(const Term& t) {
  std::vector<std::string> out;
  collect_variables(t, out);
  return out;
}

std::vector<std::string> variables_of(const Proposition& p) {
  std::vector<std::string> out;
  collect_variables(p, out);
  return out;
}

void collect_symbols(const Term& t, std::vector<std::string>& out) {
  if (t.is_variable()) return;
  out.push_back(t.name());
  for (const auto& a : t.args()) collect_symbols(a, out);
}

Term rename_apart(const Term& t, std::string_view suffix) {
  if (t.is_variable()) return Term::variable(t.name() + "_" + std::string(suffix));
  if (!t.is_compound()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(rename_apart(a, suffix));
  return Term::compound(t.name(), std::move(args));
}

Proposition rename_apart(const Proposition& p, std::string_view suffix) {
  Proposition out;
  out.negated = p.negated;
  out.predicate = p.predicate;
  for (const auto& a : p.args) out.args.push_back(rename_apart(a, suffix));
  return out;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

void render(std::ostream& os, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::atom:
      os << t.name();
      break;
    case Term::Kind::variable:
      os << '?' << t.name();
      break;
    case Term::Kind::compound:
      os << '(' << t.name();
      for (const auto& a : t.args()) {
        os << ' ';
        render(os, a);
      }
      os << ')';
      break;
  }
}

}  // namespace

std::string to_string(const Term& t) {
  std::ostringstream os;
  render(os, t);
  return os.str();
}

std::string to_string(const Proposition& p) {
  std::ostringstream os;
  os << '(';
  if (p.negated) os << "not ";
  os << p.predicate;
  for (const auto& a : p.args) {
    os << ' ';
    render(os, a);
  }
  os << ')';
  return os.str();
}

std::string to_string(const Substitution& s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [var, value] : s) {
    if (!first) os << ", ";
    first = false;
    os << '?' << var << " -> ";
    render(os, value);
  }
  os << '}';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Term& t) {
  render(os, t);
  return os;
}

std::ostream& operator<<(std::ostream& os, const Proposition& p) { return os << to_string(p); }

}  // namespace pretence
