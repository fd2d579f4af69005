#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pretence {

/// A first-order term: an atom, a variable, or a compound application.
///
/// Terms are immutable values. A compound always has at least one argument;
/// a nullary application is represented as an atom. Variable names are stored
/// without the leading `?` of the surface syntax.
class Term {
 public:
  enum class Kind : std::uint8_t { atom, variable, compound };

  static Term atom(std::string name);
  static Term variable(std::string name);
  /// Builds `(functor args...)`; with no args the result is an atom.
  static Term compound(std::string functor, std::vector<Term> args);

  Kind kind() const noexcept { return kind_; }
  bool is_atom() const noexcept { return kind_ == Kind::atom; }
  bool is_variable() const noexcept { return kind_ == Kind::variable; }
  bool is_compound() const noexcept { return kind_ == Kind::compound; }

  /// Atom name, variable name, or compound functor.
  const std::string& name() const noexcept { return name_; }
  std::span<const Term> args() const noexcept { return args_; }

  bool is_ground() const noexcept;
  /// Atoms and variables have depth 1.
  std::size_t depth() const noexcept;

  friend bool operator==(const Term& a, const Term& b) noexcept;
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept;

 private:
  Term(Kind kind, std::string name, std::vector<Term> args)
      : kind_(kind), name_(std::move(name)), args_(std::move(args)) {}

  Kind kind_ = Kind::atom;
  std::string name_;
  std::vector<Term> args_;
};

/// A possibly negated predicate application.
struct Proposition {
  bool negated = false;
  std::string predicate;
  std::vector<Term> args;

  bool is_ground() const noexcept;
  /// Largest argument depth; 0 for a nullary proposition.
  std::size_t depth() const noexcept;
  /// The same application with the negation flag flipped.
  Proposition complement() const;

  friend bool operator==(const Proposition&, const Proposition&) = default;
  friend std::strong_ordering operator<=>(const Proposition& a, const Proposition& b) noexcept;
};

/// Variable-to-term bindings, kept fully resolved so that applying the
/// substitution once is the same as applying it any number of times.
class Substitution {
 public:
  using Map = std::map<std::string, Term>;

  Substitution() = default;

  bool empty() const noexcept { return bindings_.empty(); }
  std::size_t size() const noexcept { return bindings_.size(); }
  bool contains(const std::string& var) const { return bindings_.contains(var); }
  const Term* lookup(const std::string& var) const;
  const Map& bindings() const noexcept { return bindings_; }
  Map::const_iterator begin() const noexcept { return bindings_.begin(); }
  Map::const_iterator end() const noexcept { return bindings_.end(); }

  /// Adds `var -> value`. Fails (returns false, leaves *this untouched) when
  /// `var` occurs in the resolved value or is already bound.
  bool bind(const std::string& var, const Term& value);

  Term apply(const Term& t) const;
  Proposition apply(const Proposition& p) const;

  /// Keeps only bindings for the named variables.
  Substitution restricted_to(std::span<const std::string> vars) const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  Map bindings_;
};

std::optional<Substitution> unify(const Term& a, const Term& b, const Substitution& under = {});
std::optional<Substitution> unify(const Proposition& a, const Proposition& b,
                                  const Substitution& under = {});
/// Unifies two argument lists pairwise; lengths must agree.
std::optional<Substitution> unify(std::span<const Term> a, std::span<const Term> b,
                                  const Substitution& under = {});

/// True when `a` and `b` are equal up to a bijective renaming of variables.
bool is_variant(const Proposition& a, const Proposition& b);

/// Variables in order of first occurrence, without duplicates.
std::vector<std::string> variables_of(const Term& t);
std::vector<std::string> variables_of(const Proposition& p);
void collect_variables(const Term& t, std::vector<std::string>& out);
void collect_variables(const Proposition& p, std::vector<std::string>& out);
/// Atom names and functors, into `out`.
void collect_symbols(const Term& t, std::vector<std::string>& out);

/// Renames every variable `?v` to `?v_<suffix>`.
Term rename_apart(const Term& t, std::string_view suffix);
Proposition rename_apart(const Proposition& p, std::string_view suffix);

std::string to_string(const Term& t);
/// Negated propositions render as `(not pred args...)`.
std::string to_string(const Proposition& p);
std::string to_string(const Substitution& s);

std::ostream& operator<<(std::ostream& os, const Term& t);
std::ostream& operator<<(std::ostream& os, const Proposition& p);

}  // namespace pretence
