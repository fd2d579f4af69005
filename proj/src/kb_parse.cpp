#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "pretence/kb.hpp"

namespace pretence {

std::string format_diagnostic(const Diagnostic& d) {
  std::ostringstream os;
  os << (d.severity == Severity::error ? "ERROR" : "WARNING") << ' ' << d.code << ' '
     << d.where.file << ':' << d.where.line << ':' << d.where.column << ' ' << d.message;
  return os.str();
}

bool has_errors(std::span<const Diagnostic> diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

// ---------------------------------------------------------------------------
// KnowledgeBase / Scenario helpers

namespace {

template <typename T>
const T* find_named(const std::vector<T>& items, std::string_view name) {
  auto it = std::find_if(items.begin(), items.end(), [&](const T& x) { return x.name == name; });
  return it == items.end() ? nullptr : &*it;
}

void rebuild_conversion_index(KnowledgeBase& kb) {
  for (auto& m : kb.metaphors) m.conversions.clear();
  for (std::size_t i = 0; i < kb.conversions.size(); ++i) {
    for (auto& m : kb.metaphors) {
      if (m.name == kb.conversions[i].metaphor) m.conversions.push_back(i);
    }
  }
}

}  // namespace

const Domain* KnowledgeBase::find_domain(std::string_view name) const {
  return find_named(domains, name);
}
const Metaphor* KnowledgeBase::find_metaphor(std::string_view name) const {
  return find_named(metaphors, name);
}
const Rule* KnowledgeBase::find_rule(std::string_view name) const { return find_named(rules, name); }
const ConversionRule* KnowledgeBase::find_conversion(std::string_view name) const {
  return find_named(conversions, name);
}

std::set<std::string> KnowledgeBase::tenor_domains() const {
  std::set<std::string> out;
  for (const auto& m : metaphors) out.insert(m.tenor_domain);
  return out;
}

std::set<std::string> KnowledgeBase::vehicle_domains() const {
  std::set<std::string> out;
  for (const auto& m : metaphors) out.insert(m.vehicle_domains.begin(), m.vehicle_domains.end());
  return out;
}

KnowledgeBase KnowledgeBase::without_rule(std::string_view name) const {
  KnowledgeBase out = *this;
  std::erase_if(out.rules, [&](const Rule& r) { return r.name == name; });
  return out;
}

KnowledgeBase KnowledgeBase::without_conversion(std::string_view name) const {
  KnowledgeBase out = *this;
  std::erase_if(out.conversions, [&](const ConversionRule& c) { return c.name == name; });
  rebuild_conversion_index(out);
  return out;
}

const SpaceDecl* Scenario::find_space(std::string_view name) const {
  return find_named(spaces, name);
}

std::size_t Scenario::depth_of(std::string_view name) const {
  std::size_t depth = 0;
  const SpaceDecl* s = find_space(name);
  while (s != nullptr && depth <= spaces.size()) {
    ++depth;
    s = find_space(s->parent);
  }
  return depth;
}

Rule rename_apart(const Rule& rule, std::string_view suffix) {
  Rule out = rule;
  for (auto& a : out.antecedents) a = rename_apart(a, suffix);
  out.consequent = rename_apart(rule.consequent, suffix);
  for (auto& v : out.existentials) v += "_" + std::string(suffix);
  return out;
}

// ---------------------------------------------------------------------------
// Reader

namespace {

struct SExpr {
  enum class Kind { list, symbol, variable, arrow };
  Kind kind = Kind::list;
  std::string text;
  std::vector<SExpr> items;
  SourceLocation where;

  bool is_symbol() const { return kind == Kind::symbol; }
  bool is_symbol(std::string_view s) const { return kind == Kind::symbol && text == s; }
  bool is_list() const { return kind == Kind::list; }
};

bool symbol_start(char c) { return c >= 'a' && c <= 'z'; }
bool symbol_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
}

class Reader {
 public:
  Reader(std::string_view text, std::string file, std::vector<Diagnostic>& diags)
      : text_(text), file_(std::move(file)), diags_(diags) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> top;
    std::vector<SExpr> stack;
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) break;
      SourceLocation at = here();
      char c = text_[pos_];
      if (c == '(') {
        advance();
        SExpr list;
        list.kind = SExpr::Kind::list;
        list.where = at;
        stack.push_back(std::move(list));
        continue;
      }
      if (c == ')') {
        advance();
        if (stack.empty()) {
          error("E-PAREN", at, "unbalanced ')' with no matching '('");
          continue;
        }
        SExpr done = std::move(stack.back());
        stack.pop_back();
        push(stack, top, std::move(done));
        continue;
      }
      SExpr atom;
      atom.where = at;
      if (c == '?') {
        advance();
        std::string name = take_symbol();
        if (name.empty()) {
          error("E-LEX", at, "variable must match ?[a-z][a-z0-9_-]*");
          skip_bad();
          continue;
        }
        atom.kind = SExpr::Kind::variable;
        atom.text = std::move(name);
      } else if (text_.substr(pos_, 3) == "<->") {
        advance(3);
        atom.kind = SExpr::Kind::arrow;
        atom.text = "<->";
      } else if (symbol_start(c)) {
        atom.kind = SExpr::Kind::symbol;
        atom.text = take_symbol();
      } else {
        error("E-LEX", at, std::string("unexpected character '") + c + "'");
        skip_bad();
        continue;
      }
      if (pos_ < text_.size() && !delimiter(text_[pos_])) {
        error("E-LEX", here(), std::string("unexpected character '") + text_[pos_] + "'");
        skip_bad();
        continue;
      }
      push(stack, top, std::move(atom));
    }
    for (const auto& open : stack) error("E-PAREN", open.where, "unbalanced '(' is never closed");
    return top;
  }

 private:
  static bool delimiter(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';';
  }

  static void push(std::vector<SExpr>& stack, std::vector<SExpr>& top, SExpr e) {
    if (stack.empty()) {
      top.push_back(std::move(e));
    } else {
      stack.back().items.push_back(std::move(e));
    }
  }

  SourceLocation here() const { return {file_, line_, col_}; }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void skip_bad() {
    while (pos_ < text_.size() && !delimiter(text_[pos_])) advance();
  }

  std::string take_symbol() {
    if (pos_ >= text_.size() || !symbol_start(text_[pos_])) return {};
    std::size_t start = pos_;
    while (pos_ < text_.size() && symbol_char(text_[pos_])) advance();
    return std::string(text_.substr(start, pos_ - start));
  }

  void error(std::string code, SourceLocation at, std::string message) {
    diags_.push_back({Severity::error, std::move(code), std::move(at), std::move(message)});
  }

  std::string_view text_;
  std::string file_;
  std::vector<Diagnostic>& diags_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ---------------------------------------------------------------------------
// Interpretation

class Interpreter {
 public:
  explicit Interpreter(std::vector<Diagnostic>& diags) : diags_(diags) {}

  void error(std::string code, const SourceLocation& at, std::string message) {
    diags_.push_back({Severity::error, std::move(code), at, std::move(message)});
  }

  std::optional<Term> term(const SExpr& e) {
    switch (e.kind) {
      case SExpr::Kind::symbol:
        return Term::atom(e.text);
      case SExpr::Kind::variable:
        return Term::variable(e.text);
      case SExpr::Kind::arrow:
        error("E-SHAPE", e.where, "'<->' is not a term");
        return std::nullopt;
      case SExpr::Kind::list:
        break;
    }
    if (e.items.size() < 2 || !e.items[0].is_symbol()) {
      error("E-SHAPE", e.where, "compound term must be (functor arg+)");
      return std::nullopt;
    }
    std::vector<Term> args;
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      auto t = term(e.items[i]);
      if (!t) return std::nullopt;
      args.push_back(std::move(*t));
    }
    return Term::compound(e.items[0].text, std::move(args));
  }

  std::optional<Proposition> prop(const SExpr& e) {
    if (!e.is_list() || e.items.empty() || !e.items[0].is_symbol()) {
      error("E-SHAPE", e.where, "proposition must be ([not] predicate term*)");
      return std::nullopt;
    }
    std::size_t first = 0;
    Proposition p;
    if (e.items[0].text == "not") {
      if (e.items.size() == 2 && e.items[1].is_list()) {
        auto inner = prop(e.items[1]);
        if (!inner) return std::nullopt;
        if (inner->negated) {
          error("E-SHAPE", e.where, "double negation is not allowed");
          return std::nullopt;
        }
        inner->negated = true;
        return inner;
      }
      if (e.items.size() < 2 || !e.items[1].is_symbol()) {
        error("E-SHAPE", e.where, "negated proposition must be (not predicate term*)");
        return std::nullopt;
      }
      p.negated = true;
      first = 1;
    }
    p.predicate = e.items[first].text;
    if (p.predicate == "not") {
      error("E-SHAPE", e.items[first].where, "'not' is reserved and cannot be a predicate");
      return std::nullopt;
    }
    for (std::size_t i = first + 1; i < e.items.size(); ++i) {
      auto t = term(e.items[i]);
      if (!t) return std::nullopt;
      p.args.push_back(std::move(*t));
    }
    return p;
  }

  std::optional<Certainty> cert(const SExpr& e) {
    if (e.is_symbol()) {
      if (auto c = parse_certainty(e.text)) return c;
    }
    error("E-SHAPE", e.where, "expected certainty (certain | presumed | suggested | possible)");
    return std::nullopt;
  }

  bool symbol(const SExpr& e, std::string& out, std::string_view what) {
    if (!e.is_symbol()) {
      error("E-SHAPE", e.where, "expected " + std::string(what));
      return false;
    }
    out = e.text;
    return true;
  }

  bool keyword(const SExpr& e, std::string_view kw) {
    if (!e.is_symbol(kw)) {
      error("E-SHAPE", e.where, "expected keyword '" + std::string(kw) + "'");
      return false;
    }
    return true;
  }

  bool arity(const SExpr& e, std::size_t n, std::string_view form) {
    if (e.items.size() != n) {
      error("E-SHAPE", e.where, "malformed " + std::string(form));
      return false;
    }
    return true;
  }

  bool ground(const Proposition& p, const SourceLocation& at, std::string_view what) {
    if (p.is_ground()) return true;
    error("E-NONGROUND", at, std::string(what) + " must be ground: " + to_string(p));
    return false;
  }

  // (domain SYM)
  void domain(const SExpr& e, KnowledgeBase& kb) {
    if (!arity(e, 2, "domain")) return;
    Domain d;
    d.where = e.where;
    if (symbol(e.items[1], d.name, "domain name")) kb.domains.push_back(std::move(d));
  }

  // (fact prop CERT)
  void fact(const SExpr& e, KnowledgeBase& kb) {
    if (!arity(e, 3, "fact")) return;
    auto p = prop(e.items[1]);
    auto c = cert(e.items[2]);
    if (!p || !c || !ground(*p, e.where, "fact")) return;
    kb.facts.push_back({std::move(*p), *c, e.where});
  }

  // (rule SYM domain SYM (if prop+) (then [exists (VAR+)] prop) CERT)
  void rule(const SExpr& e, KnowledgeBase& kb) {
    if (!arity(e, 7, "rule")) return;
    Rule r;
    r.where = e.where;
    if (!symbol(e.items[1], r.name, "rule name") || !keyword(e.items[2], "domain") ||
        !symbol(e.items[3], r.domain, "domain name")) {
      return;
    }
    const SExpr& ifs = e.items[4];
    if (!ifs.is_list() || ifs.items.size() < 2 || !ifs.items[0].is_symbol("if")) {
      error("E-SHAPE", ifs.where, "rule antecedents must be (if prop+)");
      return;
    }
    for (std::size_t i = 1; i < ifs.items.size(); ++i) {
      auto p = prop(ifs.items[i]);
      if (!p) return;
      r.antecedents.push_back(std::move(*p));
    }
    const SExpr& then = e.items[5];
    if (!then.is_list() || then.items.empty() || !then.items[0].is_symbol("then")) {
      error("E-SHAPE", then.where, "rule consequent must be (then [exists (?v+)] prop)");
      return;
    }
    std::size_t at = 1;
    if (then.items.size() == 4 && then.items[1].is_symbol("exists")) {
      const SExpr& vars = then.items[2];
      if (!vars.is_list() || vars.items.empty()) {
        error("E-SHAPE", vars.where, "exists needs a non-empty variable list");
        return;
      }
      for (const auto& v : vars.items) {
        if (v.kind != SExpr::Kind::variable) {
          error("E-SHAPE", v.where, "exists list may only contain variables");
          return;
        }
        r.existentials.push_back(v.text);
      }
      at = 3;
    } else if (then.items.size() != 2) {
      error("E-SHAPE", then.where, "rule consequent must be (then [exists (?v+)] prop)");
      return;
    }
    auto cons = prop(then.items[at]);
    auto c = cert(e.items[6]);
    if (!cons || !c) return;
    r.consequent = std::move(*cons);
    r.certainty = *c;
    kb.rules.push_back(std::move(r));
  }

  // (metaphor SYM vehicle SYM+ tenor SYM)
  void metaphor(const SExpr& e, KnowledgeBase& kb) {
    Metaphor m;
    m.where = e.where;
    if (e.items.size() < 6 || !symbol(e.items[1], m.name, "metaphor name") ||
        !keyword(e.items[2], "vehicle")) {
      if (e.items.size() < 6) error("E-SHAPE", e.where, "malformed metaphor");
      return;
    }
    std::size_t i = 3;
    for (; i < e.items.size() && !e.items[i].is_symbol("tenor"); ++i) {
      std::string d;
      if (!symbol(e.items[i], d, "vehicle domain")) return;
      m.vehicle_domains.push_back(std::move(d));
    }
    if (m.vehicle_domains.empty() || i + 2 != e.items.size()) {
      error("E-SHAPE", e.where, "metaphor must be (metaphor name vehicle dom+ tenor dom)");
      return;
    }
    if (!symbol(e.items[i + 1], m.tenor_domain, "tenor domain")) return;
    kb.metaphors.push_back(std::move(m));
  }

  // (conversion SYM metaphor SYM prop <-> prop CERT)
  void conversion(const SExpr& e, KnowledgeBase& kb) {
    if (!arity(e, 8, "conversion")) return;
    ConversionRule c;
    c.where = e.where;
    if (!symbol(e.items[1], c.name, "conversion name") || !keyword(e.items[2], "metaphor") ||
        !symbol(e.items[3], c.metaphor, "metaphor name")) {
      return;
    }
    if (e.items[5].kind != SExpr::Kind::arrow) {
      error("E-SHAPE", e.items[5].where, "conversion sides must be separated by '<->'");
      return;
    }
    auto v = prop(e.items[4]);
    auto t = prop(e.items[6]);
    auto level = cert(e.items[7]);
    if (!v || !t || !level) return;
    c.vehicle_pattern = std::move(*v);
    c.tenor_pattern = std::move(*t);
    c.certainty = *level;
    kb.conversions.push_back(std::move(c));
  }

  void decl(const SExpr& e, KnowledgeBase& kb) {
    if (!e.is_list() || e.items.empty() || !e.items[0].is_symbol()) {
      error("E-SHAPE", e.where, "top-level form must be a parenthesized declaration");
      return;
    }
    const std::string& kw = e.items[0].text;
    if (kw == "domain") {
      domain(e, kb);
    } else if (kw == "fact") {
      fact(e, kb);
    } else if (kw == "rule") {
      rule(e, kb);
    } else if (kw == "metaphor") {
      metaphor(e, kb);
    } else if (kw == "conversion") {
      conversion(e, kb);
    } else {
      error("E-KEYWORD", e.items[0].where, "unknown declaration keyword '" + kw + "'");
    }
  }

 private:
  std::vector<Diagnostic>& diags_;
};

void add(std::vector<Diagnostic>& diags, std::string code, const SourceLocation& at,
         std::string message) {
  diags.push_back({Severity::error, std::move(code), at, std::move(message)});
}

bool same_set(std::vector<std::string> a, std::vector<std::string> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace

// ---------------------------------------------------------------------------
// validate_kb

std::vector<Diagnostic> validate_kb(const KnowledgeBase& kb) {
  std::vector<Diagnostic> diags;

  auto check_unique = [&](auto const& items, std::string_view what) {
    std::set<std::string> seen;
    for (const auto& x : items) {
      if (!seen.insert(x.name).second) {
        add(diags, "E-DUPLICATE", x.where, "duplicate " + std::string(what) + " '" + x.name + "'");
      }
    }
  };
  check_unique(kb.domains, "domain");
  check_unique(kb.metaphors, "metaphor");
  check_unique(kb.rules, "rule");
  check_unique(kb.conversions, "conversion");

  auto known_domain = [&](const std::string& d) { return kb.find_domain(d) != nullptr; };

  for (const auto& m : kb.metaphors) {
    for (const auto& v : m.vehicle_domains) {
      if (!known_domain(v)) {
        add(diags, "E-UNKNOWN-DOMAIN", m.where,
            "metaphor '" + m.name + "' names unknown vehicle domain '" + v + "'");
      }
    }
    if (!known_domain(m.tenor_domain)) {
      add(diags, "E-UNKNOWN-DOMAIN", m.where,
          "metaphor '" + m.name + "' names unknown tenor domain '" + m.tenor_domain + "'");
    }
    if (std::find(m.vehicle_domains.begin(), m.vehicle_domains.end(), m.tenor_domain) !=
        m.vehicle_domains.end()) {
      add(diags, "E-METAPHOR-DOMAINS", m.where,
          "metaphor '" + m.name + "' uses its tenor domain as a vehicle");
    }
  }

  for (const auto& r : kb.rules) {
    if (!known_domain(r.domain)) {
      add(diags, "E-UNKNOWN-DOMAIN", r.where,
          "rule '" + r.name + "' names unknown domain '" + r.domain + "'");
    }
    if (r.antecedents.empty()) {
      add(diags, "E-SHAPE", r.where, "rule '" + r.name + "' has no antecedents");
    }
    std::vector<std::string> bound;
    for (const auto& a : r.antecedents) {
      if (a.negated) {
        add(diags, "E-RULE-NEGATED", r.where,
            "rule '" + r.name + "' has a negated antecedent " + to_string(a));
      }
      collect_variables(a, bound);
    }
    for (const auto& v : r.existentials) {
      if (std::find(bound.begin(), bound.end(), v) != bound.end()) {
        add(diags, "E-RULE-VARS", r.where,
            "rule '" + r.name + "' declares antecedent variable ?" + v + " existential");
      }
    }
    auto cons_vars = variables_of(r.consequent);
    for (const auto& v : r.existentials) {
      if (std::find(cons_vars.begin(), cons_vars.end(), v) == cons_vars.end()) {
        add(diags, "E-RULE-VARS", r.where,
            "rule '" + r.name + "' existential ?" + v + " does not occur in the consequent");
      }
    }
    for (const auto& v : cons_vars) {
      bool ok = std::find(bound.begin(), bound.end(), v) != bound.end() ||
                std::find(r.existentials.begin(), r.existentials.end(), v) !=
                    r.existentials.end();
      if (!ok) {
        add(diags, "E-RULE-VARS", r.where,
            "rule '" + r.name + "' consequent variable ?" + v + " is unbound");
      }
    }
  }

  for (const auto& c : kb.conversions) {
    if (kb.find_metaphor(c.metaphor) == nullptr) {
      add(diags, "E-UNKNOWN-METAPHOR", c.where,
          "conversion '" + c.name + "' names unknown metaphor '" + c.metaphor + "'");
    }
    if (c.vehicle_pattern.negated || c.tenor_pattern.negated) {
      add(diags, "E-CONV-NEGATED", c.where,
          "conversion '" + c.name + "' patterns must not be negated");
    }
    if (!same_set(variables_of(c.vehicle_pattern), variables_of(c.tenor_pattern))) {
      add(diags, "E-CONV-VARS", c.where,
          "conversion '" + c.name + "' sides have different variable sets");
    }
  }

  for (const auto& f : kb.facts) {
    if (!f.prop.is_ground()) {
      add(diags, "E-NONGROUND", f.where, "fact must be ground: " + to_string(f.prop));
    }
  }
  return diags;
}

// ---------------------------------------------------------------------------
// parse_kb

Parsed<KnowledgeBase> parse_kb(std::span<const SourceText> sources) {
  Parsed<KnowledgeBase> result;
  KnowledgeBase kb;
  Interpreter interp(result.diagnostics);
  for (const auto& src : sources) {
    Reader reader(src.text, src.file, result.diagnostics);
    for (const auto& e : reader.read_all()) interp.decl(e, kb);
  }
  rebuild_conversion_index(kb);
  auto more = validate_kb(kb);
  result.diagnostics.insert(result.diagnostics.end(), more.begin(), more.end());
  if (!has_errors(result.diagnostics)) result.value = std::move(kb);
  return result;
}

Parsed<KnowledgeBase> parse_kb(std::string_view text, std::string_view file) {
  SourceText src{std::string(file), std::string(text)};
  return parse_kb(std::span<const SourceText>(&src, 1));
}

Parsed<Proposition> parse_proposition(std::string_view text, std::string_view file) {
  Parsed<Proposition> result;
  Reader reader(text, std::string(file), result.diagnostics);
  auto forms = reader.read_all();
  if (has_errors(result.diagnostics)) return result;
  if (forms.size() != 1) {
    result.diagnostics.push_back({Severity::error, "E-SHAPE", {std::string(file), 1, 1},
                                  "expected exactly one proposition"});
    return result;
  }
  Interpreter interp(result.diagnostics);
  result.value = interp.prop(forms[0]);
  return result;
}

// ---------------------------------------------------------------------------
// parse_scenario

Parsed<Scenario> parse_scenario(std::string_view text, const KnowledgeBase& kb,
                                std::string_view file) {
  Parsed<Scenario> result;
  auto& diags = result.diagnostics;
  Reader reader(text, std::string(file), diags);
  auto forms = reader.read_all();
  Interpreter interp(diags);

  Scenario scn;
  std::vector<SpaceDecl> declared;
  std::size_t scenario_forms = 0;
  for (const auto& form : forms) {
    if (!form.is_list() || form.items.empty() || !form.items[0].is_symbol()) {
      interp.error("E-SHAPE", form.where, "top-level form must be (scenario name item*)");
      continue;
    }
    if (!form.items[0].is_symbol("scenario")) {
      interp.error("E-KEYWORD", form.items[0].where,
                   "unknown scenario keyword '" + form.items[0].text + "'");
      continue;
    }
    ++scenario_forms;
    if (scenario_forms > 1) {
      interp.error("E-SHAPE", form.where, "a scenario file holds exactly one scenario");
      continue;
    }
    if (form.items.size() < 2 || !interp.symbol(form.items[1], scn.name, "scenario name")) {
      if (form.items.size() < 2) interp.error("E-SHAPE", form.where, "scenario needs a name");
      continue;
    }
    for (std::size_t i = 2; i < form.items.size(); ++i) {
      const SExpr& item = form.items[i];
      if (!item.is_list() || item.items.empty() || !item.items[0].is_symbol()) {
        interp.error("E-SHAPE", item.where, "scenario item must be a parenthesized form");
        continue;
      }
      const std::string& kw = item.items[0].text;
      if (kw == "space") {
        // (space SYM metaphor SYM parent SYM)
        SpaceDecl s;
        s.where = item.where;
        if (!interp.arity(item, 6, "space") || !interp.symbol(item.items[1], s.name, "space") ||
            !interp.keyword(item.items[2], "metaphor") ||
            !interp.symbol(item.items[3], s.metaphor, "metaphor") ||
            !interp.keyword(item.items[4], "parent") ||
            !interp.symbol(item.items[5], s.parent, "parent space")) {
          continue;
        }
        declared.push_back(std::move(s));
      } else if (kw == "seed" || kw == "expect") {
        if (!interp.arity(item, 4, kw)) continue;
        std::string space;
        if (!interp.symbol(item.items[1], space, "space")) continue;
        auto p = interp.prop(item.items[2]);
        auto c = interp.cert(item.items[3]);
        if (!p || !c || !interp.ground(*p, item.where, kw)) continue;
        if (kw == "seed") {
          scn.seeds.push_back({std::move(space), std::move(*p), *c, item.where});
        } else {
          scn.expectations.push_back({std::move(space), std::move(*p), *c, item.where});
        }
      } else if (kw == "query") {
        if (!interp.arity(item, 3, "query")) continue;
        std::string space;
        if (!interp.symbol(item.items[1], space, "space")) continue;
        auto p = interp.prop(item.items[2]);
        if (!p) continue;
        scn.queries.push_back({std::move(space), std::move(*p), item.where});
      } else {
        interp.error("E-KEYWORD", item.items[0].where, "unknown scenario item '" + kw + "'");
      }
    }
  }
  if (scenario_forms == 0 && !has_errors(diags)) {
    interp.error("E-SHAPE", {std::string(file), 1, 1}, "no (scenario ...) form found");
  }

  // Space names, metaphors, parents.
  std::map<std::string, const SpaceDecl*> by_name;
  for (const auto& s : declared) {
    if (s.name == kRealitySpace || !by_name.emplace(s.name, &s).second) {
      interp.error("E-DUPLICATE", s.where, "space '" + s.name + "' is already declared");
    }
    if (kb.find_metaphor(s.metaphor) == nullptr) {
      interp.error("E-UNKNOWN-METAPHOR", s.where,
                   "space '" + s.name + "' names unknown metaphor '" + s.metaphor + "'");
    }
  }
  bool parents_ok = true;
  for (const auto& s : declared) {
    if (s.parent != kRealitySpace && !by_name.contains(s.parent)) {
      interp.error("E-UNKNOWN-PARENT", s.where,
                   "space '" + s.name + "' names unknown parent '" + s.parent + "'");
      parents_ok = false;
    }
  }
  if (parents_ok) {
    std::set<std::string> reported;
    for (const auto& s : declared) {
      std::vector<std::string> path;
      std::string cur = s.name;
      while (cur != kRealitySpace) {
        auto seen = std::find(path.begin(), path.end(), cur);
        if (seen != path.end()) {
          if (!reported.contains(cur)) {
            std::string cycle;
            for (auto it = seen; it != path.end(); ++it) {
              reported.insert(*it);
              cycle += *it + " -> ";
            }
            cycle += cur;
            interp.error("E-SPACE-CYCLE", by_name.at(cur)->where,
                         "space parents form a cycle: " + cycle);
          }
          break;
        }
        path.push_back(cur);
        cur = by_name.at(cur)->parent;
      }
    }
  }

  // Parents before children, otherwise declaration order.
  if (!has_errors(diags)) {
    std::set<std::string> placed{std::string(kRealitySpace)};
    while (scn.spaces.size() < declared.size()) {
      for (const auto& s : declared) {
        if (!placed.contains(s.name) && placed.contains(s.parent)) {
          scn.spaces.push_back(s);
          placed.insert(s.name);
          break;
        }
      }
    }
  }

  auto known_space = [&](const std::string& name) {
    return name == kRealitySpace || by_name.contains(name);
  };
  for (const auto& s : scn.seeds) {
    if (!known_space(s.space)) {
      interp.error("E-UNKNOWN-SPACE", s.where, "seed names unknown space '" + s.space + "'");
    }
  }
  for (const auto& q : scn.queries) {
    if (!known_space(q.space)) {
      interp.error("E-UNKNOWN-SPACE", q.where, "query names unknown space '" + q.space + "'");
    }
  }
  for (const auto& x : scn.expectations) {
    if (!known_space(x.space)) {
      interp.error("E-UNKNOWN-SPACE", x.where, "expect names unknown space '" + x.space + "'");
    }
  }

  if (!has_errors(diags)) result.value = std::move(scn);
  return result;
}

}  // namespace pretence
