#include "support/generators.hpp"

#include <random>
#include <set>
#include <sstream>
#include <vector>

namespace pretence::testing {

namespace {

const char* const kLevels[] = {"possible", "suggested", "presumed", "certain"};
const char* const kConstants[] = {"a", "b", "c"};
const char* const kVars[] = {"?x", "?y", "?z"};

class Gen {
 public:
  Gen(std::uint64_t seed, const GeneratorOptions& o) : rng_(seed), o_(o) {
    for (int i = 0; i < 6; ++i) arity_.push_back(pick(0, 2));
  }

  GeneratedCase run(std::uint64_t seed) {
    GeneratedCase out;
    out.seed = seed;
    std::ostringstream kb;
    kb << "(domain t0)\n(domain v0)\n(domain v1)\n(domain g0)\n";
    serial_ = chance(0.4);
    kb << "(metaphor ma vehicle v0 tenor t0)\n";
    kb << "(metaphor mb vehicle v1 tenor " << (serial_ ? "v0" : "t0") << ")\n";
    for (const char* m : {"ma", "mb"}) {
      int n = pick(1, 2);
      for (int i = 0; i < n; ++i) kb << conversion(m, i);
    }
    int rules = pick(1, o_.max_rules);
    const char* domains[] = {"t0", "v0", "v1", "g0"};
    for (int i = 0; i < rules; ++i) kb << rule(i, domains[pick(0, 3)]);
    if (chance(0.3)) kb << "(fact " << ground_prop(false) << ' ' << level(true) << ")\n";
    out.kb_text = kb.str();

    std::ostringstream scn;
    scn << "(scenario s" << seed << '\n';
    int cocoons = pick(0, o_.max_cocoons);
    std::vector<std::string> spaces{"reality"};
    if (cocoons >= 1) {
      scn << "  (space ca metaphor ma parent reality)\n";
      spaces.push_back("ca");
    }
    if (cocoons >= 2) {
      scn << "  (space cb metaphor mb parent " << (serial_ ? "ca" : "reality") << ")\n";
      spaces.push_back("cb");
    }
    int seeds = pick(0, o_.max_seeds);
    for (int i = 0; i < seeds; ++i) {
      const std::string& space = spaces[static_cast<std::size_t>(pick(0, int(spaces.size()) - 1))];
      scn << "  (seed " << space << ' ' << ground_prop(o_.negation && chance(0.15)) << ' '
          << level(true) << ")\n";
    }
    scn << ")\n";
    out.scenario_text = scn.str();
    return out;
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  std::string level(bool seedlike) {
    if (seedlike && chance(0.6)) return "certain";
    return kLevels[pick(0, seedlike ? 3 : 2)];
  }

  std::string constant() { return kConstants[pick(0, 2)]; }

  std::string ground_term() {
    if (o_.compounds && chance(0.15)) return "(f " + constant() + ")";
    return constant();
  }

  std::string ground_prop(bool negated) {
    int p = pick(0, 5);
    std::string s = negated ? "(not p" : "(p";
    s += std::to_string(p);
    for (int i = 0; i < arity_[static_cast<std::size_t>(p)]; ++i) s += " " + ground_term();
    return s + ")";
  }

  // Alternating variable and constant arguments over a fixed variable pool.
  std::string pattern(int pred, std::set<std::string>& vars, bool may_constant) {
    std::string s = "(p" + std::to_string(pred);
    for (int i = 0; i < arity_[static_cast<std::size_t>(pred)]; ++i) {
      if (may_constant && chance(0.2)) {
        s += " " + constant();
      } else {
        std::string v = kVars[pick(0, 2)];
        vars.insert(v);
        s += " " + v;
      }
    }
    return s + ")";
  }

  std::string conversion(const char* metaphor, int index) {
    // Both sides use the same distinct variables so their variable sets match.
    int arity = pick(0, 2);
    std::vector<int> same;
    for (int p = 0; p < 6; ++p) {
      if (arity_[static_cast<std::size_t>(p)] == arity) same.push_back(p);
    }
    if (same.empty()) {
      arity = arity_[0];
      same.push_back(0);
    }
    int vp = same[static_cast<std::size_t>(pick(0, int(same.size()) - 1))];
    int tp = same[static_cast<std::size_t>(pick(0, int(same.size()) - 1))];
    std::vector<std::string> vars(kVars, kVars + arity);
    std::string vehicle = "(p" + std::to_string(vp);
    for (const auto& v : vars) vehicle += " " + v;
    vehicle += ")";
    if (arity == 2 && chance(0.5)) std::swap(vars[0], vars[1]);
    std::string tenor = "(p" + std::to_string(tp);
    for (const auto& v : vars) tenor += " " + v;
    tenor += ")";
    return "(conversion " + std::string(metaphor) + "-c" + std::to_string(index) + " metaphor " +
           metaphor + ' ' + vehicle + " <-> " + tenor + ' ' + level(false) + ")\n";
  }

  std::string rule(int index, const char* domain) {
    std::set<std::string> vars;
    int n = pick(1, 3);
    std::string ifs;
    for (int i = 0; i < n; ++i) ifs += " " + pattern(pick(0, 5), vars, true);

    int pred = pick(0, 5);
    int arity = arity_[static_cast<std::size_t>(pred)];
    bool existential = o_.existentials && arity > 0 && chance(0.25);
    std::vector<std::string> bound(vars.begin(), vars.end());
    std::string then = "(p" + std::to_string(pred);
    bool used_existential = false;
    for (int i = 0; i < arity; ++i) {
      if (existential && (i == 0 || chance(0.5))) {
        then += " ?w";
        used_existential = true;
      } else if (!bound.empty() && chance(0.8)) {
        then += " " + bound[static_cast<std::size_t>(pick(0, int(bound.size()) - 1))];
      } else if (o_.compounds && !bound.empty() && chance(0.3)) {
        then += " (f " + bound[static_cast<std::size_t>(pick(0, int(bound.size()) - 1))] + ")";
      } else {
        then += " " + constant();
      }
    }
    then += ")";
    if (o_.negation && chance(0.15)) then = "(not " + then.substr(1);
    std::string head = used_existential ? "exists (?w) " + then : then;
    return "(rule r" + std::to_string(index) + " domain " + domain + " (if" + ifs + ") (then " +
           head + ") " + level(false) + ")\n";
  }

  std::mt19937_64 rng_;
  GeneratorOptions o_;
  std::vector<int> arity_;
  bool serial_ = false;
};

}  // namespace

GeneratedCase generate_case(std::uint64_t seed, const GeneratorOptions& options) {
  Gen g(seed, options);
  return g.run(seed);
}

}  // namespace pretence::testing
