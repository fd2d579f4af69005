#include "pretence/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <map>
#include <sstream>

#include "pretence/errors.hpp"
#include "pretence/kb.hpp"
#include "pretence/prove.hpp"

namespace pretence::cli {

namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return buf.str();
}

void report_io(const std::string& path, std::ostream& err) {
  err << format_diagnostic({Severity::error, "E-IO", {path, 0, 0}, "cannot read file"}) << '\n';
}

void print(const std::vector<Diagnostic>& diags, std::ostream& err) {
  for (const auto& d : diags) err << format_diagnostic(d) << '\n';
}

struct Loaded {
  KnowledgeBase kb;
  Scenario scenario;
};

/// Reads and parses KB files plus a scenario; prints diagnostics on failure.
std::optional<Loaded> load(const std::vector<std::string>& kb_paths,
                           const std::string& scenario_path, std::ostream& err) {
  std::vector<SourceText> sources;
  for (const auto& path : kb_paths) {
    auto text = read_file(path);
    if (!text) {
      report_io(path, err);
      return std::nullopt;
    }
    sources.push_back({path, std::move(*text)});
  }
  auto kb = parse_kb(sources);
  print(kb.diagnostics, err);
  if (!kb.ok()) return std::nullopt;

  auto text = read_file(scenario_path);
  if (!text) {
    report_io(scenario_path, err);
    return std::nullopt;
  }
  auto scn = parse_scenario(*text, *kb.value, scenario_path);
  print(scn.diagnostics, err);
  if (!scn.ok()) return std::nullopt;
  return Loaded{std::move(*kb.value), std::move(*scn.value)};
}

void report(const RunResult& result, const Scenario& scenario, std::ostream& os) {
  os << "scenario " << scenario.name << ": rounds=" << result.rounds
     << " steps=" << result.trace.steps.size() << '\n';
  os << "conflicts: " << result.conflicts() << '\n';
  for (const auto& v : result.expectations) {
    os << (v.passed ? "PASS " : "FAIL ") << v.expectation.space << ' ' << v.expectation.prop
       << " >= " << v.expectation.minimum << " found=";
    if (v.found) {
      os << to_string(*v.found) << (v.found_defeated ? " defeated" : "");
    } else {
      os << "none";
    }
    os << '\n';
  }
  for (const auto& q : result.queries) {
    os << "query " << q.query.space << ' ' << q.query.pattern << ": " << q.matches.size()
       << " match(es)\n";
    for (const auto& m : q.matches) {
      os << "  " << m.prop << " certainty=" << to_string(m.shown_certainty())
         << (m.defeated ? " defeated" : "") << '\n';
    }
  }
}

}  // namespace

int cmd_check(const std::vector<std::string>& kb_paths, std::ostream& out, std::ostream& err) {
  std::vector<SourceText> sources;
  for (const auto& path : kb_paths) {
    auto text = read_file(path);
    if (!text) {
      report_io(path, err);
      return kInputError;
    }
    sources.push_back({path, std::move(*text)});
  }
  auto parsed = parse_kb(sources);
  std::vector<Diagnostic> diags = parsed.diagnostics;
  if (parsed.ok()) diags = lint_kb(*parsed.value);
  print(diags, err);

  std::size_t errors = 0;
  for (const auto& d : diags) errors += d.severity == Severity::error;
  out << "checked " << kb_paths.size() << " file(s): " << errors << " error(s), "
      << diags.size() - errors << " warning(s)\n";
  return errors > 0 ? kInputError : kOk;
}

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  auto loaded = load(options.kb_paths, options.scenario_path, err);
  if (!loaded) return kInputError;

  RunResult result;
  try {
    result = run_scenario(loaded->kb, loaded->scenario, options.limits);
  } catch (const ResourceError& e) {
    err << "ERROR E-LIMIT " << options.scenario_path << ":0:0 " << e.what() << '\n';
    return kResourceError;
  } catch (const Error& e) {
    err << "ERROR E-RUN " << options.scenario_path << ":0:0 " << e.what() << '\n';
    return kInputError;
  }

  bool trace_to_out = options.trace && !options.out_path;
  report(result, loaded->scenario, trace_to_out ? err : out);
  if (options.trace) {
    std::string rendered = render_trace(result, *options.trace);
    if (options.out_path) {
      std::ofstream file(*options.out_path, std::ios::binary);
      if (!file || !(file << rendered)) {
        err << format_diagnostic(
                   {Severity::error, "E-IO", {*options.out_path, 0, 0}, "cannot write file"})
            << '\n';
        return kInputError;
      }
    } else {
      out << rendered;
    }
  }
  return result.all_passed() ? kOk : kFailed;
}

int cmd_query(const QueryOptions& options, std::ostream& out, std::ostream& err) {
  auto loaded = load(options.kb_paths, options.scenario_path, err);
  if (!loaded) return kInputError;
  auto goal = parse_proposition(options.goal, "<goal>");
  print(goal.diagnostics, err);
  if (!goal.ok()) return kInputError;
  if (options.space != kRealitySpace && loaded->scenario.find_space(options.space) == nullptr) {
    err << "ERROR E-UNKNOWN-SPACE <goal>:0:0 scenario declares no space '" << options.space
        << "'\n";
    return kInputError;
  }

  ProveResult proved;
  RunResult forward;
  try {
    Engine engine(loaded->kb, loaded->scenario, options.limits);
    engine.open_all();
    ProveOptions prove_options;
    prove_options.allow_map_in = options.map_in;
    proved = prove(engine, *goal.value, options.space, prove_options);
    forward = run_scenario(loaded->kb, loaded->scenario, options.limits);
  } catch (const ResourceError& e) {
    err << "ERROR E-LIMIT " << options.scenario_path << ":0:0 " << e.what() << '\n';
    return kResourceError;
  } catch (const Error& e) {
    err << "ERROR E-RUN " << options.scenario_path << ":0:0 " << e.what() << '\n';
    return kInputError;
  }

  // One line per distinct instance, in discovery order, at its best certainty.
  std::vector<const Proof*> answers;
  std::map<Proposition, std::size_t> seen;
  std::vector<Certainty> best;
  for (const auto& p : proved.proofs) {
    auto [it, fresh] = seen.emplace(p.instance, answers.size());
    if (fresh) {
      answers.push_back(&p);
      best.push_back(p.certainty);
    } else {
      best[it->second] = strongest(best[it->second], p.certainty);
    }
  }

  const auto goal_vars = variables_of(*goal.value);
  const Space* target = forward.tree.find(options.space);
  bool any_live = false;
  for (std::size_t i = 0; i < answers.size(); ++i) {
    const Proof& p = *answers[i];
    const StoredProposition* stored = target ? target->find(p.instance) : nullptr;
    bool defeated = stored != nullptr && stored->defeated;
    any_live = any_live || !defeated;
    if (p.bindings.empty()) {
      out << p.instance;
    } else {
      bool first = true;
      for (const auto& var : goal_vars) {
        const Term* value = p.bindings.lookup(var);
        if (value == nullptr) continue;
        out << (first ? "" : " ") << '?' << var << '=' << *value;
        first = false;
      }
    }
    out << " certainty=" << to_string(best[i]) << (defeated ? " defeated" : "") << '\n';
  }
  if (proved.truncated) err << "note: search reached the proof depth limit\n";
  return any_live ? kOk : kFailed;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Defeasible inference over metaphor-pretence spaces", "pretence"};
  app.require_subcommand(1);

  std::vector<std::string> check_paths;
  auto* check = app.add_subcommand("check", "Parse and lint knowledge-base files");
  check->add_option("kb", check_paths, "KB files, concatenated in order");

  RunOptions run;
  std::string trace_name;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario to fixpoint");
  run_cmd->add_option("scenario", run.scenario_path, "Scenario file")->required();
  run_cmd->add_option("--kb", run.kb_paths, "KB file (repeatable)")->required();
  run_cmd->add_option("--trace", trace_name, "Trace format: text, json or dot")
      ->check(CLI::IsMember({"text", "json", "dot"}));
  run_cmd->add_option("--max-rounds", run.limits.max_rounds, "Round limit");
  run_cmd->add_option("--max-depth", run.limits.max_term_depth, "Term depth limit");
  std::string out_path;
  run_cmd->add_option("--out", out_path, "Write the trace here instead of stdout");

  QueryOptions query;
  auto* query_cmd = app.add_subcommand("query", "Prove a goal by backward chaining");
  query_cmd->add_option("scenario", query.scenario_path, "Scenario file")->required();
  query_cmd->add_option("--kb", query.kb_paths, "KB file (repeatable)")->required();
  query_cmd->add_option("--goal", query.goal, "Goal proposition, e.g. \"(p ?x)\"")->required();
  query_cmd->add_option("--space", query.space, "Space to prove in (default reality)");
  query_cmd->add_flag("--map-in", query.map_in, "Allow inward conversion steps");
  query_cmd->add_option("--max-depth", query.limits.max_proof_depth, "Proof depth limit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "ERROR E-USAGE <args>:0:0 " << e.what() << '\n';
    return kInputError;
  }

  if (*check) return cmd_check(check_paths, out, err);
  if (*run_cmd) {
    if (!trace_name.empty()) run.trace = parse_trace_format(trace_name);
    if (!out_path.empty()) run.out_path = out_path;
    return cmd_run(run, out, err);
  }
  return cmd_query(query, out, err);
}

}  // namespace pretence::cli
