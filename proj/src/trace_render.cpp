#include "pretence/trace.hpp"

#include <json.hpp>
#include <map>
#include <sstream>

namespace pretence {

std::optional<TraceFormat> parse_trace_format(std::string_view name) noexcept {
  if (name == "text") return TraceFormat::text;
  if (name == "json") return TraceFormat::json;
  if (name == "dot") return TraceFormat::dot;
  return std::nullopt;
}

std::string render_text(const Derivation& trace) {
  std::ostringstream os;
  for (const auto& s : trace.steps) {
    os << '#' << s.step_id << ' ' << to_string(s.kind) << " space=" << s.space
       << " rule=" << (s.rule.empty() ? "-" : s.rule) << " in=[";
    for (std::size_t i = 0; i < s.inputs.size(); ++i) os << (i ? "," : "") << s.inputs[i];
    os << "] out=";
    if (s.output) {
      os << *s.output;
    } else {
      os << '-';
    }
    os << " cert=" << (s.certainty ? to_string(*s.certainty) : "-") << '\n';
  }
  return os.str();
}

std::string render_json(const Derivation& trace) {
  using nlohmann::ordered_json;
  ordered_json steps = ordered_json::array();
  for (const auto& s : trace.steps) {
    ordered_json j;
    j["step_id"] = s.step_id;
    j["kind"] = to_string(s.kind);
    j["space"] = s.space;
    j["rule"] = s.rule.empty() ? ordered_json(nullptr) : ordered_json(s.rule);
    j["inputs"] = s.inputs;
    j["output_prop"] = s.output ? ordered_json(s.output_prop) : ordered_json(nullptr);
    j["certainty"] =
        s.certainty ? ordered_json(std::string(to_string(*s.certainty))) : ordered_json(nullptr);
    j["defeated"] = s.defeated;
    steps.push_back(std::move(j));
  }
  ordered_json root;
  root["steps"] = std::move(steps);
  return root.dump() + "\n";
}

namespace {

std::string dot_quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '\\';
    out += c;
  }
  return out + "\"";
}

void emit_cluster(std::ostream& os, const SpaceTree& tree, const Space& space,
                  const std::map<std::string, std::size_t>& index, int indent) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  os << pad << "subgraph cluster_" << index.at(space.id()) << " {\n";
  os << pad << "  label=" << dot_quote(space.id()) << ";\n";
  for (const auto& sp : space.store()) {
    std::string label = to_string(sp.prop) + "\\n" + std::string(to_string(sp.shown_certainty()));
    os << pad << "  p" << sp.id << " [label=" << dot_quote(label);
    if (sp.defeated) os << ", style=dashed";
    os << "];\n";
  }
  for (const Space* child : tree.children(space.id())) {
    emit_cluster(os, tree, *child, index, indent + 1);
  }
  os << pad << "}\n";
}

}  // namespace

// Nodes and edges come from the frozen stores; every provenance entry there
// has a matching trace step.
std::string render_dot(const Derivation& /*trace*/, const SpaceTree& tree) {
  std::ostringstream os;
  os << "digraph derivation {\n  compound=true;\n  node [shape=box];\n";
  std::map<std::string, std::size_t> index;
  for (const Space* s : tree.spaces()) index.emplace(s->id(), index.size());
  if (const Space* root = tree.reality()) emit_cluster(os, tree, *root, index, 1);
  for (const Space* s : tree.spaces()) {
    for (const auto& sp : s->store()) {
      for (const auto& prov : sp.provenance) {
        switch (prov.kind) {
          case Provenance::Kind::seed:
            break;
          case Provenance::Kind::rule:
          case Provenance::Kind::skolem:
            for (PropId p : prov.premises) {
              os << "  p" << p << " -> p" << sp.id << " [label=" << dot_quote(prov.name) << "];\n";
            }
            break;
          case Provenance::Kind::converted:
            os << "  p" << prov.source << " -> p" << sp.id << " [label=" << dot_quote(prov.name)
               << ", style=bold];\n";
            break;
        }
      }
    }
  }
  os << "}\n";
  return os.str();
}

std::string render_trace(const RunResult& result, TraceFormat format) {
  switch (format) {
    case TraceFormat::text: return render_text(result.trace);
    case TraceFormat::json: return render_json(result.trace);
    case TraceFormat::dot: return render_dot(result.trace, result.tree);
  }
  return render_text(result.trace);
}

}  // namespace pretence
