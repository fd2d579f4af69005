#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "pretence/engine.hpp"

namespace pretence {

enum class TraceFormat : std::uint8_t { text, json, dot };

std::optional<TraceFormat> parse_trace_format(std::string_view name) noexcept;

/// `#N KIND space=S rule=R in=[ids] out=id cert=LEVEL`, one step per line.
std::string render_text(const Derivation& trace);
/// `{"steps":[...]}` with keys step_id, kind, space, rule, inputs,
/// output_prop, certainty, defeated in that order.
std::string render_json(const Derivation& trace);
/// Directed graph: stored propositions as nodes, provenance as edges,
/// nested clusters per space.
std::string render_dot(const Derivation& trace, const SpaceTree& tree);

std::string render_trace(const RunResult& result, TraceFormat format);

}  // namespace pretence
