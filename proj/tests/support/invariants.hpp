#pragma once

#include <string>
#include <vector>

#include "pretence/engine.hpp"
#include "pretence/kb.hpp"

namespace pretence::testing {

/// Audits a finished run. Returns one message per violation.
///
/// Checks dense step ids, certainty monotonicity along every step (replayed
/// in trace order), that no defeated proposition feeds a step, filter
/// soundness of every conversion, same-space premises, adjacency of every
/// crossing, and that final certainties are the max over producing steps.
std::vector<std::string> audit_run(const KnowledgeBase& kb, const RunResult& run);

}  // namespace pretence::testing
