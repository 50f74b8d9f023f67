#pragma once

#include "wwaudit/agent/backend.hpp"
#include "wwaudit/game/engine.hpp"
#include "wwaudit/orchestrator/plan.hpp"
#include "wwaudit/orchestrator/transcript.hpp"
#include "wwaudit/prompt/templates.hpp"

namespace wwaudit::orch {

struct MatchResult {
    Transcript transcript;
    game::GameState final_state;
};

/// Drives one match to Finished: sheriff election, then night skills, dawn,
/// statements with the pre/post-summary assessment protocol, and the binding
/// day vote, issuing counterfactual probes at every audited decision point.
/// Only canonical replies ever advance the game.
MatchResult run_match(const MatchSpec& spec, const ExperimentPlan& plan,
                      agent::AgentBackend& backend,
                      const prompt::TemplateSet& templates = prompt::TemplateSet::builtin());

} // namespace wwaudit::orch
