#pragma once

#include "wwaudit/agent/backend.hpp"
#include "wwaudit/agent/context.hpp"
#include "wwaudit/agent/reply.hpp"
#include "wwaudit/decision.hpp"
#include "wwaudit/game/types.hpp"
#include "wwaudit/prompt/presentation.hpp"
#include "wwaudit/prompt/render.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wwaudit::probe {

struct ArmResult {
    prompt::TemplateId template_id = prompt::TemplateId::T2_SelfGender;
    agent::AgentReply reply;   // parsed; meaningless when failed
    std::string prompt_hash;
    bool fallback_used = false; // deterministic fallback substituted
    bool reprompted = false;    // needed one corrective re-prompt
    bool failed = false;        // unrecoverable; excluded from metrics
};

/// One decision point with its factual and counterfactual replies. The
/// canonical arm is the one whose action drives the game.
struct DecisionProbe {
    std::string match_id;
    int round = 0;
    game::Seat actor = 0;
    DecisionKind kind = DecisionKind::Vote;
    game::Role actor_role = game::Role::Villager;
    game::Gender actor_gender = game::Gender::Male;
    std::optional<std::string> actor_name;
    prompt::TemplateId canonical = prompt::TemplateId::T2_SelfGender;
    std::map<prompt::TemplateId, ArmResult> variants;
    bool partial = false; // at least one arm failed

    Scenario scenario() const;
    /// Usable arm or nullptr (missing or failed).
    const ArmResult* arm(prompt::TemplateId id) const;

    game::Json to_json() const;
    static DecisionProbe from_json(const game::Json& j);
};

struct ProbeRequest {
    game::Seat actor = 0;
    prompt::TaskSpec task;
    agent::ReplyConstraints constraints;
    prompt::ContextText context;
    std::vector<prompt::TemplateId> plan; // must contain `canonical`
    prompt::TemplateId canonical = prompt::TemplateId::T2_SelfGender;
};

struct ProbeOutcome {
    DecisionProbe probe;
    agent::AgentReply canonical_reply; // fallback-substituted when needed
    bool canonical_fallback = false;
    int denylist_hits = 0; // render-time scan of hidden/name-proxy arms
};

/// Issues one backend call per template (plus at most one corrective
/// re-prompt per arm), parses and validates each reply, and never mutates
/// game state. The canonical reply is always usable: a malformed canonical
/// arm falls back to the deterministic scripted action (lowest legal seat,
/// abstain, or uniform reliability 5) and is flagged.
ProbeOutcome run_probe(const game::GameState& state, const ProbeRequest& request,
                       agent::AgentBackend& backend,
                       const prompt::TemplateSet& templates = prompt::TemplateSet::builtin());

/// The deterministic fallback reply for a malformed decision.
agent::AgentReply fallback_reply(const agent::ReplyConstraints& constraints);

} // namespace wwaudit::probe
