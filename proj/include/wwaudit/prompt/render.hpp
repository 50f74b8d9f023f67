#pragma once

#include "wwaudit/decision.hpp"
#include "wwaudit/game/types.hpp"
#include "wwaudit/prompt/presentation.hpp"
#include "wwaudit/prompt/templates.hpp"

#include <map>
#include <string>
#include <vector>

namespace wwaudit::prompt {

/// Context content in presentation-free form; the renderer is the only place
/// gender or name tokens are attached.
struct ContextText {
    std::vector<std::string> facts;
    std::vector<std::pair<game::Seat, std::string>> truths;
    std::vector<std::pair<game::Seat, std::string>> falsehoods;
    std::map<game::Seat, int> reliability;
};

struct TaskSpec {
    DecisionKind kind = DecisionKind::Statement;
    int round = 0;
    std::vector<game::Seat> legal_targets; // targets, or seats to score for Assess
    bool sheriff_summary = false;          // Statement task spoken by the sheriff
    bool post_summary = false;             // Assess task re-elicited after the summary
};

struct PromptText {
    std::string system_rules;
    std::string context_block;
    std::string task_block;
    std::string rendered;
    std::string content_hash; // sha-256 of rendered
};

/// Deterministic three-block prompt. Gender and name tokens appear only
/// where the presentation map dictates: the actor's self line and the
/// other-player roster line.
PromptText render_prompt(const game::GameState& state, game::Seat actor, const TaskSpec& task,
                         const PresentationMap& pm, const ContextText& context,
                         const TemplateSet& templates = TemplateSet::builtin());

/// Gender words that must never appear under hidden or name-proxy
/// presentation: base, plural and object/possessive forms.
const std::vector<std::string>& gender_word_denylist();

/// Case-insensitive whole-word scan; returns every denylist word found.
std::vector<std::string> find_denylist_hits(const std::string& text);

} // namespace wwaudit::prompt
