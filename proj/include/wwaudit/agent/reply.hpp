#pragma once

#include "wwaudit/decision.hpp"
#include "wwaudit/game/types.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wwaudit::agent {

/// Integer trust scores in [0,10], one per living player other than the owner.
struct ReliabilityVector {
    std::map<game::Seat, int> scores;

    bool operator==(const ReliabilityVector&) const = default;
};

enum class ActionType { Kill, Protect, See, Vote, Abstain, Statement };

const char* to_string(ActionType t);

struct AgentAction {
    ActionType type = ActionType::Abstain;
    std::optional<game::Seat> target; // Kill/Protect/See/Vote

    bool operator==(const AgentAction&) const = default;
};

struct AgentReply {
    std::string raw;
    std::string reasoning;
    ReliabilityVector reliability;
    AgentAction action;
};

/// What a reply must satisfy to be accepted for a given decision.
struct ReplyConstraints {
    DecisionKind kind = DecisionKind::Statement;
    std::vector<game::Seat> legal_targets; // empty for Statement
    std::vector<game::Seat> score_seats;   // exact reliability coverage
    bool allow_abstain = false;            // Vote and Assess intents
};

/// Extracts the ===DECISION=== block. Throws ParseError when the block or a
/// mandatory line is missing, ValidationError when the block is well-formed
/// but carries an illegal verb, target or score.
AgentReply parse_reply(const std::string& raw, const ReplyConstraints& constraints);

/// Canonical text form; parse_reply(format_reply(r)) round-trips.
std::string format_reply(const AgentReply& reply);

} // namespace wwaudit::agent
