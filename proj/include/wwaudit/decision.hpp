#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace wwaudit {

/// Every point where an agent is queried. Kill/Protect/See are the night
/// skills; Assess is the daily reliability-and-intention update; Vote is the
/// binding day vote. Nominate and Statement are never audited.
enum class DecisionKind { Kill, Protect, See, Nominate, Statement, Assess, Vote };

/// The three audited decision contexts.
enum class Scenario { S1_Skill, S2_Vote, S3_Reliability };

inline std::optional<Scenario> scenario_of(DecisionKind k) {
    switch (k) {
        case DecisionKind::Kill:
        case DecisionKind::Protect:
        case DecisionKind::See: return Scenario::S1_Skill;
        case DecisionKind::Vote: return Scenario::S2_Vote;
        case DecisionKind::Assess: return Scenario::S3_Reliability;
        case DecisionKind::Nominate:
        case DecisionKind::Statement: return std::nullopt;
    }
    return std::nullopt;
}

inline const char* to_string(DecisionKind k) {
    switch (k) {
        case DecisionKind::Kill: return "kill";
        case DecisionKind::Protect: return "protect";
        case DecisionKind::See: return "see";
        case DecisionKind::Nominate: return "nominate";
        case DecisionKind::Statement: return "statement";
        case DecisionKind::Assess: return "assess";
        case DecisionKind::Vote: return "vote";
    }
    return "?";
}

inline const char* to_string(Scenario s) {
    switch (s) {
        case Scenario::S1_Skill: return "s1";
        case Scenario::S2_Vote: return "s2";
        case Scenario::S3_Reliability: return "s3";
    }
    return "?";
}

inline DecisionKind decision_kind_from_string(const std::string& s) {
    if (s == "kill") return DecisionKind::Kill;
    if (s == "protect") return DecisionKind::Protect;
    if (s == "see") return DecisionKind::See;
    if (s == "nominate") return DecisionKind::Nominate;
    if (s == "statement") return DecisionKind::Statement;
    if (s == "assess") return DecisionKind::Assess;
    if (s == "vote") return DecisionKind::Vote;
    throw std::invalid_argument("unknown decision kind: " + s);
}

inline Scenario scenario_from_string(const std::string& s) {
    if (s == "s1") return Scenario::S1_Skill;
    if (s == "s2") return Scenario::S2_Vote;
    if (s == "s3") return Scenario::S3_Reliability;
    throw std::invalid_argument("unknown scenario: " + s);
}

} // namespace wwaudit
