#include "wwaudit/agent/reply.hpp"

#include "wwaudit/errors.hpp"
#include "wwaudit/util/strings.hpp"

#include <algorithm>

namespace wwaudit::agent {

namespace {

bool seat_in(game::Seat seat, const std::vector<game::Seat>& seats) {
    return std::find(seats.begin(), seats.end(), seat) != seats.end();
}

ActionType verb_from_string(const std::string& verb) {
    if (verb == "kill") return ActionType::Kill;
    if (verb == "protect") return ActionType::Protect;
    if (verb == "see") return ActionType::See;
    if (verb == "vote") return ActionType::Vote;
    if (verb == "abstain") return ActionType::Abstain;
    if (verb == "statement") return ActionType::Statement;
    throw ValidationError("unknown action verb: " + verb);
}

void check_action_for_kind(const AgentAction& action, const ReplyConstraints& c) {
    auto require_target = [&](ActionType expected) {
        if (action.type != expected) {
            throw ValidationError(std::string("expected action `") + to_string(expected) +
                                  "` for this decision");
        }
        if (!action.target) throw ValidationError("action requires a seat");
        if (!seat_in(*action.target, c.legal_targets)) {
            throw ValidationError("illegal target seat " + std::to_string(*action.target));
        }
    };
    switch (c.kind) {
        case DecisionKind::Kill: require_target(ActionType::Kill); break;
        case DecisionKind::Protect: require_target(ActionType::Protect); break;
        case DecisionKind::See: require_target(ActionType::See); break;
        case DecisionKind::Nominate: require_target(ActionType::Vote); break;
        case DecisionKind::Vote:
        case DecisionKind::Assess:
            if (action.type == ActionType::Abstain) {
                if (!c.allow_abstain) throw ValidationError("abstain not allowed here");
                break;
            }
            require_target(ActionType::Vote);
            break;
        case DecisionKind::Statement:
            if (action.type != ActionType::Statement) {
                throw ValidationError("expected action `statement`");
            }
            break;
    }
}

} // namespace

const char* to_string(ActionType t) {
    switch (t) {
        case ActionType::Kill: return "kill";
        case ActionType::Protect: return "protect";
        case ActionType::See: return "see";
        case ActionType::Vote: return "vote";
        case ActionType::Abstain: return "abstain";
        case ActionType::Statement: return "statement";
    }
    return "?";
}

AgentReply parse_reply(const std::string& raw, const ReplyConstraints& c) {
    if (util::trim(raw).empty()) throw ParseError("empty reply");

    const std::vector<std::string> lines = util::split_lines(raw);
    std::size_t block_start = lines.size();
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (util::trim(lines[i]) == "===DECISION===") {
            block_start = i + 1;
            break;
        }
    }
    if (block_start >= lines.size()) throw ParseError("missing ===DECISION=== block");

    std::optional<std::string> action_line;
    std::optional<std::string> reliability_line;
    std::optional<std::string> reasoning;
    for (std::size_t i = block_start; i < lines.size(); ++i) {
        const std::string line = util::trim(lines[i]);
        if (reasoning) {
            *reasoning += "\n" + line; // reasoning runs to the end of the reply
        } else if (util::starts_with(line, "action:")) {
            action_line = util::trim(line.substr(7));
        } else if (util::starts_with(line, "reliability:")) {
            reliability_line = util::trim(line.substr(12));
        } else if (util::starts_with(line, "reasoning:")) {
            reasoning = util::trim(line.substr(10));
        }
    }
    if (!action_line) throw ParseError("decision block has no action line");
    if (!reliability_line) throw ParseError("decision block has no reliability line");

    AgentReply reply;
    reply.raw = raw;
    reply.reasoning = reasoning ? util::trim(*reasoning) : "";

    // action: <verb> [seat]
    {
        std::vector<std::string> toks;
        for (const auto& t : util::split(*action_line, ' ')) {
            if (!util::trim(t).empty()) toks.push_back(util::trim(t));
        }
        if (toks.empty()) throw ParseError("empty action line");
        reply.action.type = verb_from_string(util::lower(toks[0]));
        if (toks.size() > 1) {
            try {
                reply.action.target = std::stoi(toks[1]);
            } catch (const std::exception&) {
                throw ParseError("action seat is not a number: " + toks[1]);
            }
        }
    }

    // reliability: seat=score, seat=score, ...
    for (const auto& entry : util::split(*reliability_line, ',')) {
        const std::string e = util::trim(entry);
        if (e.empty()) continue;
        const auto eq = e.find('=');
        if (eq == std::string::npos) throw ParseError("bad reliability entry: " + e);
        game::Seat seat;
        int score;
        try {
            seat = std::stoi(util::trim(e.substr(0, eq)));
            score = std::stoi(util::trim(e.substr(eq + 1)));
        } catch (const std::exception&) {
            throw ParseError("bad reliability entry: " + e);
        }
        if (score < 0 || score > 10) {
            throw ValidationError("reliability score out of range [0,10]: " +
                                  std::to_string(score));
        }
        if (reply.reliability.scores.count(seat)) {
            throw ValidationError("duplicate reliability entry for seat " +
                                  std::to_string(seat));
        }
        reply.reliability.scores[seat] = score;
    }

    // exact coverage of the required seats
    if (reply.reliability.scores.size() != c.score_seats.size()) {
        throw ValidationError("reliability must cover exactly the living players other "
                              "than the actor");
    }
    for (game::Seat seat : c.score_seats) {
        if (!reply.reliability.scores.count(seat)) {
            throw ValidationError("reliability missing seat " + std::to_string(seat));
        }
    }

    check_action_for_kind(reply.action, c);
    return reply;
}

std::string format_reply(const AgentReply& reply) {
    std::string out = "===DECISION===\n";
    out += "action: ";
    out += to_string(reply.action.type);
    if (reply.action.target) out += " " + std::to_string(*reply.action.target);
    out += "\nreliability: ";
    bool first = true;
    for (const auto& [seat, score] : reply.reliability.scores) {
        if (!first) out += ", ";
        out += std::to_string(seat) + "=" + std::to_string(score);
        first = false;
    }
    out += "\nreasoning: " + reply.reasoning + "\n";
    return out;
}

} // namespace wwaudit::agent
