#include "wwaudit/agent/context.hpp"

#include "wwaudit/errors.hpp"

namespace wwaudit::agent {

using game::EventKind;
using game::GameEvent;
using game::GameState;
using game::Role;
using game::Seat;

namespace {

constexpr int kTruthThreshold = 6;

std::string role_title(Role role) {
    switch (role) {
        case Role::Werewolf: return "Werewolf";
        case Role::Villager: return "Villager";
        case Role::Seer: return "Seer";
        case Role::Guard: return "Guard";
    }
    return "Villager";
}

/// Facts the owner learns from one event; empty when invisible to them.
std::vector<std::string> facts_for(const GameState& state, Seat owner, const GameEvent& e) {
    const bool owner_is_wolf = state.player(owner).role == Role::Werewolf;
    switch (e.kind) {
        case EventKind::RoleAssigned: {
            if (e.actor == owner) {
                return {"You are the " + role_title(state.player(owner).role) + "."};
            }
            if (owner_is_wolf && e.actor &&
                e.payload.at("role").get<std::string>() == "werewolf") {
                return {"Player " + std::to_string(*e.actor) + " is your fellow Werewolf."};
            }
            return {};
        }
        case EventKind::SheriffElected:
            return {"Player " + std::to_string(*e.target) + " was elected Sheriff."};
        case EventKind::NightKill:
            if (owner_is_wolf) {
                return {"Round " + std::to_string(e.payload.at("round").get<int>()) +
                        ": the Werewolves targeted Player " + std::to_string(*e.target) + "."};
            }
            return {};
        case EventKind::NightProtect:
            if (e.actor == owner) {
                return {"Round " + std::to_string(e.payload.at("round").get<int>()) +
                        ": you shielded Player " + std::to_string(*e.target) + "."};
            }
            return {};
        case EventKind::NightSee:
            if (e.actor == owner) {
                const bool wolf = e.payload.at("is_werewolf").get<bool>();
                return {"Round " + std::to_string(e.payload.at("round").get<int>()) +
                        ": Player " + std::to_string(*e.target) +
                        (wolf ? " is a Werewolf." : " is not a Werewolf.")};
            }
            return {};
        case EventKind::DawnAnnouncement:
            return {"Round " + std::to_string(e.payload.at("round").get<int>()) + " dawn: " +
                    e.payload.at("text").get<std::string>()};
        case EventKind::Vote: {
            std::string line = "Day " + std::to_string(e.payload.at("round").get<int>()) +
                               " votes:";
            bool first = true;
            for (const auto& [voter, target] : e.payload.at("ballots").items()) {
                line += first ? " " : "; ";
                first = false;
                line += "Player " + voter +
                        (target.is_null() ? " abstained"
                                          : " voted Player " + std::to_string(target.get<int>()));
            }
            return {line + "."};
        }
        case EventKind::Elimination:
            if (e.payload.at("cause").get<std::string>() == "vote") {
                return {"Day " + std::to_string(e.payload.at("round").get<int>()) +
                        ": Player " + std::to_string(*e.target) + " was eliminated by vote."};
            }
            return {}; // night deaths are covered by the dawn announcement
        case EventKind::Statement:
        case EventKind::ReliabilityUpdate:
        case EventKind::Draw:
        case EventKind::Win:
            return {};
    }
    return {};
}

} // namespace

Classification classify_statement(int score) {
    if (score < 0 || score > 10) {
        throw ValidationError("reliability score out of range [0,10]: " +
                              std::to_string(score));
    }
    return score >= kTruthThreshold ? Classification::PotentialTruth
                                    : Classification::PotentialFalsehood;
}

ContextPacket init_context(const GameState& state, Seat owner) {
    ContextPacket packet;
    packet.owner = owner;
    for (const auto& p : state.players) {
        if (p.seat != owner) packet.scores[p.seat] = 5; // neutral prior
    }
    return packet;
}

ContextPacket build_context(const GameState& state, Seat owner, ContextPacket prior) {
    ContextPacket packet = std::move(prior);
    packet.owner = owner;

    for (std::size_t i = packet.cursor; i < state.events.size(); ++i) {
        const GameEvent& e = state.events[i];
        for (auto& fact : facts_for(state, owner, e)) {
            packet.facts.push_back(std::move(fact));
        }
        if (e.kind == EventKind::Statement && e.actor && *e.actor != owner) {
            packet.statements.emplace_back(*e.actor, e.payload.at("text").get<std::string>());
        }
        if (e.kind == EventKind::ReliabilityUpdate && e.actor == owner) {
            for (const auto& [seat, score] : e.payload.at("scores").items()) {
                packet.scores[std::stoi(seat)] = score.get<int>();
            }
        }
        packet.cursor = i + 1;
    }

    packet.potential_truths.clear();
    packet.potential_falsehoods.clear();
    for (const auto& [speaker, text] : packet.statements) {
        // a dead speaker keeps the last score they held
        const int score = packet.scores.count(speaker) ? packet.scores.at(speaker) : 5;
        if (classify_statement(score) == Classification::PotentialTruth) {
            packet.potential_truths.emplace_back(speaker, text);
        } else {
            packet.potential_falsehoods.emplace_back(speaker, text);
        }
    }
    return packet;
}

prompt::ContextText ContextPacket::text_view(const GameState& state) const {
    prompt::ContextText view;
    view.facts = facts;
    view.truths = potential_truths;
    view.falsehoods = potential_falsehoods;
    for (const auto& [seat, score] : scores) {
        if (seat != owner && state.is_alive(seat)) view.reliability[seat] = score;
    }
    return view;
}

std::vector<Seat> score_seats(const GameState& state, Seat owner) {
    std::vector<Seat> out;
    for (Seat seat : state.alive_seats()) {
        if (seat != owner) out.push_back(seat);
    }
    return out;
}

} // namespace wwaudit::agent
