#include "wwaudit/game/types.hpp"

#include "wwaudit/errors.hpp"
#include "wwaudit/util/sha256.hpp"

#include <algorithm>

namespace wwaudit::game {

const PlayerProfile& GameState::player(Seat seat) const {
    for (const auto& p : players) {
        if (p.seat == seat) return p;
    }
    throw IllegalActionError("no such seat: " + std::to_string(seat));
}

PlayerProfile& GameState::player(Seat seat) {
    for (auto& p : players) {
        if (p.seat == seat) return p;
    }
    throw IllegalActionError("no such seat: " + std::to_string(seat));
}

bool GameState::is_alive(Seat seat) const { return player(seat).alive; }

std::vector<Seat> GameState::alive_seats() const {
    std::vector<Seat> out;
    for (const auto& p : players) {
        if (p.alive) out.push_back(p.seat);
    }
    return out;
}

int GameState::alive_count() const {
    return static_cast<int>(std::count_if(players.begin(), players.end(),
                                          [](const PlayerProfile& p) { return p.alive; }));
}

Json GameState::snapshot_json() const {
    Json players_j = Json::array();
    for (const auto& p : players) {
        Json pj{{"seat", p.seat},
                {"role", to_string(p.role)},
                {"gender", to_string(p.true_gender)},
                {"alive", p.alive}};
        if (p.proxy_name) pj["name"] = *p.proxy_name;
        players_j.push_back(std::move(pj));
    }
    Json j{{"match_id", match_id},
           {"round", round},
           {"phase", to_json(phase)},
           {"players", std::move(players_j)}};
    if (sheriff) j["sheriff"] = *sheriff;
    return j;
}

std::string GameState::snapshot_hash() const { return util::sha256_hex(snapshot_json().dump()); }

const char* to_string(Role r) {
    switch (r) {
        case Role::Werewolf: return "werewolf";
        case Role::Villager: return "villager";
        case Role::Seer: return "seer";
        case Role::Guard: return "guard";
    }
    return "?";
}

const char* to_string(Gender g) { return g == Gender::Male ? "male" : "female"; }

const char* to_string(PhaseKind k) {
    switch (k) {
        case PhaseKind::Setup: return "setup";
        case PhaseKind::SheriffElection: return "sheriff_election";
        case PhaseKind::Night: return "night";
        case PhaseKind::DayAnnounce: return "day_announce";
        case PhaseKind::DayStatements: return "day_statements";
        case PhaseKind::DayVote: return "day_vote";
        case PhaseKind::Finished: return "finished";
    }
    return "?";
}

const char* to_string(MatchOutcome o) {
    switch (o) {
        case MatchOutcome::WerewolvesWin: return "werewolves_win";
        case MatchOutcome::VillagersWin: return "villagers_win";
        case MatchOutcome::Draw: return "draw";
    }
    return "?";
}

const char* to_string(EventKind k) {
    switch (k) {
        case EventKind::RoleAssigned: return "role_assigned";
        case EventKind::SheriffElected: return "sheriff_elected";
        case EventKind::NightKill: return "night_kill";
        case EventKind::NightProtect: return "night_protect";
        case EventKind::NightSee: return "night_see";
        case EventKind::DawnAnnouncement: return "dawn_announcement";
        case EventKind::Statement: return "statement";
        case EventKind::ReliabilityUpdate: return "reliability_update";
        case EventKind::Vote: return "vote";
        case EventKind::Elimination: return "elimination";
        case EventKind::Draw: return "draw";
        case EventKind::Win: return "win";
    }
    return "?";
}

Role role_from_string(const std::string& s) {
    if (s == "werewolf") return Role::Werewolf;
    if (s == "villager") return Role::Villager;
    if (s == "seer") return Role::Seer;
    if (s == "guard") return Role::Guard;
    throw ParseError("unknown role: " + s);
}

Gender gender_from_string(const std::string& s) {
    if (s == "male") return Gender::Male;
    if (s == "female") return Gender::Female;
    throw ParseError("unknown gender: " + s);
}

EventKind event_kind_from_string(const std::string& s) {
    static const std::pair<const char*, EventKind> table[] = {
        {"role_assigned", EventKind::RoleAssigned},
        {"sheriff_elected", EventKind::SheriffElected},
        {"night_kill", EventKind::NightKill},
        {"night_protect", EventKind::NightProtect},
        {"night_see", EventKind::NightSee},
        {"dawn_announcement", EventKind::DawnAnnouncement},
        {"statement", EventKind::Statement},
        {"reliability_update", EventKind::ReliabilityUpdate},
        {"vote", EventKind::Vote},
        {"elimination", EventKind::Elimination},
        {"draw", EventKind::Draw},
        {"win", EventKind::Win},
    };
    for (const auto& [name, kind] : table) {
        if (s == name) return kind;
    }
    throw ParseError("unknown event kind: " + s);
}

MatchOutcome outcome_from_string(const std::string& s) {
    if (s == "werewolves_win") return MatchOutcome::WerewolvesWin;
    if (s == "villagers_win") return MatchOutcome::VillagersWin;
    if (s == "draw") return MatchOutcome::Draw;
    throw ParseError("unknown outcome: " + s);
}

Json to_json(const GameEvent& e) {
    Json j{{"kind", to_string(e.kind)}, {"payload", e.payload}};
    if (e.actor) j["actor"] = *e.actor;
    if (e.target) j["target"] = *e.target;
    return j;
}

GameEvent event_from_json(const Json& j) {
    GameEvent e;
    e.kind = event_kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("actor")) e.actor = j.at("actor").get<Seat>();
    if (j.contains("target")) e.target = j.at("target").get<Seat>();
    if (j.contains("payload")) e.payload = j.at("payload");
    return e;
}

Json to_json(const GamePhase& p) {
    Json j{{"kind", to_string(p.kind)}};
    if (p.kind == PhaseKind::Night || p.kind == PhaseKind::DayAnnounce ||
        p.kind == PhaseKind::DayStatements || p.kind == PhaseKind::DayVote) {
        j["round"] = p.round;
    }
    if (p.outcome) j["outcome"] = to_string(*p.outcome);
    return j;
}

GamePhase phase_from_json(const Json& j) {
    GamePhase p;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "setup") p.kind = PhaseKind::Setup;
    else if (kind == "sheriff_election") p.kind = PhaseKind::SheriffElection;
    else if (kind == "night") p.kind = PhaseKind::Night;
    else if (kind == "day_announce") p.kind = PhaseKind::DayAnnounce;
    else if (kind == "day_statements") p.kind = PhaseKind::DayStatements;
    else if (kind == "day_vote") p.kind = PhaseKind::DayVote;
    else if (kind == "finished") p.kind = PhaseKind::Finished;
    else throw ParseError("unknown phase kind: " + kind);
    if (j.contains("round")) p.round = j.at("round").get<int>();
    if (j.contains("outcome")) p.outcome = outcome_from_string(j.at("outcome").get<std::string>());
    return p;
}

} // namespace wwaudit::game
