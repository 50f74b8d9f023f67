#include "wwaudit/game/engine.hpp"

#include "wwaudit/errors.hpp"
#include "wwaudit/prompt/roster.hpp"
#include "wwaudit/util/rng.hpp"

#include <algorithm>

namespace wwaudit::game {

namespace {

void require_phase(const GameState& s, PhaseKind kind, const char* op) {
    if (s.phase.kind != kind) {
        throw IllegalActionError(std::string(op) + ": wrong phase " +
                                 to_string(s.phase.kind));
    }
}

void require_alive(const GameState& s, Seat seat, const char* what) {
    if (!s.is_alive(seat)) {
        throw IllegalActionError(std::string(what) + ": seat " + std::to_string(seat) +
                                 " is dead");
    }
}

void append(GameState& s, GameEvent e) { s.events.push_back(std::move(e)); }

GameState finish(GameState s, MatchOutcome outcome) {
    s.phase = GamePhase{PhaseKind::Finished, s.round, outcome};
    if (outcome == MatchOutcome::Draw) {
        append(s, GameEvent{EventKind::Draw, std::nullopt, std::nullopt,
                            Json{{"round", s.round}}});
    }
    Json winners = Json::array();
    for (const auto& p : s.players) {
        const bool wolf = p.role == Role::Werewolf;
        if ((outcome == MatchOutcome::WerewolvesWin && wolf) ||
            (outcome == MatchOutcome::VillagersWin && !wolf)) {
            winners.push_back(p.seat);
        }
    }
    append(s, GameEvent{EventKind::Win, std::nullopt, std::nullopt,
                        Json{{"outcome", to_string(outcome)}, {"winners", winners}}});
    return s;
}

/// Win check shared by night and day resolution; no-op if the game goes on.
GameState maybe_finish(GameState s) {
    if (auto w = check_winner(s)) return finish(std::move(s), *w);
    return s;
}

GameState build_game(std::vector<std::pair<Role, Gender>> cast, std::uint64_t seed,
                     const std::string& match_id) {
    GameState s;
    s.match_id = match_id;
    s.rng_seed = seed;
    s.phase = GamePhase{PhaseKind::Setup, 0, std::nullopt};

    util::Rng rng(util::derive_seed(seed, 0x5ea7));
    rng.shuffle(cast);

    for (int i = 0; i < kPlayerCount; ++i) {
        PlayerProfile p;
        p.seat = i + 1;
        p.role = cast[static_cast<std::size_t>(i)].first;
        p.true_gender = cast[static_cast<std::size_t>(i)].second;
        p.alive = true;
        s.players.push_back(std::move(p));
    }
    for (const auto& p : s.players) {
        Json payload{{"role", to_string(p.role)}, {"gender", to_string(p.true_gender)}};
        if (p.proxy_name) payload["name"] = *p.proxy_name;
        append(s, GameEvent{EventKind::RoleAssigned, p.seat, std::nullopt, payload});
    }
    return s;
}

} // namespace

GameState new_game(const orch::GenderConfig& config, std::uint64_t seed,
                   const std::string& match_id) {
    std::vector<std::pair<Role, Gender>> cast;
    for (Gender g : config.werewolf_genders()) cast.emplace_back(Role::Werewolf, g);
    for (Gender g : config.villager_genders()) cast.emplace_back(Role::Villager, g);
    cast.emplace_back(Role::Seer, config.seer);
    cast.emplace_back(Role::Guard, config.guard);
    return build_game(std::move(cast), seed, match_id);
}

GameState new_game(const orch::NameAssignment& names, std::uint64_t seed,
                   const std::string& match_id) {
    // Roles are shuffled first; each seat then keeps its assigned name and
    // inherits the name's associated gender.
    std::vector<Role> roles;
    for (int i = 0; i < kWerewolfCount; ++i) roles.push_back(Role::Werewolf);
    for (int i = 0; i < kVillagerCount; ++i) roles.push_back(Role::Villager);
    roles.push_back(Role::Seer);
    roles.push_back(Role::Guard);
    util::Rng rng(util::derive_seed(seed, 0x5ea7));
    rng.shuffle(roles);

    GameState s;
    s.match_id = match_id;
    s.rng_seed = seed;
    s.phase = GamePhase{PhaseKind::Setup, 0, std::nullopt};
    for (int i = 0; i < kPlayerCount; ++i) {
        PlayerProfile p;
        p.seat = i + 1;
        p.role = roles[static_cast<std::size_t>(i)];
        p.proxy_name = names.names.at(p.seat);
        auto g = prompt::roster_gender(*p.proxy_name);
        if (!g) throw ConfigurationError("name not in roster: " + *p.proxy_name);
        p.true_gender = *g;
        p.alive = true;
        s.players.push_back(std::move(p));
    }
    for (const auto& p : s.players) {
        Json payload{{"role", to_string(p.role)},
                     {"gender", to_string(p.true_gender)},
                     {"name", *p.proxy_name}};
        append(s, GameEvent{EventKind::RoleAssigned, p.seat, std::nullopt, payload});
    }
    return s;
}

GameState begin_election(GameState s) {
    require_phase(s, PhaseKind::Setup, "begin_election");
    s.phase = GamePhase{PhaseKind::SheriffElection, 0, std::nullopt};
    return s;
}

GameState elect_sheriff(GameState s, const std::map<Seat, Seat>& nominations) {
    require_phase(s, PhaseKind::SheriffElection, "elect_sheriff");
    for (Seat voter : s.alive_seats()) {
        if (!nominations.count(voter)) {
            throw IllegalActionError("elect_sheriff: missing nomination from seat " +
                                     std::to_string(voter));
        }
    }
    std::map<Seat, int> tally;
    for (const auto& [voter, choice] : nominations) {
        require_alive(s, voter, "elect_sheriff nominator");
        require_alive(s, choice, "elect_sheriff nominee");
        tally[choice] += 1;
    }
    // plurality; std::map iteration order makes the lowest seat win ties
    Seat winner = 0;
    int best = -1;
    for (const auto& [seat, votes] : tally) {
        if (votes > best) {
            winner = seat;
            best = votes;
        }
    }
    s.sheriff = winner;
    Json noms = Json::object();
    for (const auto& [voter, choice] : nominations) noms[std::to_string(voter)] = choice;
    append(s, GameEvent{EventKind::SheriffElected, std::nullopt, winner,
                        Json{{"nominations", noms}}});
    s.round = 1;
    s.phase = GamePhase{PhaseKind::Night, 1, std::nullopt};
    return s;
}

std::pair<GameState, std::optional<SeerResult>> resolve_night(GameState s,
                                                              const NightDecisions& d) {
    require_phase(s, PhaseKind::Night, "resolve_night");
    const int round = s.phase.round;

    std::vector<Seat> wolves;
    for (const auto& p : s.players) {
        if (p.alive && p.role == Role::Werewolf) wolves.push_back(p.seat);
    }
    if (d.kill_nominations.size() != wolves.size()) {
        throw IllegalActionError("resolve_night: expected one nomination per living werewolf");
    }

    // Consensus rule: the nomination of the lowest-seat werewolf prevails.
    std::vector<std::pair<Seat, Seat>> noms = d.kill_nominations;
    std::sort(noms.begin(), noms.end());
    for (std::size_t i = 1; i < noms.size(); ++i) {
        if (noms[i].first == noms[i - 1].first) {
            throw IllegalActionError("resolve_night: duplicate kill nomination");
        }
    }
    for (const auto& [wolf, target] : noms) {
        require_alive(s, wolf, "resolve_night werewolf");
        if (s.player(wolf).role != Role::Werewolf) {
            throw IllegalActionError("resolve_night: nominator is not a werewolf");
        }
        require_alive(s, target, "resolve_night kill target");
        if (s.player(target).role == Role::Werewolf) {
            throw IllegalActionError("resolve_night: werewolves cannot target a werewolf");
        }
    }
    const Seat kill_target = noms.front().second;
    const Seat kill_actor = noms.front().first;

    if (d.guard_target) {
        const auto guard = std::find_if(s.players.begin(), s.players.end(), [](const auto& p) {
            return p.role == Role::Guard && p.alive;
        });
        if (guard == s.players.end()) {
            throw IllegalActionError("resolve_night: guard decision without a living guard");
        }
        require_alive(s, *d.guard_target, "resolve_night guard target");
    }
    std::optional<Seat> seer_seat;
    if (d.seer_target) {
        for (const auto& p : s.players) {
            if (p.role == Role::Seer && p.alive) seer_seat = p.seat;
        }
        if (!seer_seat) {
            throw IllegalActionError("resolve_night: seer decision without a living seer");
        }
        require_alive(s, *d.seer_target, "resolve_night seer target");
        if (*d.seer_target == *seer_seat) {
            throw IllegalActionError("resolve_night: seer cannot inspect themselves");
        }
    }

    const bool saved = d.guard_target && *d.guard_target == kill_target;
    Json nom_j = Json::array();
    for (const auto& [wolf, target] : noms) nom_j.push_back(Json::array({wolf, target}));
    append(s, GameEvent{EventKind::NightKill, kill_actor, kill_target,
                        Json{{"round", round}, {"nominations", nom_j}, {"saved", saved}}});
    if (d.guard_target) {
        const Seat guard_seat = [&] {
            for (const auto& p : s.players) {
                if (p.role == Role::Guard && p.alive) return p.seat;
            }
            return Seat{0};
        }();
        append(s, GameEvent{EventKind::NightProtect, guard_seat, *d.guard_target,
                            Json{{"round", round}}});
    }
    std::optional<SeerResult> seer_result;
    if (d.seer_target) {
        const bool is_wolf = s.player(*d.seer_target).role == Role::Werewolf;
        seer_result = SeerResult{*d.seer_target, is_wolf};
        append(s, GameEvent{EventKind::NightSee, *seer_seat, *d.seer_target,
                            Json{{"round", round}, {"is_werewolf", is_wolf}}});
    }

    std::optional<Seat> died;
    if (!saved) {
        died = kill_target;
        s.player(kill_target).alive = false;
        append(s, GameEvent{EventKind::Elimination, std::nullopt, kill_target,
                            Json{{"round", round}, {"cause", "night"}}});
    }
    Json dawn{{"round", round}};
    if (died) {
        dawn["died"] = *died;
        dawn["text"] = "Player " + std::to_string(*died) + " was eliminated in the night.";
    } else {
        dawn["died"] = nullptr;
        dawn["text"] = "No one was eliminated in the night.";
    }
    append(s, GameEvent{EventKind::DawnAnnouncement, std::nullopt, std::nullopt, dawn});

    s.phase = GamePhase{PhaseKind::DayAnnounce, round, std::nullopt};
    return {maybe_finish(std::move(s)), seer_result};
}

GameState begin_statements(GameState s) {
    require_phase(s, PhaseKind::DayAnnounce, "begin_statements");
    s.phase = GamePhase{PhaseKind::DayStatements, s.phase.round, std::nullopt};
    return s;
}

GameState add_statement(GameState s, Seat actor, const std::string& text, bool is_summary) {
    require_phase(s, PhaseKind::DayStatements, "add_statement");
    require_alive(s, actor, "add_statement");
    append(s, GameEvent{EventKind::Statement, actor, std::nullopt,
                        Json{{"round", s.phase.round}, {"text", text}, {"summary", is_summary}}});
    return s;
}

GameState add_reliability_update(GameState s, Seat actor, ReliabilityStage stage,
                                 const std::map<Seat, int>& scores,
                                 std::optional<Seat> vote_intent) {
    require_phase(s, PhaseKind::DayStatements, "add_reliability_update");
    require_alive(s, actor, "add_reliability_update");
    Json scores_j = Json::object();
    for (const auto& [seat, score] : scores) {
        if (score < 0 || score > 10) {
            throw ValidationError("reliability score out of range");
        }
        scores_j[std::to_string(seat)] = score;
    }
    Json payload{{"round", s.phase.round},
                 {"stage", stage == ReliabilityStage::PreSummary ? "pre" : "post"},
                 {"scores", scores_j}};
    payload["vote_intent"] = vote_intent ? Json(*vote_intent) : Json(nullptr);
    append(s, GameEvent{EventKind::ReliabilityUpdate, actor, std::nullopt, payload});
    return s;
}

GameState begin_vote(GameState s) {
    require_phase(s, PhaseKind::DayStatements, "begin_vote");
    s.phase = GamePhase{PhaseKind::DayVote, s.phase.round, std::nullopt};
    return s;
}

GameState run_day_vote(GameState s, const std::map<Seat, std::optional<Seat>>& ballots) {
    require_phase(s, PhaseKind::DayVote, "run_day_vote");
    const int round = s.phase.round;
    for (Seat voter : s.alive_seats()) {
        if (!ballots.count(voter)) {
            throw IllegalActionError("run_day_vote: missing ballot from seat " +
                                     std::to_string(voter));
        }
    }
    std::map<Seat, int> tally;
    for (const auto& [voter, target] : ballots) {
        require_alive(s, voter, "run_day_vote voter");
        if (target) {
            require_alive(s, *target, "run_day_vote target");
            tally[*target] += 1;
        }
    }
    // strict plurality: a unique maximum eliminates, anything else is a no-op
    std::optional<Seat> eliminated;
    int best = 0;
    bool tie = false;
    for (const auto& [seat, votes] : tally) {
        if (votes > best) {
            best = votes;
            eliminated = seat;
            tie = false;
        } else if (votes == best) {
            tie = true;
        }
    }
    if (tie || best == 0) eliminated = std::nullopt;

    Json ballots_j = Json::object();
    for (const auto& [voter, target] : ballots) {
        ballots_j[std::to_string(voter)] = target ? Json(*target) : Json(nullptr);
    }
    Json vote_payload{{"round", round}, {"ballots", ballots_j}};
    vote_payload["eliminated"] = eliminated ? Json(*eliminated) : Json(nullptr);
    append(s, GameEvent{EventKind::Vote, std::nullopt, std::nullopt, vote_payload});

    if (eliminated) {
        s.player(*eliminated).alive = false;
        append(s, GameEvent{EventKind::Elimination, std::nullopt, *eliminated,
                            Json{{"round", round}, {"cause", "vote"}}});
    }

    s = maybe_finish(std::move(s));
    if (s.finished()) return s;
    if (round >= kRoundCap) return finish(std::move(s), MatchOutcome::Draw);
    s.round = round + 1;
    s.phase = GamePhase{PhaseKind::Night, s.round, std::nullopt};
    return s;
}

std::optional<MatchOutcome> check_winner(const GameState& s) {
    int wolves = 0;
    int others = 0;
    for (const auto& p : s.players) {
        if (!p.alive) continue;
        if (p.role == Role::Werewolf) ++wolves;
        else ++others;
    }
    if (wolves == 0) return MatchOutcome::VillagersWin;
    if (wolves >= others) return MatchOutcome::WerewolvesWin;
    return std::nullopt;
}

std::vector<Seat> statement_order(const GameState& s) {
    const std::vector<Seat> alive = s.alive_seats();
    if (alive.empty()) return {};
    Seat pivot;
    if (s.sheriff && s.is_alive(*s.sheriff)) {
        pivot = *s.sheriff;
    } else {
        pivot = alive.front(); // lowest alive seat
    }
    // clockwise from the seat after the pivot; pivot speaks last
    std::vector<Seat> order;
    for (int offset = 1; offset <= kPlayerCount; ++offset) {
        Seat seat = (pivot - 1 + offset) % kPlayerCount + 1;
        if (s.is_alive(seat)) order.push_back(seat);
    }
    return order;
}

} // namespace wwaudit::game
