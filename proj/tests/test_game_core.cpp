#include <doctest.h>

#include "wwaudit/errors.hpp"
#include "wwaudit/game/engine.hpp"
#include "wwaudit/util/rng.hpp"

#include <algorithm>
#include <map>
#include <set>

using namespace wwaudit;
using namespace wwaudit::game;

namespace {

orch::GenderConfig all_male_config() {
    orch::GenderConfig c;
    c.seer = Gender::Male;
    c.guard = Gender::Male;
    c.werewolf_pair = orch::WolfPair::MM;
    c.villager_triple = orch::VillagerTriple::MMM;
    return c;
}

Seat seat_of(const GameState& s, Role role, int nth = 0) {
    int seen = 0;
    for (const auto& p : s.players) {
        if (p.role == role) {
            if (seen == nth) return p.seat;
            ++seen;
        }
    }
    REQUIRE(false);
    return 0;
}

GameState started(const orch::GenderConfig& cfg, std::uint64_t seed) {
    GameState s = begin_election(new_game(cfg, seed));
    std::map<Seat, Seat> noms;
    for (Seat v : s.alive_seats()) noms[v] = 1;
    return elect_sheriff(s, noms);
}

} // namespace

TEST_CASE("new_game: all-male config yields 7 male players with the standard role multiset") {
    GameState s = new_game(all_male_config(), 1);
    REQUIRE(s.players.size() == 7);
    std::map<Role, int> roles;
    for (const auto& p : s.players) {
        CHECK(p.true_gender == Gender::Male);
        CHECK(p.alive);
        roles[p.role] += 1;
    }
    CHECK(roles[Role::Werewolf] == 2);
    CHECK(roles[Role::Villager] == 3);
    CHECK(roles[Role::Seer] == 1);
    CHECK(roles[Role::Guard] == 1);
    CHECK(s.phase.kind == PhaseKind::Setup);
}

TEST_CASE("new_game: deterministic for identical inputs") {
    for (int idx : {0, 7, 23, 47}) {
        auto cfg = orch::GenderConfig::from_index(idx);
        GameState a = new_game(cfg, 1);
        GameState b = new_game(cfg, 1);
        REQUIRE(a.players.size() == b.players.size());
        for (std::size_t i = 0; i < a.players.size(); ++i) {
            CHECK(a.players[i].role == b.players[i].role);
            CHECK(a.players[i].true_gender == b.players[i].true_gender);
        }
        CHECK(a.snapshot_hash() == b.snapshot_hash());
    }
}

TEST_CASE("new_game: different seeds shuffle roles differently somewhere") {
    auto cfg = orch::GenderConfig::from_index(5);
    bool any_difference = false;
    GameState base = new_game(cfg, 1);
    for (std::uint64_t seed = 2; seed < 12; ++seed) {
        GameState other = new_game(cfg, seed);
        for (std::size_t i = 0; i < base.players.size(); ++i) {
            if (base.players[i].role != other.players[i].role) any_difference = true;
        }
    }
    CHECK(any_difference);
}

TEST_CASE("gender config: malformed werewolf count is a configuration error") {
    Json bad{{"seer", "M"}, {"guard", "M"}, {"werewolves", "MMM"}, {"villagers", "MMM"}};
    CHECK_THROWS_AS(orch::GenderConfig::from_json(bad), ConfigurationError);
    Json bad2{{"seer", "M"}, {"guard", "M"}, {"werewolves", "MM"}, {"villagers", "MM"}};
    CHECK_THROWS_AS(orch::GenderConfig::from_json(bad2), ConfigurationError);
}

TEST_CASE("elect_sheriff: strict plurality") {
    GameState s = begin_election(new_game(all_male_config(), 1));
    std::map<Seat, Seat> noms{{1, 3}, {2, 3}, {3, 3}, {4, 5}, {5, 5}, {6, 5}, {7, 3}};
    GameState after = elect_sheriff(s, noms);
    CHECK(after.sheriff == 3);
    CHECK(after.phase.kind == PhaseKind::Night);
    CHECK(after.phase.round == 1);
    CHECK(after.round == 1);
}

TEST_CASE("elect_sheriff: 3/3 tie breaks to the lowest seat") {
    GameState s = begin_election(new_game(all_male_config(), 1));
    std::map<Seat, Seat> noms{{1, 5}, {2, 5}, {3, 5}, {4, 2}, {5, 2}, {6, 2}, {7, 7}};
    CHECK(elect_sheriff(s, noms).sheriff == 2);
}

TEST_CASE("elect_sheriff: all self-nominations is a 7-way tie won by seat 1") {
    GameState s = begin_election(new_game(all_male_config(), 1));
    std::map<Seat, Seat> noms;
    for (Seat v = 1; v <= 7; ++v) noms[v] = v;
    CHECK(elect_sheriff(s, noms).sheriff == 1);
}

TEST_CASE("elect_sheriff: nomination by a dead seat is rejected") {
    GameState s = begin_election(new_game(all_male_config(), 1));
    s.player(4).alive = false;
    std::map<Seat, Seat> noms{{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 1}, {7, 1}};
    CHECK_THROWS_AS(elect_sheriff(s, noms), IllegalActionError);
}

TEST_CASE("resolve_night: guarded target survives and the dawn reports no death") {
    GameState s = started(all_male_config(), 3);
    Seat w1 = seat_of(s, Role::Werewolf, 0);
    Seat w2 = seat_of(s, Role::Werewolf, 1);
    Seat victim = seat_of(s, Role::Villager, 0);
    NightDecisions d;
    d.kill_nominations = {{w1, victim}, {w2, victim}};
    d.guard_target = victim;
    Seat seer = seat_of(s, Role::Seer);
    d.seer_target = victim == 1 ? 2 : 1;
    if (*d.seer_target == seer) d.seer_target = seat_of(s, Role::Guard);
    auto [after, seen] = resolve_night(s, d);
    CHECK(after.is_alive(victim));
    CHECK(after.alive_count() == 7);
    const auto& dawn = after.events.back();
    REQUIRE(dawn.kind == EventKind::DawnAnnouncement);
    CHECK(dawn.payload.at("died").is_null());
    CHECK(dawn.payload.at("text").get<std::string>() == "No one was eliminated in the night.");
}

TEST_CASE("resolve_night: unprotected target dies") {
    GameState s = started(all_male_config(), 3);
    Seat w1 = seat_of(s, Role::Werewolf, 0);
    Seat w2 = seat_of(s, Role::Werewolf, 1);
    Seat victim = seat_of(s, Role::Villager, 0);
    Seat other = seat_of(s, Role::Villager, 1);
    NightDecisions d;
    d.kill_nominations = {{w1, victim}, {w2, victim}};
    d.guard_target = other;
    auto [after, seen] = resolve_night(s, d);
    CHECK_FALSE(after.is_alive(victim));
    CHECK(after.alive_count() == 6);
}

TEST_CASE("resolve_night: lower-seat werewolf prevails on disagreement") {
    // Oracle: enumerate both orderings of the nomination list; the outcome
    // must match the lowest nominator seat's choice either way.
    GameState s = started(all_male_config(), 3);
    Seat w1 = seat_of(s, Role::Werewolf, 0);
    Seat w2 = seat_of(s, Role::Werewolf, 1);
    REQUIRE(w1 < w2);
    Seat t1 = seat_of(s, Role::Villager, 0);
    Seat t2 = seat_of(s, Role::Villager, 1);

    for (bool reversed : {false, true}) {
        NightDecisions d;
        d.kill_nominations = {{w1, t1}, {w2, t2}};
        if (reversed) std::swap(d.kill_nominations[0], d.kill_nominations[1]);
        d.guard_target = seat_of(s, Role::Guard);
        auto [after, seen] = resolve_night(s, d);
        CHECK_FALSE(after.is_alive(t1));
        CHECK(after.is_alive(t2));
        bool found_kill = false;
        for (const auto& e : after.events) {
            if (e.kind == EventKind::NightKill) {
                found_kill = true;
                CHECK(e.target == t1);
                CHECK(e.actor == w1);
            }
        }
        CHECK(found_kill);
    }
}

TEST_CASE("resolve_night: werewolf targeting a werewolf is illegal") {
    GameState s = started(all_male_config(), 3);
    Seat w1 = seat_of(s, Role::Werewolf, 0);
    Seat w2 = seat_of(s, Role::Werewolf, 1);
    NightDecisions d;
    d.kill_nominations = {{w1, w2}, {w2, w1}};
    CHECK_THROWS_AS(resolve_night(s, d), IllegalActionError);
}

TEST_CASE("resolve_night: dead kill target is illegal") {
    GameState s = started(all_male_config(), 3);
    Seat w1 = seat_of(s, Role::Werewolf, 0);
    Seat w2 = seat_of(s, Role::Werewolf, 1);
    Seat victim = seat_of(s, Role::Villager, 0);
    s.player(victim).alive = false;
    NightDecisions d;
    d.kill_nominations = {{w1, victim}, {w2, victim}};
    CHECK_THROWS_AS(resolve_night(s, d), IllegalActionError);
}

TEST_CASE("resolve_night: seer learns whether the target is a werewolf") {
    GameState s = started(all_male_config(), 3);
    Seat w1 = seat_of(s, Role::Werewolf, 0);
    Seat w2 = seat_of(s, Role::Werewolf, 1);
    Seat villager = seat_of(s, Role::Villager, 0);
    NightDecisions d;
    d.kill_nominations = {{w1, villager}, {w2, villager}};
    d.guard_target = villager;
    d.seer_target = w1;
    auto [after, seen] = resolve_night(s, d);
    REQUIRE(seen.has_value());
    CHECK(seen->target == w1);
    CHECK(seen->is_werewolf);
}

TEST_CASE("run_day_vote: strict plurality eliminates") {
    GameState s = started(all_male_config(), 3);
    Seat w1 = seat_of(s, Role::Werewolf, 0);
    Seat w2 = seat_of(s, Role::Werewolf, 1);
    Seat victim = seat_of(s, Role::Villager, 0);
    NightDecisions d;
    d.kill_nominations = {{w1, victim}, {w2, victim}};
    d.guard_target = victim;
    auto [day, seen] = resolve_night(s, d);
    day = begin_vote(begin_statements(day));

    Seat out = seat_of(day, Role::Villager, 2);
    std::map<Seat, std::optional<Seat>> ballots;
    int cast = 0;
    for (Seat v : day.alive_seats()) {
        if (v != out && cast < 4) {
            ballots[v] = out;
            ++cast;
        } else {
            ballots[v] = std::nullopt;
        }
    }
    GameState after = run_day_vote(day, ballots);
    CHECK_FALSE(after.is_alive(out));
    CHECK(after.phase.kind == PhaseKind::Night);
    CHECK(after.round == 2);
}

TEST_CASE("run_day_vote: ties and all-abstain eliminate nobody") {
    for (bool all_abstain : {false, true}) {
        GameState s = started(all_male_config(), 3);
        Seat w1 = seat_of(s, Role::Werewolf, 0);
        Seat w2 = seat_of(s, Role::Werewolf, 1);
        Seat victim = seat_of(s, Role::Villager, 0);
        NightDecisions d;
        d.kill_nominations = {{w1, victim}, {w2, victim}};
        d.guard_target = victim;
        auto [day, seen] = resolve_night(s, d);
        day = begin_vote(begin_statements(day));

        std::map<Seat, std::optional<Seat>> ballots;
        std::vector<Seat> alive = day.alive_seats();
        for (std::size_t i = 0; i < alive.size(); ++i) {
            if (all_abstain) {
                ballots[alive[i]] = std::nullopt;
            } else {
                // 3 votes on one target, 3 on another, one abstain
                if (i < 3) ballots[alive[i]] = alive[6];
                else if (i < 6) ballots[alive[i]] = alive[5];
                else ballots[alive[i]] = std::nullopt;
            }
        }
        GameState after = run_day_vote(day, ballots);
        CHECK(after.alive_count() == 7);
        CHECK(after.round == 2);
    }
}

TEST_CASE("run_day_vote: ballot from a dead seat is illegal") {
    GameState s = started(all_male_config(), 3);
    Seat w1 = seat_of(s, Role::Werewolf, 0);
    Seat w2 = seat_of(s, Role::Werewolf, 1);
    Seat victim = seat_of(s, Role::Villager, 0);
    NightDecisions d;
    d.kill_nominations = {{w1, victim}, {w2, victim}};
    auto [day, seen] = resolve_night(s, d);
    day = begin_vote(begin_statements(day));
    std::map<Seat, std::optional<Seat>> ballots;
    for (Seat v : day.alive_seats()) ballots[v] = std::nullopt;
    ballots[victim] = day.alive_seats().front();
    CHECK_THROWS_AS(run_day_vote(day, ballots), IllegalActionError);
}

TEST_CASE("check_winner covers both win conditions and the undecided case") {
    GameState s = new_game(all_male_config(), 1);

    SUBCASE("two werewolves against two others is a werewolf win") {
        int killed = 0;
        for (auto& p : s.players) {
            if (p.role == Role::Villager && killed < 3) {
                p.alive = false;
                ++killed;
            }
        }
        // 2 werewolves vs seer+guard
        CHECK(check_winner(s) == MatchOutcome::WerewolvesWin);
    }
    SUBCASE("zero werewolves is a villager win") {
        for (auto& p : s.players) {
            if (p.role == Role::Werewolf) p.alive = false;
        }
        CHECK(check_winner(s) == MatchOutcome::VillagersWin);
    }
    SUBCASE("two werewolves against four others is undecided") {
        for (auto& p : s.players) {
            if (p.role == Role::Villager) {
                p.alive = false;
                break;
            }
        }
        CHECK(check_winner(s) == std::nullopt);
    }
}

TEST_CASE("check_winner is invariant under seat permutation of the alive-role multiset") {
    GameState s = new_game(all_male_config(), 9);
    s.player(seat_of(s, Role::Villager, 0)).alive = false;
    s.player(seat_of(s, Role::Seer)).alive = false;
    auto base = check_winner(s);
    // rotate roles across seats, preserving the alive flags per position
    for (int rot = 1; rot < 7; ++rot) {
        GameState t = s;
        for (int i = 0; i < 7; ++i) {
            t.players[static_cast<std::size_t>(i)].role =
                s.players[static_cast<std::size_t>((i + rot) % 7)].role;
            t.players[static_cast<std::size_t>(i)].alive =
                s.players[static_cast<std::size_t>((i + rot) % 7)].alive;
        }
        CHECK(check_winner(t) == base);
    }
}

TEST_CASE("statement_order starts after the sheriff and wraps, sheriff last") {
    GameState s = started(all_male_config(), 1);
    s.sheriff = 3;
    CHECK(statement_order(s) == std::vector<Seat>{4, 5, 6, 7, 1, 2, 3});

    s.sheriff = 7;
    for (Seat seat : {3, 4, 5, 6}) s.player(seat).alive = false;
    CHECK(statement_order(s) == std::vector<Seat>{1, 2, 7});
}

TEST_CASE("statement_order falls back to after the lowest alive seat when the sheriff is dead") {
    GameState s = started(all_male_config(), 1);
    for (Seat seat : {1, 3, 5, 7}) s.player(seat).alive = false;
    s.sheriff = 1; // dead

    // Oracle: direct enumeration. Walk seats cyclically starting after the
    // lowest alive seat and keep the alive ones.
    std::vector<Seat> alive = s.alive_seats();
    Seat lowest = alive.front();
    std::vector<Seat> expected;
    for (int off = 1; off <= 7; ++off) {
        Seat seat = (lowest - 1 + off) % 7 + 1;
        if (s.is_alive(seat)) expected.push_back(seat);
    }
    CHECK(expected == std::vector<Seat>{4, 6, 2});
    CHECK(statement_order(s) == expected);
}

// Engine-level property walk: random legal decisions, fixed seeds. The full
// driver-level suite lives in the acceptance tests.
TEST_CASE("random legal play: alive-count monotone, dead seats inert, termination at cap") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        util::Rng rng(seed);
        auto cfg = orch::GenderConfig::from_index(static_cast<int>(seed) % 48);
        GameState s = begin_election(new_game(cfg, seed));

        std::map<Seat, Seat> noms;
        std::vector<Seat> alive = s.alive_seats();
        for (Seat v : alive) noms[v] = alive[rng.below(alive.size())];
        s = elect_sheriff(s, noms);

        int prev_alive = s.alive_count();
        int rounds = 0;
        while (!s.finished()) {
            REQUIRE(s.phase.kind == PhaseKind::Night);
            ++rounds;
            REQUIRE(rounds <= kRoundCap);

            std::vector<Seat> wolves, nonwolves, alive_now = s.alive_seats();
            for (Seat v : alive_now) {
                if (s.player(v).role == Role::Werewolf) wolves.push_back(v);
                else nonwolves.push_back(v);
            }
            NightDecisions d;
            for (Seat w : wolves) {
                d.kill_nominations.emplace_back(w, nonwolves[rng.below(nonwolves.size())]);
            }
            for (Seat v : alive_now) {
                if (s.player(v).role == Role::Guard) {
                    d.guard_target = alive_now[rng.below(alive_now.size())];
                }
                if (s.player(v).role == Role::Seer) {
                    std::vector<Seat> others;
                    for (Seat o : alive_now) {
                        if (o != v) others.push_back(o);
                    }
                    d.seer_target = others[rng.below(others.size())];
                }
            }
            auto [after_night, seen] = resolve_night(s, d);
            s = std::move(after_night);
            CHECK(s.alive_count() <= prev_alive);
            prev_alive = s.alive_count();
            if (s.finished()) break;

            s = begin_statements(s);
            for (Seat v : statement_order(s)) {
                s = add_statement(s, v, "Player " + std::to_string(v) + " passes.", false);
            }
            s = begin_vote(s);
            std::map<Seat, std::optional<Seat>> ballots;
            for (Seat v : s.alive_seats()) {
                std::vector<Seat> targets;
                for (Seat o : s.alive_seats()) {
                    if (o != v) targets.push_back(o);
                }
                if (rng.below(4) == 0) ballots[v] = std::nullopt;
                else ballots[v] = targets[rng.below(targets.size())];
            }
            s = run_day_vote(s, ballots);
            CHECK(s.alive_count() <= prev_alive);
            prev_alive = s.alive_count();
        }

        // winner consistent with the final alive-role multiset
        REQUIRE(s.phase.outcome.has_value());
        int wolves_alive = 0, others_alive = 0;
        for (const auto& p : s.players) {
            if (!p.alive) continue;
            (p.role == Role::Werewolf ? wolves_alive : others_alive) += 1;
        }
        switch (*s.phase.outcome) {
            case MatchOutcome::WerewolvesWin: CHECK(wolves_alive >= others_alive); break;
            case MatchOutcome::VillagersWin: CHECK(wolves_alive == 0); break;
            case MatchOutcome::Draw:
                CHECK(wolves_alive > 0);
                CHECK(wolves_alive < others_alive);
                break;
        }

        // alive count decreases by exactly one per elimination event
        int eliminations = 0;
        std::set<Seat> dead;
        for (const auto& e : s.events) {
            if (e.kind == EventKind::Elimination) {
                ++eliminations;
                dead.insert(*e.target);
            } else if (e.actor && !dead.empty()) {
                CHECK_FALSE(dead.count(*e.actor)); // dead seats never act again
            }
        }
        CHECK(7 - eliminations == s.alive_count());
    }
}
