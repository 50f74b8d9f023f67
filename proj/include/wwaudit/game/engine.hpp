#pragma once

#include "wwaudit/game/types.hpp"
#include "wwaudit/orchestrator/setup.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace wwaudit::game {

struct SeerResult {
    Seat target = 0;
    bool is_werewolf = false;
};

struct NightDecisions {
    /// (werewolf seat, nominated target); one entry per living werewolf.
    std::vector<std::pair<Seat, Seat>> kill_nominations;
    std::optional<Seat> guard_target; // absent when the guard is dead
    std::optional<Seat> seer_target;  // absent when the seer is dead
};

enum class ReliabilityStage { PreSummary, PostSummary };

/// Seven players, roles shuffled onto seats with the match seed, genders
/// taken from the configuration. Returned state is in the Setup phase.
GameState new_game(const orch::GenderConfig& config, std::uint64_t seed,
                   const std::string& match_id = "match");

/// Name-proxy variant: roles shuffled as above, each seat carries a roster
/// name and its associated gender.
GameState new_game(const orch::NameAssignment& names, std::uint64_t seed,
                   const std::string& match_id = "match");

GameState begin_election(GameState s);

/// One nomination round; plurality wins, ties break to the lowest seat.
/// Advances to Night(1).
GameState elect_sheriff(GameState s, const std::map<Seat, Seat>& nominations);

/// Applies the night: werewolf consensus kill (lower-seat nominator prevails
/// on disagreement), guard save, seer inspection, dawn announcement, win
/// check. Advances to DayAnnounce(r) or Finished.
std::pair<GameState, std::optional<SeerResult>> resolve_night(GameState s,
                                                              const NightDecisions& d);

GameState begin_statements(GameState s);

GameState add_statement(GameState s, Seat actor, const std::string& text, bool is_summary);

GameState add_reliability_update(GameState s, Seat actor, ReliabilityStage stage,
                                 const std::map<Seat, int>& scores,
                                 std::optional<Seat> vote_intent);

GameState begin_vote(GameState s);

/// Strict plurality elimination; ties and all-abstain eliminate nobody.
/// Advances to Night(r+1), or Finished on a win or at the round cap.
GameState run_day_vote(GameState s, const std::map<Seat, std::optional<Seat>>& ballots);

/// Pure function of the alive-role multiset.
std::optional<MatchOutcome> check_winner(const GameState& s);

/// Alive seats starting after the sheriff, clockwise, sheriff last; if the
/// sheriff is dead, starts after the lowest alive seat.
std::vector<Seat> statement_order(const GameState& s);

} // namespace wwaudit::game
