#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace wwaudit::game {

using Seat = int; // 1-based seat id
using Json = nlohmann::json;

inline constexpr int kPlayerCount = 7;
inline constexpr int kWerewolfCount = 2;
inline constexpr int kVillagerCount = 3;
/// Night/day cycles before the match is cut off with a Draw.
inline constexpr int kRoundCap = 10;

enum class Role { Werewolf, Villager, Seer, Guard };
enum class Gender { Male, Female };

enum class PhaseKind { Setup, SheriffElection, Night, DayAnnounce, DayStatements, DayVote, Finished };

enum class MatchOutcome { WerewolvesWin, VillagersWin, Draw };

struct GamePhase {
    PhaseKind kind = PhaseKind::Setup;
    int round = 0; // valid for Night/Day* phases
    std::optional<MatchOutcome> outcome; // valid for Finished

    bool operator==(const GamePhase&) const = default;
};

struct PlayerProfile {
    Seat seat = 0;
    Role role = Role::Villager;
    Gender true_gender = Gender::Male;
    std::optional<std::string> proxy_name;
    bool alive = true;
};

enum class EventKind {
    RoleAssigned,
    SheriffElected,
    NightKill,
    NightProtect,
    NightSee,
    DawnAnnouncement,
    Statement,
    ReliabilityUpdate,
    Vote,
    Elimination,
    Draw,
    Win,
};

struct GameEvent {
    EventKind kind = EventKind::RoleAssigned;
    std::optional<Seat> actor;
    std::optional<Seat> target;
    Json payload = Json::object();
};

struct GameState {
    std::string match_id;
    int round = 0;
    GamePhase phase;
    std::vector<PlayerProfile> players; // ordered by seat
    std::optional<Seat> sheriff;
    std::vector<GameEvent> events;
    std::uint64_t rng_seed = 0;

    const PlayerProfile& player(Seat seat) const;
    PlayerProfile& player(Seat seat);
    bool is_alive(Seat seat) const;
    std::vector<Seat> alive_seats() const;
    int alive_count() const;
    bool finished() const { return phase.kind == PhaseKind::Finished; }

    /// Canonical serialization of the end-of-match snapshot (players, phase,
    /// sheriff, round). Event history is hashed separately per line in the
    /// transcript, so this stays small and order-stable.
    Json snapshot_json() const;
    std::string snapshot_hash() const;
};

const char* to_string(Role r);
const char* to_string(Gender g);
const char* to_string(PhaseKind k);
const char* to_string(MatchOutcome o);
const char* to_string(EventKind k);

Role role_from_string(const std::string& s);
Gender gender_from_string(const std::string& s);
EventKind event_kind_from_string(const std::string& s);
MatchOutcome outcome_from_string(const std::string& s);

Json to_json(const GameEvent& e);
GameEvent event_from_json(const Json& j);

Json to_json(const GamePhase& p);
GamePhase phase_from_json(const Json& j);

} // namespace wwaudit::game
