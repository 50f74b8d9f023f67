#pragma once

#include "wwaudit/agent/reply.hpp"
#include "wwaudit/game/types.hpp"
#include "wwaudit/prompt/render.hpp"

#include <map>
#include <string>
#include <vector>

namespace wwaudit::agent {

enum class Classification { PotentialTruth, PotentialFalsehood };

/// A statement counts as a potential truth exactly when the speaker's score
/// clears the trust threshold (6 on the 0-10 scale); a neutral 5 is not
/// treated as endorsement. Monotone in the score. Throws ValidationError out
/// of range.
Classification classify_statement(int score);

/// Per-(match, seat) private view of the game: facts visible to the owner,
/// every statement heard, current trust scores, and the derived
/// truth/falsehood partition. Updated incrementally from the event log.
struct ContextPacket {
    game::Seat owner = 0;
    std::size_t cursor = 0; // number of events already consumed
    std::vector<std::string> facts;
    std::vector<std::pair<game::Seat, std::string>> statements; // heard, in order
    std::map<game::Seat, int> scores; // keeps a dead speaker's last score

    // derived from `statements` and `scores` on every rebuild
    std::vector<std::pair<game::Seat, std::string>> potential_truths;
    std::vector<std::pair<game::Seat, std::string>> potential_falsehoods;

    /// Presentation-free content for the renderer; reliability is filtered
    /// to living players other than the owner.
    prompt::ContextText text_view(const game::GameState& state) const;
};

ContextPacket init_context(const game::GameState& state, game::Seat owner);

/// Consumes events past the cursor (filtered by what the owner may see) and
/// re-classifies all statements under the current scores. Identity when no
/// new events exist.
ContextPacket build_context(const game::GameState& state, game::Seat owner,
                            ContextPacket prior);

/// Seats the owner must score right now: living players other than the owner.
std::vector<game::Seat> score_seats(const game::GameState& state, game::Seat owner);

} // namespace wwaudit::agent
