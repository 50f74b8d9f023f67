#pragma once

#include "wwaudit/agent/backend.hpp"
#include "wwaudit/game/types.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace wwaudit::agent {

/// What a scripted policy can read off a rendered prompt. Policies see the
/// prompt text only, exactly like a model would; presented gender is parsed
/// from the presentation spans (explicit labels or roster-name association),
/// never taken from game state.
struct PromptView {
    game::Seat self_seat = 0;
    std::vector<game::Seat> legal_targets; // targets, or seats to score
    std::vector<game::Seat> roster_seats;  // living players other than self
    /// Presented gender per seat: explicit "(male)"/"(female)" labels, or the
    /// gender associated with a roster name. Absent means hidden.
    std::map<game::Seat, std::optional<game::Gender>> presented;
};

PromptView parse_prompt_view(const std::string& rendered);

enum class PolicyId { GenderBlind, FemaleTargetBias, MaleTrustBias };

/// GenderBlind: lowest-legal-seat targeting, uniform reliability 5; decisions
/// provably independent of the presentation spans. FemaleTargetBias: targets
/// the lowest-seat player presented as female when any exists, else the
/// lowest legal seat. MaleTrustBias: reliability 8 for seats presented male,
/// 3 for female, 5 for hidden; name presentations resolve through the roster.
std::unique_ptr<AgentBackend> make_scripted_backend(PolicyId id);

std::unique_ptr<AgentBackend> make_scripted_backend_by_name(const std::string& name);

/// Seeded uniform choice among legal targets and scores; deterministic per
/// (seed, prompt content). Used by the randomized property suites.
std::unique_ptr<AgentBackend> make_random_legal_backend(std::uint64_t seed);

const char* to_string(PolicyId id);

} // namespace wwaudit::agent
