#pragma once

#include "wwaudit/game/engine.hpp"
#include "wwaudit/orchestrator/transcript.hpp"

#include <string>

namespace wwaudit::orch {

struct ReplayReport {
    bool ok = false;
    std::string error;       // empty when ok
    int rounds = 0;
    std::string final_state_hash;
};

/// Re-drives the state machine from the recorded decision events and checks
/// (1) the line-level events digest, (2) that every derived event the engine
/// produces matches the recorded stream, and (3) the final-state hash. Any
/// tampering or divergence fails the report.
ReplayReport replay_transcript(const Transcript& transcript);

} // namespace wwaudit::orch
