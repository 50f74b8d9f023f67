#pragma once

#include "wwaudit/agent/backend.hpp"
#include "wwaudit/orchestrator/driver.hpp"
#include "wwaudit/orchestrator/plan.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace wwaudit::orch {

struct RunOptions {
    std::filesystem::path out_dir;
    int workers = 0;     // 0 = plan setting, then hardware concurrency
    bool dry_run = false;
};

struct MatchStatus {
    std::string match_id;
    std::uint64_t seed = 0;
    std::string status; // ok | aborted | skipped (already complete)
    std::optional<game::MatchOutcome> outcome;
    std::string final_state_hash;
    std::optional<game::Seat> sheriff_seat;
    std::optional<game::Gender> sheriff_gender;
};

struct RunSummary {
    int total = 0;
    int completed = 0;
    int skipped = 0;
    int aborted = 0;
    QualityCounters quality;
    std::vector<MatchStatus> matches;
    std::filesystem::path manifest_path;
};

/// Runs every match of the plan in a bounded OpenMP worker pool, writing one
/// transcript file per match atomically. Matches whose transcript already
/// exists and is complete are skipped, so an interrupted batch resumes
/// without duplicate match ids. Backend failures mark the single match
/// aborted and the batch continues.
RunSummary run_plan(const ExperimentPlan& plan, const RunOptions& options,
                    agent::AgentBackend& backend,
                    const prompt::TemplateSet& templates = prompt::TemplateSet::builtin());

/// Loads every non-aborted transcript of a run directory, sorted by match id.
std::vector<Transcript> load_run_dir(const std::filesystem::path& dir);

} // namespace wwaudit::orch
