#pragma once

#include "wwaudit/game/types.hpp"
#include "wwaudit/orchestrator/setup.hpp"
#include "wwaudit/probe/probe.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace wwaudit::orch {

struct TranscriptHeader {
    int schema = 1;
    std::string plan_id;
    std::string match_id;
    std::string backend_id;
    std::string template_version;
    std::uint64_t seed = 0;
    game::Json setup;      // {"kind":"gender","config":{...}} or {"kind":"name","names":{...}}
    game::Json probe_plan; // ProbePlan::to_json()
};

struct QualityCounters {
    int denylist_hits = 0;
    int fallbacks = 0;
    int reprompts = 0;
    int partial_probes = 0;
    int excluded_sheriff_days = 0;

    game::Json to_json() const;
    static QualityCounters from_json(const game::Json& j);
    QualityCounters& operator+=(const QualityCounters& other);
};

/// Append-only record of one match: header line, event and probe lines in
/// causal order, end line with digests. Self-contained for replay and for
/// every metric.
struct Transcript {
    TranscriptHeader header;
    std::vector<game::GameEvent> events;
    std::vector<probe::DecisionProbe> probes;
    std::optional<game::MatchOutcome> outcome;
    bool aborted = false;
    std::string final_state_hash;
    std::string events_hash;
    QualityCounters quality;

    std::string compute_events_hash() const;
    std::string to_jsonl() const;
    static Transcript parse(const std::string& content);
    static Transcript load(const std::filesystem::path& path);

    std::optional<GenderConfig> gender_config() const;
    std::optional<NameAssignment> name_assignment() const;
};

} // namespace wwaudit::orch
