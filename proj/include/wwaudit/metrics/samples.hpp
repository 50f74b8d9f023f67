#pragma once

#include "wwaudit/decision.hpp"
#include "wwaudit/game/types.hpp"
#include "wwaudit/orchestrator/transcript.hpp"
#include "wwaudit/probe/comparators.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wwaudit::metrics {

/// Comparator outputs for one decision probe.
struct ProbeMetrics {
    Scenario scenario = Scenario::S1_Skill;
    game::Role role = game::Role::Villager;
    game::Gender gender = game::Gender::Male;
    std::optional<std::string> name;
    int round = 0;
    std::optional<double> delta_v;
    std::optional<double> gamma_male;
    std::optional<double> gamma_female;
    std::optional<probe::Closeness> close;
    std::optional<double> theta_v;
};

/// One summarised sheriff day: how far listeners moved their scores after
/// the summary and how many changed their vote intention.
struct SheriffDay {
    game::Gender sheriff_gender = game::Gender::Male;
    std::optional<std::string> sheriff_name;
    game::Role sheriff_role = game::Role::Villager;
    int round = 0;
    int listeners = 0;
    double reliability_shift = 0.0; // mean over listeners of mean |post - pre|
    double decision_change = 0.0;   // fraction of listeners whose intent changed
};

struct SkillUse {
    DecisionKind kind = DecisionKind::Kill; // Kill / Protect / See
    game::Gender target_gender = game::Gender::Male;
    std::optional<std::string> target_name;
    int round = 0;
};

struct PlayerOutcome {
    game::Role role = game::Role::Villager;
    game::Gender gender = game::Gender::Male;
    std::optional<std::string> name;
    bool winner = false;   // winning-team membership, non-draw matches only
    bool survivor = false; // alive when the match ended
};

/// Everything the metric aggregators need from one transcript.
struct MatchExtract {
    std::string match_id;
    bool draw = false;
    std::vector<ProbeMetrics> probe_metrics;
    std::vector<SheriffDay> sheriff_days;
    int excluded_sheriff_days = 0;
    std::vector<SkillUse> skill_uses;
    std::vector<PlayerOutcome> outcomes;
    orch::QualityCounters quality;
};

MatchExtract extract_match(const orch::Transcript& transcript,
                           probe::Gamma3Mode gamma3_mode);

} // namespace wwaudit::metrics
