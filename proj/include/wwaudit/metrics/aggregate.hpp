#pragma once

#include "wwaudit/metrics/samples.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wwaudit::metrics {

/// Day buckets: 0 = overall, 1..3 = that round, 4 = round >= 4.
inline constexpr int kOverallBucket = 0;
inline constexpr int kLateBucket = 4;
inline int day_bucket(int round) { return round >= kLateBucket ? kLateBucket : round; }
std::string day_bucket_label(int bucket);

/// Roles in reporting order. s1 has no villager rows (villagers hold no
/// night skill).
const std::vector<game::Role>& report_roles(Scenario s);

/// Behaviour-change frequency with the four-part share decomposition:
/// parts[0]/parts[1] are the unchanged male/female shares, parts[2]/parts[3]
/// the changed ones; they sum to 1 for s1/s2 groups with samples.
struct Task1Row {
    Scenario scenario = Scenario::S1_Skill;
    game::Role role = game::Role::Villager;
    int day = 0;
    long T = 0;
    double freq = 0.0;
    bool has_parts = false;
    std::array<double, 4> parts{};
};

/// Similarity frequency toward one assigned gender.
struct Task2FreqRow {
    Scenario scenario = Scenario::S1_Skill;
    game::Role role = game::Role::Villager;
    game::Gender gender = game::Gender::Male;
    int day = 0;
    long T = 0;
    double freq = 0.0;
};

struct ClosenessRow {
    Scenario scenario = Scenario::S1_Skill;
    game::Role role = game::Role::Villager;
    int day = 0;
    long T = 0;
    double closer_male = 0.0;
    double closer_female = 0.0;
    double neither = 0.0;
};

struct Task3Row {
    Scenario scenario = Scenario::S1_Skill;
    game::Role role = game::Role::Villager;
    int day = 0;
    long T = 0;
    double freq = 0.0;
};

struct SheriffRow {
    std::string group_kind; // "gender" or "name"
    std::string group;      // male/female or a roster name
    std::string role;       // role name or "all"
    long days = 0;
    double reliability_shift = 0.0;
    double decision_change = 0.0;
};

struct SkillTargetRow {
    DecisionKind skill = DecisionKind::Kill;
    game::Gender target_gender = game::Gender::Male;
    long count = 0;
    double share = 0.0; // within the skill
};

struct WinRateRow {
    std::string group_kind; // "gender" or "name"
    std::string group;
    std::string role; // role name or "all"
    long wins = 0;
    long losses = 0;
    long matches = 0; // wins + losses (non-draw appearances)
    double win_rate = 0.0;
    long survivors = 0;
};

struct AuditReport {
    std::vector<Task1Row> task1;
    std::vector<Task2FreqRow> task2_freq;
    std::vector<ClosenessRow> task2_closeness;
    std::vector<Task3Row> task3;
    std::vector<SheriffRow> sheriff;
    std::vector<SkillTargetRow> skill_targets;
    std::vector<WinRateRow> win_rates;
    /// Delta-3 sample distribution per role (sorted), for the violin panel.
    std::map<game::Role, std::vector<double>> delta3_samples;
    int excluded_sheriff_days = 0;
    int matches = 0;
    int draws = 0;
    orch::QualityCounters quality;
};

/// Two-pass aggregation: per-transcript extraction runs in an OpenMP pool,
/// partial results merge in match order, group statistics are computed from
/// collected sample vectors.
AuditReport aggregate(const std::vector<orch::Transcript>& transcripts,
                      probe::Gamma3Mode gamma3_mode, int workers = 0);

/// Independent single-pass serial reference: streams transcripts in order
/// and folds running (count, sum) accumulators. Kept as the oracle the
/// parallel path is tested against, and for the benchmark.
AuditReport aggregate_serial(const std::vector<orch::Transcript>& transcripts,
                             probe::Gamma3Mode gamma3_mode);

} // namespace wwaudit::metrics
