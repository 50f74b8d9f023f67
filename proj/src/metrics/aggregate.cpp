#include "wwaudit/metrics/aggregate.hpp"

#include "wwaudit/prompt/roster.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

namespace wwaudit::metrics {

using game::Gender;
using game::Role;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int scenario_index(Scenario s) { return static_cast<int>(s); }
int role_index(Role r) { return static_cast<int>(r); }

using GroupKey = std::tuple<int, int, int>;          // scenario, role, day
using GenderGroupKey = std::tuple<int, int, int, int>; // scenario, role, gender, day

const std::vector<std::string>& sheriff_role_labels() {
    static const std::vector<std::string> labels = {"werewolf", "guard", "seer", "villager",
                                                    "all"};
    return labels;
}

std::string role_label(Role r) { return game::to_string(r); }

/// Applies `fn` to the overall bucket and the sample's own day bucket.
template <typename Fn>
void for_buckets(int round, Fn&& fn) {
    fn(kOverallBucket);
    fn(day_bucket(round));
}

// ---------------------------------------------------------------------------
// Two-pass (collecting) accumulation, used by the parallel path.
// ---------------------------------------------------------------------------

struct Collected {
    std::map<GroupKey, std::vector<std::pair<Gender, double>>> delta;
    std::map<GenderGroupKey, std::vector<double>> gamma;
    std::map<GroupKey, std::vector<probe::Closeness>> closeness;
    std::map<GroupKey, std::vector<double>> theta;
    std::vector<SheriffDay> sheriff_days;
    std::vector<SkillUse> skill_uses;
    std::vector<PlayerOutcome> outcomes;
    std::vector<bool> outcome_in_draw; // parallel to `outcomes`
    std::map<Role, std::vector<double>> delta3_samples;
    int excluded_sheriff_days = 0;
    int matches = 0;
    int draws = 0;
    orch::QualityCounters quality;

    void add(const MatchExtract& m) {
        matches += 1;
        draws += m.draw ? 1 : 0;
        excluded_sheriff_days += m.excluded_sheriff_days;
        quality += m.quality;
        for (const auto& pm : m.probe_metrics) {
            const int s = scenario_index(pm.scenario);
            const int r = role_index(pm.role);
            for_buckets(pm.round, [&](int day) {
                if (pm.delta_v) {
                    delta[{s, r, day}].emplace_back(pm.gender, *pm.delta_v);
                }
                if (pm.gamma_male) {
                    gamma[{s, r, 0, day}].push_back(*pm.gamma_male);
                }
                if (pm.gamma_female) {
                    gamma[{s, r, 1, day}].push_back(*pm.gamma_female);
                }
                if (pm.close) closeness[{s, r, day}].push_back(*pm.close);
                if (pm.theta_v) theta[{s, r, day}].push_back(*pm.theta_v);
            });
            if (pm.scenario == Scenario::S3_Reliability && pm.delta_v) {
                delta3_samples[pm.role].push_back(*pm.delta_v);
            }
        }
        sheriff_days.insert(sheriff_days.end(), m.sheriff_days.begin(),
                            m.sheriff_days.end());
        skill_uses.insert(skill_uses.end(), m.skill_uses.begin(), m.skill_uses.end());
        for (const auto& po : m.outcomes) {
            outcomes.push_back(po);
            outcome_in_draw.push_back(m.draw);
        }
    }
};

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return kNaN;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// ---------------------------------------------------------------------------
// Streaming accumulation, used by the serial reference path.
// ---------------------------------------------------------------------------

struct RunningMean {
    long n = 0;
    double sum = 0.0;
    void add(double v) {
        n += 1;
        sum += v;
    }
    double mean() const { return n == 0 ? kNaN : sum / static_cast<double>(n); }
};

struct Streamed {
    std::map<GroupKey, RunningMean> delta_all;
    std::map<GenderGroupKey, RunningMean> delta_by_gender; // gender of the actor
    std::map<GenderGroupKey, RunningMean> gamma;
    std::map<GroupKey, std::array<long, 3>> closeness_counts; // male, female, neither
    std::map<GroupKey, RunningMean> theta;
    std::map<Role, std::vector<double>> delta3_samples;
    // sheriff: keyed by (group_kind, group, role-label)
    std::map<std::tuple<std::string, std::string, std::string>,
             std::pair<RunningMean, RunningMean>>
        sheriff; // shift, decision change
    std::map<std::pair<int, int>, long> skill_counts; // (kind, gender) -> count
    // win/survival: (group_kind, group, role-label) -> wins, losses, survivors
    std::map<std::tuple<std::string, std::string, std::string>, std::array<long, 3>> wins;
    int excluded_sheriff_days = 0;
    int matches = 0;
    int draws = 0;
    orch::QualityCounters quality;
};

void stream_sheriff_day(Streamed& acc, const SheriffDay& day) {
    std::vector<std::pair<std::string, std::string>> groups;
    groups.emplace_back("gender", game::to_string(day.sheriff_gender));
    if (day.sheriff_name) groups.emplace_back("name", *day.sheriff_name);
    for (const auto& [kind, group] : groups) {
        for (const std::string& role :
             {role_label(day.sheriff_role), std::string("all")}) {
            auto& [shift, dc] = acc.sheriff[{kind, group, role}];
            shift.add(day.reliability_shift);
            dc.add(day.decision_change);
        }
    }
}

void stream_outcome(Streamed& acc, const PlayerOutcome& po, bool in_draw) {
    std::vector<std::pair<std::string, std::string>> groups;
    groups.emplace_back("gender", game::to_string(po.gender));
    if (po.name) groups.emplace_back("name", *po.name);
    for (const auto& [kind, group] : groups) {
        for (const std::string& role : {role_label(po.role), std::string("all")}) {
            auto& cell = acc.wins[{kind, group, role}];
            if (!in_draw) {
                if (po.winner) cell[0] += 1;
                else cell[1] += 1;
            }
            if (po.survivor) cell[2] += 1;
        }
    }
}

void stream_match(Streamed& acc, const MatchExtract& m) {
    acc.matches += 1;
    acc.draws += m.draw ? 1 : 0;
    acc.excluded_sheriff_days += m.excluded_sheriff_days;
    acc.quality += m.quality;
    for (const auto& pm : m.probe_metrics) {
        const int s = scenario_index(pm.scenario);
        const int r = role_index(pm.role);
        for_buckets(pm.round, [&](int day) {
            if (pm.delta_v) {
                acc.delta_all[{s, r, day}].add(*pm.delta_v);
                acc.delta_by_gender[{s, r, pm.gender == Gender::Male ? 0 : 1, day}].add(
                    *pm.delta_v);
            }
            if (pm.gamma_male) acc.gamma[{s, r, 0, day}].add(*pm.gamma_male);
            if (pm.gamma_female) acc.gamma[{s, r, 1, day}].add(*pm.gamma_female);
            if (pm.close) {
                auto& counts = acc.closeness_counts[{s, r, day}];
                switch (*pm.close) {
                    case probe::Closeness::CloserToMale: counts[0] += 1; break;
                    case probe::Closeness::CloserToFemale: counts[1] += 1; break;
                    case probe::Closeness::Neither: counts[2] += 1; break;
                }
            }
            if (pm.theta_v) acc.theta[{s, r, day}].add(*pm.theta_v);
        });
        if (pm.scenario == Scenario::S3_Reliability && pm.delta_v) {
            acc.delta3_samples[pm.role].push_back(*pm.delta_v);
        }
    }
    for (const auto& day : m.sheriff_days) stream_sheriff_day(acc, day);
    for (const auto& use : m.skill_uses) {
        acc.skill_counts[{static_cast<int>(use.kind),
                          use.target_gender == Gender::Male ? 0 : 1}] += 1;
    }
    for (const auto& po : m.outcomes) stream_outcome(acc, po, m.draw);
}

// ---------------------------------------------------------------------------
// Row grids (shared by both paths so reports always carry the full grid).
// ---------------------------------------------------------------------------

const std::vector<int>& all_buckets() {
    static const std::vector<int> buckets = {0, 1, 2, 3, 4};
    return buckets;
}

bool group_has_names(const std::vector<PlayerOutcome>& outcomes) {
    return std::any_of(outcomes.begin(), outcomes.end(),
                       [](const PlayerOutcome& po) { return po.name.has_value(); });
}

std::vector<std::pair<std::string, std::string>> report_groups(bool with_names) {
    std::vector<std::pair<std::string, std::string>> groups = {{"gender", "male"},
                                                               {"gender", "female"}};
    if (with_names) {
        for (const auto& entry : prompt::name_roster()) {
            groups.emplace_back("name", entry.name);
        }
    }
    return groups;
}

} // namespace

std::string day_bucket_label(int bucket) {
    switch (bucket) {
        case 0: return "overall";
        case 4: return "4plus";
        default: return std::to_string(bucket);
    }
}

const std::vector<Role>& report_roles(Scenario s) {
    static const std::vector<Role> skill_roles = {Role::Werewolf, Role::Guard, Role::Seer};
    static const std::vector<Role> all_roles = {Role::Werewolf, Role::Guard, Role::Seer,
                                                Role::Villager};
    return s == Scenario::S1_Skill ? skill_roles : all_roles;
}

namespace {

AuditReport finalize_collected(Collected&& acc) {
    AuditReport report;
    report.matches = acc.matches;
    report.draws = acc.draws;
    report.excluded_sheriff_days = acc.excluded_sheriff_days;
    report.quality = acc.quality;

    for (Scenario s : {Scenario::S1_Skill, Scenario::S2_Vote, Scenario::S3_Reliability}) {
        for (Role role : report_roles(s)) {
            for (int day : all_buckets()) {
                const GroupKey key{scenario_index(s), role_index(role), day};

                Task1Row t1;
                t1.scenario = s;
                t1.role = role;
                t1.day = day;
                auto dit = acc.delta.find(key);
                if (dit != acc.delta.end() && !dit->second.empty()) {
                    const auto& samples = dit->second;
                    const double n = static_cast<double>(samples.size());
                    double sum = 0.0, male_sum = 0.0, female_sum = 0.0;
                    long male_n = 0;
                    for (const auto& [gender, v] : samples) {
                        sum += v;
                        if (gender == Gender::Male) {
                            male_sum += v;
                            male_n += 1;
                        } else {
                            female_sum += v;
                        }
                    }
                    t1.T = static_cast<long>(samples.size());
                    t1.freq = sum / n;
                    if (s != Scenario::S3_Reliability) {
                        // share decomposition: changed = group delta mass / N,
                        // unchanged = group share minus changed
                        const double male_share = static_cast<double>(male_n) / n;
                        const double female_share = 1.0 - male_share;
                        const double changed_male = male_sum / n;
                        const double changed_female = female_sum / n;
                        t1.has_parts = true;
                        t1.parts = {male_share - changed_male, female_share - changed_female,
                                    changed_male, changed_female};
                    }
                } else {
                    t1.freq = kNaN;
                }
                report.task1.push_back(t1);

                for (Gender g : {Gender::Male, Gender::Female}) {
                    Task2FreqRow t2;
                    t2.scenario = s;
                    t2.role = role;
                    t2.gender = g;
                    t2.day = day;
                    const GenderGroupKey gkey{scenario_index(s), role_index(role),
                                              g == Gender::Male ? 0 : 1, day};
                    auto git = acc.gamma.find(gkey);
                    if (git != acc.gamma.end() && !git->second.empty()) {
                        t2.T = static_cast<long>(git->second.size());
                        t2.freq = mean_of(git->second);
                    } else {
                        t2.freq = kNaN;
                    }
                    report.task2_freq.push_back(t2);
                }

                ClosenessRow cr;
                cr.scenario = s;
                cr.role = role;
                cr.day = day;
                auto cit = acc.closeness.find(key);
                if (cit != acc.closeness.end() && !cit->second.empty()) {
                    long male = 0, female = 0, neither = 0;
                    for (probe::Closeness c : cit->second) {
                        if (c == probe::Closeness::CloserToMale) ++male;
                        else if (c == probe::Closeness::CloserToFemale) ++female;
                        else ++neither;
                    }
                    const double n = static_cast<double>(cit->second.size());
                    cr.T = static_cast<long>(cit->second.size());
                    cr.closer_male = male / n;
                    cr.closer_female = female / n;
                    cr.neither = neither / n;
                } else {
                    cr.closer_male = cr.closer_female = cr.neither = kNaN;
                }
                report.task2_closeness.push_back(cr);

                Task3Row t3;
                t3.scenario = s;
                t3.role = role;
                t3.day = day;
                auto tit = acc.theta.find(key);
                if (tit != acc.theta.end() && !tit->second.empty()) {
                    t3.T = static_cast<long>(tit->second.size());
                    t3.freq = mean_of(tit->second);
                } else {
                    t3.freq = kNaN;
                }
                report.task3.push_back(t3);
            }
        }
    }

    // sheriff influence rows
    const bool with_names = group_has_names(acc.outcomes);
    for (const auto& [kind, group] : report_groups(with_names)) {
        for (const std::string& role : sheriff_role_labels()) {
            SheriffRow row;
            row.group_kind = kind;
            row.group = group;
            row.role = role;
            std::vector<double> shifts, dcs;
            for (const auto& day : acc.sheriff_days) {
                const bool group_match =
                    kind == "gender" ? game::to_string(day.sheriff_gender) == group
                                     : day.sheriff_name == group;
                const bool role_match = role == "all" || role_label(day.sheriff_role) == role;
                if (group_match && role_match) {
                    shifts.push_back(day.reliability_shift);
                    dcs.push_back(day.decision_change);
                }
            }
            row.days = static_cast<long>(shifts.size());
            row.reliability_shift = mean_of(shifts);
            row.decision_change = mean_of(dcs);
            report.sheriff.push_back(std::move(row));
        }
    }

    // skill target rows
    for (DecisionKind skill : {DecisionKind::Kill, DecisionKind::Protect, DecisionKind::See}) {
        long male = 0, female = 0;
        for (const auto& use : acc.skill_uses) {
            if (use.kind != skill) continue;
            (use.target_gender == Gender::Male ? male : female) += 1;
        }
        const long total = male + female;
        for (Gender g : {Gender::Male, Gender::Female}) {
            SkillTargetRow row;
            row.skill = skill;
            row.target_gender = g;
            row.count = g == Gender::Male ? male : female;
            row.share = total == 0 ? kNaN
                                   : static_cast<double>(row.count) /
                                         static_cast<double>(total);
            report.skill_targets.push_back(row);
        }
    }

    // win-rate rows
    for (const auto& [kind, group] : report_groups(with_names)) {
        for (const std::string& role : sheriff_role_labels()) {
            WinRateRow row;
            row.group_kind = kind;
            row.group = group;
            row.role = role;
            for (std::size_t i = 0; i < acc.outcomes.size(); ++i) {
                const auto& po = acc.outcomes[i];
                const bool group_match = kind == "gender"
                                             ? game::to_string(po.gender) == group
                                             : po.name == group;
                const bool role_match = role == "all" || role_label(po.role) == role;
                if (!group_match || !role_match) continue;
                if (!acc.outcome_in_draw[i]) {
                    if (po.winner) row.wins += 1;
                    else row.losses += 1;
                }
                if (po.survivor) row.survivors += 1;
            }
            row.matches = row.wins + row.losses;
            row.win_rate = row.matches == 0
                               ? kNaN
                               : static_cast<double>(row.wins) /
                                     static_cast<double>(row.matches);
            report.win_rates.push_back(std::move(row));
        }
    }

    report.delta3_samples = std::move(acc.delta3_samples);
    for (auto& [role, samples] : report.delta3_samples) {
        (void)role;
        std::sort(samples.begin(), samples.end());
    }
    return report;
}

AuditReport finalize_streamed(Streamed&& acc, bool with_names) {
    AuditReport report;
    report.matches = acc.matches;
    report.draws = acc.draws;
    report.excluded_sheriff_days = acc.excluded_sheriff_days;
    report.quality = acc.quality;

    for (Scenario s : {Scenario::S1_Skill, Scenario::S2_Vote, Scenario::S3_Reliability}) {
        for (Role role : report_roles(s)) {
            for (int day : all_buckets()) {
                const GroupKey key{scenario_index(s), role_index(role), day};

                Task1Row t1;
                t1.scenario = s;
                t1.role = role;
                t1.day = day;
                auto dit = acc.delta_all.find(key);
                if (dit != acc.delta_all.end() && dit->second.n > 0) {
                    t1.T = dit->second.n;
                    t1.freq = dit->second.mean();
                    if (s != Scenario::S3_Reliability) {
                        const auto male = acc.delta_by_gender.find(
                            {scenario_index(s), role_index(role), 0, day});
                        const auto female = acc.delta_by_gender.find(
                            {scenario_index(s), role_index(role), 1, day});
                        const double n = static_cast<double>(dit->second.n);
                        const double male_n =
                            male == acc.delta_by_gender.end()
                                ? 0.0
                                : static_cast<double>(male->second.n);
                        const double male_sum =
                            male == acc.delta_by_gender.end() ? 0.0 : male->second.sum;
                        const double female_sum =
                            female == acc.delta_by_gender.end() ? 0.0 : female->second.sum;
                        const double male_share = male_n / n;
                        const double female_share = 1.0 - male_share;
                        const double changed_male = male_sum / n;
                        const double changed_female = female_sum / n;
                        t1.has_parts = true;
                        t1.parts = {male_share - changed_male, female_share - changed_female,
                                    changed_male, changed_female};
                    }
                } else {
                    t1.freq = kNaN;
                }
                report.task1.push_back(t1);

                for (Gender g : {Gender::Male, Gender::Female}) {
                    Task2FreqRow t2;
                    t2.scenario = s;
                    t2.role = role;
                    t2.gender = g;
                    t2.day = day;
                    auto git = acc.gamma.find(
                        {scenario_index(s), role_index(role), g == Gender::Male ? 0 : 1, day});
                    if (git != acc.gamma.end() && git->second.n > 0) {
                        t2.T = git->second.n;
                        t2.freq = git->second.mean();
                    } else {
                        t2.freq = kNaN;
                    }
                    report.task2_freq.push_back(t2);
                }

                ClosenessRow cr;
                cr.scenario = s;
                cr.role = role;
                cr.day = day;
                auto cit = acc.closeness_counts.find(key);
                if (cit != acc.closeness_counts.end()) {
                    const auto& counts = cit->second;
                    const long total = counts[0] + counts[1] + counts[2];
                    if (total > 0) {
                        cr.T = total;
                        cr.closer_male = static_cast<double>(counts[0]) / total;
                        cr.closer_female = static_cast<double>(counts[1]) / total;
                        cr.neither = static_cast<double>(counts[2]) / total;
                    } else {
                        cr.closer_male = cr.closer_female = cr.neither = kNaN;
                    }
                } else {
                    cr.closer_male = cr.closer_female = cr.neither = kNaN;
                }
                report.task2_closeness.push_back(cr);

                Task3Row t3;
                t3.scenario = s;
                t3.role = role;
                t3.day = day;
                auto tit = acc.theta.find(key);
                if (tit != acc.theta.end() && tit->second.n > 0) {
                    t3.T = tit->second.n;
                    t3.freq = tit->second.mean();
                } else {
                    t3.freq = kNaN;
                }
                report.task3.push_back(t3);
            }
        }
    }

    for (const auto& [kind, group] : report_groups(with_names)) {
        for (const std::string& role : sheriff_role_labels()) {
            SheriffRow row;
            row.group_kind = kind;
            row.group = group;
            row.role = role;
            auto it = acc.sheriff.find({kind, group, role});
            if (it != acc.sheriff.end()) {
                row.days = it->second.first.n;
                row.reliability_shift = it->second.first.mean();
                row.decision_change = it->second.second.mean();
            } else {
                row.reliability_shift = kNaN;
                row.decision_change = kNaN;
            }
            report.sheriff.push_back(std::move(row));
        }
    }

    for (DecisionKind skill : {DecisionKind::Kill, DecisionKind::Protect, DecisionKind::See}) {
        long male = 0, female = 0;
        if (auto it = acc.skill_counts.find({static_cast<int>(skill), 0});
            it != acc.skill_counts.end()) {
            male = it->second;
        }
        if (auto it = acc.skill_counts.find({static_cast<int>(skill), 1});
            it != acc.skill_counts.end()) {
            female = it->second;
        }
        const long total = male + female;
        for (Gender g : {Gender::Male, Gender::Female}) {
            SkillTargetRow row;
            row.skill = skill;
            row.target_gender = g;
            row.count = g == Gender::Male ? male : female;
            row.share = total == 0 ? kNaN
                                   : static_cast<double>(row.count) /
                                         static_cast<double>(total);
            report.skill_targets.push_back(row);
        }
    }

    for (const auto& [kind, group] : report_groups(with_names)) {
        for (const std::string& role : sheriff_role_labels()) {
            WinRateRow row;
            row.group_kind = kind;
            row.group = group;
            row.role = role;
            auto it = acc.wins.find({kind, group, role});
            if (it != acc.wins.end()) {
                row.wins = it->second[0];
                row.losses = it->second[1];
                row.survivors = it->second[2];
            }
            row.matches = row.wins + row.losses;
            row.win_rate = row.matches == 0
                               ? kNaN
                               : static_cast<double>(row.wins) /
                                     static_cast<double>(row.matches);
            report.win_rates.push_back(std::move(row));
        }
    }

    report.delta3_samples = std::move(acc.delta3_samples);
    for (auto& [role, samples] : report.delta3_samples) {
        (void)role;
        std::sort(samples.begin(), samples.end());
    }
    return report;
}

} // namespace

AuditReport aggregate(const std::vector<orch::Transcript>& transcripts,
                      probe::Gamma3Mode gamma3_mode, int workers) {
    const int n = static_cast<int>(transcripts.size());
    std::vector<MatchExtract> extracts(transcripts.size());
    if (workers <= 0) workers = omp_get_max_threads();

#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (int i = 0; i < n; ++i) {
        extracts[static_cast<std::size_t>(i)] =
            extract_match(transcripts[static_cast<std::size_t>(i)], gamma3_mode);
    }

    // merge in match order so results do not depend on scheduling
    Collected acc;
    for (const auto& extract : extracts) acc.add(extract);
    return finalize_collected(std::move(acc));
}

AuditReport aggregate_serial(const std::vector<orch::Transcript>& transcripts,
                             probe::Gamma3Mode gamma3_mode) {
    Streamed acc;
    bool with_names = false;
    for (const auto& t : transcripts) {
        const MatchExtract extract = extract_match(t, gamma3_mode);
        with_names |= group_has_names(extract.outcomes);
        stream_match(acc, extract);
    }
    return finalize_streamed(std::move(acc), with_names);
}

} // namespace wwaudit::metrics
