#include "wwaudit/metrics/report.hpp"

#include "wwaudit/report/svg.hpp"
#include "wwaudit/util/fs.hpp"
#include "wwaudit/util/strings.hpp"

#include <cmath>

namespace fs = std::filesystem;

namespace wwaudit::metrics {

namespace {

std::string cell(double v) { return std::isnan(v) ? "NA" : util::fixed6(v); }

std::string scenario_name(Scenario s) { return to_string(s); }

void write_t1(const AuditReport& r, const fs::path& dir) {
    std::string csv =
        "scenario,role,day,T,freq,unchanged_male,unchanged_female,changed_male,"
        "changed_female\n";
    for (const auto& row : r.task1) {
        csv += scenario_name(row.scenario);
        csv += ",";
        csv += game::to_string(row.role);
        csv += "," + day_bucket_label(row.day) + "," + std::to_string(row.T) + "," +
               cell(row.freq);
        if (row.has_parts) {
            for (double p : row.parts) csv += "," + cell(p);
        } else {
            csv += ",NA,NA,NA,NA";
        }
        csv += "\n";
    }
    util::atomic_write_file(dir / "t1_freq.csv", csv);
}

void write_t2(const AuditReport& r, const fs::path& dir) {
    std::string csv = "scenario,role,day,gender,T,freq\n";
    for (const auto& row : r.task2_freq) {
        csv += scenario_name(row.scenario);
        csv += ",";
        csv += game::to_string(row.role);
        csv += "," + day_bucket_label(row.day) + ",";
        csv += game::to_string(row.gender);
        csv += "," + std::to_string(row.T) + "," + cell(row.freq) + "\n";
    }
    util::atomic_write_file(dir / "t2_freq.csv", csv);

    std::string tally = "scenario,role,day,T,closer_male,closer_female,neither\n";
    for (const auto& row : r.task2_closeness) {
        tally += scenario_name(row.scenario);
        tally += ",";
        tally += game::to_string(row.role);
        tally += "," + day_bucket_label(row.day) + "," + std::to_string(row.T) + "," +
                 cell(row.closer_male) + "," + cell(row.closer_female) + "," +
                 cell(row.neither) + "\n";
    }
    util::atomic_write_file(dir / "t2_closeness.csv", tally);
}

void write_t3(const AuditReport& r, const fs::path& dir) {
    std::string csv = "scenario,role,day,T,freq\n";
    for (const auto& row : r.task3) {
        csv += scenario_name(row.scenario);
        csv += ",";
        csv += game::to_string(row.role);
        csv += "," + day_bucket_label(row.day) + "," + std::to_string(row.T) + "," +
               cell(row.freq) + "\n";
    }
    util::atomic_write_file(dir / "t3_freq.csv", csv);
}

void write_sheriff(const AuditReport& r, const fs::path& dir) {
    std::string csv = "group_kind,group,role,days,avg_reliability_shift,decision_change\n";
    for (const auto& row : r.sheriff) {
        csv += row.group_kind + "," + row.group + "," + row.role + "," +
               std::to_string(row.days) + "," + cell(row.reliability_shift) + "," +
               cell(row.decision_change) + "\n";
    }
    util::atomic_write_file(dir / "sheriff.csv", csv);
}

void write_skills(const AuditReport& r, const fs::path& dir) {
    std::string csv = "skill,target_gender,count,share\n";
    for (const auto& row : r.skill_targets) {
        csv += std::string(to_string(row.skill)) + ",";
        csv += game::to_string(row.target_gender);
        csv += "," + std::to_string(row.count) + "," + cell(row.share) + "\n";
    }
    util::atomic_write_file(dir / "skill_targets.csv", csv);
}

void write_wins(const AuditReport& r, const fs::path& dir) {
    std::string csv = "group_kind,group,role,wins,losses,matches,win_rate,survivors\n";
    for (const auto& row : r.win_rates) {
        csv += row.group_kind + "," + row.group + "," + row.role + "," +
               std::to_string(row.wins) + "," + std::to_string(row.losses) + "," +
               std::to_string(row.matches) + "," + cell(row.win_rate) + "," +
               std::to_string(row.survivors) + "\n";
    }
    util::atomic_write_file(dir / "win_rates.csv", csv);
}

void write_summary(const AuditReport& r, const fs::path& dir) {
    game::Json j{{"matches", r.matches},
                 {"draws", r.draws},
                 {"excluded_sheriff_days", r.excluded_sheriff_days},
                 {"quality", r.quality.to_json()}};
    game::Json t3 = game::Json::object();
    for (const auto& row : r.task3) {
        if (row.day == kOverallBucket && row.T > 0) {
            t3[scenario_name(row.scenario) + "/" + game::to_string(row.role)] = row.freq;
        }
    }
    j["t3_freq_overall"] = std::move(t3);
    util::atomic_write_file(dir / "summary.json", j.dump(2) + "\n");
}

void write_figures(const AuditReport& r, const fs::path& dir) {
    using report::BarGroup;
    using report::ViolinGroup;

    // task1 decomposition, one stacked chart per scenario s1/s2
    for (Scenario s : {Scenario::S1_Skill, Scenario::S2_Vote}) {
        std::vector<BarGroup> groups;
        for (const auto& row : r.task1) {
            if (row.scenario != s || row.day != kOverallBucket || !row.has_parts) continue;
            groups.push_back(BarGroup{game::to_string(row.role),
                                      {row.parts[0], row.parts[1], row.parts[2],
                                       row.parts[3]}});
        }
        const std::string name = s == Scenario::S1_Skill ? "t1_freq_s1" : "t1_freq_s2";
        util::atomic_write_file(
            dir / (name + ".svg"),
            report::bar_chart_svg("Behaviour-change decomposition (" + scenario_name(s) + ")",
                                  {"unchanged male", "unchanged female", "changed male",
                                   "changed female"},
                                  groups, /*stacked=*/true, 1.0));
    }

    // task1 s3 sample distribution as a violin panel
    std::vector<ViolinGroup> violins;
    for (const auto& [role, samples] : r.delta3_samples) {
        violins.push_back(ViolinGroup{game::to_string(role), samples});
    }
    util::atomic_write_file(dir / "t1_s3_violin.svg",
                            report::violin_svg("Reliability-change distribution (s3)",
                                               violins, 0.0, 1.0));

    // task2 closeness, stacked per scenario
    {
        std::vector<BarGroup> groups;
        for (const auto& row : r.task2_closeness) {
            if (row.day != kOverallBucket || row.T == 0) continue;
            groups.push_back(
                BarGroup{scenario_name(row.scenario) + std::string(" ") +
                             game::to_string(row.role),
                         {row.closer_male, row.closer_female, row.neither}});
        }
        util::atomic_write_file(
            dir / "t2_closeness.svg",
            report::bar_chart_svg("Behaviour closeness by role",
                                  {"closer to male", "closer to female", "neither"}, groups,
                                  /*stacked=*/true, 1.0));
    }

    // task3 fairness per scenario and role, by day
    {
        std::vector<std::string> series = {"overall", "day 1", "day 2", "day 3", "day 4+"};
        std::vector<BarGroup> groups;
        for (Scenario s : {Scenario::S1_Skill, Scenario::S2_Vote, Scenario::S3_Reliability}) {
            for (game::Role role : report_roles(s)) {
                BarGroup g;
                g.label = scenario_name(s) + std::string(" ") + game::to_string(role);
                for (int day = 0; day <= 4; ++day) {
                    for (const auto& row : r.task3) {
                        if (row.scenario == s && row.role == role && row.day == day) {
                            g.values.push_back(row.T > 0 ? row.freq : 0.0);
                        }
                    }
                }
                groups.push_back(std::move(g));
            }
        }
        util::atomic_write_file(dir / "t3_freq.svg",
                                report::bar_chart_svg("Swap-invariance fairness", series,
                                                      groups, /*stacked=*/false, 1.0));
    }

    // sheriff influence and win rates, gender groups only (name charts get
    // unreadable at 7 groups x 5 roles; the CSV carries the full grid)
    {
        std::vector<BarGroup> shift, dc;
        for (const std::string& role :
             {std::string("werewolf"), std::string("guard"), std::string("seer"),
              std::string("villager"), std::string("all")}) {
            BarGroup s{role, {}}, d{role, {}};
            for (const auto& row : r.sheriff) {
                if (row.group_kind == "gender" && row.role == role) {
                    s.values.push_back(row.days > 0 ? row.reliability_shift : 0.0);
                    d.values.push_back(row.days > 0 ? row.decision_change : 0.0);
                }
            }
            shift.push_back(std::move(s));
            dc.push_back(std::move(d));
        }
        util::atomic_write_file(dir / "sheriff_shift.svg",
                                report::bar_chart_svg("Sheriff reliability shift",
                                                      {"male", "female"}, shift, false));
        util::atomic_write_file(dir / "sheriff_dc.svg",
                                report::bar_chart_svg("Sheriff decision change",
                                                      {"male", "female"}, dc, false, 1.0));
    }
    {
        std::vector<BarGroup> groups;
        for (const auto& row : r.skill_targets) {
            if (row.target_gender == game::Gender::Male) {
                groups.push_back(BarGroup{to_string(row.skill), {}});
            }
        }
        std::size_t gi = 0;
        for (const auto& row : r.skill_targets) {
            groups[gi].values.push_back(row.count);
            if (row.target_gender == game::Gender::Female) ++gi;
        }
        util::atomic_write_file(dir / "skill_targets.svg",
                                report::bar_chart_svg("Skill targets by gender",
                                                      {"male", "female"}, groups, false));
    }
    {
        std::vector<BarGroup> groups;
        for (const std::string& role :
             {std::string("werewolf"), std::string("guard"), std::string("seer"),
              std::string("villager"), std::string("all")}) {
            BarGroup g{role, {}};
            for (const auto& row : r.win_rates) {
                if (row.group_kind == "gender" && row.role == role) {
                    g.values.push_back(row.matches > 0 ? row.win_rate : 0.0);
                }
            }
            groups.push_back(std::move(g));
        }
        util::atomic_write_file(dir / "win_rates.svg",
                                report::bar_chart_svg("Win rate by gender and role",
                                                      {"male", "female"}, groups, false,
                                                      1.0));
    }
}

} // namespace

void write_report(const AuditReport& r, const fs::path& out_dir) {
    fs::create_directories(out_dir);
    write_t1(r, out_dir);
    write_t2(r, out_dir);
    write_t3(r, out_dir);
    write_sheriff(r, out_dir);
    write_skills(r, out_dir);
    write_wins(r, out_dir);
    write_summary(r, out_dir);
    write_figures(r, out_dir);
}

} // namespace wwaudit::metrics
