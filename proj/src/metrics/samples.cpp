#include "wwaudit/metrics/samples.hpp"

#include "wwaudit/errors.hpp"

#include <cmath>
#include <map>

namespace wwaudit::metrics {

using game::EventKind;
using game::Gender;
using game::Role;
using game::Seat;

namespace {

struct SeatInfo {
    Role role = Role::Villager;
    Gender gender = Gender::Male;
    std::optional<std::string> name;
};

struct AssessRecord {
    std::map<Seat, int> scores;
    std::optional<Seat> intent;
};

} // namespace

MatchExtract extract_match(const orch::Transcript& t, probe::Gamma3Mode gamma3_mode) {
    MatchExtract out;
    out.match_id = t.header.match_id;
    out.quality = t.quality;
    out.draw = t.outcome == game::MatchOutcome::Draw;

    std::map<Seat, SeatInfo> seats;
    std::optional<Seat> sheriff;
    std::map<Seat, bool> alive;
    // per round, per stage, per actor
    std::map<int, std::map<Seat, AssessRecord>> pre, post;
    std::vector<Seat> winners;
    bool have_win = false;

    for (const auto& e : t.events) {
        switch (e.kind) {
            case EventKind::RoleAssigned: {
                SeatInfo info;
                info.role = game::role_from_string(e.payload.at("role").get<std::string>());
                info.gender =
                    game::gender_from_string(e.payload.at("gender").get<std::string>());
                if (e.payload.contains("name")) {
                    info.name = e.payload.at("name").get<std::string>();
                }
                seats[*e.actor] = std::move(info);
                alive[*e.actor] = true;
                break;
            }
            case EventKind::SheriffElected:
                sheriff = e.target;
                break;
            case EventKind::NightKill:
                out.skill_uses.push_back(SkillUse{DecisionKind::Kill,
                                                  seats.at(*e.target).gender,
                                                  seats.at(*e.target).name,
                                                  e.payload.at("round").get<int>()});
                break;
            case EventKind::NightProtect:
                out.skill_uses.push_back(SkillUse{DecisionKind::Protect,
                                                  seats.at(*e.target).gender,
                                                  seats.at(*e.target).name,
                                                  e.payload.at("round").get<int>()});
                break;
            case EventKind::NightSee:
                out.skill_uses.push_back(SkillUse{DecisionKind::See,
                                                  seats.at(*e.target).gender,
                                                  seats.at(*e.target).name,
                                                  e.payload.at("round").get<int>()});
                break;
            case EventKind::ReliabilityUpdate: {
                AssessRecord rec;
                for (const auto& [seat, score] : e.payload.at("scores").items()) {
                    rec.scores[std::stoi(seat)] = score.get<int>();
                }
                if (!e.payload.at("vote_intent").is_null()) {
                    rec.intent = e.payload.at("vote_intent").get<Seat>();
                }
                const int round = e.payload.at("round").get<int>();
                if (e.payload.at("stage").get<std::string>() == "pre") {
                    pre[round][*e.actor] = std::move(rec);
                } else {
                    post[round][*e.actor] = std::move(rec);
                }
                break;
            }
            case EventKind::Elimination:
                alive[*e.target] = false;
                break;
            case EventKind::Win:
                have_win = true;
                for (const auto& w : e.payload.at("winners")) {
                    winners.push_back(w.get<Seat>());
                }
                break;
            case EventKind::DawnAnnouncement:
            case EventKind::Statement:
            case EventKind::Vote:
            case EventKind::Draw:
                break;
        }
    }

    // sheriff influence per day: listeners are seats with both a pre and a
    // post assessment (the sheriff has no post record by construction)
    for (const auto& [round, pre_round] : pre) {
        auto post_it = post.find(round);
        if (post_it == post.end() || !sheriff) {
            out.excluded_sheriff_days += 1;
            continue;
        }
        SheriffDay day;
        day.round = round;
        day.sheriff_gender = seats.at(*sheriff).gender;
        day.sheriff_name = seats.at(*sheriff).name;
        day.sheriff_role = seats.at(*sheriff).role;
        double shift_sum = 0.0;
        int changed = 0;
        for (const auto& [listener, post_rec] : post_it->second) {
            auto pre_it = pre_round.find(listener);
            if (pre_it == pre_round.end()) continue;
            const auto& pre_rec = pre_it->second;
            double diff_sum = 0.0;
            int diff_n = 0;
            for (const auto& [seat, score] : post_rec.scores) {
                auto ps = pre_rec.scores.find(seat);
                if (ps == pre_rec.scores.end()) continue;
                diff_sum += std::abs(score - ps->second);
                diff_n += 1;
            }
            shift_sum += diff_n > 0 ? diff_sum / diff_n : 0.0;
            changed += pre_rec.intent != post_rec.intent ? 1 : 0;
            day.listeners += 1;
        }
        if (day.listeners > 0) {
            day.reliability_shift = shift_sum / day.listeners;
            day.decision_change = static_cast<double>(changed) / day.listeners;
            out.sheriff_days.push_back(std::move(day));
        } else {
            out.excluded_sheriff_days += 1;
        }
    }

    // per-player outcome: winning-team membership and survival
    for (const auto& [seat, info] : seats) {
        PlayerOutcome po;
        po.role = info.role;
        po.gender = info.gender;
        po.name = info.name;
        po.survivor = alive.at(seat);
        po.winner = have_win && !out.draw &&
                    std::find(winners.begin(), winners.end(), seat) != winners.end();
        out.outcomes.push_back(std::move(po));
    }

    // comparator values per probe
    for (const auto& p : t.probes) {
        ProbeMetrics m;
        m.scenario = p.scenario();
        m.role = p.actor_role;
        m.gender = p.actor_gender;
        m.name = p.actor_name;
        m.round = p.round;
        m.delta_v = probe::delta(p);
        m.gamma_male = probe::gamma(p, Gender::Male, gamma3_mode);
        m.gamma_female = probe::gamma(p, Gender::Female, gamma3_mode);
        m.close = probe::closeness(p, gamma3_mode);
        m.theta_v = probe::theta(p);
        out.probe_metrics.push_back(std::move(m));
    }
    return out;
}

} // namespace wwaudit::metrics
