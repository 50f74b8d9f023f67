#include "wwaudit/orchestrator/replay.hpp"

#include "wwaudit/errors.hpp"

#include <map>

namespace wwaudit::orch {

using game::EventKind;
using game::GameEvent;
using game::GameState;
using game::Seat;

ReplayReport replay_transcript(const Transcript& t) {
    ReplayReport report;
    try {
        if (t.aborted) throw ReplayError("transcript is marked aborted");
        if (t.compute_events_hash() != t.events_hash) {
            throw IntegrityError("event stream digest mismatch (transcript edited?)");
        }

        GameState s = [&] {
            if (auto config = t.gender_config()) {
                return game::new_game(*config, t.header.seed, t.header.match_id);
            }
            if (auto names = t.name_assignment()) {
                return game::new_game(*names, t.header.seed, t.header.match_id);
            }
            throw ReplayError("transcript header has no usable setup");
        }();
        s = game::begin_election(std::move(s));

        const std::vector<GameEvent>& rec = t.events;
        std::size_t verified = 0;
        auto verify_prefix = [&] {
            if (s.events.size() > rec.size()) {
                throw IntegrityError("replay produced more events than recorded");
            }
            for (; verified < s.events.size(); ++verified) {
                if (game::to_json(s.events[verified]) != game::to_json(rec[verified])) {
                    throw IntegrityError("event " + std::to_string(verified) +
                                         " diverges from the recorded stream");
                }
            }
        };

        verify_prefix(); // role assignment
        std::size_t i = s.events.size();
        while (i < rec.size()) {
            const GameEvent& e = rec[i];
            switch (e.kind) {
                case EventKind::SheriffElected: {
                    std::map<Seat, Seat> noms;
                    for (const auto& [voter, choice] : e.payload.at("nominations").items()) {
                        noms[std::stoi(voter)] = choice.get<Seat>();
                    }
                    s = game::elect_sheriff(std::move(s), noms);
                    break;
                }
                case EventKind::NightKill: {
                    game::NightDecisions d;
                    for (const auto& nom : e.payload.at("nominations")) {
                        d.kill_nominations.emplace_back(nom.at(0).get<Seat>(),
                                                        nom.at(1).get<Seat>());
                    }
                    for (std::size_t j = i + 1; j < rec.size(); ++j) {
                        if (rec[j].kind == EventKind::NightProtect) {
                            d.guard_target = rec[j].target;
                        } else if (rec[j].kind == EventKind::NightSee) {
                            d.seer_target = rec[j].target;
                        } else {
                            break;
                        }
                    }
                    s = game::resolve_night(std::move(s), d).first;
                    break;
                }
                case EventKind::Statement: {
                    if (s.phase.kind == game::PhaseKind::DayAnnounce) {
                        s = game::begin_statements(std::move(s));
                    }
                    s = game::add_statement(std::move(s), *e.actor,
                                            e.payload.at("text").get<std::string>(),
                                            e.payload.at("summary").get<bool>());
                    break;
                }
                case EventKind::ReliabilityUpdate: {
                    if (s.phase.kind == game::PhaseKind::DayAnnounce) {
                        s = game::begin_statements(std::move(s));
                    }
                    std::map<Seat, int> scores;
                    for (const auto& [seat, score] : e.payload.at("scores").items()) {
                        scores[std::stoi(seat)] = score.get<int>();
                    }
                    std::optional<Seat> intent;
                    if (!e.payload.at("vote_intent").is_null()) {
                        intent = e.payload.at("vote_intent").get<Seat>();
                    }
                    const auto stage = e.payload.at("stage").get<std::string>() == "pre"
                                           ? game::ReliabilityStage::PreSummary
                                           : game::ReliabilityStage::PostSummary;
                    s = game::add_reliability_update(std::move(s), *e.actor, stage, scores,
                                                     intent);
                    break;
                }
                case EventKind::Vote: {
                    if (s.phase.kind == game::PhaseKind::DayStatements) {
                        s = game::begin_vote(std::move(s));
                    }
                    std::map<Seat, std::optional<Seat>> ballots;
                    for (const auto& [voter, target] : e.payload.at("ballots").items()) {
                        ballots[std::stoi(voter)] =
                            target.is_null() ? std::nullopt
                                             : std::optional<Seat>(target.get<Seat>());
                    }
                    s = game::run_day_vote(std::move(s), ballots);
                    break;
                }
                default:
                    throw IntegrityError("unexpected " +
                                         std::string(game::to_string(e.kind)) +
                                         " event at position " + std::to_string(i));
            }
            verify_prefix();
            if (s.events.size() <= i) {
                throw IntegrityError("replay failed to consume event " + std::to_string(i));
            }
            i = s.events.size();
        }

        if (!s.finished()) throw IntegrityError("replayed match did not reach Finished");
        if (s.snapshot_hash() != t.final_state_hash) {
            throw IntegrityError("final state hash mismatch");
        }
        report.ok = true;
        report.rounds = s.round;
        report.final_state_hash = s.snapshot_hash();
    } catch (const std::exception& e) {
        report.ok = false;
        report.error = e.what();
    }
    return report;
}

} // namespace wwaudit::orch
