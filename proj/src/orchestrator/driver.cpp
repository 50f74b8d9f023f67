#include "wwaudit/orchestrator/driver.hpp"

#include "wwaudit/agent/context.hpp"
#include "wwaudit/errors.hpp"
#include "wwaudit/probe/probe.hpp"

#include <map>

namespace wwaudit::orch {

using agent::AgentReply;
using agent::ContextPacket;
using agent::ReplyConstraints;
using game::GameState;
using game::Role;
using game::Seat;
using prompt::TaskSpec;
using prompt::TemplateId;

namespace {

/// Per-match driver state: one private context per seat plus the growing
/// transcript.
class MatchDriver {
public:
    MatchDriver(const MatchSpec& spec, const ExperimentPlan& plan,
                agent::AgentBackend& backend, const prompt::TemplateSet& templates)
        : spec_(spec), plan_(plan), backend_(backend), templates_(templates) {}

    MatchResult run() {
        GameState state = spec_.config
                              ? game::new_game(*spec_.config, spec_.seed, spec_.match_id)
                              : game::new_game(*spec_.names, spec_.seed, spec_.match_id);
        for (const auto& p : state.players) {
            packets_.emplace(p.seat, agent::init_context(state, p.seat));
        }

        state = run_election(game::begin_election(std::move(state)));
        while (!state.finished()) {
            state = run_night(std::move(state));
            if (state.finished()) break;
            state = run_day(std::move(state));
        }

        MatchResult result;
        result.transcript.header = make_header();
        result.transcript.events = state.events;
        result.transcript.probes = std::move(probes_);
        result.transcript.outcome = state.phase.outcome;
        result.transcript.quality = quality_;
        result.transcript.final_state_hash = state.snapshot_hash();
        result.transcript.events_hash = result.transcript.compute_events_hash();
        result.final_state = std::move(state);
        return result;
    }

private:
    TranscriptHeader make_header() const {
        TranscriptHeader h;
        h.plan_id = plan_.plan_id;
        h.match_id = spec_.match_id;
        h.backend_id = backend_.id();
        h.template_version = templates_.version;
        h.seed = spec_.seed;
        if (spec_.config) {
            h.setup = game::Json{{"kind", "gender"}, {"config", spec_.config->to_json()}};
        } else {
            h.setup = game::Json{{"kind", "name"}, {"names", spec_.names->to_json()}};
        }
        h.probe_plan = plan_.probe_plan.to_json();
        return h;
    }

    std::vector<Seat> legal_targets(const GameState& state, Seat actor,
                                    DecisionKind kind) const {
        std::vector<Seat> out;
        for (Seat seat : state.alive_seats()) {
            switch (kind) {
                case DecisionKind::Kill:
                    if (state.player(seat).role != Role::Werewolf) out.push_back(seat);
                    break;
                case DecisionKind::Protect:
                case DecisionKind::Nominate:
                    out.push_back(seat); // self-targeting allowed
                    break;
                case DecisionKind::See:
                case DecisionKind::Vote:
                case DecisionKind::Assess:
                    if (seat != actor) out.push_back(seat);
                    break;
                case DecisionKind::Statement:
                    break;
            }
        }
        return out;
    }

    /// Elicits one decision. Audited kinds run the full probe plan and are
    /// recorded; the rest run the canonical arm only.
    AgentReply elicit(const GameState& state, Seat actor, DecisionKind kind,
                      bool post_summary = false) {
        auto& packet = packets_.at(actor);
        packet = agent::build_context(state, actor, std::move(packet));

        probe::ProbeRequest request;
        request.actor = actor;
        request.task.kind = kind;
        request.task.round = state.round;
        request.task.legal_targets = legal_targets(state, actor, kind);
        request.task.post_summary = post_summary;
        request.task.sheriff_summary =
            kind == DecisionKind::Statement && state.sheriff == actor;
        request.constraints.kind = kind;
        request.constraints.legal_targets = request.task.legal_targets;
        request.constraints.score_seats = agent::score_seats(state, actor);
        request.constraints.allow_abstain =
            kind == DecisionKind::Vote || kind == DecisionKind::Assess;
        request.context = packet.text_view(state);

        const auto scenario = scenario_of(kind);
        const bool audited = scenario.has_value() && !post_summary;
        if (audited) {
            request.plan = plan_.probe_plan.arms(*scenario);
            request.canonical = plan_.probe_plan.canonical;
        } else {
            request.plan = {plan_.probe_plan.canonical};
            request.canonical = plan_.probe_plan.canonical;
        }

        probe::ProbeOutcome outcome = probe::run_probe(state, request, backend_, templates_);
        quality_.denylist_hits += outcome.denylist_hits;
        quality_.fallbacks += outcome.canonical_fallback ? 1 : 0;
        for (const auto& [tid, arm] : outcome.probe.variants) {
            (void)tid;
            quality_.reprompts += arm.reprompted ? 1 : 0;
        }
        if (audited) {
            quality_.partial_probes += outcome.probe.partial ? 1 : 0;
            probes_.push_back(std::move(outcome.probe));
        }
        return outcome.canonical_reply;
    }

    GameState run_election(GameState state) {
        std::map<Seat, Seat> nominations;
        for (Seat seat : state.alive_seats()) {
            const AgentReply reply = elicit(state, seat, DecisionKind::Nominate);
            nominations[seat] = *reply.action.target;
        }
        return game::elect_sheriff(std::move(state), nominations);
    }

    GameState run_night(GameState state) {
        game::NightDecisions decisions;
        for (Seat seat : state.alive_seats()) {
            const Role role = state.player(seat).role;
            if (role == Role::Werewolf) {
                const AgentReply reply = elicit(state, seat, DecisionKind::Kill);
                decisions.kill_nominations.emplace_back(seat, *reply.action.target);
            } else if (role == Role::Guard) {
                const AgentReply reply = elicit(state, seat, DecisionKind::Protect);
                decisions.guard_target = *reply.action.target;
            } else if (role == Role::Seer) {
                const AgentReply reply = elicit(state, seat, DecisionKind::See);
                decisions.seer_target = *reply.action.target;
            }
        }
        auto [next, seer_result] = game::resolve_night(std::move(state), decisions);
        (void)seer_result; // reaches the seer through their private events
        return next;
    }

    GameState run_day(GameState state) {
        state = game::begin_statements(std::move(state));
        const bool sheriff_alive = state.sheriff && state.is_alive(*state.sheriff);

        // discussion in sheriff order; the sheriff's own slot is the summary
        for (Seat seat : game::statement_order(state)) {
            if (sheriff_alive && seat == *state.sheriff) continue;
            const AgentReply reply = elicit(state, seat, DecisionKind::Statement);
            state = game::add_statement(std::move(state), seat, reply.reasoning, false);
        }

        // pre-summary assessment: the audited daily reliability decision
        for (Seat seat : state.alive_seats()) {
            const AgentReply reply = elicit(state, seat, DecisionKind::Assess);
            state = game::add_reliability_update(std::move(state), seat,
                                                 game::ReliabilityStage::PreSummary,
                                                 reply.reliability.scores,
                                                 reply.action.target);
        }

        if (sheriff_alive) {
            const Seat sheriff = *state.sheriff;
            const AgentReply summary = elicit(state, sheriff, DecisionKind::Statement);
            state = game::add_statement(std::move(state), sheriff, summary.reasoning, true);

            for (Seat seat : state.alive_seats()) {
                if (seat == sheriff) continue;
                const AgentReply reply =
                    elicit(state, seat, DecisionKind::Assess, /*post_summary=*/true);
                state = game::add_reliability_update(std::move(state), seat,
                                                     game::ReliabilityStage::PostSummary,
                                                     reply.reliability.scores,
                                                     reply.action.target);
            }
        } else {
            quality_.excluded_sheriff_days += 1;
        }

        state = game::begin_vote(std::move(state));
        std::map<Seat, std::optional<Seat>> ballots;
        for (Seat seat : state.alive_seats()) {
            const AgentReply reply = elicit(state, seat, DecisionKind::Vote);
            ballots[seat] = reply.action.type == agent::ActionType::Abstain
                                ? std::nullopt
                                : reply.action.target;
        }
        return game::run_day_vote(std::move(state), ballots);
    }

    const MatchSpec& spec_;
    const ExperimentPlan& plan_;
    agent::AgentBackend& backend_;
    const prompt::TemplateSet& templates_;
    std::map<Seat, ContextPacket> packets_;
    std::vector<probe::DecisionProbe> probes_;
    QualityCounters quality_;
};

} // namespace

MatchResult run_match(const MatchSpec& spec, const ExperimentPlan& plan,
                      agent::AgentBackend& backend, const prompt::TemplateSet& templates) {
    if (!spec.config && !spec.names) {
        throw ConfigurationError("match spec needs a gender config or a name assignment");
    }
    MatchDriver driver(spec, plan, backend, templates);
    return driver.run();
}

} // namespace wwaudit::orch
