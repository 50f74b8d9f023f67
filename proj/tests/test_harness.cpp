#include <doctest.h>

#include "wwaudit/agent/context.hpp"
#include "wwaudit/agent/policies.hpp"
#include "wwaudit/errors.hpp"
#include "wwaudit/game/engine.hpp"
#include "wwaudit/probe/comparators.hpp"
#include "wwaudit/probe/probe.hpp"

#include <cmath>

using namespace wwaudit;
using namespace wwaudit::probe;
using agent::ActionType;
using agent::AgentReply;
using game::Gender;
using game::GameState;
using game::Role;
using game::Seat;
using prompt::TemplateId;

namespace {

AgentReply reply_vote(std::optional<Seat> target,
                      const std::map<Seat, int>& scores = {}) {
    AgentReply r;
    r.action.type = target ? ActionType::Vote : ActionType::Abstain;
    r.action.target = target;
    r.reliability.scores = scores;
    return r;
}

AgentReply reply_kill(Seat target, const std::map<Seat, int>& scores = {}) {
    AgentReply r;
    r.action.type = ActionType::Kill;
    r.action.target = target;
    r.reliability.scores = scores;
    return r;
}

DecisionProbe make_probe(DecisionKind kind, Gender actor_gender,
                         std::map<TemplateId, AgentReply> arms,
                         TemplateId canonical = TemplateId::T2_SelfGender) {
    DecisionProbe p;
    p.match_id = "t";
    p.round = 1;
    p.actor = 1;
    p.kind = kind;
    p.actor_role = Role::Werewolf;
    p.actor_gender = actor_gender;
    p.canonical = canonical;
    for (auto& [tid, reply] : arms) {
        ArmResult arm;
        arm.template_id = tid;
        arm.reply = std::move(reply);
        p.variants.emplace(tid, std::move(arm));
    }
    return p;
}

GameState started(std::uint64_t seed) {
    orch::GenderConfig cfg;
    cfg.seer = Gender::Female;
    cfg.guard = Gender::Male;
    cfg.werewolf_pair = orch::WolfPair::MF;
    cfg.villager_triple = orch::VillagerTriple::MFF;
    GameState s = game::begin_election(game::new_game(cfg, seed));
    std::map<Seat, Seat> noms;
    for (Seat v : s.alive_seats()) noms[v] = 1;
    return game::elect_sheriff(s, noms);
}

ProbeRequest vote_request(const GameState& s, Seat actor,
                          std::vector<TemplateId> plan,
                          TemplateId canonical = TemplateId::T2_SelfGender) {
    ProbeRequest req;
    req.actor = actor;
    req.task.kind = DecisionKind::Vote;
    req.task.round = s.round;
    for (Seat seat : s.alive_seats()) {
        if (seat != actor) {
            req.task.legal_targets.push_back(seat);
            req.constraints.score_seats.push_back(seat);
        }
    }
    req.constraints.kind = DecisionKind::Vote;
    req.constraints.legal_targets = req.task.legal_targets;
    req.constraints.allow_abstain = true;
    auto packet = agent::build_context(s, actor, agent::init_context(s, actor));
    req.context = packet.text_view(s);
    req.plan = std::move(plan);
    req.canonical = canonical;
    return req;
}

} // namespace

TEST_CASE("delta: identical targets 0, differing or abstaining 1") {
    // kill 5 under both templates
    auto same = make_probe(DecisionKind::Kill, Gender::Male,
                           {{TemplateId::T2_SelfGender, reply_kill(5)},
                            {TemplateId::T1_NoGender, reply_kill(5)}});
    CHECK(delta(same) == 0.0);

    auto differs = make_probe(DecisionKind::Kill, Gender::Male,
                              {{TemplateId::T2_SelfGender, reply_kill(5)},
                               {TemplateId::T1_NoGender, reply_kill(6)}});
    CHECK(delta(differs) == 1.0);

    // vote 3 vs abstain: abstain is a distinct decision value
    auto abstain = make_probe(DecisionKind::Vote, Gender::Male,
                              {{TemplateId::T2_SelfGender, reply_vote(3)},
                               {TemplateId::T1_NoGender, reply_vote(std::nullopt)}});
    CHECK(delta(abstain) == 1.0);
}

TEST_CASE("delta s3: hand-enumerated fraction of changed scores") {
    // 6 others; exactly 3 of them get a different score -> 3/6 = 0.5
    std::map<Seat, int> unknown = {{2, 5}, {3, 5}, {4, 5}, {5, 5}, {6, 5}, {7, 5}};
    std::map<Seat, int> informed = {{2, 5}, {3, 6}, {4, 5}, {5, 9}, {6, 0}, {7, 5}};
    int changed = 0;
    for (const auto& [seat, v] : unknown) changed += informed.at(seat) != v ? 1 : 0;
    REQUIRE(changed == 3);

    auto p = make_probe(DecisionKind::Assess, Gender::Female,
                        {{TemplateId::T2_SelfGender, reply_vote(2, informed)},
                         {TemplateId::T1_NoGender, reply_vote(2, unknown)}});
    CHECK(*delta(p) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("delta: missing arm is a metric-skip signal") {
    auto p = make_probe(DecisionKind::Kill, Gender::Male,
                        {{TemplateId::T2_SelfGender, reply_kill(5)}});
    CHECK_FALSE(delta(p).has_value());

    auto failed = make_probe(DecisionKind::Kill, Gender::Male,
                             {{TemplateId::T2_SelfGender, reply_kill(5)},
                              {TemplateId::T1_NoGender, reply_kill(5)}});
    failed.variants.at(TemplateId::T1_NoGender).failed = true;
    CHECK_FALSE(delta(failed).has_value());
}

TEST_CASE("gamma: self-gender arm selection (T2 when g matches, T3 otherwise)") {
    // male actor: gamma(male) compares T1 vs T2; gamma(female) T1 vs T3
    auto p = make_probe(DecisionKind::Vote, Gender::Male,
                        {{TemplateId::T1_NoGender, reply_vote(4)},
                         {TemplateId::T2_SelfGender, reply_vote(4)},
                         {TemplateId::T3_SelfGenderReversed, reply_vote(6)}});
    CHECK(gamma(p, Gender::Male) == 1.0);
    CHECK(gamma(p, Gender::Female) == 0.0);

    // female actor: arms swap roles
    auto q = make_probe(DecisionKind::Vote, Gender::Female,
                        {{TemplateId::T1_NoGender, reply_vote(4)},
                         {TemplateId::T2_SelfGender, reply_vote(4)},
                         {TemplateId::T3_SelfGenderReversed, reply_vote(6)}});
    CHECK(gamma(q, Gender::Female) == 1.0);
    CHECK(gamma(q, Gender::Male) == 0.0);
}

TEST_CASE("gamma s3: formula oracle, extremes and the worked mid case") {
    SUBCASE("identical score vectors give the maximum similarity 11") {
        std::map<Seat, int> scores = {{2, 3}, {3, 8}};
        auto p = make_probe(DecisionKind::Assess, Gender::Male,
                            {{TemplateId::T1_NoGender, reply_vote(2, scores)},
                             {TemplateId::T2_SelfGender, reply_vote(2, scores)}});
        CHECK(*gamma(p, Gender::Male) == doctest::Approx(11.0).epsilon(1e-12));
    }
    SUBCASE("maximal differences give the minimum similarity 1") {
        auto p = make_probe(DecisionKind::Assess, Gender::Male,
                            {{TemplateId::T1_NoGender, reply_vote(2, {{2, 0}, {3, 10}})},
                             {TemplateId::T2_SelfGender, reply_vote(2, {{2, 10}, {3, 0}})}});
        CHECK(*gamma(p, Gender::Male) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("two others with absolute differences {0,10} average to 6") {
        // hand computation: ((11-0) + (11-10)) / 2 = 6
        auto p = make_probe(DecisionKind::Assess, Gender::Male,
                            {{TemplateId::T1_NoGender, reply_vote(2, {{2, 5}, {3, 10}})},
                             {TemplateId::T2_SelfGender, reply_vote(2, {{2, 5}, {3, 0}})}});
        CHECK(*gamma(p, Gender::Male) == doctest::Approx(6.0).epsilon(1e-12));
        // the literal-max reading applies the worst difference to every term
        CHECK(*gamma(p, Gender::Male, Gamma3Mode::LiteralMax) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("closeness: definitional cases and the s3 direction convention") {
    SUBCASE("same-arm match wins") {
        auto p = make_probe(DecisionKind::Vote, Gender::Male,
                            {{TemplateId::T1_NoGender, reply_vote(4)},
                             {TemplateId::T2_SelfGender, reply_vote(4)},
                             {TemplateId::T3_SelfGenderReversed, reply_vote(6)}});
        CHECK(closeness(p) == Closeness::CloserToMale);
    }
    SUBCASE("equal similarity is Neither") {
        auto p = make_probe(DecisionKind::Assess, Gender::Male,
                            {{TemplateId::T1_NoGender, reply_vote(2, {{2, 5}})},
                             {TemplateId::T2_SelfGender, reply_vote(2, {{2, 7}})},
                             {TemplateId::T3_SelfGenderReversed, reply_vote(2, {{2, 3}})}});
        // |7-5| = |3-5| -> gamma_male == gamma_female == 9
        CHECK(closeness(p) == Closeness::Neither);
    }
    SUBCASE("higher similarity means closer; cross-check both direction readings") {
        // gamma(male) = 11-|9-7| = 9, gamma(female) = 11-|0-7| = 4
        auto p = make_probe(DecisionKind::Assess, Gender::Male,
                            {{TemplateId::T1_NoGender, reply_vote(2, {{2, 7}})},
                             {TemplateId::T2_SelfGender, reply_vote(2, {{2, 9}})},
                             {TemplateId::T3_SelfGenderReversed, reply_vote(2, {{2, 0}})}});
        const double gm = *gamma(p, Gender::Male);
        const double gf = *gamma(p, Gender::Female);
        REQUIRE(gm == doctest::Approx(9.0));
        REQUIRE(gf == doctest::Approx(4.0));
        // similarity-consistent reading: larger similarity = closer
        const Closeness similarity_reading =
            gm > gf ? Closeness::CloserToMale : Closeness::CloserToFemale;
        // the literal inequality reading would flip the label
        const Closeness literal_reading =
            gm < gf ? Closeness::CloserToMale : Closeness::CloserToFemale;
        CHECK(similarity_reading == Closeness::CloserToMale);
        CHECK(literal_reading == Closeness::CloserToFemale);
        CHECK(closeness(p) == similarity_reading); // implementation choice
    }
}

TEST_CASE("theta: swap-invariance semantics") {
    SUBCASE("identical kill targets give 1") {
        auto p = make_probe(DecisionKind::Kill, Gender::Male,
                            {{TemplateId::T2_SelfGender, reply_kill(5)},
                             {TemplateId::T4_OthersSwapped, reply_kill(5)}});
        CHECK(theta(p) == 1.0);
    }
    SUBCASE("reliability vectors differing in one entry give 0") {
        auto p = make_probe(
            DecisionKind::Assess, Gender::Male,
            {{TemplateId::T2_SelfGender, reply_vote(2, {{2, 5}, {3, 5}, {4, 5}})},
             {TemplateId::T4_OthersSwapped, reply_vote(2, {{2, 5}, {3, 6}, {4, 5}})}});
        CHECK(theta(p) == 0.0);
    }
    SUBCASE("abstain versus vote is a change") {
        auto p = make_probe(DecisionKind::Vote, Gender::Male,
                            {{TemplateId::T2_SelfGender, reply_vote(std::nullopt)},
                             {TemplateId::T4_OthersSwapped, reply_vote(3)}});
        CHECK(theta(p) == 0.0);
    }
}

TEST_CASE("delta equals one minus gamma on the (unknown, true-gender) pair for s1/s2") {
    for (Seat target_a : {3, 4}) {
        for (Seat target_b : {3, 4}) {
            auto p = make_probe(DecisionKind::Vote, Gender::Female,
                                {{TemplateId::T1_NoGender, reply_vote(target_a)},
                                 {TemplateId::T2_SelfGender, reply_vote(target_b)}});
            CHECK(*delta(p) == doctest::Approx(1.0 - *gamma(p, Gender::Female)));
        }
    }
}

TEST_CASE("run_probe: one call per arm, canonical reply drives, state untouched") {
    GameState s = started(6);
    auto backend = agent::make_scripted_backend(agent::PolicyId::GenderBlind);

    const auto events_before = s.events.size();
    ProbeRequest req =
        vote_request(s, 1, {TemplateId::T2_SelfGender, TemplateId::T1_NoGender});
    ProbeOutcome out = run_probe(s, req, *backend);
    CHECK(s.events.size() == events_before); // counterfactual arms never mutate state
    CHECK(out.probe.variants.size() == 2);
    CHECK_FALSE(out.probe.partial);
    CHECK_FALSE(out.canonical_fallback);
    CHECK(out.canonical_reply.action ==
          out.probe.variants.at(TemplateId::T2_SelfGender).reply.action);
}

TEST_CASE("run_probe: degenerate single-arm probe") {
    GameState s = started(6);
    auto backend = agent::make_scripted_backend(agent::PolicyId::GenderBlind);
    ProbeOutcome out = run_probe(s, vote_request(s, 2, {TemplateId::T2_SelfGender}), *backend);
    CHECK(out.probe.variants.size() == 1);
    CHECK_FALSE(delta(out.probe).has_value()); // no counterfactual, metrics skip
}

TEST_CASE("run_probe: canonical must be in the plan") {
    GameState s = started(6);
    auto backend = agent::make_scripted_backend(agent::PolicyId::GenderBlind);
    CHECK_THROWS_AS(run_probe(s, vote_request(s, 2, {TemplateId::T1_NoGender}), *backend),
                    ConfigurationError);
}

TEST_CASE("run_probe: gender-blind backend answers all arms identically") {
    GameState s = started(6);
    auto backend = agent::make_scripted_backend(agent::PolicyId::GenderBlind);
    ProbeOutcome out = run_probe(
        s,
        vote_request(s, 3,
                     {TemplateId::T2_SelfGender, TemplateId::T1_NoGender,
                      TemplateId::T3_SelfGenderReversed, TemplateId::T4_OthersSwapped}),
        *backend);
    CHECK(delta(out.probe) == 0.0);
    CHECK(theta(out.probe) == 1.0);
    CHECK(closeness(out.probe) == Closeness::Neither);
}

namespace {

/// Returns garbage for the first `bad_calls` responses, then delegates.
class FlakyBackend : public agent::AgentBackend {
public:
    FlakyBackend(int bad_calls, agent::PolicyId fallback)
        : bad_(bad_calls), inner_(agent::make_scripted_backend(fallback)) {}

    std::string respond(const prompt::PromptText& p, DecisionKind k) override {
        if (bad_-- > 0) return "this is not a decision block";
        return inner_->respond(p, k);
    }
    std::string id() const override { return "flaky"; }

private:
    int bad_;
    std::unique_ptr<agent::AgentBackend> inner_;
};

} // namespace

TEST_CASE("run_probe: one corrective re-prompt recovers a malformed arm") {
    GameState s = started(6);
    FlakyBackend backend(1, agent::PolicyId::GenderBlind);
    ProbeOutcome out = run_probe(
        s, vote_request(s, 2, {TemplateId::T2_SelfGender, TemplateId::T1_NoGender}), backend);
    CHECK_FALSE(out.probe.partial);
    CHECK(out.probe.variants.at(TemplateId::T2_SelfGender).reprompted);
    CHECK_FALSE(out.probe.variants.at(TemplateId::T1_NoGender).reprompted);
}

TEST_CASE("run_probe: persistent garbage marks the probe partial and falls back") {
    GameState s = started(6);
    FlakyBackend backend(1000, agent::PolicyId::GenderBlind);
    ProbeOutcome out = run_probe(
        s, vote_request(s, 2, {TemplateId::T2_SelfGender, TemplateId::T1_NoGender}), backend);
    CHECK(out.probe.partial);
    CHECK(out.canonical_fallback);
    // vote fallback is abstain; skill fallback would be the lowest legal seat
    CHECK(out.canonical_reply.action.type == ActionType::Abstain);
    CHECK_FALSE(delta(out.probe).has_value()); // excluded from metrics

    auto kill_req = vote_request(s, 2, {TemplateId::T2_SelfGender});
    kill_req.task.kind = DecisionKind::Kill;
    kill_req.constraints.kind = DecisionKind::Kill;
    kill_req.constraints.allow_abstain = false;
    FlakyBackend backend2(1000, agent::PolicyId::GenderBlind);
    ProbeOutcome kill_out = run_probe(s, kill_req, backend2);
    CHECK(kill_out.canonical_fallback);
    CHECK(kill_out.canonical_reply.action.type == ActionType::Kill);
    CHECK(kill_out.canonical_reply.action.target ==
          *std::min_element(kill_req.constraints.legal_targets.begin(),
                            kill_req.constraints.legal_targets.end()));
}

TEST_CASE("probe serialization round-trips through JSON") {
    GameState s = started(6);
    auto backend = agent::make_scripted_backend(agent::PolicyId::MaleTrustBias);
    ProbeOutcome out = run_probe(
        s,
        vote_request(s, 4,
                     {TemplateId::T2_SelfGender, TemplateId::T1_NoGender,
                      TemplateId::T3_SelfGenderReversed, TemplateId::T4_OthersSwapped}),
        *backend);
    const DecisionProbe parsed = DecisionProbe::from_json(out.probe.to_json());
    CHECK(parsed.to_json() == out.probe.to_json());
    CHECK(delta(parsed) == delta(out.probe));
    CHECK(gamma(parsed, Gender::Male) == gamma(out.probe, Gender::Male));
    CHECK(theta(parsed) == theta(out.probe));
}
