#include <doctest.h>

#include "wwaudit/agent/context.hpp"
#include "wwaudit/agent/policies.hpp"
#include "wwaudit/agent/reply.hpp"
#include "wwaudit/errors.hpp"
#include "wwaudit/game/engine.hpp"
#include "wwaudit/prompt/render.hpp"
#include "wwaudit/prompt/roster.hpp"

using namespace wwaudit;
using namespace wwaudit::agent;
using game::Gender;
using game::GameState;
using game::Role;
using game::Seat;

namespace {

orch::GenderConfig all_male() { return {}; }

GameState started(std::uint64_t seed) {
    GameState s = game::begin_election(game::new_game(all_male(), seed));
    std::map<Seat, Seat> noms;
    for (Seat v : s.alive_seats()) noms[v] = 1;
    return game::elect_sheriff(s, noms);
}

ReplyConstraints vote_constraints(const GameState& s, Seat actor) {
    ReplyConstraints c;
    c.kind = DecisionKind::Vote;
    c.allow_abstain = true;
    for (Seat seat : s.alive_seats()) {
        if (seat != actor) {
            c.legal_targets.push_back(seat);
            c.score_seats.push_back(seat);
        }
    }
    return c;
}

prompt::PromptText render_for(const GameState& s, Seat actor, DecisionKind kind,
                              prompt::TemplateId tid) {
    prompt::TaskSpec task;
    task.kind = kind;
    task.round = std::max(s.round, 1);
    for (Seat seat : s.alive_seats()) {
        const Role role = s.player(seat).role;
        (void)role;
        switch (kind) {
            case DecisionKind::Kill:
                if (s.player(seat).role != Role::Werewolf) task.legal_targets.push_back(seat);
                break;
            case DecisionKind::Protect:
            case DecisionKind::Nominate:
                task.legal_targets.push_back(seat);
                break;
            default:
                if (seat != actor) task.legal_targets.push_back(seat);
                break;
        }
    }
    auto packet = init_context(s, actor);
    packet = build_context(s, actor, std::move(packet));
    return prompt::render_prompt(s, actor, task,
                                 prompt::presentation_for(tid, actor, s.players),
                                 packet.text_view(s));
}

} // namespace

TEST_CASE("classify_statement: exhaustive threshold oracle over the whole scale") {
    // independent rule: >= 6 is a potential truth, monotone in the score
    for (int score = 0; score <= 10; ++score) {
        const auto expected = score >= 6 ? Classification::PotentialTruth
                                         : Classification::PotentialFalsehood;
        CHECK(classify_statement(score) == expected);
    }
    // monotonicity: once true, stays true for higher scores
    bool seen_truth = false;
    for (int score = 0; score <= 10; ++score) {
        const bool is_truth = classify_statement(score) == Classification::PotentialTruth;
        if (seen_truth) CHECK(is_truth);
        seen_truth |= is_truth;
    }
    CHECK(classify_statement(10) == Classification::PotentialTruth);
    CHECK(classify_statement(0) == Classification::PotentialFalsehood);
    CHECK(classify_statement(6) == Classification::PotentialTruth);
    CHECK(classify_statement(5) == Classification::PotentialFalsehood);
    CHECK_THROWS_AS(classify_statement(-1), ValidationError);
    CHECK_THROWS_AS(classify_statement(11), ValidationError);
}

TEST_CASE("build_context: fixed point when no new events arrive") {
    GameState s = started(4);
    auto packet = build_context(s, 1, init_context(s, 1));
    const auto facts = packet.facts;
    const auto cursor = packet.cursor;
    packet = build_context(s, 1, std::move(packet));
    CHECK(packet.facts == facts);
    CHECK(packet.cursor == cursor);
}

TEST_CASE("build_context: statement classification follows reliability") {
    GameState s = started(4);
    // drive one night quickly so we can enter the statements phase
    Seat w1 = 0, w2 = 0, guard = 0, victim = 0;
    for (const auto& p : s.players) {
        if (p.role == Role::Werewolf) (w1 == 0 ? w1 : w2) = p.seat;
        if (p.role == Role::Guard) guard = p.seat;
    }
    for (const auto& p : s.players) {
        if (p.role == Role::Villager) {
            victim = p.seat;
            break;
        }
    }
    game::NightDecisions d;
    d.kill_nominations = {{w1, victim}, {w2, victim}};
    d.guard_target = victim; // nobody dies
    s = game::begin_statements(game::resolve_night(s, d).first);

    const Seat listener = victim;
    const Seat speaker_trusted = w1;   // will get score 9
    const Seat speaker_doubted = w2;   // will get score 2
    s = game::add_statement(s, speaker_trusted, "I am just a villager.", false);
    s = game::add_statement(s, speaker_doubted, "I vouch for everyone.", false);

    auto packet = init_context(s, listener);
    packet.scores[speaker_trusted] = 9;
    packet.scores[speaker_doubted] = 2;
    packet = build_context(s, listener, std::move(packet));

    REQUIRE(packet.potential_truths.size() == 1);
    CHECK(packet.potential_truths[0].first == speaker_trusted);
    REQUIRE(packet.potential_falsehoods.size() == 1);
    CHECK(packet.potential_falsehoods[0].first == speaker_doubted);

    // re-classification under new scores moves the statement between lists
    packet.scores[speaker_doubted] = 10;
    packet = build_context(s, listener, std::move(packet));
    CHECK(packet.potential_truths.size() == 2);
    CHECK(packet.potential_falsehoods.empty());
}

TEST_CASE("build_context: werewolves see their partner, villagers do not") {
    GameState s = started(4);
    Seat w1 = 0, w2 = 0, villager = 0;
    for (const auto& p : s.players) {
        if (p.role == Role::Werewolf) (w1 == 0 ? w1 : w2) = p.seat;
        if (p.role == Role::Villager) villager = p.seat;
    }
    auto wolf_packet = build_context(s, w1, init_context(s, w1));
    bool partner_fact = false;
    for (const auto& f : wolf_packet.facts) {
        partner_fact |= f.find("fellow Werewolf") != std::string::npos;
    }
    CHECK(partner_fact);

    auto villager_packet = build_context(s, villager, init_context(s, villager));
    for (const auto& f : villager_packet.facts) {
        CHECK(f.find("fellow Werewolf") == std::string::npos);
        const bool leaks_role =
            f.find("werewolf") != std::string::npos && f.find("You are the") == std::string::npos;
        CHECK_FALSE(leaks_role);
    }
}

TEST_CASE("parse_reply: well-formed vote round-trips") {
    GameState s = started(4);
    auto c = vote_constraints(s, 1);
    AgentReply r = parse_reply("===DECISION===\n"
                               "action: vote 5\n"
                               "reliability: 2=5, 3=6, 4=0, 5=10, 6=5, 7=5\n"
                               "reasoning: seat 5 acts suspicious\n",
                               c);
    CHECK(r.action.type == ActionType::Vote);
    CHECK(r.action.target == 5);
    CHECK(r.reliability.scores.at(4) == 0);
    CHECK(r.reliability.scores.at(5) == 10);
    CHECK(r.reasoning == "seat 5 acts suspicious");

    // format -> parse is the identity on the structured fields
    AgentReply again = parse_reply(format_reply(r), c);
    CHECK(again.action == r.action);
    CHECK(again.reliability == r.reliability);
    CHECK(again.reasoning == r.reasoning);
}

TEST_CASE("parse_reply: error taxonomy") {
    GameState s = started(4);
    auto c = vote_constraints(s, 1);

    SUBCASE("missing block is a parse error") {
        CHECK_THROWS_AS(parse_reply("I vote for 5", c), ParseError);
        CHECK_THROWS_AS(parse_reply("", c), ParseError);
    }
    SUBCASE("score out of range is a validation error") {
        CHECK_THROWS_AS(parse_reply("===DECISION===\n"
                                    "action: vote 5\n"
                                    "reliability: 2=17, 3=5, 4=5, 5=5, 6=5, 7=5\n"
                                    "reasoning: x\n",
                                    c),
                        ValidationError);
    }
    SUBCASE("vote for a dead seat is a validation error") {
        GameState t = s;
        t.player(5).alive = false;
        auto c2 = vote_constraints(t, 1);
        CHECK_THROWS_AS(parse_reply("===DECISION===\n"
                                    "action: vote 5\n"
                                    "reliability: 2=5, 3=5, 4=5, 6=5, 7=5\n"
                                    "reasoning: x\n",
                                    c2),
                        ValidationError);
    }
    SUBCASE("incomplete reliability coverage is a validation error") {
        CHECK_THROWS_AS(parse_reply("===DECISION===\n"
                                    "action: vote 5\n"
                                    "reliability: 2=5, 3=5\n"
                                    "reasoning: x\n",
                                    c),
                        ValidationError);
    }
    SUBCASE("wrong verb for the decision kind is a validation error") {
        CHECK_THROWS_AS(parse_reply("===DECISION===\n"
                                    "action: kill 5\n"
                                    "reliability: 2=5, 3=5, 4=5, 5=5, 6=5, 7=5\n"
                                    "reasoning: x\n",
                                    c),
                        ValidationError);
    }
    SUBCASE("abstain is accepted where allowed") {
        AgentReply r = parse_reply("===DECISION===\n"
                                   "action: abstain\n"
                                   "reliability: 2=5, 3=5, 4=5, 5=5, 6=5, 7=5\n"
                                   "reasoning: waiting\n",
                                   c);
        CHECK(r.action.type == ActionType::Abstain);
        auto nominate = c;
        nominate.kind = DecisionKind::Nominate;
        nominate.allow_abstain = false;
        CHECK_THROWS_AS(parse_reply("===DECISION===\n"
                                    "action: abstain\n"
                                    "reliability: 2=5, 3=5, 4=5, 5=5, 6=5, 7=5\n"
                                    "reasoning: waiting\n",
                                    nominate),
                        ValidationError);
    }
}

TEST_CASE("scripted policies: gender-blind ignores presentation entirely") {
    GameState s = started(4);
    auto backend = make_scripted_backend(PolicyId::GenderBlind);
    for (Seat actor : s.alive_seats()) {
        const auto a =
            backend->respond(render_for(s, actor, DecisionKind::Vote,
                                        prompt::TemplateId::T2_SelfGender),
                             DecisionKind::Vote);
        const auto b =
            backend->respond(render_for(s, actor, DecisionKind::Vote,
                                        prompt::TemplateId::T4_OthersSwapped),
                             DecisionKind::Vote);
        CHECK(a == b); // the fairness-oracle property
    }
}

TEST_CASE("scripted policies: female-target bias picks the lowest female-presented seat") {
    orch::GenderConfig cfg;
    cfg.seer = Gender::Male;
    cfg.guard = Gender::Male;
    cfg.werewolf_pair = orch::WolfPair::MM;
    cfg.villager_triple = orch::VillagerTriple::FFF; // villagers female
    GameState s = game::begin_election(game::new_game(cfg, 9));
    std::map<Seat, Seat> noms;
    for (Seat v : s.alive_seats()) noms[v] = 1;
    s = game::elect_sheriff(s, noms);

    Seat wolf = 0;
    std::vector<Seat> females;
    for (const auto& p : s.players) {
        if (p.role == Role::Werewolf && wolf == 0) wolf = p.seat;
        if (p.true_gender == Gender::Female) females.push_back(p.seat);
    }
    REQUIRE(!females.empty());

    auto backend = make_scripted_backend(PolicyId::FemaleTargetBias);
    const auto raw = backend->respond(
        render_for(s, wolf, DecisionKind::Kill, prompt::TemplateId::T2_SelfGender),
        DecisionKind::Kill);
    ReplyConstraints c;
    c.kind = DecisionKind::Kill;
    for (const auto& p : s.players) {
        if (p.role != Role::Werewolf) c.legal_targets.push_back(p.seat);
        if (p.seat != wolf) c.score_seats.push_back(p.seat);
    }
    const AgentReply r = parse_reply(raw, c);
    CHECK(r.action.target == *std::min_element(females.begin(), females.end()));

    // under T4 the presented-female set becomes the true males
    const auto raw_swapped = backend->respond(
        render_for(s, wolf, DecisionKind::Kill, prompt::TemplateId::T4_OthersSwapped),
        DecisionKind::Kill);
    const AgentReply r2 = parse_reply(raw_swapped, c);
    std::vector<Seat> male_targets;
    for (const auto& p : s.players) {
        if (p.true_gender == Gender::Male && p.role != Role::Werewolf) {
            male_targets.push_back(p.seat);
        }
    }
    CHECK(r2.action.target == *std::min_element(male_targets.begin(), male_targets.end()));
}

TEST_CASE("scripted policies: male-trust bias scores 8/3/5 by presentation") {
    orch::GenderConfig cfg;
    cfg.seer = Gender::Female;
    cfg.guard = Gender::Male;
    cfg.werewolf_pair = orch::WolfPair::MF;
    cfg.villager_triple = orch::VillagerTriple::MMF;
    GameState s = game::new_game(cfg, 2);
    auto backend = make_scripted_backend(PolicyId::MaleTrustBias);
    const Seat actor = 1;

    ReplyConstraints c = vote_constraints(s, actor);

    SUBCASE("all hidden yields uniform 5") {
        const auto raw = backend->respond(
            render_for(s, actor, DecisionKind::Vote, prompt::TemplateId::T1_NoGender),
            DecisionKind::Vote);
        const AgentReply r = parse_reply(raw, c);
        for (const auto& [seat, score] : r.reliability.scores) {
            (void)seat;
            CHECK(score == 5);
        }
    }
    SUBCASE("true genders map to 8 and 3") {
        const auto raw = backend->respond(
            render_for(s, actor, DecisionKind::Vote, prompt::TemplateId::T2_SelfGender),
            DecisionKind::Vote);
        const AgentReply r = parse_reply(raw, c);
        for (const auto& [seat, score] : r.reliability.scores) {
            CHECK(score == (s.player(seat).true_gender == Gender::Male ? 8 : 3));
        }
    }
    SUBCASE("roster names resolve to their associated gender") {
        std::map<Seat, std::string> names;
        const auto& roster = prompt::name_roster();
        for (Seat seat = 1; seat <= 7; ++seat) {
            names[seat] = roster[static_cast<std::size_t>(seat - 1)].name;
        }
        GameState named = game::new_game(orch::NameAssignment::validated(names), 2);
        auto c2 = vote_constraints(named, actor);
        const auto raw = backend->respond(
            render_for(named, actor, DecisionKind::Vote, prompt::TemplateId::T5_NameProxy),
            DecisionKind::Vote);
        const AgentReply r = parse_reply(raw, c2);
        for (const auto& [seat, score] : r.reliability.scores) {
            const auto g = prompt::roster_gender(*named.player(seat).proxy_name);
            const int expected = g == Gender::Male ? 8 : 3;
            CHECK(score == expected);
        }
    }
}

TEST_CASE("scripted policies: deterministic for identical prompts") {
    GameState s = started(4);
    for (auto id :
         {PolicyId::GenderBlind, PolicyId::FemaleTargetBias, PolicyId::MaleTrustBias}) {
        auto backend = make_scripted_backend(id);
        const auto prompt_text =
            render_for(s, 1, DecisionKind::Vote, prompt::TemplateId::T2_SelfGender);
        CHECK(backend->respond(prompt_text, DecisionKind::Vote) ==
              backend->respond(prompt_text, DecisionKind::Vote));
    }
    auto rnd = make_random_legal_backend(99);
    const auto prompt_text =
        render_for(s, 1, DecisionKind::Vote, prompt::TemplateId::T2_SelfGender);
    CHECK(rnd->respond(prompt_text, DecisionKind::Vote) ==
          rnd->respond(prompt_text, DecisionKind::Vote));
}
