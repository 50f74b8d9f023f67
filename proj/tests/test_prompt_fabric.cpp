#include <doctest.h>

#include "wwaudit/errors.hpp"
#include "wwaudit/game/engine.hpp"
#include "wwaudit/prompt/presentation.hpp"
#include "wwaudit/prompt/render.hpp"
#include "wwaudit/prompt/roster.hpp"
#include "wwaudit/util/strings.hpp"

#include <filesystem>

using namespace wwaudit;
using namespace wwaudit::prompt;
using game::Gender;
using game::GameState;
using game::Seat;

namespace {

orch::GenderConfig mixed_config() {
    // seer F, guard M, wolves MF, villagers MMF
    orch::GenderConfig c;
    c.seer = Gender::Female;
    c.guard = Gender::Male;
    c.werewolf_pair = orch::WolfPair::MF;
    c.villager_triple = orch::VillagerTriple::MMF;
    return c;
}

GameState named_game() {
    std::map<Seat, std::string> names;
    const auto& roster = name_roster();
    for (Seat s = 1; s <= 7; ++s) names[s] = roster[static_cast<std::size_t>(s - 1)].name;
    return game::new_game(orch::NameAssignment::validated(names), 5);
}

TaskSpec vote_task(const GameState& s, Seat actor) {
    TaskSpec t;
    t.kind = DecisionKind::Vote;
    t.round = 1;
    for (Seat seat : s.alive_seats()) {
        if (seat != actor) t.legal_targets.push_back(seat);
    }
    return t;
}

} // namespace

TEST_CASE("name_roster: seven entries, four male-associated, lookups work") {
    const auto& roster = name_roster();
    REQUIRE(roster.size() == 7);
    int male = 0;
    for (const auto& e : roster) male += e.associated_gender == Gender::Male ? 1 : 0;
    CHECK(male == 4);
    CHECK(roster_gender("Judith") == Gender::Female);
    CHECK(roster_gender("Scott") == Gender::Male);
    CHECK_FALSE(roster_gender("Bob").has_value());
    // exact roster membership
    std::vector<std::string> expected = {"Scott",  "Timothy", "Kenneth", "Keith",
                                         "Judith", "Mildred", "Elizabeth"};
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(roster[i].name == expected[i]);
}

TEST_CASE("presentation_for: template definitions") {
    GameState s = game::new_game(mixed_config(), 3);

    SUBCASE("T1 hides every seat") {
        auto pm = presentation_for(TemplateId::T1_NoGender, 2, s.players);
        for (Seat seat = 1; seat <= 7; ++seat) {
            CHECK(pm.at(seat).kind == Presentation::Kind::Hidden);
        }
    }
    SUBCASE("T2 shows true gender everywhere") {
        auto pm = presentation_for(TemplateId::T2_SelfGender, 2, s.players);
        for (const auto& p : s.players) {
            CHECK(pm.at(p.seat) == Presentation::as_gender(p.true_gender));
        }
    }
    SUBCASE("T3 reverses only the actor") {
        auto pm = presentation_for(TemplateId::T3_SelfGenderReversed, 2, s.players);
        for (const auto& p : s.players) {
            const Gender expected =
                p.seat == 2 ? (p.true_gender == Gender::Male ? Gender::Female : Gender::Male)
                            : p.true_gender;
            CHECK(pm.at(p.seat) == Presentation::as_gender(expected));
        }
    }
    SUBCASE("T4 keeps the actor, swaps everyone else") {
        auto pm = presentation_for(TemplateId::T4_OthersSwapped, 2, s.players);
        for (const auto& p : s.players) {
            const Gender expected =
                p.seat != 2 ? (p.true_gender == Gender::Male ? Gender::Female : Gender::Male)
                            : p.true_gender;
            CHECK(pm.at(p.seat) == Presentation::as_gender(expected));
        }
    }
    SUBCASE("T4 on an all-male cast presents everyone but the actor as female") {
        orch::GenderConfig all_male; // defaults are all-male
        GameState am = game::new_game(all_male, 1);
        auto pm = presentation_for(TemplateId::T4_OthersSwapped, 2, am.players);
        CHECK(pm.at(2) == Presentation::as_gender(Gender::Male));
        for (Seat seat : {1, 3, 4, 5, 6, 7}) {
            CHECK(pm.at(seat) == Presentation::as_gender(Gender::Female));
        }
    }
    SUBCASE("T5 assigns the roster name of every seat") {
        GameState named = named_game();
        auto pm = presentation_for(TemplateId::T5_NameProxy, 2, named.players);
        for (const auto& p : named.players) {
            CHECK(pm.at(p.seat) == Presentation::as_name(*p.proxy_name));
        }
    }
    SUBCASE("T5 without proxy names is a configuration error") {
        CHECK_THROWS_AS(presentation_for(TemplateId::T5_NameProxy, 2, s.players),
                        ConfigurationError);
    }
    SUBCASE("missing actor seat is a configuration error") {
        CHECK_THROWS_AS(presentation_for(TemplateId::T1_NoGender, 9, s.players),
                        ConfigurationError);
    }
}

TEST_CASE("render_prompt: identical inputs give identical content hashes") {
    GameState s = game::new_game(mixed_config(), 3);
    ContextText ctx;
    ctx.facts = {"You are the Villager."};
    ctx.reliability = {{2, 5}, {3, 7}};
    auto pm = presentation_for(TemplateId::T2_SelfGender, 1, s.players);
    PromptText a = render_prompt(s, 1, vote_task(s, 1), pm, ctx);
    PromptText b = render_prompt(s, 1, vote_task(s, 1), pm, ctx);
    CHECK(a.content_hash == b.content_hash);
    CHECK(a.rendered == b.rendered);

    // match_id is rng-irrelevant metadata and must not leak into the prompt
    GameState renamed = s;
    renamed.match_id = "something-else";
    PromptText c = render_prompt(renamed, 1, vote_task(renamed, 1), pm, ctx);
    CHECK(c.content_hash == a.content_hash);
}

TEST_CASE("render_prompt: hidden presentation yields zero denylist hits") {
    GameState s = game::new_game(mixed_config(), 3);
    ContextText ctx;
    ctx.facts = {"Round 1 dawn: No one was eliminated in the night."};
    auto pm = presentation_for(TemplateId::T1_NoGender, 4, s.players);
    PromptText p = render_prompt(s, 4, vote_task(s, 4), pm, ctx);
    CHECK(find_denylist_hits(p.rendered).empty());
}

TEST_CASE("render_prompt: T5 refers to players by name and stays gender-free") {
    GameState named = named_game();
    ContextText ctx;
    auto pm = presentation_for(TemplateId::T5_NameProxy, 5, named.players);
    PromptText p = render_prompt(named, 5, vote_task(named, 5), pm, ctx);
    CHECK(p.rendered.find(*named.player(5).proxy_name) != std::string::npos);
    for (const auto& other : named.players) {
        if (other.alive && other.seat != 5) {
            CHECK(p.rendered.find(", named " + *other.proxy_name) != std::string::npos);
        }
    }
    CHECK(find_denylist_hits(p.rendered).empty());
}

TEST_CASE("render_prompt: T2 and T3 differ only in the actor's self line") {
    GameState s = game::new_game(mixed_config(), 3);
    ContextText ctx;
    ctx.facts = {"You are the Seer."};
    const Seat actor = 6;
    auto pm2 = presentation_for(TemplateId::T2_SelfGender, actor, s.players);
    auto pm3 = presentation_for(TemplateId::T3_SelfGenderReversed, actor, s.players);
    PromptText a = render_prompt(s, actor, vote_task(s, actor), pm2, ctx);
    PromptText b = render_prompt(s, actor, vote_task(s, actor), pm3, ctx);
    CHECK(a.rendered != b.rendered);

    const auto lines_a = util::split_lines(a.rendered);
    const auto lines_b = util::split_lines(b.rendered);
    REQUIRE(lines_a.size() == lines_b.size());
    int differing = 0;
    for (std::size_t i = 0; i < lines_a.size(); ++i) {
        if (lines_a[i] != lines_b[i]) {
            ++differing;
            CHECK(util::starts_with(lines_a[i], "You are Player "));
        }
    }
    CHECK(differing == 1);
}

TEST_CASE("render_prompt: T2 and T4 differ only in the roster line") {
    GameState s = game::new_game(mixed_config(), 3);
    ContextText ctx;
    const Seat actor = 6;
    auto pm2 = presentation_for(TemplateId::T2_SelfGender, actor, s.players);
    auto pm4 = presentation_for(TemplateId::T4_OthersSwapped, actor, s.players);
    PromptText a = render_prompt(s, actor, vote_task(s, actor), pm2, ctx);
    PromptText b = render_prompt(s, actor, vote_task(s, actor), pm4, ctx);

    const auto lines_a = util::split_lines(a.rendered);
    const auto lines_b = util::split_lines(b.rendered);
    REQUIRE(lines_a.size() == lines_b.size());
    int differing = 0;
    for (std::size_t i = 0; i < lines_a.size(); ++i) {
        if (lines_a[i] != lines_b[i]) {
            ++differing;
            CHECK(util::starts_with(lines_a[i], "Other players: "));
        }
    }
    CHECK(differing == 1);
}

TEST_CASE("render_prompt: context referencing an unknown seat is rejected") {
    GameState s = game::new_game(mixed_config(), 3);
    ContextText ctx;
    ctx.truths = {{42, "there are eight players"}};
    auto pm = presentation_for(TemplateId::T1_NoGender, 1, s.players);
    CHECK_THROWS_AS(render_prompt(s, 1, vote_task(s, 1), pm, ctx), ValidationError);
}

TEST_CASE("render_prompt: dead actor is rejected") {
    GameState s = game::new_game(mixed_config(), 3);
    s.player(1).alive = false;
    ContextText ctx;
    auto pm = presentation_for(TemplateId::T1_NoGender, 1, s.players);
    CHECK_THROWS_AS(render_prompt(s, 1, vote_task(s, 1), pm, ctx), IllegalActionError);
}

TEST_CASE("denylist finds gendered words at word boundaries only") {
    CHECK(find_denylist_hits("The weather is nice.").empty());   // 'he' inside a word
    CHECK(find_denylist_hits("Shelter themselves there").empty());
    CHECK(find_denylist_hits("He votes.").size() == 1);
    CHECK(find_denylist_hits("the man's vote").size() == 1);
    CHECK(find_denylist_hits("MALE and females").size() == 2);
    const auto hits = find_denylist_hits("she trusts her, he doubts him");
    CHECK(hits.size() == 4);
}

TEST_CASE("templates: builtin parts are denylist-clean") {
    for (const auto& [name, text] : TemplateSet::builtin().parts) {
        INFO("template part: " << name);
        CHECK(find_denylist_hits(text).empty());
    }
}

TEST_CASE("templates: write_dir/load_dir round-trips and repo copy matches builtin") {
    const auto& builtin = TemplateSet::builtin();
    const std::filesystem::path tmp =
        std::filesystem::temp_directory_path() / "wwaudit_tmpl_test";
    std::filesystem::remove_all(tmp);
    builtin.write_dir(tmp);
    const TemplateSet loaded = TemplateSet::load_dir(tmp);
    CHECK(loaded.version == builtin.version);
    CHECK(loaded.parts == builtin.parts);
    std::filesystem::remove_all(tmp);

    const std::filesystem::path repo_dir =
        std::filesystem::path(WWAUDIT_SOURCE_DIR) / "templates" / "v1";
    REQUIRE(std::filesystem::is_directory(repo_dir));
    const TemplateSet repo = TemplateSet::load_dir(repo_dir);
    CHECK(repo.version == builtin.version);
    CHECK(repo.parts == builtin.parts);
}

TEST_CASE("templates: unknown placeholder fails loudly") {
    CHECK_THROWS_AS(expand("hello {{nope}}", {}), ConfigurationError);
    CHECK(expand("{{a}}-{{a}}{{b}}", {{"a", "x"}, {"b", "y"}}) == "x-xy");
    CHECK_THROWS_AS(expand("{{unterminated", {}), ConfigurationError);
}
