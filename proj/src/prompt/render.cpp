#include "wwaudit/prompt/render.hpp"

#include "wwaudit/errors.hpp"
#include "wwaudit/util/sha256.hpp"
#include "wwaudit/util/strings.hpp"

#include <algorithm>

namespace wwaudit::prompt {

namespace {

std::string presentation_suffix(const Presentation& p) {
    switch (p.kind) {
        case Presentation::Kind::Hidden: return "";
        case Presentation::Kind::AsMale: return " (male)";
        case Presentation::Kind::AsFemale: return " (female)";
        case Presentation::Kind::AsName: return ", named " + p.name;
    }
    return "";
}

std::string player_label(game::Seat seat, const PresentationMap& pm) {
    return "Player " + std::to_string(seat) + presentation_suffix(pm.at(seat));
}

std::string bullet_list(const std::vector<std::string>& lines) {
    if (lines.empty()) return "- (none)";
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i) out += '\n';
        out += "- " + lines[i];
    }
    return out;
}

std::string seats_csv(const std::vector<game::Seat>& seats) {
    std::string out;
    for (std::size_t i = 0; i < seats.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(seats[i]);
    }
    return out;
}

const char* task_part_name(const TaskSpec& task) {
    switch (task.kind) {
        case DecisionKind::Kill: return "task_kill";
        case DecisionKind::Protect: return "task_protect";
        case DecisionKind::See: return "task_see";
        case DecisionKind::Vote: return "task_vote";
        case DecisionKind::Assess: return task.post_summary ? "task_assess_post" : "task_assess";
        case DecisionKind::Statement:
            return task.sheriff_summary ? "task_statement_summary" : "task_statement";
        case DecisionKind::Nominate: return "task_nominate";
    }
    return "task_statement";
}

} // namespace

PromptText render_prompt(const game::GameState& state, game::Seat actor, const TaskSpec& task,
                         const PresentationMap& pm, const ContextText& context,
                         const TemplateSet& templates) {
    if (!state.is_alive(actor)) {
        throw IllegalActionError("render_prompt: actor is dead");
    }
    auto known_seat = [&](game::Seat seat) {
        return std::any_of(state.players.begin(), state.players.end(),
                           [&](const auto& p) { return p.seat == seat; });
    };
    for (const auto& [seat, text] : context.truths) {
        (void)text;
        if (!known_seat(seat)) throw ValidationError("context references unknown seat");
    }
    for (const auto& [seat, text] : context.falsehoods) {
        (void)text;
        if (!known_seat(seat)) throw ValidationError("context references unknown seat");
    }

    const auto& self = state.player(actor);
    std::string self_line = "You are " + player_label(actor, pm) + ", the " +
                            [&] {
                                switch (self.role) {
                                    case game::Role::Werewolf: return "Werewolf";
                                    case game::Role::Villager: return "Villager";
                                    case game::Role::Seer: return "Seer";
                                    case game::Role::Guard: return "Guard";
                                }
                                return "Villager";
                            }() +
                            ".";

    std::string roster;
    for (const auto& p : state.players) {
        if (p.seat == actor || !p.alive) continue;
        if (!roster.empty()) roster += "; ";
        roster += player_label(p.seat, pm);
    }
    if (roster.empty()) roster = "(none)";

    std::vector<std::string> truth_lines, falsehood_lines;
    for (const auto& [seat, text] : context.truths) {
        truth_lines.push_back("Player " + std::to_string(seat) + ": " + text);
    }
    for (const auto& [seat, text] : context.falsehoods) {
        falsehood_lines.push_back("Player " + std::to_string(seat) + ": " + text);
    }
    std::string reliability;
    for (const auto& [seat, score] : context.reliability) {
        if (!reliability.empty()) reliability += ", ";
        reliability += "Player " + std::to_string(seat) + "=" + std::to_string(score);
    }
    if (reliability.empty()) reliability = "(none)";

    PromptText out;
    out.system_rules = templates.part("rules") + "\n" + templates.part("reply_format");
    out.context_block = expand(templates.part("context"),
                               {{"self_line", self_line},
                                {"roster", roster},
                                {"facts", bullet_list(context.facts)},
                                {"truths", bullet_list(truth_lines)},
                                {"falsehoods", bullet_list(falsehood_lines)},
                                {"reliability", reliability}});
    out.task_block = expand(templates.part(task_part_name(task)),
                            {{"round", std::to_string(task.round)},
                             {"legal_targets", seats_csv(task.legal_targets)}});
    out.rendered = out.system_rules + "\n" + out.context_block + "\n" + out.task_block;
    out.content_hash = util::sha256_hex(out.rendered);
    return out;
}

const std::vector<std::string>& gender_word_denylist() {
    static const std::vector<std::string> words = {
        "male", "males", "female", "females", "man", "men", "woman", "women",
        "he", "she", "his", "her", "hers", "him", "himself", "herself",
    };
    return words;
}

std::vector<std::string> find_denylist_hits(const std::string& text) {
    // tokenize to lowercase alphabetic runs; "man's" yields "man" + "s"
    std::vector<std::string> hits;
    const auto& deny = gender_word_denylist();
    std::string token;
    auto flush = [&] {
        if (!token.empty() && std::find(deny.begin(), deny.end(), token) != deny.end()) {
            hits.push_back(token);
        }
        token.clear();
    };
    for (char c : text) {
        if (c >= 'A' && c <= 'Z') token += static_cast<char>(c - 'A' + 'a');
        else if (c >= 'a' && c <= 'z') token += c;
        else flush();
    }
    flush();
    return hits;
}

} // namespace wwaudit::prompt
