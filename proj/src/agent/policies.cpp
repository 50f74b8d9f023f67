#include "wwaudit/agent/policies.hpp"

#include "wwaudit/agent/reply.hpp"
#include "wwaudit/errors.hpp"
#include "wwaudit/prompt/roster.hpp"
#include "wwaudit/util/rng.hpp"
#include "wwaudit/util/strings.hpp"

#include <algorithm>

namespace wwaudit::agent {

using game::Gender;
using game::Seat;

namespace {

std::vector<Seat> parse_seat_csv(const std::string& csv) {
    std::vector<Seat> out;
    for (const auto& tok : util::split(csv, ',')) {
        const std::string t = util::trim(tok);
        if (!t.empty()) out.push_back(std::stoi(t));
    }
    return out;
}

/// "Player 4 (female)" / "Player 2" / "Player 6, named Scott" -> seat + gender
std::pair<Seat, std::optional<Gender>> parse_player_entry(const std::string& entry) {
    const std::string e = util::trim(entry);
    if (!util::starts_with(e, "Player ")) throw ParseError("bad player entry: " + e);
    std::size_t pos = 7;
    std::size_t end = pos;
    while (end < e.size() && e[end] >= '0' && e[end] <= '9') ++end;
    if (end == pos) throw ParseError("bad player entry: " + e);
    const Seat seat = std::stoi(e.substr(pos, end - pos));

    std::optional<Gender> gender;
    if (e.find("(male)", end) != std::string::npos) {
        gender = Gender::Male;
    } else if (e.find("(female)", end) != std::string::npos) {
        gender = Gender::Female;
    } else if (auto named = e.find(", named ", end); named != std::string::npos) {
        std::string rest = e.substr(named + 8);
        if (auto comma = rest.find(','); comma != std::string::npos) rest.resize(comma);
        std::string name = util::trim(rest);
        while (!name.empty() && name.back() == '.') name.pop_back();
        gender = prompt::roster_gender(name); // biased policies infer from names
    }
    return {seat, gender};
}

} // namespace

PromptView parse_prompt_view(const std::string& rendered) {
    PromptView view;
    bool have_self = false;
    for (const std::string& raw_line : util::split_lines(rendered)) {
        const std::string line = util::trim(raw_line);
        if (util::starts_with(line, "You are Player ")) {
            auto [seat, gender] = parse_player_entry(line.substr(8));
            view.self_seat = seat;
            view.presented[seat] = gender;
            have_self = true;
        } else if (util::starts_with(line, "Other players: ")) {
            std::string body = line.substr(15);
            if (!body.empty() && body.back() == '.') body.pop_back();
            if (util::trim(body) == "(none)") continue;
            for (const auto& entry : util::split(body, ';')) {
                auto [seat, gender] = parse_player_entry(entry);
                view.roster_seats.push_back(seat);
                view.presented[seat] = gender;
            }
        } else if (util::starts_with(line, "Legal targets: ")) {
            std::string body = line.substr(15);
            if (!body.empty() && body.back() == '.') body.pop_back();
            view.legal_targets = parse_seat_csv(body);
        } else if (util::starts_with(line, "Score these players: ")) {
            std::string body = line.substr(21);
            if (!body.empty() && body.back() == '.') body.pop_back();
            view.legal_targets = parse_seat_csv(body);
        }
    }
    if (!have_self) throw ParseError("prompt has no self line");
    return view;
}

namespace {

bool is_targeting(DecisionKind kind) {
    switch (kind) {
        case DecisionKind::Kill:
        case DecisionKind::Protect:
        case DecisionKind::See:
        case DecisionKind::Nominate:
        case DecisionKind::Vote:
        case DecisionKind::Assess: return true;
        case DecisionKind::Statement: return false;
    }
    return false;
}

ActionType target_verb(DecisionKind kind) {
    switch (kind) {
        case DecisionKind::Kill: return ActionType::Kill;
        case DecisionKind::Protect: return ActionType::Protect;
        case DecisionKind::See: return ActionType::See;
        default: return ActionType::Vote;
    }
}

class ScriptedBackend : public AgentBackend {
public:
    explicit ScriptedBackend(PolicyId id) : id_(id) {}

    std::string respond(const prompt::PromptText& prompt, DecisionKind kind) override {
        const PromptView view = parse_prompt_view(prompt.rendered);

        AgentReply reply;
        for (Seat seat : view.roster_seats) {
            reply.reliability.scores[seat] = score_for(view, seat);
        }
        if (is_targeting(kind)) {
            if (view.legal_targets.empty()) {
                throw ParseError("prompt lists no legal targets");
            }
            reply.action.type = target_verb(kind);
            reply.action.target = pick_target(view);
            reply.reasoning = "Scripted policy decision.";
        } else {
            reply.action.type = ActionType::Statement;
            reply.reasoning = "Player " + std::to_string(view.self_seat) +
                              " has reviewed the discussion and has nothing further to add.";
        }
        return format_reply(reply);
    }

    std::string id() const override { return to_string(id_); }

private:
    int score_for(const PromptView& view, Seat seat) const {
        if (id_ != PolicyId::MaleTrustBias) return 5;
        const auto& gender = view.presented.at(seat);
        if (!gender) return 5;
        return *gender == Gender::Male ? 8 : 3;
    }

    Seat pick_target(const PromptView& view) const {
        if (id_ == PolicyId::FemaleTargetBias) {
            for (Seat seat : view.legal_targets) { // lowest seat first
                const auto it = view.presented.find(seat);
                if (it != view.presented.end() && it->second == Gender::Female) return seat;
            }
        }
        return *std::min_element(view.legal_targets.begin(), view.legal_targets.end());
    }

    PolicyId id_;
};

class RandomLegalBackend : public AgentBackend {
public:
    explicit RandomLegalBackend(std::uint64_t seed) : seed_(seed) {}

    std::string respond(const prompt::PromptText& prompt, DecisionKind kind) override {
        const PromptView view = parse_prompt_view(prompt.rendered);
        // derive all choices from (seed, prompt content) so replays agree
        std::uint64_t h = seed_;
        for (char c : prompt.content_hash) h = util::mix64(h ^ static_cast<std::uint64_t>(c));

        AgentReply reply;
        for (Seat seat : view.roster_seats) {
            h = util::mix64(h);
            reply.reliability.scores[seat] = static_cast<int>(h % 11);
        }
        if (is_targeting(kind)) {
            h = util::mix64(h);
            const bool may_abstain =
                kind == DecisionKind::Vote || kind == DecisionKind::Assess;
            const std::size_t n = view.legal_targets.size() + (may_abstain ? 1 : 0);
            const std::size_t pick = static_cast<std::size_t>(h % n);
            if (may_abstain && pick == view.legal_targets.size()) {
                reply.action.type = ActionType::Abstain;
            } else {
                reply.action.type = target_verb(kind);
                reply.action.target = view.legal_targets[pick];
            }
            reply.reasoning = "Seeded random choice.";
        } else {
            reply.action.type = ActionType::Statement;
            reply.reasoning = "Player " + std::to_string(view.self_seat) +
                              " keeps this round's thoughts brief.";
        }
        return format_reply(reply);
    }

    std::string id() const override { return "random-legal:" + std::to_string(seed_); }

private:
    std::uint64_t seed_;
};

} // namespace

const char* to_string(PolicyId id) {
    switch (id) {
        case PolicyId::GenderBlind: return "gender-blind";
        case PolicyId::FemaleTargetBias: return "female-target-bias";
        case PolicyId::MaleTrustBias: return "male-trust-bias";
    }
    return "?";
}

std::unique_ptr<AgentBackend> make_scripted_backend(PolicyId id) {
    return std::make_unique<ScriptedBackend>(id);
}

std::unique_ptr<AgentBackend> make_scripted_backend_by_name(const std::string& name) {
    if (name == "gender-blind") return make_scripted_backend(PolicyId::GenderBlind);
    if (name == "female-target-bias") return make_scripted_backend(PolicyId::FemaleTargetBias);
    if (name == "male-trust-bias") return make_scripted_backend(PolicyId::MaleTrustBias);
    if (util::starts_with(name, "random-legal:")) {
        return make_random_legal_backend(std::stoull(name.substr(13)));
    }
    throw ConfigurationError("unknown scripted backend: " + name);
}

std::unique_ptr<AgentBackend> make_random_legal_backend(std::uint64_t seed) {
    return std::make_unique<RandomLegalBackend>(seed);
}

} // namespace wwaudit::agent
