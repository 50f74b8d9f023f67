#include "wwaudit/probe/probe.hpp"

#include "wwaudit/errors.hpp"
#include "wwaudit/util/sha256.hpp"

#include <algorithm>

namespace wwaudit::probe {

using agent::AgentReply;
using game::Json;
using prompt::TemplateId;

Scenario DecisionProbe::scenario() const {
    auto s = scenario_of(kind);
    if (!s) throw ValidationError("probe recorded for an unaudited decision kind");
    return *s;
}

const ArmResult* DecisionProbe::arm(TemplateId id) const {
    auto it = variants.find(id);
    if (it == variants.end() || it->second.failed) return nullptr;
    return &it->second;
}

Json DecisionProbe::to_json() const {
    Json arms = Json::object();
    for (const auto& [tid, arm] : variants) {
        Json scores = Json::object();
        for (const auto& [seat, score] : arm.reply.reliability.scores) {
            scores[std::to_string(seat)] = score;
        }
        Json action{{"type", agent::to_string(arm.reply.action.type)}};
        action["target"] = arm.reply.action.target ? Json(*arm.reply.action.target)
                                                   : Json(nullptr);
        arms[prompt::to_string(tid)] = Json{{"raw", arm.reply.raw},
                                            {"action", std::move(action)},
                                            {"reliability", std::move(scores)},
                                            {"reasoning", arm.reply.reasoning},
                                            {"prompt_hash", arm.prompt_hash},
                                            {"fallback", arm.fallback_used},
                                            {"reprompted", arm.reprompted},
                                            {"failed", arm.failed}};
    }
    Json j{{"match_id", match_id},
           {"round", round},
           {"actor", actor},
           {"kind", to_string(kind)},
           {"scenario", to_string(scenario())},
           {"role", game::to_string(actor_role)},
           {"gender", game::to_string(actor_gender)},
           {"canonical", prompt::to_string(canonical)},
           {"arms", std::move(arms)},
           {"partial", partial}};
    j["name"] = actor_name ? Json(*actor_name) : Json(nullptr);
    return j;
}

DecisionProbe DecisionProbe::from_json(const Json& j) {
    DecisionProbe p;
    p.match_id = j.at("match_id").get<std::string>();
    p.round = j.at("round").get<int>();
    p.actor = j.at("actor").get<game::Seat>();
    p.kind = decision_kind_from_string(j.at("kind").get<std::string>());
    p.actor_role = game::role_from_string(j.at("role").get<std::string>());
    p.actor_gender = game::gender_from_string(j.at("gender").get<std::string>());
    if (!j.at("name").is_null()) p.actor_name = j.at("name").get<std::string>();
    p.canonical = prompt::template_id_from_string(j.at("canonical").get<std::string>());
    p.partial = j.at("partial").get<bool>();
    for (const auto& [tid_str, arm_j] : j.at("arms").items()) {
        ArmResult arm;
        arm.template_id = prompt::template_id_from_string(tid_str);
        arm.prompt_hash = arm_j.at("prompt_hash").get<std::string>();
        arm.fallback_used = arm_j.at("fallback").get<bool>();
        arm.reprompted = arm_j.value("reprompted", false);
        arm.failed = arm_j.at("failed").get<bool>();
        arm.reply.raw = arm_j.at("raw").get<std::string>();
        arm.reply.reasoning = arm_j.at("reasoning").get<std::string>();
        const auto& action = arm_j.at("action");
        const std::string type = action.at("type").get<std::string>();
        if (type == "kill") arm.reply.action.type = agent::ActionType::Kill;
        else if (type == "protect") arm.reply.action.type = agent::ActionType::Protect;
        else if (type == "see") arm.reply.action.type = agent::ActionType::See;
        else if (type == "vote") arm.reply.action.type = agent::ActionType::Vote;
        else if (type == "abstain") arm.reply.action.type = agent::ActionType::Abstain;
        else if (type == "statement") arm.reply.action.type = agent::ActionType::Statement;
        else throw ParseError("unknown action type: " + type);
        if (!action.at("target").is_null()) {
            arm.reply.action.target = action.at("target").get<game::Seat>();
        }
        for (const auto& [seat, score] : arm_j.at("reliability").items()) {
            arm.reply.reliability.scores[std::stoi(seat)] = score.get<int>();
        }
        p.variants.emplace(arm.template_id, std::move(arm));
    }
    return p;
}

agent::AgentReply fallback_reply(const agent::ReplyConstraints& constraints) {
    AgentReply reply;
    for (game::Seat seat : constraints.score_seats) reply.reliability.scores[seat] = 5;
    reply.reasoning = "Deterministic fallback after a malformed reply.";
    switch (constraints.kind) {
        case DecisionKind::Kill:
            reply.action.type = agent::ActionType::Kill;
            break;
        case DecisionKind::Protect:
            reply.action.type = agent::ActionType::Protect;
            break;
        case DecisionKind::See:
            reply.action.type = agent::ActionType::See;
            break;
        case DecisionKind::Nominate:
            reply.action.type = agent::ActionType::Vote;
            break;
        case DecisionKind::Vote:
        case DecisionKind::Assess:
            reply.action.type = agent::ActionType::Abstain;
            reply.raw = agent::format_reply(reply);
            return reply;
        case DecisionKind::Statement:
            reply.action.type = agent::ActionType::Statement;
            reply.raw = agent::format_reply(reply);
            return reply;
    }
    if (constraints.legal_targets.empty()) {
        throw ValidationError("fallback for a targeting decision needs legal targets");
    }
    reply.action.target =
        *std::min_element(constraints.legal_targets.begin(), constraints.legal_targets.end());
    reply.raw = agent::format_reply(reply);
    return reply;
}

ProbeOutcome run_probe(const game::GameState& state, const ProbeRequest& request,
                       agent::AgentBackend& backend, const prompt::TemplateSet& templates) {
    if (std::find(request.plan.begin(), request.plan.end(), request.canonical) ==
        request.plan.end()) {
        throw ConfigurationError("probe plan does not contain the canonical template");
    }

    ProbeOutcome out;
    DecisionProbe& probe = out.probe;
    probe.match_id = state.match_id;
    probe.round = request.task.round;
    probe.actor = request.actor;
    probe.kind = request.task.kind;
    const auto& profile = state.player(request.actor);
    probe.actor_role = profile.role;
    probe.actor_gender = profile.true_gender;
    probe.actor_name = profile.proxy_name;
    probe.canonical = request.canonical;

    for (TemplateId tid : request.plan) {
        const auto pm = prompt::presentation_for(tid, request.actor, state.players);
        prompt::PromptText text =
            prompt::render_prompt(state, request.actor, request.task, pm, request.context,
                                  templates);
        if (tid == TemplateId::T1_NoGender || tid == TemplateId::T5_NameProxy) {
            out.denylist_hits += static_cast<int>(prompt::find_denylist_hits(text.rendered).size());
        }

        ArmResult arm;
        arm.template_id = tid;
        arm.prompt_hash = text.content_hash;
        const std::string raw = backend.respond(text, request.task.kind);
        try {
            arm.reply = agent::parse_reply(raw, request.constraints);
        } catch (const std::exception& first) {
            // one corrective re-prompt, then the arm is abandoned
            prompt::PromptText corrected = text;
            corrected.rendered += std::string("\n\nYour previous reply was invalid (") +
                                  first.what() +
                                  "). Reply again with exactly one well-formed decision block.";
            corrected.content_hash = util::sha256_hex(corrected.rendered);
            arm.reprompted = true;
            const std::string raw2 = backend.respond(corrected, request.task.kind);
            try {
                arm.reply = agent::parse_reply(raw2, request.constraints);
            } catch (const std::exception&) {
                arm.failed = true;
                arm.reply = agent::AgentReply{};
                arm.reply.raw = raw2;
            }
        }
        probe.variants.emplace(tid, std::move(arm));
    }

    for (const auto& [tid, arm] : probe.variants) {
        (void)tid;
        probe.partial |= arm.failed;
    }

    const ArmResult& canonical_arm = probe.variants.at(request.canonical);
    if (canonical_arm.failed) {
        out.canonical_reply = fallback_reply(request.constraints);
        out.canonical_fallback = true;
        // keep the probe arm failed so metrics exclude it; only the game
        // advance uses the fallback
    } else {
        out.canonical_reply = canonical_arm.reply;
    }
    return out;
}

} // namespace wwaudit::probe
