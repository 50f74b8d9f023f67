#include "wwaudit/orchestrator/plan.hpp"

#include "wwaudit/errors.hpp"
#include "wwaudit/util/fs.hpp"
#include "wwaudit/util/rng.hpp"

#include <cstdio>

namespace wwaudit::orch {

using game::Json;
using prompt::TemplateId;

namespace {

Json templates_to_json(const std::vector<TemplateId>& v) {
    Json out = Json::array();
    for (TemplateId t : v) out.push_back(prompt::to_string(t));
    return out;
}

std::vector<TemplateId> templates_from_json(const Json& j) {
    std::vector<TemplateId> out;
    for (const auto& t : j) out.push_back(prompt::template_id_from_string(t.get<std::string>()));
    return out;
}

std::string two_digits(int n) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%02d", n);
    return buf;
}

} // namespace

const std::vector<TemplateId>& ProbePlan::arms(Scenario s) const {
    switch (s) {
        case Scenario::S1_Skill: return s1;
        case Scenario::S2_Vote: return s2;
        case Scenario::S3_Reliability: return s3;
    }
    return s1;
}

ProbePlan ProbePlan::gender_default() {
    ProbePlan p;
    const std::vector<TemplateId> all = {TemplateId::T2_SelfGender, TemplateId::T1_NoGender,
                                         TemplateId::T3_SelfGenderReversed,
                                         TemplateId::T4_OthersSwapped};
    p.s1 = all;
    p.s2 = all;
    p.s3 = all;
    p.canonical = TemplateId::T2_SelfGender;
    return p;
}

ProbePlan ProbePlan::name_default() {
    ProbePlan p;
    const std::vector<TemplateId> pair = {TemplateId::T5_NameProxy, TemplateId::T1_NoGender};
    p.s1 = pair;
    p.s2 = pair;
    p.s3 = pair;
    p.canonical = TemplateId::T5_NameProxy;
    return p;
}

Json ProbePlan::to_json() const {
    return Json{{"s1", templates_to_json(s1)},
                {"s2", templates_to_json(s2)},
                {"s3", templates_to_json(s3)},
                {"canonical", prompt::to_string(canonical)}};
}

ProbePlan ProbePlan::from_json(const Json& j) {
    ProbePlan p;
    p.s1 = templates_from_json(j.at("s1"));
    p.s2 = templates_from_json(j.at("s2"));
    p.s3 = templates_from_json(j.at("s3"));
    p.canonical = prompt::template_id_from_string(j.at("canonical").get<std::string>());
    return p;
}

std::vector<MatchSpec> ExperimentPlan::matches() const {
    std::vector<MatchSpec> out;
    if (kind == PlanKind::Gender) {
        int index = 0;
        for (const auto& config : configs) {
            for (int rep = 0; rep < repetitions; ++rep, ++index) {
                MatchSpec m;
                m.match_id = "g" + two_digits(config.index()) + "r" + std::to_string(rep);
                m.seed = util::derive_seed(seed, static_cast<std::uint64_t>(index));
                m.config = config;
                out.push_back(std::move(m));
            }
        }
    } else {
        const auto assignments = enumerate_name_assignments(seed, name_repetitions);
        int index = 0;
        for (int a = 0; a < name_repetitions; ++a) {
            for (int rep = 0; rep < repetitions; ++rep, ++index) {
                MatchSpec m;
                m.match_id = "n" + two_digits(a) + "r" + std::to_string(rep);
                m.seed = util::derive_seed(seed, 0x4000 + static_cast<std::uint64_t>(index));
                m.names = assignments[static_cast<std::size_t>(a)];
                out.push_back(std::move(m));
            }
        }
    }
    return out;
}

Json ExperimentPlan::to_json() const {
    Json configs_j = Json::array();
    for (const auto& c : configs) configs_j.push_back(c.to_json());
    Json j{{"plan_id", plan_id},
           {"kind", kind == PlanKind::Gender ? "gender" : "name"},
           {"configs", configs_j},
           {"repetitions", repetitions},
           {"name_repetitions", name_repetitions},
           {"seed", seed},
           {"backend", backend},
           {"probe_plan", probe_plan.to_json()},
           {"gamma3_mode", probe::to_string(gamma3_mode)},
           {"workers", workers},
           {"temperature", temperature},
           {"max_tokens", max_tokens}};
    if (template_dir) j["template_dir"] = *template_dir;
    return j;
}

ExperimentPlan ExperimentPlan::from_json(const Json& j) {
    ExperimentPlan p;
    p.plan_id = j.at("plan_id").get<std::string>();
    const std::string kind = j.value("kind", "gender");
    if (kind == "gender") p.kind = PlanKind::Gender;
    else if (kind == "name") p.kind = PlanKind::Name;
    else throw ConfigurationError("plan kind must be gender or name, got: " + kind);

    if (j.contains("configs")) {
        if (j.at("configs").is_string()) {
            if (j.at("configs").get<std::string>() != "all48") {
                throw ConfigurationError("configs must be \"all48\" or an explicit array");
            }
            p.configs = enumerate_gender_configs();
        } else {
            p.configs.clear();
            for (const auto& c : j.at("configs")) {
                p.configs.push_back(GenderConfig::from_json(c));
            }
            if (p.configs.empty()) throw ConfigurationError("plan has an empty config list");
        }
    }
    p.repetitions = j.value("repetitions", 1);
    if (p.repetitions < 1) throw ConfigurationError("repetitions must be >= 1");
    p.name_repetitions = j.value("name_repetitions", 70);
    if (p.kind == PlanKind::Name && p.name_repetitions < 1) {
        throw ConfigurationError("name_repetitions must be >= 1");
    }
    p.seed = j.value("seed", std::uint64_t{1});
    p.backend = j.value("backend", "gender-blind");
    if (j.contains("probe_plan")) {
        p.probe_plan = ProbePlan::from_json(j.at("probe_plan"));
    } else {
        p.probe_plan =
            p.kind == PlanKind::Gender ? ProbePlan::gender_default() : ProbePlan::name_default();
    }
    p.gamma3_mode = probe::gamma3_mode_from_string(j.value("gamma3_mode", "per_player"));
    p.workers = j.value("workers", 0);
    if (j.contains("template_dir")) p.template_dir = j.at("template_dir").get<std::string>();
    p.temperature = j.value("temperature", 0.0);
    p.max_tokens = j.value("max_tokens", 512);
    return p;
}

ExperimentPlan ExperimentPlan::load(const std::filesystem::path& path) {
    Json j;
    try {
        j = Json::parse(util::read_file(path));
    } catch (const std::exception& e) {
        throw ConfigurationError("cannot read plan " + path.string() + ": " + e.what());
    }
    return from_json(j);
}

} // namespace wwaudit::orch
