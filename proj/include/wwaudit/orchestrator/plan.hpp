#pragma once

#include "wwaudit/orchestrator/setup.hpp"
#include "wwaudit/probe/comparators.hpp"
#include "wwaudit/prompt/presentation.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace wwaudit::orch {

/// Which templates each audited scenario is probed under. The canonical arm
/// drives the game.
struct ProbePlan {
    std::vector<prompt::TemplateId> s1;
    std::vector<prompt::TemplateId> s2;
    std::vector<prompt::TemplateId> s3;
    prompt::TemplateId canonical = prompt::TemplateId::T2_SelfGender;

    const std::vector<prompt::TemplateId>& arms(Scenario s) const;

    /// Gender audit default: all four gender templates, canonical T2.
    static ProbePlan gender_default();
    /// Name study default: name-proxy vs omitted, canonical T5.
    static ProbePlan name_default();

    game::Json to_json() const;
    static ProbePlan from_json(const game::Json& j);
};

enum class PlanKind { Gender, Name };

struct MatchSpec {
    std::string match_id;
    std::uint64_t seed = 0;
    std::optional<GenderConfig> config;  // gender plans
    std::optional<NameAssignment> names; // name plans
};

struct ExperimentPlan {
    std::string plan_id = "plan";
    PlanKind kind = PlanKind::Gender;
    std::vector<GenderConfig> configs = enumerate_gender_configs();
    int repetitions = 1;       // per config (gender) or per assignment (name)
    int name_repetitions = 70; // number of seeded name assignments
    std::uint64_t seed = 1;
    std::string backend = "gender-blind";
    ProbePlan probe_plan = ProbePlan::gender_default();
    probe::Gamma3Mode gamma3_mode = probe::Gamma3Mode::PerPlayer;
    int workers = 0; // 0 = hardware concurrency
    std::optional<std::string> template_dir;
    double temperature = 0.0; // llm backend
    int max_tokens = 512;

    /// The full derived match list, in canonical order with per-match seeds.
    std::vector<MatchSpec> matches() const;

    game::Json to_json() const;
    static ExperimentPlan from_json(const game::Json& j);
    static ExperimentPlan load(const std::filesystem::path& path);
};

} // namespace wwaudit::orch
