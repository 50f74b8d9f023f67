#include <CLI11.hpp>

#include "wwaudit/agent/policies.hpp"
#include "wwaudit/errors.hpp"
#include "wwaudit/gateway/gateway.hpp"
#include "wwaudit/metrics/report.hpp"
#include "wwaudit/orchestrator/replay.hpp"
#include "wwaudit/orchestrator/runner.hpp"
#include "wwaudit/util/fs.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace wwaudit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitIntegrity = 4;

struct SimulateArgs {
    std::string plan_path;
    std::string out_dir;
    std::string backend_override;
    std::string cache_mode = "off";
    std::string cache_dir = "cache";
    std::string template_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int workers = 0;
    bool allow_partial = false;
    bool dry_run = false;
};

prompt::TemplateSet resolve_templates(const orch::ExperimentPlan& plan,
                                      const std::string& flag_dir) {
    if (!flag_dir.empty()) return prompt::TemplateSet::load_dir(flag_dir);
    if (plan.template_dir) return prompt::TemplateSet::load_dir(*plan.template_dir);
    return prompt::TemplateSet::builtin();
}

std::unique_ptr<agent::AgentBackend> resolve_backend(const orch::ExperimentPlan& plan,
                                                     const SimulateArgs& args) {
    if (plan.backend != "llm") {
        return agent::make_scripted_backend_by_name(plan.backend);
    }
    gateway::GatewayConfig cfg = gateway::GatewayConfig::from_env();
    cfg.temperature = plan.temperature;
    cfg.max_tokens = plan.max_tokens;
    auto gw = std::make_shared<gateway::LlmGateway>(cfg);
    std::shared_ptr<gateway::ResponseCache> cache;
    const auto mode = gateway::cache_mode_from_string(args.cache_mode);
    if (mode != gateway::CacheMode::Off) {
        cache = std::make_shared<gateway::ResponseCache>(args.cache_dir, mode);
    }
    return gateway::make_llm_backend(std::move(gw), std::move(cache));
}

int run_simulate(const SimulateArgs& args, bool with_report, const std::string& gamma3_flag) {
    orch::ExperimentPlan plan = orch::ExperimentPlan::load(args.plan_path);
    if (!args.backend_override.empty()) plan.backend = args.backend_override;
    if (args.seed_set) plan.seed = args.seed;
    if (!gamma3_flag.empty()) plan.gamma3_mode = probe::gamma3_mode_from_string(gamma3_flag);

    const prompt::TemplateSet templates = resolve_templates(plan, args.template_dir);

    orch::RunOptions options;
    options.out_dir = args.out_dir;
    options.workers = args.workers;
    options.dry_run = args.dry_run;

    if (args.dry_run) {
        for (const auto& spec : plan.matches()) {
            std::printf("%s seed=%llu\n", spec.match_id.c_str(),
                        static_cast<unsigned long long>(spec.seed));
        }
        return kExitOk;
    }

    auto backend = resolve_backend(plan, args);
    orch::RunSummary summary = orch::run_plan(plan, options, *backend, templates);
    std::printf("matches: %d total, %d new, %d resumed, %d aborted\n", summary.total,
                summary.completed, summary.skipped, summary.aborted);

    if (with_report) {
        auto transcripts = orch::load_run_dir(args.out_dir);
        metrics::AuditReport report =
            metrics::aggregate(transcripts, plan.gamma3_mode, args.workers);
        metrics::write_report(report, fs::path(args.out_dir) / "report");
        std::printf("report: %s\n", (fs::path(args.out_dir) / "report").string().c_str());
    }

    if (summary.aborted > 0 && !args.allow_partial) {
        std::fprintf(stderr, "error: %d match(es) aborted\n", summary.aborted);
        return kExitData;
    }
    return kExitOk;
}

int run_report(const std::string& run_dir, const std::string& out_dir,
               const std::string& gamma3_flag, int workers) {
    auto transcripts = orch::load_run_dir(run_dir);
    if (transcripts.empty()) {
        std::fprintf(stderr, "error: no usable transcripts in %s\n", run_dir.c_str());
        return kExitData;
    }
    probe::Gamma3Mode mode = probe::Gamma3Mode::PerPlayer;
    const fs::path manifest = fs::path(run_dir) / "manifest.json";
    if (fs::exists(manifest)) {
        const auto j = game::Json::parse(util::read_file(manifest));
        if (j.contains("plan")) {
            mode = orch::ExperimentPlan::from_json(j.at("plan")).gamma3_mode;
        }
    }
    if (!gamma3_flag.empty()) mode = probe::gamma3_mode_from_string(gamma3_flag);

    metrics::AuditReport report = metrics::aggregate(transcripts, mode, workers);
    metrics::write_report(report, out_dir);
    std::printf("report written to %s (%d matches, %d draws)\n", out_dir.c_str(),
                report.matches, report.draws);
    return kExitOk;
}

int run_replay_file(const fs::path& path) {
    const orch::Transcript t = orch::Transcript::load(path);
    const orch::ReplayReport report = orch::replay_transcript(t);
    if (!report.ok) {
        std::fprintf(stderr, "replay FAILED %s: %s\n", path.string().c_str(),
                     report.error.c_str());
        return kExitIntegrity;
    }
    std::printf("replay ok %s: rounds=%d outcome=%s hash=%s\n", t.header.match_id.c_str(),
                report.rounds,
                t.outcome ? game::to_string(*t.outcome) : "none",
                report.final_state_hash.substr(0, 12).c_str());
    return kExitOk;
}

int run_replay(const std::string& transcript, const std::string& run_dir) {
    if (!transcript.empty()) return run_replay_file(transcript);
    int rc = kExitOk;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(run_dir)) {
        if (entry.path().extension() == ".jsonl") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        std::fprintf(stderr, "error: no transcripts in %s\n", run_dir.c_str());
        return kExitData;
    }
    for (const auto& f : files) rc = std::max(rc, run_replay_file(f));
    return rc;
}

int run_validate_cache(const std::string& cache_dir) {
    const auto corrupt = gateway::ResponseCache::validate_dir(cache_dir);
    if (corrupt.empty()) {
        std::printf("cache ok: %s\n", cache_dir.c_str());
        return kExitOk;
    }
    for (const auto& entry : corrupt) {
        std::fprintf(stderr, "corrupt cache entry: %s\n", entry.c_str());
    }
    return kExitIntegrity;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Werewolf simulation and gender-fairness audit toolkit"};
    app.require_subcommand(1);

    SimulateArgs sim;
    std::string gamma3_flag;

    auto add_sim_flags = [&](CLI::App* cmd) {
        cmd->add_option("--plan", sim.plan_path, "plan file (JSON)")->required();
        cmd->add_option("--out", sim.out_dir, "output run directory")->required();
        cmd->add_option("--backend", sim.backend_override,
                        "override plan backend: llm, gender-blind, female-target-bias, "
                        "male-trust-bias");
        cmd->add_option("--cache", sim.cache_mode, "llm response cache mode: rw, ro, off");
        cmd->add_option("--cache-dir", sim.cache_dir, "llm response cache directory");
        cmd->add_option("--templates", sim.template_dir, "prompt template directory");
        cmd->add_option("--seed", sim.seed, "override plan seed")
            ->each([&](const std::string&) { sim.seed_set = true; });
        cmd->add_option("--workers", sim.workers, "worker pool size (0 = cpu count)");
        cmd->add_flag("--allow-partial", sim.allow_partial,
                      "exit 0 even when matches aborted");
        cmd->add_flag("--dry-run", sim.dry_run, "print the match schedule, write nothing");
    };

    CLI::App* simulate = app.add_subcommand("simulate", "run a plan and write transcripts");
    add_sim_flags(simulate);

    CLI::App* audit =
        app.add_subcommand("audit", "run a plan, then write the metric report");
    add_sim_flags(audit);
    audit->add_option("--gamma3", gamma3_flag, "s3 similarity mode: per_player, literal_max");

    std::string report_run, report_out;
    int report_workers = 0;
    CLI::App* report = app.add_subcommand("report", "recompute metrics from transcripts");
    report->add_option("--run", report_run, "run directory with transcripts")->required();
    report->add_option("--out", report_out, "report output directory")->required();
    report->add_option("--gamma3", gamma3_flag, "s3 similarity mode: per_player, literal_max");
    report->add_option("--workers", report_workers, "worker pool size (0 = cpu count)");

    std::string replay_file, replay_run;
    CLI::App* replay = app.add_subcommand("replay", "verify transcript integrity");
    replay->add_option("--transcript", replay_file, "one transcript file");
    replay->add_option("--run", replay_run, "verify every transcript in a run directory");

    std::string vc_dir = "cache";
    CLI::App* validate = app.add_subcommand("validate-cache", "check cache entry digests");
    validate->add_option("--cache-dir", vc_dir, "cache directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (simulate->parsed()) return run_simulate(sim, false, "");
        if (audit->parsed()) return run_simulate(sim, true, gamma3_flag);
        if (report->parsed()) {
            return run_report(report_run, report_out, gamma3_flag, report_workers);
        }
        if (replay->parsed()) {
            if (replay_file.empty() && replay_run.empty()) {
                std::fprintf(stderr, "error: replay needs --transcript or --run\n");
                return kExitUsage;
            }
            return run_replay(replay_file, replay_run);
        }
        if (validate->parsed()) return run_validate_cache(vc_dir);
    } catch (const ConfigurationError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kExitUsage;
    } catch (const IntegrityError& e) {
        std::fprintf(stderr, "integrity error: %s\n", e.what());
        return kExitIntegrity;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return kExitData;
    } catch (const ReplayError& e) {
        std::fprintf(stderr, "replay error: %s\n", e.what());
        return kExitData;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return kExitUsage;
}
