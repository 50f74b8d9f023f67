#include "wwaudit/orchestrator/runner.hpp"

#include "wwaudit/errors.hpp"
#include "wwaudit/util/fs.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdio>

namespace fs = std::filesystem;

namespace wwaudit::orch {

using game::Json;

namespace {

std::optional<std::pair<game::Seat, game::Gender>> sheriff_of(const Transcript& t) {
    std::optional<game::Seat> sheriff;
    std::map<game::Seat, game::Gender> genders;
    for (const auto& e : t.events) {
        if (e.kind == game::EventKind::RoleAssigned && e.actor) {
            genders[*e.actor] =
                game::gender_from_string(e.payload.at("gender").get<std::string>());
        }
        if (e.kind == game::EventKind::SheriffElected) sheriff = e.target;
    }
    if (!sheriff) return std::nullopt;
    return std::make_pair(*sheriff, genders.at(*sheriff));
}

MatchStatus status_from_transcript(const MatchSpec& spec, const Transcript& t,
                                   const std::string& status) {
    MatchStatus s;
    s.match_id = spec.match_id;
    s.seed = spec.seed;
    s.status = status;
    s.outcome = t.outcome;
    s.final_state_hash = t.final_state_hash;
    if (auto sheriff = sheriff_of(t)) {
        s.sheriff_seat = sheriff->first;
        s.sheriff_gender = sheriff->second;
    }
    return s;
}

void write_manifest(const ExperimentPlan& plan, const RunSummary& summary,
                    const std::string& backend_id, const std::string& template_version,
                    const fs::path& path) {
    Json matches = Json::array();
    for (const auto& m : summary.matches) {
        Json mj{{"match_id", m.match_id},
                {"seed", m.seed},
                {"status", m.status},
                {"final_state_hash", m.final_state_hash}};
        mj["outcome"] = m.outcome ? Json(game::to_string(*m.outcome)) : Json(nullptr);
        mj["sheriff_seat"] = m.sheriff_seat ? Json(*m.sheriff_seat) : Json(nullptr);
        mj["sheriff_gender"] =
            m.sheriff_gender ? Json(game::to_string(*m.sheriff_gender)) : Json(nullptr);
        matches.push_back(std::move(mj));
    }
    Json manifest{{"plan", plan.to_json()},
                  {"backend_id", backend_id},
                  {"template_version", template_version},
                  {"total", summary.total},
                  {"completed", summary.completed},
                  {"skipped", summary.skipped},
                  {"aborted", summary.aborted},
                  {"quality", summary.quality.to_json()},
                  {"matches", std::move(matches)}};
    util::atomic_write_file(path, manifest.dump(2) + "\n");
}

} // namespace

RunSummary run_plan(const ExperimentPlan& plan, const RunOptions& options,
                    agent::AgentBackend& backend, const prompt::TemplateSet& templates) {
    const std::vector<MatchSpec> specs = plan.matches();
    RunSummary summary;
    summary.total = static_cast<int>(specs.size());

    if (options.dry_run) {
        for (const auto& spec : specs) {
            MatchStatus s;
            s.match_id = spec.match_id;
            s.seed = spec.seed;
            s.status = "scheduled";
            summary.matches.push_back(std::move(s));
        }
        return summary;
    }

    fs::create_directories(options.out_dir);
    int workers = options.workers > 0 ? options.workers : plan.workers;
    if (workers <= 0) workers = omp_get_max_threads();

    const int n = static_cast<int>(specs.size());
    std::vector<MatchStatus> statuses(specs.size());
    std::vector<QualityCounters> qualities(specs.size());
    std::vector<std::string> failures(specs.size());

#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (int i = 0; i < n; ++i) {
        const MatchSpec& spec = specs[static_cast<std::size_t>(i)];
        const fs::path path = options.out_dir / (spec.match_id + ".jsonl");
        try {
            if (fs::exists(path)) {
                try {
                    Transcript existing = Transcript::load(path);
                    if (!existing.aborted) {
                        statuses[static_cast<std::size_t>(i)] =
                            status_from_transcript(spec, existing, "skipped");
                        qualities[static_cast<std::size_t>(i)] = existing.quality;
                        continue;
                    }
                } catch (const std::exception&) {
                    // unreadable or truncated: fall through and regenerate
                }
            }
            MatchResult result = run_match(spec, plan, backend, templates);
            util::atomic_write_file(path, result.transcript.to_jsonl());
            statuses[static_cast<std::size_t>(i)] =
                status_from_transcript(spec, result.transcript, "ok");
            qualities[static_cast<std::size_t>(i)] = result.transcript.quality;
        } catch (const GatewayError& e) {
            // backend exhausted mid-match: mark aborted, keep the batch going
            Transcript aborted;
            aborted.header.plan_id = plan.plan_id;
            aborted.header.match_id = spec.match_id;
            aborted.header.backend_id = backend.id();
            aborted.header.template_version = templates.version;
            aborted.header.seed = spec.seed;
            aborted.header.setup =
                spec.config ? Json{{"kind", "gender"}, {"config", spec.config->to_json()}}
                            : Json{{"kind", "name"}, {"names", spec.names->to_json()}};
            aborted.header.probe_plan = plan.probe_plan.to_json();
            aborted.aborted = true;
            aborted.events_hash = aborted.compute_events_hash();
            util::atomic_write_file(path, aborted.to_jsonl());
            MatchStatus s;
            s.match_id = spec.match_id;
            s.seed = spec.seed;
            s.status = "aborted";
            statuses[static_cast<std::size_t>(i)] = std::move(s);
            (void)e;
        } catch (const std::exception& e) {
            failures[static_cast<std::size_t>(i)] = e.what();
        }
    }

    for (const auto& failure : failures) {
        if (!failure.empty()) throw std::runtime_error("match failed: " + failure);
    }

    for (std::size_t i = 0; i < specs.size(); ++i) {
        summary.quality += qualities[i];
        const std::string& st = statuses[i].status;
        if (st == "ok") summary.completed += 1;
        else if (st == "skipped") summary.skipped += 1;
        else if (st == "aborted") summary.aborted += 1;
        summary.matches.push_back(statuses[i]);
    }

    summary.manifest_path = options.out_dir / "manifest.json";
    write_manifest(plan, summary, backend.id(), templates.version, summary.manifest_path);
    return summary;
}

std::vector<Transcript> load_run_dir(const fs::path& dir) {
    if (!fs::is_directory(dir)) {
        throw ParseError("run directory not found: " + dir.string());
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".jsonl") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<Transcript> out;
    for (const auto& f : files) {
        Transcript t = Transcript::load(f);
        if (!t.aborted) out.push_back(std::move(t));
    }
    return out;
}

} // namespace wwaudit::orch
