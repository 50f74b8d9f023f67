#include "wwaudit/orchestrator/transcript.hpp"

#include "wwaudit/errors.hpp"
#include "wwaudit/util/fs.hpp"
#include "wwaudit/util/sha256.hpp"
#include "wwaudit/util/strings.hpp"

namespace wwaudit::orch {

using game::Json;

Json QualityCounters::to_json() const {
    return Json{{"denylist_hits", denylist_hits},
                {"fallbacks", fallbacks},
                {"reprompts", reprompts},
                {"partial_probes", partial_probes},
                {"excluded_sheriff_days", excluded_sheriff_days}};
}

QualityCounters QualityCounters::from_json(const Json& j) {
    QualityCounters q;
    q.denylist_hits = j.value("denylist_hits", 0);
    q.fallbacks = j.value("fallbacks", 0);
    q.reprompts = j.value("reprompts", 0);
    q.partial_probes = j.value("partial_probes", 0);
    q.excluded_sheriff_days = j.value("excluded_sheriff_days", 0);
    return q;
}

QualityCounters& QualityCounters::operator+=(const QualityCounters& other) {
    denylist_hits += other.denylist_hits;
    fallbacks += other.fallbacks;
    reprompts += other.reprompts;
    partial_probes += other.partial_probes;
    excluded_sheriff_days += other.excluded_sheriff_days;
    return *this;
}

std::string Transcript::compute_events_hash() const {
    std::string all;
    for (const auto& e : events) {
        all += game::to_json(e).dump();
        all += '\n';
    }
    return util::sha256_hex(all);
}

std::string Transcript::to_jsonl() const {
    std::string out;
    Json header_j{{"t", "header"},
                  {"schema", header.schema},
                  {"plan_id", header.plan_id},
                  {"match_id", header.match_id},
                  {"backend_id", header.backend_id},
                  {"template_version", header.template_version},
                  {"seed", header.seed},
                  {"setup", header.setup},
                  {"probe_plan", header.probe_plan}};
    out += header_j.dump();
    out += '\n';

    for (std::size_t i = 0; i < events.size(); ++i) {
        Json ej = game::to_json(events[i]);
        ej["t"] = "e";
        ej["i"] = i;
        out += ej.dump();
        out += '\n';
    }
    for (const auto& p : probes) {
        Json pj = p.to_json();
        pj["t"] = "probe";
        out += pj.dump();
        out += '\n';
    }

    Json end_j{{"t", "end"},
               {"final_state_hash", final_state_hash},
               {"events_hash", events_hash},
               {"aborted", aborted},
               {"quality", quality.to_json()}};
    end_j["outcome"] = outcome ? Json(game::to_string(*outcome)) : Json(nullptr);
    out += end_j.dump();
    out += '\n';
    return out;
}

Transcript Transcript::parse(const std::string& content) {
    Transcript t;
    bool have_header = false;
    bool have_end = false;
    for (const std::string& line : util::split_lines(content)) {
        if (util::trim(line).empty()) continue;
        Json j;
        try {
            j = Json::parse(line);
        } catch (const std::exception& e) {
            throw ParseError(std::string("bad transcript line: ") + e.what());
        }
        const std::string type = j.value("t", "");
        if (type == "header") {
            t.header.schema = j.at("schema").get<int>();
            t.header.plan_id = j.at("plan_id").get<std::string>();
            t.header.match_id = j.at("match_id").get<std::string>();
            t.header.backend_id = j.at("backend_id").get<std::string>();
            t.header.template_version = j.at("template_version").get<std::string>();
            t.header.seed = j.at("seed").get<std::uint64_t>();
            t.header.setup = j.at("setup");
            t.header.probe_plan = j.at("probe_plan");
            have_header = true;
        } else if (type == "e") {
            t.events.push_back(game::event_from_json(j));
        } else if (type == "probe") {
            t.probes.push_back(probe::DecisionProbe::from_json(j));
        } else if (type == "end") {
            t.final_state_hash = j.at("final_state_hash").get<std::string>();
            t.events_hash = j.at("events_hash").get<std::string>();
            t.aborted = j.at("aborted").get<bool>();
            t.quality = QualityCounters::from_json(j.at("quality"));
            if (!j.at("outcome").is_null()) {
                t.outcome = game::outcome_from_string(j.at("outcome").get<std::string>());
            }
            have_end = true;
        } else {
            throw ParseError("unknown transcript line type: " + type);
        }
    }
    if (!have_header) throw ParseError("transcript has no header line");
    if (!have_end) throw ParseError("transcript has no end line (truncated?)");
    return t;
}

Transcript Transcript::load(const std::filesystem::path& path) {
    return parse(util::read_file(path));
}

std::optional<GenderConfig> Transcript::gender_config() const {
    if (header.setup.value("kind", "") != "gender") return std::nullopt;
    return GenderConfig::from_json(header.setup.at("config"));
}

std::optional<NameAssignment> Transcript::name_assignment() const {
    if (header.setup.value("kind", "") != "name") return std::nullopt;
    return NameAssignment::from_json(header.setup.at("names"));
}

} // namespace wwaudit::orch
