#include "wwaudit/orchestrator/setup.hpp"

#include "wwaudit/errors.hpp"
#include "wwaudit/prompt/roster.hpp"
#include "wwaudit/util/rng.hpp"

#include <algorithm>

namespace wwaudit::orch {

using game::Gender;

namespace {

std::string genders_code(const std::vector<Gender>& gs) {
    std::string s;
    for (Gender g : gs) s += (g == Gender::Male ? 'M' : 'F');
    return s;
}

WolfPair wolf_pair_from_code(const std::string& code) {
    if (code == "MM") return WolfPair::MM;
    if (code == "MF" || code == "FM") return WolfPair::MF;
    if (code == "FF") return WolfPair::FF;
    throw ConfigurationError("werewolf pair must be two of M/F, got: " + code);
}

VillagerTriple villager_triple_from_code(std::string code) {
    // order inside the triple does not matter; canonicalize M-first
    std::sort(code.begin(), code.end(), [](char a, char b) { return a == 'M' && b == 'F'; });
    if (code == "MMM") return VillagerTriple::MMM;
    if (code == "MMF") return VillagerTriple::MMF;
    if (code == "MFF") return VillagerTriple::MFF;
    if (code == "FFF") return VillagerTriple::FFF;
    throw ConfigurationError("villager triple must be three of M/F, got: " + code);
}

Gender gender_from_code(const std::string& code) {
    if (code == "M" || code == "male") return Gender::Male;
    if (code == "F" || code == "female") return Gender::Female;
    throw ConfigurationError("bad gender: " + code);
}

} // namespace

std::vector<Gender> GenderConfig::werewolf_genders() const {
    switch (werewolf_pair) {
        case WolfPair::MM: return {Gender::Male, Gender::Male};
        case WolfPair::MF: return {Gender::Male, Gender::Female};
        case WolfPair::FF: return {Gender::Female, Gender::Female};
    }
    return {};
}

std::vector<Gender> GenderConfig::villager_genders() const {
    switch (villager_triple) {
        case VillagerTriple::MMM: return {Gender::Male, Gender::Male, Gender::Male};
        case VillagerTriple::MMF: return {Gender::Male, Gender::Male, Gender::Female};
        case VillagerTriple::MFF: return {Gender::Male, Gender::Female, Gender::Female};
        case VillagerTriple::FFF: return {Gender::Female, Gender::Female, Gender::Female};
    }
    return {};
}

int GenderConfig::index() const {
    int s = seer == Gender::Male ? 0 : 1;
    int g = guard == Gender::Male ? 0 : 1;
    int w = static_cast<int>(werewolf_pair);
    int v = static_cast<int>(villager_triple);
    return ((s * 2 + g) * 3 + w) * 4 + v;
}

GenderConfig GenderConfig::from_index(int index) {
    if (index < 0 || index >= 48) throw ConfigurationError("config index out of range");
    GenderConfig c;
    c.villager_triple = static_cast<VillagerTriple>(index % 4);
    index /= 4;
    c.werewolf_pair = static_cast<WolfPair>(index % 3);
    index /= 3;
    c.guard = (index % 2) == 0 ? Gender::Male : Gender::Female;
    index /= 2;
    c.seer = (index % 2) == 0 ? Gender::Male : Gender::Female;
    return c;
}

std::string GenderConfig::id() const {
    std::string s = "s";
    s += seer == Gender::Male ? 'M' : 'F';
    s += "_g";
    s += guard == Gender::Male ? 'M' : 'F';
    s += "_w" + genders_code(werewolf_genders());
    s += "_v" + genders_code(villager_genders());
    return s;
}

game::Json GenderConfig::to_json() const {
    return {{"seer", seer == Gender::Male ? "M" : "F"},
            {"guard", guard == Gender::Male ? "M" : "F"},
            {"werewolves", genders_code(werewolf_genders())},
            {"villagers", genders_code(villager_genders())}};
}

GenderConfig GenderConfig::from_json(const game::Json& j) {
    GenderConfig c;
    c.seer = gender_from_code(j.at("seer").get<std::string>());
    c.guard = gender_from_code(j.at("guard").get<std::string>());
    const auto wolves = j.at("werewolves").get<std::string>();
    if (wolves.size() != 2) {
        throw ConfigurationError("a match has exactly 2 werewolves, got " +
                                 std::to_string(wolves.size()));
    }
    c.werewolf_pair = wolf_pair_from_code(wolves);
    const auto villagers = j.at("villagers").get<std::string>();
    if (villagers.size() != 3) {
        throw ConfigurationError("a match has exactly 3 villagers, got " +
                                 std::to_string(villagers.size()));
    }
    c.villager_triple = villager_triple_from_code(villagers);
    return c;
}

std::vector<GenderConfig> enumerate_gender_configs() {
    std::vector<GenderConfig> out;
    out.reserve(48);
    for (int i = 0; i < 48; ++i) out.push_back(GenderConfig::from_index(i));
    return out;
}

NameAssignment NameAssignment::validated(std::map<game::Seat, std::string> names) {
    if (names.size() != static_cast<std::size_t>(game::kPlayerCount)) {
        throw ConfigurationError("name assignment must cover all 7 seats");
    }
    std::vector<std::string> used;
    for (const auto& [seat, name] : names) {
        if (seat < 1 || seat > game::kPlayerCount) {
            throw ConfigurationError("name assignment seat out of range");
        }
        if (!prompt::roster_gender(name)) {
            throw ConfigurationError("name not in roster: " + name);
        }
        used.push_back(name);
    }
    std::sort(used.begin(), used.end());
    if (std::adjacent_find(used.begin(), used.end()) != used.end()) {
        throw ConfigurationError("name assignment reuses a name");
    }
    NameAssignment a;
    a.names = std::move(names);
    return a;
}

game::Json NameAssignment::to_json() const {
    game::Json j = game::Json::object();
    for (const auto& [seat, name] : names) j[std::to_string(seat)] = name;
    return j;
}

NameAssignment NameAssignment::from_json(const game::Json& j) {
    std::map<game::Seat, std::string> names;
    for (auto it = j.begin(); it != j.end(); ++it) {
        names[std::stoi(it.key())] = it.value().get<std::string>();
    }
    return validated(std::move(names));
}

std::vector<NameAssignment> enumerate_name_assignments(std::uint64_t seed, int n) {
    const auto& roster = prompt::name_roster();
    std::vector<NameAssignment> out;
    out.reserve(static_cast<std::size_t>(n));
    util::Rng rng(util::derive_seed(seed, 0xae5));
    for (int i = 0; i < n; ++i) {
        std::vector<std::string> names;
        for (const auto& e : roster) names.push_back(e.name);
        rng.shuffle(names);
        std::map<game::Seat, std::string> m;
        for (int seat = 1; seat <= game::kPlayerCount; ++seat) {
            m[seat] = names[static_cast<std::size_t>(seat - 1)];
        }
        out.push_back(NameAssignment::validated(std::move(m)));
    }
    return out;
}

} // namespace wwaudit::orch
