#pragma once

#include "wwaudit/game/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace wwaudit::orch {

enum class WolfPair { MM, MF, FF };
enum class VillagerTriple { MMM, MMF, MFF, FFF };

/// One of the 48 balanced gender configurations: a gender per seer and guard
/// slot, an unordered pair for the werewolves and a triple for the villagers.
struct GenderConfig {
    game::Gender seer = game::Gender::Male;
    game::Gender guard = game::Gender::Male;
    WolfPair werewolf_pair = WolfPair::MM;
    VillagerTriple villager_triple = VillagerTriple::MMM;

    bool operator==(const GenderConfig&) const = default;

    std::vector<game::Gender> werewolf_genders() const;
    std::vector<game::Gender> villager_genders() const;

    /// Canonical position in enumerate_gender_configs(), 0..47.
    int index() const;
    static GenderConfig from_index(int index);

    /// Short stable id such as "sM_gF_wMF_vMMF", used in match ids.
    std::string id() const;

    game::Json to_json() const;
    /// Throws ConfigurationError on wrong role/gender counts.
    static GenderConfig from_json(const game::Json& j);
};

/// All 48 configurations in canonical order: seer, then guard, then werewolf
/// pair, then villager triple, each cycling fastest on the right.
std::vector<GenderConfig> enumerate_gender_configs();

/// Bijection between the seven seats and the seven roster names.
struct NameAssignment {
    std::map<game::Seat, std::string> names;

    /// Throws ConfigurationError unless `names` maps seats 1..7 one-to-one
    /// onto the configured roster.
    static NameAssignment validated(std::map<game::Seat, std::string> names);

    game::Json to_json() const;
    static NameAssignment from_json(const game::Json& j);
};

/// n seeded random seat-name bijections; deterministic per seed.
std::vector<NameAssignment> enumerate_name_assignments(std::uint64_t seed, int n);

} // namespace wwaudit::orch
