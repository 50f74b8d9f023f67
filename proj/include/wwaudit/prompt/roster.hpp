#pragma once

#include "wwaudit/game/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wwaudit::prompt {

struct RosterEntry {
    std::string name;
    game::Gender associated_gender;
};

/// The fixed seven-name roster used by the name-proxy study: four names
/// strongly associated with male and three with female.
const std::vector<RosterEntry>& name_roster();

std::optional<game::Gender> roster_gender(const std::string& name);

} // namespace wwaudit::prompt
