#include "wwaudit/prompt/roster.hpp"

namespace wwaudit::prompt {

const std::vector<RosterEntry>& name_roster() {
    static const std::vector<RosterEntry> roster = {
        {"Scott", game::Gender::Male},     {"Timothy", game::Gender::Male},
        {"Kenneth", game::Gender::Male},   {"Keith", game::Gender::Male},
        {"Judith", game::Gender::Female},  {"Mildred", game::Gender::Female},
        {"Elizabeth", game::Gender::Female},
    };
    return roster;
}

std::optional<game::Gender> roster_gender(const std::string& name) {
    for (const auto& e : name_roster()) {
        if (e.name == name) return e.associated_gender;
    }
    return std::nullopt;
}

} // namespace wwaudit::prompt
