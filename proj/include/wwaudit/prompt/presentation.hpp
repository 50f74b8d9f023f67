#pragma once

#include "wwaudit/game/types.hpp"

#include <map>
#include <string>
#include <vector>

namespace wwaudit::prompt {

/// The five gender-presentation settings a decision point can be rendered
/// under. T2 is the factual world; the others are its counterfactuals.
enum class TemplateId {
    T1_NoGender,
    T2_SelfGender,
    T3_SelfGenderReversed,
    T4_OthersSwapped,
    T5_NameProxy,
};

const char* to_string(TemplateId id);
TemplateId template_id_from_string(const std::string& s);

struct Presentation {
    enum class Kind { Hidden, AsMale, AsFemale, AsName };
    Kind kind = Kind::Hidden;
    std::string name; // AsName only

    static Presentation hidden() { return {Kind::Hidden, {}}; }
    static Presentation as_gender(game::Gender g) {
        return {g == game::Gender::Male ? Kind::AsMale : Kind::AsFemale, {}};
    }
    static Presentation as_name(std::string n) { return {Kind::AsName, std::move(n)}; }

    bool operator==(const Presentation&) const = default;
};

/// How every seat's gender is rendered in one prompt.
struct PresentationMap {
    std::map<game::Seat, Presentation> entries;

    const Presentation& at(game::Seat seat) const;
};

/// Derives the per-seat presentation for one template and one actor.
/// Throws ConfigurationError if the actor seat is missing, or if T5 is
/// requested for profiles without proxy names.
PresentationMap presentation_for(TemplateId id, game::Seat actor,
                                 const std::vector<game::PlayerProfile>& profiles);

} // namespace wwaudit::prompt
