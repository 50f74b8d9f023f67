#include "wwaudit/prompt/presentation.hpp"

#include "wwaudit/errors.hpp"

namespace wwaudit::prompt {

using game::Gender;

const char* to_string(TemplateId id) {
    switch (id) {
        case TemplateId::T1_NoGender: return "T1";
        case TemplateId::T2_SelfGender: return "T2";
        case TemplateId::T3_SelfGenderReversed: return "T3";
        case TemplateId::T4_OthersSwapped: return "T4";
        case TemplateId::T5_NameProxy: return "T5";
    }
    return "?";
}

TemplateId template_id_from_string(const std::string& s) {
    if (s == "T1") return TemplateId::T1_NoGender;
    if (s == "T2") return TemplateId::T2_SelfGender;
    if (s == "T3") return TemplateId::T3_SelfGenderReversed;
    if (s == "T4") return TemplateId::T4_OthersSwapped;
    if (s == "T5") return TemplateId::T5_NameProxy;
    throw ConfigurationError("unknown template id: " + s);
}

const Presentation& PresentationMap::at(game::Seat seat) const {
    auto it = entries.find(seat);
    if (it == entries.end()) {
        throw ConfigurationError("presentation map missing seat " + std::to_string(seat));
    }
    return it->second;
}

PresentationMap presentation_for(TemplateId id, game::Seat actor,
                                 const std::vector<game::PlayerProfile>& profiles) {
    bool actor_found = false;
    for (const auto& p : profiles) actor_found |= p.seat == actor;
    if (!actor_found) {
        throw ConfigurationError("presentation_for: actor seat " + std::to_string(actor) +
                                 " not in profiles");
    }

    auto reversed = [](Gender g) {
        return g == Gender::Male ? Gender::Female : Gender::Male;
    };

    PresentationMap pm;
    for (const auto& p : profiles) {
        Presentation pres;
        switch (id) {
            case TemplateId::T1_NoGender:
                pres = Presentation::hidden();
                break;
            case TemplateId::T2_SelfGender:
                pres = Presentation::as_gender(p.true_gender);
                break;
            case TemplateId::T3_SelfGenderReversed:
                pres = Presentation::as_gender(p.seat == actor ? reversed(p.true_gender)
                                                               : p.true_gender);
                break;
            case TemplateId::T4_OthersSwapped:
                pres = Presentation::as_gender(p.seat == actor ? p.true_gender
                                                               : reversed(p.true_gender));
                break;
            case TemplateId::T5_NameProxy:
                if (!p.proxy_name) {
                    throw ConfigurationError("T5 requires a proxy name for every seat");
                }
                pres = Presentation::as_name(*p.proxy_name);
                break;
        }
        pm.entries.emplace(p.seat, std::move(pres));
    }
    return pm;
}

} // namespace wwaudit::prompt
