#pragma once

#include "wwaudit/decision.hpp"
#include "wwaudit/prompt/render.hpp"

#include <string>

namespace wwaudit::agent {

/// Anything that can answer a rendered prompt. Implementations must be
/// deterministic given (prompt content, configuration, cache state) and must
/// tolerate concurrent calls from different matches.
class AgentBackend {
public:
    virtual ~AgentBackend() = default;
    virtual std::string respond(const prompt::PromptText& prompt, DecisionKind kind) = 0;
    virtual std::string id() const = 0;
};

} // namespace wwaudit::agent
