#pragma once

#include <stdexcept>
#include <string>

namespace wwaudit {

/// Bad experiment/plan/game configuration (wrong role counts, unknown name, ...).
struct ConfigurationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A game action that violates the rules (dead actor, illegal target, wrong phase).
struct IllegalActionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Structurally well-formed input carrying out-of-range or illegal values.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input that cannot be parsed at all (missing decision block, bad JSON line).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Upstream chat endpoint failed after retries, or refused the request.
struct GatewayError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A replay-mode run needed data that the read-only cache does not hold.
struct ReplayError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Stored artifact fails its own digest or internal consistency check.
struct IntegrityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace wwaudit
