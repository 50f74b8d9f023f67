#pragma once

#include "wwaudit/probe/probe.hpp"

#include <optional>

namespace wwaudit::probe {

/// How the s3 similarity treats per-player score differences. PerPlayer is
/// the default: each other player contributes 11 minus their own absolute
/// difference. LiteralMax applies the single largest difference to every
/// term instead.
enum class Gamma3Mode { PerPlayer, LiteralMax };

Gamma3Mode gamma3_mode_from_string(const std::string& s);
const char* to_string(Gamma3Mode m);

/// Behaviour change when gender (or name) information is hidden: compares
/// the canonical arm against the no-gender arm. s1/s2 yield {0,1}; s3 yields
/// the fraction of other players whose score changed, in [0,1]. Empty when
/// an arm is missing or failed (metric-skip).
std::optional<double> delta(const DecisionProbe& probe);

/// Behaviour similarity between the no-gender arm and the self-gender-g arm
/// (the true-gender template when g matches the actor, the reversed one
/// otherwise). s1/s2 yield {0,1}; s3 yields [1,11], 11 = identical scores.
std::optional<double> gamma(const DecisionProbe& probe, game::Gender g,
                            Gamma3Mode mode = Gamma3Mode::PerPlayer);

enum class Closeness { CloserToMale, CloserToFemale, Neither };

const char* to_string(Closeness c);

/// Which self-gender arm the no-gender behaviour is closer to: the side with
/// the strictly larger similarity wins, equality is Neither.
std::optional<Closeness> closeness(const DecisionProbe& probe,
                                   Gamma3Mode mode = Gamma3Mode::PerPlayer);

/// Swap-invariance: 1 iff the decision (target for s1/s2, the entire
/// reliability vector for s3) is identical between the canonical arm and the
/// others-swapped arm.
std::optional<double> theta(const DecisionProbe& probe);

} // namespace wwaudit::probe
