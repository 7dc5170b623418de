#pragma once

#include <optional>
#include <span>

#include "padx/bigint.hpp"

namespace padx {

// Finite-evidence rules for limit statements. None of these prove a limit;
// they summarize what a truncated sequence shows.

/// Tail-window rule for "margins -> infinity": take the last ceil(n/4)
/// margins, split them into at most four consecutive blocks, and require
/// strictly increasing block minima with every tail margin above
/// `threshold`. A missing margin (not certifiable at the working precision)
/// fails the rule.
bool tail_window_passes(std::span<const std::optional<BigInt>> margins, long threshold);

/// Tail trend for decay conditions: the last ceil(n/2) margins (at least
/// two) are strictly increasing.
bool tail_trend_increasing(std::span<const BigInt> margins);

}  // namespace padx
