// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>

namespace ivis {

// Virtual time is kept in integer milliseconds since the scenario epoch so that
// every timing comparison in the simulator is exact.
using Millis = std::chrono::milliseconds;

inline constexpr Millis seconds(std::int64_t s) noexcept { return Millis{s * 1000}; }
inline constexpr Millis days(std::int64_t d) noexcept { return Millis{d * 86'400'000}; }

/// Fixed three-decimal rendering, e.g. 5000ms -> "5.000".
std::string format_seconds(Millis t);

/// Parses a non-negative decimal seconds literal with at most three fractional
/// digits ("5", "5s", "1.25"). Throws ivis::Error(parse) otherwise.
Millis parse_seconds(std::string_view text);

}  // namespace ivis
