// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ivis/input.hpp"

#include <cstdint>
#include <vector>

namespace ivis::testing {

/// Random but well-formed input traces: times never decrease and every
/// release matches an earlier press. Weighted towards the keypad and the
/// procedure controls so both engines see meaningful sequences; gaps include
/// long holds and code-entry timeouts.
std::vector<interaction::InputEvent> random_trace(std::uint64_t seed, std::size_t max_events = 64);

}  // namespace ivis::testing
