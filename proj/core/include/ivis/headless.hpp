// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ivis/input.hpp"
#include "ivis/scenario.hpp"
#include "ivis/session.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace ivis::service {

/// A recorded input stream. On disk:
///
///   # optional comments
///   scenario oil_iinteraction.scenario
///   captured wall
///   1.000 down mode
///   2.000 up mode client=1.020
///
/// `scenario` is relative to the trace's directory; `captured` says which clock
/// stamped the events and defaults to virtual. Event lines follow the
/// InputEvent grammar.
struct Trace {
    std::optional<std::filesystem::path> scenario;
    ClockMode captured = ClockMode::Virtual;
    std::vector<interaction::InputEvent> events;

    bool operator==(const Trace&) const = default;
};

/// Throws Error(parse) with the offending line number.
Trace parse_trace(std::string_view text, const std::filesystem::path& base_dir = {});
/// Throws Error(io) if the file cannot be read.
Trace load_trace(const std::filesystem::path& path);
/// `scenario` is written relative to `base_dir` when possible.
std::string serialize(const Trace& trace, const std::filesystem::path& base_dir = {});
void save_trace(const std::filesystem::path& path, const Trace& trace);

/// Deterministic run of `events` through the scenario's engine on the virtual
/// clock, stopping once the target is reset.
harness::TaskRun run_headless(const LoadedScenario& scenario, const std::vector<interaction::InputEvent>& events);

/// Replays a trace against `scenario`. Throws Error(replay_refused) for
/// `clock == Wall`: a live clock would make the result depend on host timing.
harness::TaskRun replay(const LoadedScenario& scenario, const Trace& trace, ClockMode clock = ClockMode::Virtual);

/// Canonical single-line JSON of a vehicle state; equal states give
/// byte-identical snapshots.
std::string state_snapshot(const ecm::VehicleState& state);

}  // namespace ivis::service
