// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ivis/code_table.hpp"
#include "ivis/ecm.hpp"
#include "ivis/procedure.hpp"
#include "ivis/session.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ivis::service {

enum class ClockMode { Virtual, Wall };

std::string_view to_string(ClockMode m) noexcept;
std::optional<ClockMode> parse_clock_mode(std::string_view name);

// Environment variables that replace the corresponding scenario paths.
inline constexpr const char* kEnvProfile = "IVIS_PROFILE";
inline constexpr const char* kEnvCodeTable = "IVIS_CODE_TABLE";
inline constexpr const char* kEnvProcedure = "IVIS_PROCEDURE";

/// Scenario file, one directive per line:
///
///   profile canonical.profile
///   code_table reference_codes.table
///   procedure procedure_a.proc
///   model iinteraction
///   odometer 42137
///   due oil_change
///
/// Relative paths resolve against the scenario file's directory.
struct Scenario {
    std::filesystem::path profile;
    std::filesystem::path code_table;
    std::filesystem::path procedure;
    harness::InteractionModel model = harness::InteractionModel::IInteraction;
    std::optional<std::string> target;  // defaults to the procedure target, then the profile oil item
    double odometer = 0.0;
    Millis clock{0};
    ecm::IgnitionPosition ignition = ecm::IgnitionPosition::On;
    std::vector<std::string> due;
    ClockMode clock_mode = ClockMode::Virtual;
    interaction::ParamOverrides params;
    std::string participant_id = "P01";
    std::string task_id = "oil_reset";

    bool operator==(const Scenario&) const = default;
};

/// Throws Error(parse) with a line number for unknown keys or bad values and
/// Error(config) when a file required by the model is not named.
Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir = {});

/// Reads the file and applies IVIS_PROFILE / IVIS_CODE_TABLE / IVIS_PROCEDURE.
Scenario load_scenario(const std::filesystem::path& path);

/// A scenario with every referenced file parsed and cross-checked.
struct LoadedScenario {
    Scenario scenario;
    std::shared_ptr<const ecm::VehicleProfile> profile;
    std::shared_ptr<const codes::ReferenceTable> table;            // null if not named
    std::shared_ptr<const interaction::ProcedureSpec> procedure;  // null if not named
    ecm::VehicleState initial;
    std::string target;
    std::filesystem::path source;  // the scenario file, when loaded from one

    harness::TaskSetup setup() const;
};

/// Propagates the io/parse/schema error of a referenced file unchanged.
/// Throws Error(config) for a missing required file or a target that is not
/// a profile item, and Error(unknown_item) for an unknown DUE entry.
LoadedScenario load(const Scenario& scenario);
LoadedScenario load(const std::filesystem::path& scenario_path);

}  // namespace ivis::service
