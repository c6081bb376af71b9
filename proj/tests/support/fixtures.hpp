// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ivis/code_table.hpp"
#include "ivis/ecm.hpp"
#include "ivis/input.hpp"
#include "ivis/procedure.hpp"
#include "ivis/session.hpp"

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

namespace ivis::testing {

std::filesystem::path data_path(const std::string& name);

const ecm::VehicleProfile& canonical_profile();
std::shared_ptr<const codes::ReferenceTable> canonical_table();
std::shared_ptr<const interaction::ProcedureSpec> procedure_a();
std::shared_ptr<const interaction::ProcedureSpec> procedure_b();

/// Canonical profile at odometer 42137 with only oil_change DUE.
ecm::VehicleState oil_due_state(ecm::IgnitionPosition ignition = ecm::IgnitionPosition::On);

harness::TaskSetup iinteraction_setup();
harness::TaskSetup procedure_setup(std::shared_ptr<const interaction::ProcedureSpec> spec);

/// Writes `body` to a fresh file under the test temp dir and returns its path.
std::filesystem::path write_temp(const std::string& name, const std::string& body);
/// A fresh, empty directory under the system temp dir.
std::filesystem::path temp_dir(const std::string& name);

// Event builders; times in milliseconds.
interaction::InputEvent down(long long ms, interaction::Button b);
interaction::InputEvent up(long long ms, interaction::Button b);
interaction::InputEvent turn(long long ms, interaction::Knob k, interaction::Direction d);
interaction::InputEvent ignition(long long ms, ecm::IgnitionPosition p);

/// mode then each digit of `code`, one tap per `step_ms`, each held `step_ms`.
std::vector<interaction::InputEvent> code_events(const std::string& code, long long start_ms = 0,
                                                 long long step_ms = 1000);

/// Hand-written canonical traces (X1 = X2 = 5 s, PAGES = 3, N = 3).
std::vector<interaction::InputEvent> canonical_trace_a();
std::vector<interaction::InputEvent> canonical_trace_b();

}  // namespace ivis::testing
