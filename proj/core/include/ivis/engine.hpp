// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ivis/code_table.hpp"
#include "ivis/ecm.hpp"
#include "ivis/input.hpp"
#include "ivis/procedure.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

/// The two interaction engines. Both are pure transition functions over an
/// EngineState value; neither touches the vehicle, they only emit ECM actions.
namespace ivis::interaction {

enum class DeviationKind {
    WrongButton,
    PrematureRelease,
    OutOfOrder,
    WrongIgnition,
    InvalidCode,
    Timeout,
};

std::string_view to_string(DeviationKind k) noexcept;
std::optional<DeviationKind> parse_deviation_kind(std::string_view name);

struct DeviationFlag {
    DeviationKind kind;
    Millis time{0};
    std::string detail;

    bool operator==(const DeviationFlag&) const = default;
};

/// Progress inside the current procedure step.
struct StepProgress {
    int count = 0;                     // presses or turns so far
    std::optional<Millis> hold_start;  // held button went down at
    int phase = 0;                     // HoldThrough: 0 await down, 1 await ignition, 2 await release
    bool pressed = false;              // PressRelease: current press is down

    bool operator==(const StepProgress&) const = default;
};

struct Idle {
    bool operator==(const Idle&) const = default;
};
struct InProcedure {
    std::size_t step_index = 0;
    StepProgress progress;
    bool operator==(const InProcedure&) const = default;
};
struct CodeEntry {
    std::string buffer;
    Millis last_digit{0};
    bool operator==(const CodeEntry&) const = default;
};

using EngineMode = std::variant<Idle, InProcedure, CodeEntry>;

inline constexpr Millis kCodeEntryTimeout = seconds(10);

struct EngineState {
    EngineMode mode{Idle{}};
    Millis last_event_time{0};

    // Code-entry configuration, fixed at construction.
    std::size_t code_length = 4;

    // Conventional model: instrument-cluster info page (0 = default view) and
    // whether the cluster shows its reset-mode screen.
    int info_page = 0;
    int info_pages = kDefaultInfoPages;
    bool reset_mode = false;

    // One-shot feedback line, cleared by the next event.
    std::string notice;

    bool operator==(const EngineState&) const = default;
};

EngineState make_conventional_engine(const ProcedureSpec& spec, Millis start = Millis{0});
EngineState make_icode_engine(const codes::ReferenceTable& table, Millis start = Millis{0});

struct StepResult {
    EngineState engine;
    std::vector<ecm::Action> actions;
    std::vector<DeviationFlag> flags;

    bool operator==(const StepResult&) const = default;
};

/// Advances the knob/button procedure. `vehicle` is the vehicle after the
/// event's physical effect (an ignition move) has been applied.
/// Throws Error(invalid_argument) if event time precedes engine.last_event_time.
StepResult conventional_step(EngineState engine, const ProcedureSpec& spec, const InputEvent& event,
                             const ecm::VehicleState& vehicle);

/// Reference-code entry. Keypad buttons register on release.
StepResult icode_step(EngineState engine, const codes::ReferenceTable& table, const InputEvent& event);

/// Overlay the engine contributes to the LCD; empty when it defers to the ECM.
ecm::LcdContent engine_display(const EngineState& engine, const ecm::VehicleState& vehicle);

/// "CODE: 30_ _" style prompt for a partially entered code.
std::string code_prompt(std::string_view buffer, std::size_t code_length);

/// Overlay lines first, remaining lines from the ECM render, clipped to 2x20.
ecm::LcdContent compose_display(const ecm::LcdContent& overlay, const ecm::LcdContent& lcd);

bool display_contains(const ecm::LcdContent& display, std::string_view pattern);

}  // namespace ivis::interaction
