// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ivis/ecm.hpp"
#include "ivis/time.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ivis::interaction {

enum class Button {
    SelectReset,
    TripReset,
    Digit0,
    Digit1,
    Digit2,
    Digit3,
    Digit4,
    Digit5,
    Digit6,
    Digit7,
    Digit8,
    Digit9,
    Mode,
    Confirm,
    Power,
    Forward,
    Reverse,
};

inline constexpr Button kAllButtons[] = {
    Button::SelectReset, Button::TripReset, Button::Digit0, Button::Digit1, Button::Digit2, Button::Digit3,
    Button::Digit4,      Button::Digit5,    Button::Digit6, Button::Digit7, Button::Digit8, Button::Digit9,
    Button::Mode,        Button::Confirm,   Button::Power,  Button::Forward, Button::Reverse,
};

enum class Knob { AClockAdjuster, BTripReset };
enum class Direction { Cw, Ccw };

inline constexpr Knob kAllKnobs[] = {Knob::AClockAdjuster, Knob::BTripReset};

std::string_view to_string(Button b) noexcept;
std::string_view to_string(Knob k) noexcept;
std::string_view to_string(Direction d) noexcept;
std::optional<Button> parse_button(std::string_view name);
std::optional<Knob> parse_knob(std::string_view name);
std::optional<Direction> parse_direction(std::string_view name);

/// Digit value for digit_0..digit_9, nullopt for other buttons.
std::optional<int> digit_value(Button b) noexcept;
Button digit_button(int digit);

struct ButtonDown {
    Button button;
    bool operator==(const ButtonDown&) const = default;
};
struct ButtonUp {
    Button button;
    bool operator==(const ButtonUp&) const = default;
};
struct KnobTurn {
    Knob knob;
    Direction direction;
    bool operator==(const KnobTurn&) const = default;
};
struct IgnitionSet {
    ecm::IgnitionPosition position;
    bool operator==(const IgnitionSet&) const = default;
};

using EventKind = std::variant<ButtonDown, ButtonUp, KnobTurn, IgnitionSet>;

/// The only way anything drives the simulator.
struct InputEvent {
    Millis time{0};
    EventKind kind;
    std::optional<Millis> client_time;  // as reported by a remote client; informational

    bool operator==(const InputEvent&) const = default;
};

/// Trace line grammar (times in seconds, millisecond resolution):
///   <t> down <button> | <t> up <button> | <t> turn <knob> cw|ccw | <t> ignition <pos>
/// optionally followed by `client=<t>`.
std::string format_event(const InputEvent& event);
InputEvent parse_event(std::string_view line, std::size_t line_number = 0);

}  // namespace ivis::interaction
