// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ivis/input.hpp"
#include "ivis/procedure.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

/// Scripted synthetic participants that drive a task on the virtual clock.
namespace ivis::harness {

struct Tap {
    interaction::Button button;
    Millis hold{0};
};
struct Press {
    interaction::Button button;
};
struct Release {
    interaction::Button button;
};
struct Turn {
    interaction::Knob knob;
    interaction::Direction direction;
};
struct Ignition {
    ecm::IgnitionPosition position;
};

using Gesture = std::variant<Tap, Press, Release, Turn, Ignition>;

struct ScriptAction {
    Millis time{0};
    Gesture gesture;
    bool injected = false;  // a deliberate deviation
};

struct AgentScript {
    std::string label;
    std::vector<ScriptAction> actions;

    /// Expands gestures into InputEvents. Throws Error(validation) when action
    /// times are not strictly increasing or a tap overlaps the next action.
    std::vector<interaction::InputEvent> events() const;
    std::size_t injected_count() const noexcept;
};

/// Appends gestures on a running cursor: each action starts `gap` after the
/// previous one, or when the previous hold ends if that is later.
class ScriptBuilder {
public:
    ScriptBuilder(std::string label, Millis start, Millis gap, Millis tap_hold);

    ScriptBuilder& tap(interaction::Button b);
    ScriptBuilder& hold(interaction::Button b, Millis duration);
    ScriptBuilder& press(interaction::Button b);
    ScriptBuilder& release(interaction::Button b);
    ScriptBuilder& turn(interaction::Knob k, interaction::Direction d);
    ScriptBuilder& ignition(ecm::IgnitionPosition p);
    ScriptBuilder& pause(Millis duration);
    /// Marks the next appended action as an injected deviation.
    ScriptBuilder& injected();

    AgentScript build() const;

private:
    ScriptBuilder& push(Gesture g, Millis duration);

    AgentScript script_;
    Millis cursor_;
    Millis gap_;
    Millis tap_hold_;
    bool mark_next_ = false;
};

/// mode, then the code's digits.
AgentScript code_entry_script(std::string label, std::string_view code, Millis gap, Millis tap_hold,
                              Millis start = Millis{0});

/// mode, a first attempt with `wrong_digit` at `wrong_position` (one injected
/// deviation), then the correct code.
AgentScript novice_code_script(std::string label, std::string_view code, std::size_t wrong_position,
                               int wrong_digit, Millis gap, Millis tap_hold, Millis start = Millis{0});

struct WrongPress {
    interaction::Button button;
};
struct ShortHold {
    Millis held{0};  // must be shorter than the step's min hold
};

struct Injection {
    std::size_t before_step = 0;
    std::variant<WrongPress, ShortHold> kind;
};

/// Expert performance of a procedure: the fewest gestures that satisfy each
/// step, holds released exactly at their minimum, plus any injections.
AgentScript procedure_script(std::string label, const interaction::ProcedureSpec& spec,
                             ecm::IgnitionPosition initial_ignition, Millis gap, Millis tap_hold,
                             const std::vector<Injection>& injections = {}, Millis start = Millis{0});

}  // namespace ivis::harness
