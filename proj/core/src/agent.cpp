// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#include "ivis/agent.hpp"
#include "ivis/error.hpp"

#include <algorithm>

namespace ivis::harness {

using namespace ivis::interaction;

std::vector<InputEvent> AgentScript::events() const
{
    std::vector<InputEvent> out;
    for (std::size_t i = 0; i < actions.size(); ++i) {
        const auto& a = actions[i];
        if (i > 0 && a.time <= actions[i - 1].time) {
            throw Error(Errc::validation, label + ": action times must be strictly increasing");
        }
        std::visit(
            [&](const auto& g) {
                using T = std::decay_t<decltype(g)>;
                if constexpr (std::is_same_v<T, Tap>) {
                    if (i + 1 < actions.size() && a.time + g.hold > actions[i + 1].time) {
                        throw Error(Errc::validation, label + ": tap overlaps the next action");
                    }
                    out.push_back(InputEvent{a.time, ButtonDown{g.button}, std::nullopt});
                    out.push_back(InputEvent{a.time + g.hold, ButtonUp{g.button}, std::nullopt});
                } else if constexpr (std::is_same_v<T, Press>) {
                    out.push_back(InputEvent{a.time, ButtonDown{g.button}, std::nullopt});
                } else if constexpr (std::is_same_v<T, Release>) {
                    out.push_back(InputEvent{a.time, ButtonUp{g.button}, std::nullopt});
                } else if constexpr (std::is_same_v<T, Turn>) {
                    out.push_back(InputEvent{a.time, KnobTurn{g.knob, g.direction}, std::nullopt});
                } else {
                    out.push_back(InputEvent{a.time, IgnitionSet{g.position}, std::nullopt});
                }
            },
            a.gesture);
    }
    return out;
}

std::size_t AgentScript::injected_count() const noexcept
{
    return static_cast<std::size_t>(
        std::count_if(actions.begin(), actions.end(), [](const ScriptAction& a) { return a.injected; }));
}

ScriptBuilder::ScriptBuilder(std::string label, Millis start, Millis gap, Millis tap_hold)
    : cursor_(start), gap_(gap), tap_hold_(tap_hold)
{
    if (gap <= Millis{0} || tap_hold <= Millis{0}) {
        throw Error(Errc::validation, "script gap and tap hold must be positive");
    }
    script_.label = std::move(label);
}

ScriptBuilder& ScriptBuilder::push(Gesture g, Millis duration)
{
    script_.actions.push_back(ScriptAction{cursor_, std::move(g), mark_next_});
    mark_next_ = false;
    cursor_ += std::max(gap_, duration);
    return *this;
}

ScriptBuilder& ScriptBuilder::tap(Button b) { return push(Tap{b, tap_hold_}, tap_hold_); }
ScriptBuilder& ScriptBuilder::hold(Button b, Millis duration) { return push(Tap{b, duration}, duration); }
ScriptBuilder& ScriptBuilder::press(Button b) { return push(Press{b}, Millis{0}); }
ScriptBuilder& ScriptBuilder::release(Button b) { return push(Release{b}, Millis{0}); }
ScriptBuilder& ScriptBuilder::turn(Knob k, Direction d) { return push(Turn{k, d}, Millis{0}); }
ScriptBuilder& ScriptBuilder::ignition(ecm::IgnitionPosition p) { return push(Ignition{p}, Millis{0}); }

ScriptBuilder& ScriptBuilder::pause(Millis duration)
{
    cursor_ += duration;
    return *this;
}

ScriptBuilder& ScriptBuilder::injected()
{
    mark_next_ = true;
    return *this;
}

AgentScript ScriptBuilder::build() const
{
    return script_;
}

namespace {

void tap_digits(ScriptBuilder& b, std::string_view code)
{
    for (char c : code) {
        if (c < '0' || c > '9') {
            throw Error(Errc::validation, "code must be decimal digits");
        }
        b.tap(digit_button(c - '0'));
    }
}

}  // namespace

AgentScript code_entry_script(std::string label, std::string_view code, Millis gap, Millis tap_hold, Millis start)
{
    ScriptBuilder b{std::move(label), start, gap, tap_hold};
    b.tap(Button::Mode);
    tap_digits(b, code);
    return b.build();
}

AgentScript novice_code_script(std::string label, std::string_view code, std::size_t wrong_position,
                               int wrong_digit, Millis gap, Millis tap_hold, Millis start)
{
    if (wrong_position >= code.size()) {
        throw Error(Errc::validation, "wrong_position past the end of the code");
    }
    if (wrong_digit < 0 || wrong_digit > 9 || wrong_digit == code[wrong_position] - '0') {
        throw Error(Errc::validation, "wrong_digit must differ from the code's digit");
    }
    ScriptBuilder b{std::move(label), start, gap, tap_hold};
    b.tap(Button::Mode);
    for (std::size_t i = 0; i < code.size(); ++i) {
        const int d = i == wrong_position ? wrong_digit : code[i] - '0';
        if (i == wrong_position) {
            b.injected();
        }
        b.tap(digit_button(d));
    }
    tap_digits(b, code);
    return b.build();
}

AgentScript procedure_script(std::string label, const ProcedureSpec& spec, ecm::IgnitionPosition initial_ignition,
                             Millis gap, Millis tap_hold, const std::vector<Injection>& injections, Millis start)
{
    ScriptBuilder b{std::move(label), start, gap, tap_hold};
    auto ignition = initial_ignition;

    for (std::size_t index = 0; index <= spec.steps.size(); ++index) {
        for (const auto& inj : injections) {
            if (inj.before_step != index) {
                continue;
            }
            if (const auto* wrong = std::get_if<WrongPress>(&inj.kind)) {
                b.injected().tap(wrong->button);
                continue;
            }
            const auto* hold = index < spec.steps.size() ? std::get_if<HoldFor>(&spec.steps[index]) : nullptr;
            const auto held = std::get<ShortHold>(inj.kind).held;
            if (!hold || held >= hold->min_hold || held <= Millis{0}) {
                throw Error(Errc::validation, "short hold injection needs a following hold step it undercuts");
            }
            b.injected().hold(hold->button, held);
        }
        if (index == spec.steps.size()) {
            break;
        }

        std::visit(
            [&](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, SetIgnition>) {
                    const bool already = ignition == s.position ||
                                         (s.position == ecm::IgnitionPosition::On &&
                                          ignition == ecm::IgnitionPosition::Start);
                    if (!already) {
                        b.ignition(s.position);
                        ignition = s.position;
                    }
                } else if constexpr (std::is_same_v<T, PressRelease>) {
                    for (int i = 0; i < s.count; ++i) {
                        b.tap(s.button);
                    }
                } else if constexpr (std::is_same_v<T, HoldFor>) {
                    b.hold(s.button, s.min_hold);
                } else if constexpr (std::is_same_v<T, HoldThrough>) {
                    b.press(s.button).ignition(s.position).release(s.button);
                    ignition = s.position;
                } else if constexpr (std::is_same_v<T, TurnKnob>) {
                    for (int i = 0; i < s.count; ++i) {
                        b.turn(s.knob, s.direction.value_or(Direction::Ccw));
                    }
                }
            },
            spec.steps[index]);
    }
    return b.build();
}

}  // namespace ivis::harness
