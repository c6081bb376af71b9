// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#include "ivis/input.hpp"
#include "ivis/error.hpp"

#include "text.hpp"

namespace ivis::interaction {

std::string_view to_string(Button b) noexcept
{
    switch (b) {
    case Button::SelectReset: return "select_reset";
    case Button::TripReset: return "trip_reset";
    case Button::Digit0: return "digit_0";
    case Button::Digit1: return "digit_1";
    case Button::Digit2: return "digit_2";
    case Button::Digit3: return "digit_3";
    case Button::Digit4: return "digit_4";
    case Button::Digit5: return "digit_5";
    case Button::Digit6: return "digit_6";
    case Button::Digit7: return "digit_7";
    case Button::Digit8: return "digit_8";
    case Button::Digit9: return "digit_9";
    case Button::Mode: return "mode";
    case Button::Confirm: return "confirm";
    case Button::Power: return "power";
    case Button::Forward: return "forward";
    case Button::Reverse: return "reverse";
    }
    return "?";
}

std::string_view to_string(Knob k) noexcept
{
    return k == Knob::AClockAdjuster ? "A_clock_adjuster" : "B_trip_reset";
}

std::string_view to_string(Direction d) noexcept
{
    return d == Direction::Cw ? "cw" : "ccw";
}

std::optional<Button> parse_button(std::string_view name)
{
    for (auto b : kAllButtons) {
        if (to_string(b) == name) {
            return b;
        }
    }
    return std::nullopt;
}

std::optional<Knob> parse_knob(std::string_view name)
{
    if (name == "A_clock_adjuster" || name == "A") return Knob::AClockAdjuster;
    if (name == "B_trip_reset" || name == "B") return Knob::BTripReset;
    return std::nullopt;
}

std::optional<Direction> parse_direction(std::string_view name)
{
    const auto n = text::lower(name);
    if (n == "cw") return Direction::Cw;
    if (n == "ccw") return Direction::Ccw;
    return std::nullopt;
}

std::optional<int> digit_value(Button b) noexcept
{
    const auto i = static_cast<int>(b);
    const auto zero = static_cast<int>(Button::Digit0);
    if (i >= zero && i <= static_cast<int>(Button::Digit9)) {
        return i - zero;
    }
    return std::nullopt;
}

Button digit_button(int digit)
{
    if (digit < 0 || digit > 9) {
        throw Error(Errc::invalid_argument, "digit out of range");
    }
    return static_cast<Button>(static_cast<int>(Button::Digit0) + digit);
}

std::string format_event(const InputEvent& event)
{
    std::string out = format_seconds(event.time) + " ";
    std::visit(
        [&out](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, ButtonDown>) {
                out += "down " + std::string(to_string(k.button));
            } else if constexpr (std::is_same_v<T, ButtonUp>) {
                out += "up " + std::string(to_string(k.button));
            } else if constexpr (std::is_same_v<T, KnobTurn>) {
                out += "turn " + std::string(to_string(k.knob)) + " " + std::string(to_string(k.direction));
            } else {
                out += "ignition " + std::string(ecm::to_string(k.position));
            }
        },
        event.kind);
    if (event.client_time) {
        out += " client=" + format_seconds(*event.client_time);
    }
    return out;
}

InputEvent parse_event(std::string_view line, std::size_t line_number)
{
    const auto lines = text::tokenize(line);
    if (lines.size() != 1) {
        throw Error(Errc::parse, "expected exactly one event", line_number);
    }
    auto tokens = lines.front().tokens;
    const auto fail = [&](const std::string& why) { throw Error(Errc::parse, why, line_number); };

    InputEvent ev;
    if (tokens.size() >= 2 && tokens.back().value.rfind("client=", 0) == 0) {
        try {
            ev.client_time = parse_seconds(tokens.back().value.substr(7));
        } catch (const Error& e) {
            fail(e.what());
        }
        tokens.pop_back();
    }
    if (tokens.size() < 3) {
        fail("expected: <seconds> <down|up|turn|ignition> <args>");
    }
    try {
        ev.time = parse_seconds(tokens[0].value);
    } catch (const Error& e) {
        fail(e.what());
    }
    const auto& verb = tokens[1].value;
    if (verb == "down" || verb == "up") {
        if (tokens.size() != 3) fail(verb + " takes one button");
        const auto b = parse_button(tokens[2].value);
        if (!b) fail("unknown button '" + tokens[2].value + "'");
        if (verb == "down") {
            ev.kind = ButtonDown{*b};
        } else {
            ev.kind = ButtonUp{*b};
        }
    } else if (verb == "turn") {
        if (tokens.size() != 4) fail("turn takes a knob and a direction");
        const auto k = parse_knob(tokens[2].value);
        if (!k) fail("unknown knob '" + tokens[2].value + "'");
        const auto d = parse_direction(tokens[3].value);
        if (!d) fail("direction must be cw or ccw");
        ev.kind = KnobTurn{*k, *d};
    } else if (verb == "ignition") {
        if (tokens.size() != 3) fail("ignition takes one position");
        const auto p = ecm::parse_ignition(tokens[2].value);
        if (!p) fail("unknown ignition position '" + tokens[2].value + "'");
        ev.kind = IgnitionSet{*p};
    } else {
        fail("unknown event verb '" + verb + "'");
    }
    return ev;
}

}  // namespace ivis::interaction
