// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ivis/input.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ivis::interaction {

struct SetIgnition {
    ecm::IgnitionPosition position;
    bool operator==(const SetIgnition&) const = default;
};

/// Press and release `button` at least `count` times. With a non-empty
/// `until`, keep accepting presses past `count` until the composed display
/// contains that text.
struct PressRelease {
    Button button;
    int count = 1;
    std::string until;
    bool operator==(const PressRelease&) const = default;
};

/// One press of `button` held for at least `min_hold`.
struct HoldFor {
    Button button;
    Millis min_hold{0};
    bool operator==(const HoldFor&) const = default;
};

/// Press `button`, move the ignition to `position` while it is held, release.
struct HoldThrough {
    Button button;
    ecm::IgnitionPosition position;
    bool operator==(const HoldThrough&) const = default;
};

struct TurnKnob {
    Knob knob;
    int count = 1;
    std::optional<Direction> direction;  // nullopt: either direction counts
    bool operator==(const TurnKnob&) const = default;
};

/// Passive step: satisfied once the composed display contains `pattern`.
struct WaitDisplay {
    std::string pattern;
    bool operator==(const WaitDisplay&) const = default;
};

using ProcedureStep = std::variant<SetIgnition, PressRelease, HoldFor, HoldThrough, TurnKnob, WaitDisplay>;

std::string describe(const ProcedureStep& step);

inline constexpr int kDefaultInfoPages = 3;

struct ProcedureSpec {
    std::string procedure_id;
    std::string target_item;
    std::vector<ProcedureStep> steps;
    std::map<std::string, double, std::less<>> params;
    int info_pages = kDefaultInfoPages;  // select_reset presses until the oil-life page

    bool operator==(const ProcedureSpec&) const = default;
};

using ParamOverrides = std::map<std::string, double, std::less<>>;

/// Procedure DSL, one directive per line:
///   procedure <id>            target <item_id>          param NAME=<number>
///   ignition <pos>            press <button> x<N> [until "<text>"]
///   hold <button> <secs>s     hold_through <button> ignition <pos>
///   turn <knob> x<N> [any|cw|ccw]                       wait_display "<text>"
/// Numeric fields accept a declared parameter name in place of a literal
/// (`x N`, `hold select_reset X1`). `overrides` replace declared values;
/// the PAGES parameter sets the info-page count.
ProcedureSpec compile_procedure(std::string_view text, const ParamOverrides& overrides = {});
ProcedureSpec load_procedure(const std::string& path, const ParamOverrides& overrides = {});

/// Inverse of compile_procedure for a compiled spec (parameters inlined).
std::string serialize(const ProcedureSpec& spec);

}  // namespace ivis::interaction
