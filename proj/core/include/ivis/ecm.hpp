// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ivis/time.hpp"

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

/// The virtual Electronic Control Module. Every operation is a pure
/// old-state -> new-state function; VehicleState is an ordinary value.
namespace ivis::ecm {

enum class IgnitionPosition { Off, Acc, On, Start };
enum class Language { English, Spanish, French };
enum class TimeZone { EST, CST, MST, PST };
enum class ItemStatus { Ok, Due };

std::string_view to_string(IgnitionPosition p) noexcept;
std::string_view to_string(Language l) noexcept;
std::string_view to_string(TimeZone z) noexcept;
std::string_view to_string(ItemStatus s) noexcept;

// Parsers are case-insensitive and return nullopt for unknown names.
std::optional<IgnitionPosition> parse_ignition(std::string_view name);
std::optional<Language> parse_language(std::string_view name);
std::optional<TimeZone> parse_time_zone(std::string_view name);

/// Standard UTC offset in hours (EST = -5 ... PST = -8).
int utc_offset_hours(TimeZone z) noexcept;

struct ServiceItemSpec {
    std::string item_id;
    std::string display_name;
    std::optional<double> distance_interval;  // miles
    std::optional<Millis> time_interval;

    bool operator==(const ServiceItemSpec&) const = default;
};

struct ServiceItemState {
    ServiceItemSpec spec;
    double last_reset_odometer = 0.0;
    Millis last_reset_time{0};
    ItemStatus status = ItemStatus::Ok;

    bool operator==(const ServiceItemState&) const = default;
};

struct DisplaySettings {
    Language language = Language::English;
    TimeZone time_zone = TimeZone::EST;
    bool dst = false;

    bool operator==(const DisplaySettings&) const = default;
};

/// Five-character trouble code: one letter followed by four decimal digits.
class DiagnosticTroubleCode {
public:
    /// Throws Error(dtc_format) when the text does not have the DTC shape.
    explicit DiagnosticTroubleCode(std::string_view code);

    static bool is_well_formed(std::string_view code) noexcept;

    const std::string& str() const noexcept { return code_; }
    auto operator<=>(const DiagnosticTroubleCode&) const = default;

private:
    std::string code_;
};

inline constexpr std::size_t kLcdLines = 2;
inline constexpr std::size_t kLcdColumns = 20;

struct LcdContent {
    std::vector<std::string> lines;
    bool blink = false;

    bool operator==(const LcdContent&) const = default;
};

struct Confirmation {
    std::string text;
    Millis until{0};

    bool operator==(const Confirmation&) const = default;
};

inline constexpr Millis kConfirmationHold = seconds(3);
inline constexpr double kDefaultWarningRange = 1000.0;
inline constexpr std::string_view kDefaultOilItem = "oil_change";

struct VehicleProfile {
    std::vector<ServiceItemSpec> items;
    double warning_range = kDefaultWarningRange;  // miles before a distance threshold
    std::string oil_item{kDefaultOilItem};

    const ServiceItemSpec* find(std::string_view item_id) const noexcept;
    bool operator==(const VehicleProfile&) const = default;
};

struct VehicleState {
    IgnitionPosition ignition = IgnitionPosition::On;
    double odometer = 0.0;
    Millis clock{0};
    DisplaySettings settings;
    std::map<std::string, ServiceItemState, std::less<>> items;
    std::set<DiagnosticTroubleCode> dtcs;
    LcdContent lcd;
    double oil_life = 100.0;

    double warning_range = kDefaultWarningRange;
    std::string oil_item{kDefaultOilItem};
    std::optional<Confirmation> confirmation;

    bool operator==(const VehicleState&) const = default;
};

struct DstSetting {
    bool enabled = false;
    bool operator==(const DstSetting&) const = default;
};

using Setting = std::variant<Language, TimeZone, DstSetting>;

/// ECM-level commands emitted by the interaction engines.
struct ResetItem {
    std::string item_id;
    bool operator==(const ResetItem&) const = default;
};
struct ChangeSetting {
    Setting setting;
    bool operator==(const ChangeSetting&) const = default;
};
using Action = std::variant<ResetItem, ChangeSetting>;

std::string describe(const Action& action);

/// Fresh vehicle: every item rebased at the given odometer and clock.
VehicleState initial_state(const VehicleProfile& profile,
                           double odometer = 0.0,
                           Millis clock = Millis{0},
                           IgnitionPosition ignition = IgnitionPosition::On);

/// The whichever-first predicate for one item.
bool is_due(const ServiceItemState& item, double odometer, Millis clock) noexcept;

/// 100 * max(0, 1 - max(distance fraction, time fraction)); a missing interval
/// contributes a zero fraction.
double oil_life_percent(const ServiceItemState& item, double odometer, Millis clock) noexcept;

VehicleState advance(VehicleState state, Millis elapsed, double distance);
VehicleState apply_reset(VehicleState state, std::string_view item_id);
VehicleState apply_setting(VehicleState state, const Setting& setting);
VehicleState apply_setting(VehicleState state, std::string_view kind, std::string_view value);
VehicleState apply_action(VehicleState state, const Action& action);
VehicleState set_ignition(VehicleState state, IgnitionPosition position);
VehicleState raise_dtc(VehicleState state, std::string_view code);
VehicleState clear_dtcs(VehicleState state);

/// Backdates an item's baseline so that it is exactly at its threshold.
VehicleState force_due(VehicleState state, std::string_view item_id);

/// Malfunction indicator: lit whenever any DTC is stored.
bool mil_on(const VehicleState& state) noexcept;

LcdContent render_lcd(const VehicleState& state);

/// Clips to the 2x20 geometry.
LcdContent clip_to_geometry(LcdContent content);

/// Local wall time shown by the cluster, "HH:MM".
std::string local_clock_text(const VehicleState& state);

/// Vehicle profile file:
///   item <id> "<display name>" dist=<miles|none> time=<days|none>
///   warning_range <miles>
///   oil_item <id>
VehicleProfile parse_profile(std::string_view text);
VehicleProfile load_profile(const std::string& path);

}  // namespace ivis::ecm
