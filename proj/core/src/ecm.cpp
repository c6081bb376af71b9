// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#include "ivis/ecm.hpp"
#include "ivis/error.hpp"

#include "text.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>

namespace ivis::ecm {

std::string_view to_string(IgnitionPosition p) noexcept
{
    switch (p) {
    case IgnitionPosition::Off: return "OFF";
    case IgnitionPosition::Acc: return "ACC";
    case IgnitionPosition::On: return "ON";
    case IgnitionPosition::Start: return "START";
    }
    return "?";
}

std::string_view to_string(Language l) noexcept
{
    switch (l) {
    case Language::English: return "English";
    case Language::Spanish: return "Spanish";
    case Language::French: return "French";
    }
    return "?";
}

std::string_view to_string(TimeZone z) noexcept
{
    switch (z) {
    case TimeZone::EST: return "EST";
    case TimeZone::CST: return "CST";
    case TimeZone::MST: return "MST";
    case TimeZone::PST: return "PST";
    }
    return "?";
}

std::string_view to_string(ItemStatus s) noexcept
{
    return s == ItemStatus::Due ? "DUE" : "OK";
}

std::optional<IgnitionPosition> parse_ignition(std::string_view name)
{
    const auto n = text::upper(name);
    if (n == "OFF") return IgnitionPosition::Off;
    if (n == "ACC") return IgnitionPosition::Acc;
    if (n == "ON" || n == "II") return IgnitionPosition::On;
    if (n == "START") return IgnitionPosition::Start;
    return std::nullopt;
}

std::optional<Language> parse_language(std::string_view name)
{
    for (auto l : {Language::English, Language::Spanish, Language::French}) {
        if (text::iequals(name, to_string(l))) {
            return l;
        }
    }
    return std::nullopt;
}

std::optional<TimeZone> parse_time_zone(std::string_view name)
{
    for (auto z : {TimeZone::EST, TimeZone::CST, TimeZone::MST, TimeZone::PST}) {
        if (text::iequals(name, to_string(z))) {
            return z;
        }
    }
    return std::nullopt;
}

int utc_offset_hours(TimeZone z) noexcept
{
    switch (z) {
    case TimeZone::EST: return -5;
    case TimeZone::CST: return -6;
    case TimeZone::MST: return -7;
    case TimeZone::PST: return -8;
    }
    return 0;
}

DiagnosticTroubleCode::DiagnosticTroubleCode(std::string_view code)
{
    if (!is_well_formed(code)) {
        throw Error(Errc::dtc_format, "'" + std::string(code) + "' is not a letter followed by four digits");
    }
    code_ = text::upper(code);
}

bool DiagnosticTroubleCode::is_well_formed(std::string_view code) noexcept
{
    if (code.size() != 5 || !std::isalpha(static_cast<unsigned char>(code[0]))) {
        return false;
    }
    return std::all_of(code.begin() + 1, code.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
}

const ServiceItemSpec* VehicleProfile::find(std::string_view item_id) const noexcept
{
    for (const auto& item : items) {
        if (item.item_id == item_id) {
            return &item;
        }
    }
    return nullptr;
}

std::string describe(const Action& action)
{
    struct Visitor {
        std::string operator()(const ResetItem& r) const { return "reset " + r.item_id; }
        std::string operator()(const ChangeSetting& c) const
        {
            return std::visit(
                [](const auto& s) -> std::string {
                    using T = std::decay_t<decltype(s)>;
                    if constexpr (std::is_same_v<T, Language>) {
                        return "language " + std::string(to_string(s));
                    } else if constexpr (std::is_same_v<T, TimeZone>) {
                        return "timezone " + std::string(to_string(s));
                    } else {
                        return std::string("dst ") + (s.enabled ? "on" : "off");
                    }
                },
                c.setting);
        }
    };
    return std::visit(Visitor{}, action);
}

bool is_due(const ServiceItemState& item, double odometer, Millis clock) noexcept
{
    const auto& spec = item.spec;
    if (spec.distance_interval && odometer - item.last_reset_odometer >= *spec.distance_interval) {
        return true;
    }
    if (spec.time_interval && clock - item.last_reset_time >= *spec.time_interval) {
        return true;
    }
    return false;
}

double oil_life_percent(const ServiceItemState& item, double odometer, Millis clock) noexcept
{
    double used = 0.0;
    if (item.spec.distance_interval) {
        used = std::max(used, (odometer - item.last_reset_odometer) / *item.spec.distance_interval);
    }
    if (item.spec.time_interval) {
        const auto elapsed = static_cast<double>((clock - item.last_reset_time).count());
        used = std::max(used, elapsed / static_cast<double>(item.spec.time_interval->count()));
    }
    return 100.0 * std::max(0.0, 1.0 - used);
}

namespace {

void resolve_transient(VehicleState& s)
{
    if (s.ignition == IgnitionPosition::Start) {
        s.ignition = IgnitionPosition::On;
    }
}

void refresh(VehicleState& s)
{
    for (auto& [id, item] : s.items) {
        item.status = is_due(item, s.odometer, s.clock) ? ItemStatus::Due : ItemStatus::Ok;
    }
    if (const auto it = s.items.find(s.oil_item); it != s.items.end()) {
        s.oil_life = oil_life_percent(it->second, s.odometer, s.clock);
    } else {
        s.oil_life = 100.0;
    }
    if (s.confirmation && s.clock >= s.confirmation->until) {
        s.confirmation.reset();
    }
    s.lcd = render_lcd(s);
}

bool valid(const Setting& setting)
{
    return std::visit(
        [](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Language>) {
                const auto i = static_cast<int>(v);
                return i >= 0 && i <= static_cast<int>(Language::French);
            } else if constexpr (std::is_same_v<T, TimeZone>) {
                const auto i = static_cast<int>(v);
                return i >= 0 && i <= static_cast<int>(TimeZone::PST);
            } else {
                return true;
            }
        },
        setting);
}

std::string confirmation_text(const Setting& setting)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Language>) {
                return "LANGUAGE " + text::upper(to_string(v));
            } else if constexpr (std::is_same_v<T, TimeZone>) {
                return "TIME ZONE " + std::string(to_string(v));
            } else {
                return v.enabled ? "DST ON" : "DST OFF";
            }
        },
        setting);
}

std::string remaining_text(double remaining)
{
    const auto whole = static_cast<long long>(std::ceil(remaining));
    return "SERVICE IN " + std::to_string(whole);
}

}  // namespace

VehicleState initial_state(const VehicleProfile& profile, double odometer, Millis clock,
                           IgnitionPosition ignition)
{
    if (!(odometer >= 0.0)) {
        throw Error(Errc::invalid_argument, "initial odometer must be >= 0");
    }
    VehicleState s;
    s.ignition = ignition;
    s.odometer = odometer;
    s.clock = clock;
    s.warning_range = profile.warning_range;
    s.oil_item = profile.oil_item;
    for (const auto& spec : profile.items) {
        ServiceItemState item;
        item.spec = spec;
        item.last_reset_odometer = odometer;
        item.last_reset_time = clock;
        s.items.emplace(spec.item_id, std::move(item));
    }
    resolve_transient(s);
    refresh(s);
    return s;
}

VehicleState advance(VehicleState state, Millis elapsed, double distance)
{
    if (elapsed < Millis{0}) {
        throw Error(Errc::invalid_argument, "elapsed time must be >= 0");
    }
    if (!(distance >= 0.0) || !std::isfinite(distance)) {
        throw Error(Errc::invalid_argument, "distance must be a finite value >= 0");
    }
    resolve_transient(state);
    state.clock += elapsed;
    state.odometer += distance;
    refresh(state);
    return state;
}

VehicleState apply_reset(VehicleState state, std::string_view item_id)
{
    const auto it = state.items.find(item_id);
    if (it == state.items.end()) {
        throw Error(Errc::unknown_item, "no service item '" + std::string(item_id) + "'");
    }
    resolve_transient(state);
    it->second.last_reset_odometer = state.odometer;
    it->second.last_reset_time = state.clock;
    refresh(state);
    return state;
}

VehicleState apply_setting(VehicleState state, const Setting& setting)
{
    if (!valid(setting)) {
        throw Error(Errc::invalid_setting, "setting value out of range");
    }
    resolve_transient(state);
    std::visit(
        [&state](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Language>) {
                state.settings.language = v;
            } else if constexpr (std::is_same_v<T, TimeZone>) {
                state.settings.time_zone = v;
            } else {
                state.settings.dst = v.enabled;
            }
        },
        setting);
    state.confirmation = Confirmation{confirmation_text(setting), state.clock + kConfirmationHold};
    refresh(state);
    return state;
}

VehicleState apply_setting(VehicleState state, std::string_view kind, std::string_view value)
{
    const auto k = text::lower(kind);
    std::optional<Setting> setting;
    if (k == "language") {
        if (auto l = parse_language(value)) setting = *l;
    } else if (k == "timezone" || k == "time_zone") {
        if (auto z = parse_time_zone(value)) setting = *z;
    } else if (k == "dst") {
        const auto v = text::lower(value);
        if (v == "on" || v == "true") setting = DstSetting{true};
        if (v == "off" || v == "false") setting = DstSetting{false};
    } else {
        throw Error(Errc::invalid_setting, "unknown setting kind '" + std::string(kind) + "'");
    }
    if (!setting) {
        throw Error(Errc::invalid_setting,
                    "'" + std::string(value) + "' is not a legal " + std::string(kind) + " value");
    }
    return apply_setting(std::move(state), *setting);
}

VehicleState apply_action(VehicleState state, const Action& action)
{
    if (const auto* r = std::get_if<ResetItem>(&action)) {
        return apply_reset(std::move(state), r->item_id);
    }
    return apply_setting(std::move(state), std::get<ChangeSetting>(action).setting);
}

VehicleState set_ignition(VehicleState state, IgnitionPosition position)
{
    state.ignition = position;
    refresh(state);
    return state;
}

VehicleState raise_dtc(VehicleState state, std::string_view code)
{
    DiagnosticTroubleCode dtc{code};
    resolve_transient(state);
    state.dtcs.insert(std::move(dtc));
    refresh(state);
    return state;
}

VehicleState clear_dtcs(VehicleState state)
{
    resolve_transient(state);
    state.dtcs.clear();
    refresh(state);
    return state;
}

VehicleState force_due(VehicleState state, std::string_view item_id)
{
    const auto it = state.items.find(item_id);
    if (it == state.items.end()) {
        throw Error(Errc::unknown_item, "no service item '" + std::string(item_id) + "'");
    }
    auto& item = it->second;
    if (item.spec.distance_interval && state.odometer >= *item.spec.distance_interval) {
        item.last_reset_odometer = state.odometer - *item.spec.distance_interval;
    } else if (item.spec.time_interval) {
        item.last_reset_time = state.clock - *item.spec.time_interval;
    } else {
        throw Error(Errc::invalid_argument,
                    "cannot make '" + std::string(item_id) + "' due: odometer below its interval");
    }
    refresh(state);
    return state;
}

bool mil_on(const VehicleState& state) noexcept
{
    return !state.dtcs.empty();
}

LcdContent clip_to_geometry(LcdContent content)
{
    if (content.lines.size() > kLcdLines) {
        content.lines.resize(kLcdLines);
    }
    for (auto& line : content.lines) {
        if (line.size() > kLcdColumns) {
            line.resize(kLcdColumns);
        }
    }
    return content;
}

LcdContent render_lcd(const VehicleState& state)
{
    LcdContent out;
    if (state.ignition == IgnitionPosition::Off) {
        return out;
    }
    if (state.confirmation && state.clock < state.confirmation->until) {
        out.lines.push_back(state.confirmation->text);
    }

    std::vector<std::string> due;
    std::optional<double> nearest;
    for (const auto& [id, item] : state.items) {
        if (is_due(item, state.odometer, state.clock)) {
            due.push_back("SERVICE " + text::upper(item.spec.display_name));
            continue;
        }
        if (item.spec.distance_interval && state.warning_range > 0.0) {
            const double remaining =
                *item.spec.distance_interval - (state.odometer - item.last_reset_odometer);
            if (remaining <= state.warning_range && (!nearest || remaining < *nearest)) {
                nearest = remaining;
            }
        }
    }

    const std::size_t slots = kLcdLines - out.lines.size();
    if (due.size() <= slots) {
        out.lines.insert(out.lines.end(), due.begin(), due.end());
        if (out.lines.size() < kLcdLines && nearest) {
            out.lines.push_back(remaining_text(*nearest));
        }
    } else if (slots == 1) {
        out.lines.push_back("SERVICE " + std::to_string(due.size()) + " ITEMS");
    } else {
        out.lines.insert(out.lines.end(), due.begin(), due.begin() + static_cast<long>(slots - 1));
        out.lines.push_back("SERVICE +" + std::to_string(due.size() - (slots - 1)) + " MORE");
    }
    out.blink = !due.empty();
    return clip_to_geometry(std::move(out));
}

std::string local_clock_text(const VehicleState& state)
{
    constexpr long long kDayMs = 86'400'000;
    long long offset_h = utc_offset_hours(state.settings.time_zone) + (state.settings.dst ? 1 : 0);
    long long ms = state.clock.count() + offset_h * 3'600'000;
    ms = ((ms % kDayMs) + kDayMs) % kDayMs;
    const auto minutes = ms / 60'000;
    char buf[8];
    std::snprintf(buf, sizeof buf, "%02lld:%02lld", minutes / 60, minutes % 60);
    return buf;
}

namespace {

bool valid_id(std::string_view id)
{
    return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
    });
}

}  // namespace

VehicleProfile parse_profile(std::string_view source)
{
    VehicleProfile profile;
    bool oil_item_explicit = false;
    std::size_t oil_item_line = 0;

    for (const auto& line : text::tokenize(source)) {
        const auto& t = line.tokens;
        const auto& keyword = t[0].value;
        if (keyword == "item") {
            if (t.size() < 3 || !t[2].quoted) {
                throw Error(Errc::parse, "expected: item <id> \"<display name>\" dist=<miles|none> time=<days|none>",
                            line.number);
            }
            ServiceItemSpec spec;
            spec.item_id = t[1].value;
            if (!valid_id(spec.item_id)) {
                throw Error(Errc::parse, "bad item id '" + spec.item_id + "'", line.number);
            }
            if (profile.find(spec.item_id)) {
                throw Error(Errc::parse, "duplicate item id '" + spec.item_id + "'", line.number);
            }
            spec.display_name = t[2].value;
            bool saw_dist = false;
            bool saw_time = false;
            for (std::size_t i = 3; i < t.size(); ++i) {
                const auto& kv = t[i].value;
                const auto eq = kv.find('=');
                if (eq == std::string::npos) {
                    throw Error(Errc::parse, "expected key=value, got '" + kv + "'", line.number);
                }
                const auto key = kv.substr(0, eq);
                const auto value = kv.substr(eq + 1);
                std::optional<double> number;
                if (value != "none") {
                    number = text::parse_number(value);
                    if (!number || *number <= 0.0) {
                        throw Error(Errc::parse, key + " must be a positive number or none", line.number);
                    }
                }
                if (key == "dist" && !saw_dist) {
                    saw_dist = true;
                    spec.distance_interval = number;
                } else if (key == "time" && !saw_time) {
                    saw_time = true;
                    if (number) {
                        spec.time_interval = Millis{std::llround(*number * 86'400'000.0)};
                    }
                } else {
                    throw Error(Errc::parse, "unexpected or repeated key '" + key + "'", line.number);
                }
            }
            if (!spec.distance_interval && !spec.time_interval) {
                throw Error(Errc::parse, "item '" + spec.item_id + "' needs a distance or time interval",
                            line.number);
            }
            profile.items.push_back(std::move(spec));
        } else if (keyword == "warning_range") {
            std::optional<double> v;
            if (t.size() == 2) {
                v = text::parse_number(t[1].value);
            }
            if (!v) {
                throw Error(Errc::parse, "expected: warning_range <miles>", line.number);
            }
            profile.warning_range = *v;
        } else if (keyword == "oil_item") {
            if (t.size() != 2 || !valid_id(t[1].value)) {
                throw Error(Errc::parse, "expected: oil_item <id>", line.number);
            }
            profile.oil_item = t[1].value;
            oil_item_explicit = true;
            oil_item_line = line.number;
        } else {
            throw Error(Errc::parse, "unknown profile keyword '" + keyword + "'", line.number);
        }
    }
    if (profile.items.empty()) {
        throw Error(Errc::schema, "profile defines no service items");
    }
    if (oil_item_explicit && !profile.find(profile.oil_item)) {
        throw Error(Errc::schema, "oil_item '" + profile.oil_item + "' is not a profile item", oil_item_line);
    }
    return profile;
}

VehicleProfile load_profile(const std::string& path)
{
    return parse_profile(text::read_file(path));
}

}  // namespace ivis::ecm
