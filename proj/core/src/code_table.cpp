// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#include "ivis/code_table.hpp"
#include "ivis/error.hpp"

#include "text.hpp"

#include <algorithm>

namespace ivis::codes {

namespace {

bool all_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

std::vector<ecm::Action> to_ecm_actions(const CodeAction& action)
{
    std::vector<ecm::Action> out;
    std::visit(
        [&out](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, SetLanguage>) {
                out.emplace_back(ecm::ChangeSetting{a.value});
            } else if constexpr (std::is_same_v<T, SetTimeZone>) {
                out.emplace_back(ecm::ChangeSetting{a.value});
            } else if constexpr (std::is_same_v<T, SetDst>) {
                out.emplace_back(ecm::ChangeSetting{ecm::DstSetting{a.enabled}});
            } else {
                for (const auto& id : a.item_ids) {
                    out.emplace_back(ecm::ResetItem{id});
                }
            }
        },
        action);
    return out;
}

bool references(const CodeAction& action, std::string_view name)
{
    return std::visit(
        [name](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, SetLanguage> || std::is_same_v<T, SetTimeZone>) {
                return ecm::to_string(a.value) == name;
            } else if constexpr (std::is_same_v<T, SetDst>) {
                return name == (a.enabled ? "On" : "Off");
            } else {
                return std::find(a.item_ids.begin(), a.item_ids.end(), name) != a.item_ids.end();
            }
        },
        action);
}

std::string describe(const CodeAction& action)
{
    return std::visit(
        [](const auto& a) -> std::string {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, SetLanguage>) {
                return "language " + std::string(ecm::to_string(a.value));
            } else if constexpr (std::is_same_v<T, SetTimeZone>) {
                return "timezone " + std::string(ecm::to_string(a.value));
            } else if constexpr (std::is_same_v<T, SetDst>) {
                return a.enabled ? "dst on" : "dst off";
            } else {
                std::string out = "reset";
                for (const auto& id : a.item_ids) {
                    out += " " + id;
                }
                return out;
            }
        },
        action);
}

ReferenceTable::ReferenceTable(std::map<std::string, CodeAction, std::less<>> entries)
    : entries_(std::move(entries))
{
    if (entries_.empty()) {
        throw Error(Errc::schema, "reference table is empty");
    }
    code_length_ = entries_.begin()->first.size();
    for (const auto& [code, action] : entries_) {
        if (!all_digits(code) || code.size() != code_length_) {
            throw Error(Errc::parse, "code '" + code + "' is not a " + std::to_string(code_length_) +
                                         "-digit decimal string");
        }
        if (const auto* r = std::get_if<ResetService>(&action); r && r->item_ids.empty()) {
            throw Error(Errc::schema, "code '" + code + "' resets no items");
        }
    }
}

std::optional<CodeAction> ReferenceTable::lookup(std::string_view code) const
{
    if (const auto it = entries_.find(code); it != entries_.end()) {
        return it->second;
    }
    return std::nullopt;
}

ReferenceTable parse_table(std::string_view source)
{
    std::map<std::string, CodeAction, std::less<>> entries;
    std::map<std::string, std::size_t, std::less<>> first_line;
    std::optional<std::size_t> code_length;

    for (const auto& line : text::tokenize(source)) {
        const auto& t = line.tokens;
        const auto& code = t[0].value;
        if (!all_digits(code)) {
            throw Error(Errc::parse, "code '" + code + "' must be decimal digits", line.number);
        }
        if (!code_length) {
            code_length = code.size();
        } else if (code.size() != *code_length) {
            throw Error(Errc::parse,
                        "code '" + code + "' has " + std::to_string(code.size()) + " digits, table uses " +
                            std::to_string(*code_length),
                        line.number);
        }
        if (const auto it = first_line.find(code); it != first_line.end()) {
            throw Error(Errc::duplicate_code,
                        "code " + code + " defined on line " + std::to_string(it->second) + " and line " +
                            std::to_string(line.number),
                        line.number);
        }
        if (t.size() < 2) {
            throw Error(Errc::schema, "code " + code + " has no action", line.number);
        }

        const auto kind = text::lower(t[1].value);
        const auto need_one = [&](std::string_view what) -> const std::string& {
            if (t.size() != 3) {
                throw Error(Errc::schema, std::string(what) + " takes exactly one value", line.number);
            }
            return t[2].value;
        };
        CodeAction action;
        if (kind == "language") {
            const auto& v = need_one("language");
            const auto l = ecm::parse_language(v);
            if (!l) throw Error(Errc::schema, "unknown language '" + v + "'", line.number);
            action = SetLanguage{*l};
        } else if (kind == "timezone" || kind == "time_zone") {
            const auto& v = need_one("timezone");
            const auto z = ecm::parse_time_zone(v);
            if (!z) throw Error(Errc::schema, "unknown time zone '" + v + "'", line.number);
            action = SetTimeZone{*z};
        } else if (kind == "dst") {
            const auto v = text::lower(need_one("dst"));
            if (v != "on" && v != "off") {
                throw Error(Errc::schema, "dst value must be on or off", line.number);
            }
            action = SetDst{v == "on"};
        } else if (kind == "reset") {
            ResetService reset;
            for (std::size_t i = 2; i < t.size(); ++i) {
                reset.item_ids.push_back(t[i].value);
            }
            if (reset.item_ids.empty()) {
                throw Error(Errc::schema, "reset needs at least one item id", line.number);
            }
            action = std::move(reset);
        } else {
            throw Error(Errc::schema, "unknown action kind '" + t[1].value + "'", line.number);
        }
        first_line.emplace(code, line.number);
        entries.emplace(code, std::move(action));
    }
    return ReferenceTable{std::move(entries)};
}

ReferenceTable load_table(const std::string& path)
{
    return parse_table(text::read_file(path));
}

std::string serialize(const ReferenceTable& table)
{
    std::string out;
    for (const auto& [code, action] : table.entries()) {
        out += code;
        out += ' ';
        out += describe(action);
        out += '\n';
    }
    return out;
}

std::optional<CodeAction> lookup(const ReferenceTable& table, std::string_view code)
{
    return table.lookup(code);
}

std::vector<std::string> codes_for_item(const ReferenceTable& table, std::string_view item)
{
    std::vector<std::string> out;
    for (const auto& [code, action] : table.entries()) {
        if (references(action, item)) {
            out.push_back(code);
        }
    }
    return out;  // map iteration is already ascending
}

void validate_against(const ReferenceTable& table, const ecm::VehicleProfile& profile)
{
    for (const auto& [code, action] : table.entries()) {
        if (const auto* r = std::get_if<ResetService>(&action)) {
            for (const auto& id : r->item_ids) {
                if (!profile.find(id)) {
                    throw Error(Errc::schema, "code " + code + " resets '" + id + "', which the profile lacks");
                }
            }
        }
    }
}

}  // namespace ivis::codes
