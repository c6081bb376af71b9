// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ivis/ecm.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ivis::codes {

struct SetLanguage {
    ecm::Language value;
    bool operator==(const SetLanguage&) const = default;
};
struct SetTimeZone {
    ecm::TimeZone value;
    bool operator==(const SetTimeZone&) const = default;
};
struct SetDst {
    bool enabled;
    bool operator==(const SetDst&) const = default;
};
/// May name several items; they are reset in the listed order.
struct ResetService {
    std::vector<std::string> item_ids;
    bool operator==(const ResetService&) const = default;
};

using CodeAction = std::variant<SetLanguage, SetTimeZone, SetDst, ResetService>;

/// Expands one table action into the ECM commands it triggers.
std::vector<ecm::Action> to_ecm_actions(const CodeAction& action);

/// True when the action's payload names `name`: a reset item id, or a setting
/// value such as "English", "PST" or "On".
bool references(const CodeAction& action, std::string_view name);

std::string describe(const CodeAction& action);

/// Immutable code -> action map. All codes are decimal strings of one length.
class ReferenceTable {
public:
    /// Throws Error(schema) when empty and Error(parse) on a bad or
    /// mixed-length code.
    explicit ReferenceTable(std::map<std::string, CodeAction, std::less<>> entries);

    std::optional<CodeAction> lookup(std::string_view code) const;

    std::size_t code_length() const noexcept { return code_length_; }
    std::size_t size() const noexcept { return entries_.size(); }
    const std::map<std::string, CodeAction, std::less<>>& entries() const noexcept { return entries_; }

    bool operator==(const ReferenceTable&) const = default;

private:
    std::map<std::string, CodeAction, std::less<>> entries_;
    std::size_t code_length_ = 0;
};

/// Table file: `<code> <kind> <payload...>` where kind is one of
/// language | timezone | dst | reset. Codes may be double-quoted.
ReferenceTable parse_table(std::string_view text);
ReferenceTable load_table(const std::string& path);
std::string serialize(const ReferenceTable& table);

std::optional<CodeAction> lookup(const ReferenceTable& table, std::string_view code);

/// Ascending list of codes whose action references `item`.
std::vector<std::string> codes_for_item(const ReferenceTable& table, std::string_view item);

/// Every ResetService payload must name an item of the profile.
void validate_against(const ReferenceTable& table, const ecm::VehicleProfile& profile);

}  // namespace ivis::codes
