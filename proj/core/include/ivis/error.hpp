// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ivis {

enum class Errc {
    invalid_argument,
    unknown_item,
    invalid_setting,
    dtc_format,
    parse,
    duplicate_code,
    schema,
    io,
    insufficient_data,
    validation,
    config,
    replay_refused,
};

std::string_view to_string(Errc code) noexcept;

/// Every recoverable failure raised by the library. Parse-type errors carry the
/// 1-based source line they were detected on.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message, std::optional<std::size_t> line = std::nullopt);

    Errc code() const noexcept { return code_; }
    std::optional<std::size_t> line() const noexcept { return line_; }
    /// The message without the code and line decoration.
    const std::string& message() const noexcept { return message_; }

private:
    Errc code_;
    std::string message_;
    std::optional<std::size_t> line_;
};

}  // namespace ivis
