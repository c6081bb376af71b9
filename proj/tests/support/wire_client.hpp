// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ivis/input.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ivis::testing {

/// Minimal blocking NDJSON client for driving a Server the way a browser
/// panel would.
class WireClient {
public:
    WireClient(const std::string& host, std::uint16_t port);
    ~WireClient();
    WireClient(const WireClient&) = delete;
    WireClient& operator=(const WireClient&) = delete;

    void send_line(const std::string& frame);
    void send_raw(const std::string& bytes);

    /// Next frame, or nullopt on timeout or when the server closed.
    std::optional<std::string> read_line(std::chrono::milliseconds timeout = std::chrono::seconds(5));

    /// Reads frames until one of `type` arrives; returns it with everything
    /// seen before it appended to `seen` if given.
    std::optional<std::string> read_until(const std::string& type, std::vector<std::string>* seen = nullptr,
                                          std::chrono::milliseconds timeout = std::chrono::seconds(5));

    /// Sends every event as an input frame stamped with its scripted time.
    void send_events(const std::vector<interaction::InputEvent>& events);

    void close();

private:
    int fd_ = -1;
    std::string buffer_;
};

}  // namespace ivis::testing
