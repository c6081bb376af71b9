// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ivis/scenario.hpp"
#include "ivis/wire.hpp"

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace ivis::service {

struct Endpoint {
    std::string host = "127.0.0.1";
    std::uint16_t port = 0;  // 0 picks a free port
};

/// Parses "host:port" or ":port". Throws Error(config).
Endpoint parse_endpoint(std::string_view text);

struct ServerOptions {
    Endpoint endpoint;
    std::filesystem::path record_dir;
    ClockMode clock = ClockMode::Wall;
    std::size_t max_sessions = 0;  // run() returns after this many sessions; 0 = until stop()
};

struct SessionSummary {
    int session_number = 0;
    harness::TaskResult result;
    std::filesystem::path trace;  // empty when not recording
};

/// Newline-delimited JSON over TCP, one participant at a time. A single
/// thread runs the poll loop; connections arriving while a session is active
/// get a "busy" error_flag and are closed.
class Server {
public:
    Server(std::shared_ptr<const LoadedScenario> scenario, ServerOptions options);
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    /// Binds and listens; returns the bound port. Throws Error(io).
    std::uint16_t listen();

    /// Serves until stop() or max_sessions. Must follow listen().
    void run();

    /// Safe to call from any thread.
    void stop();

    std::vector<SessionSummary> sessions() const;

private:
    struct Connection;
    void accept_one();
    void end_session();
    bool read_active();

    std::shared_ptr<const LoadedScenario> scenario_;
    ServerOptions options_;
    int listen_fd_ = -1;
    int wake_[2] = {-1, -1};
    std::atomic<bool> stopping_{false};
    std::unique_ptr<Connection> active_;
    int session_counter_ = 0;
    mutable std::mutex summaries_mutex_;
    std::vector<SessionSummary> summaries_;
};

}  // namespace ivis::service
