// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ivis/evaluation.hpp"
#include "ivis/headless.hpp"
#include "ivis/scenario.hpp"
#include "ivis/session.hpp"

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ivis::service {

// Message types; one JSON object per line. docs/wire_protocol.md lists the
// fields of each.
inline constexpr std::string_view kMsgInput = "input";
inline constexpr std::string_view kMsgDisplay = "display";
inline constexpr std::string_view kMsgState = "state";
inline constexpr std::string_view kMsgTaskStarted = "task_started";
inline constexpr std::string_view kMsgTaskCompleted = "task_completed";
inline constexpr std::string_view kMsgErrorFlag = "error_flag";
inline constexpr std::string_view kMsgSurveySubmit = "survey_submit";
inline constexpr std::string_view kMsgSurveyAck = "survey_ack";

inline constexpr std::size_t kMaxFrameBytes = 64 * 1024;

// Client-side encoders, used by scripted clients and tests.
std::string encode_input(const interaction::EventKind& event, Millis client_time);
std::string encode_survey_submit(const std::vector<harness::SurveyItem>& items);
std::string encode_state_request();

// Server-side encoders.
std::string encode_display(const ecm::LcdContent& lcd, Millis time);
std::string encode_task_completed(const harness::TaskResult& result);
std::string encode_deviation(const interaction::DeviationFlag& flag);
std::string encode_protocol_error(std::string_view kind, std::string_view detail);

/// Frame type, or nullopt if the frame is not a JSON object with a string
/// "type" field.
std::optional<std::string> frame_type(std::string_view frame);

/// Rebuilds a TaskResult from a task_completed frame.
harness::TaskResult decode_task_completed(std::string_view frame);
/// Lines and blink of a display frame.
ecm::LcdContent decode_display(std::string_view frame);

enum class Phase { InTask, Survey, Done };
std::string_view to_string(Phase p) noexcept;

struct SessionConfig {
    std::filesystem::path record_dir;  // empty: do not record
    int session_number = 1;
    ClockMode clock = ClockMode::Virtual;
    std::function<Millis()> wall_elapsed;  // time since the connection opened; required for Wall
};

/// Protocol state machine for one participant connection, independent of the
/// transport. Every inbound frame goes through handle(), which returns the
/// frames to send back in order.
class WireSession {
public:
    WireSession(std::shared_ptr<const LoadedScenario> scenario, SessionConfig config);

    std::vector<std::string> open();
    std::vector<std::string> handle(std::string_view frame);

    /// Writes the trace and session log records if recording. Idempotent.
    void close();

    Phase phase() const noexcept { return phase_; }
    const harness::TaskResult& result() const noexcept { return tracker_.result(); }
    const Trace& trace() const noexcept { return trace_; }
    const harness::Session& session() const noexcept { return session_; }
    const std::vector<ecm::Action>& actions() const noexcept { return actions_; }
    const std::optional<harness::SurveyResponse>& survey() const noexcept { return survey_; }
    std::filesystem::path trace_path() const;

private:
    std::vector<std::string> on_input(const interaction::EventKind& kind, Millis client_time);
    std::vector<std::string> on_survey(std::vector<harness::SurveyItem> items);
    std::string state_frame() const;
    Millis stamp(Millis client_time) const;

    std::shared_ptr<const LoadedScenario> scenario_;
    SessionConfig config_;
    harness::Session session_;
    harness::TaskTracker tracker_;
    Phase phase_ = Phase::InTask;
    Trace trace_;
    std::vector<ecm::Action> actions_;
    ecm::LcdContent last_display_;
    std::optional<harness::SurveyResponse> survey_;
    bool closed_ = false;
};

}  // namespace ivis::service
