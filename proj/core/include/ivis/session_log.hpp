// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ivis/evaluation.hpp"
#include "ivis/session.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace ivis::harness {

inline constexpr std::string_view kSessionLogFormat = "ivis-session-log";
inline constexpr int kSessionLogVersion = 1;
inline constexpr std::string_view kSessionLogFileName = "session_log.ndjson";

struct SessionLog {
    std::vector<TaskResult> tasks;
    std::vector<SurveyResponse> surveys;
    std::vector<ParticipantInfo> participants;

    bool operator==(const SessionLog&) const = default;
};

struct ExportStats {
    std::size_t written = 0;
    std::size_t skipped = 0;  // already present in the file
};

/// Appends records to an NDJSON session log, creating it with a header line
/// if absent. Tasks are keyed by (participant_id, model, task_id), surveys by
/// (participant_id, model) and participants by participant_id; a key already
/// in the file is skipped, so re-exporting is idempotent.
ExportStats export_results(const std::filesystem::path& path, const SessionLog& log);

/// Throws Error(io) if unreadable, Error(parse) with a line number for a bad
/// record or a missing header.
SessionLog import_results(const std::filesystem::path& path);

/// Merges every *.ndjson file in `dir` (sorted by name). Throws Error(io) if
/// the directory does not exist.
SessionLog import_directory(const std::filesystem::path& dir);

/// Splits by model and evaluates.
HypothesisReport evaluate_log(const SessionLog& log, const HypothesisOptions& options = {});

/// Pretty JSON rendering of a report, with per-group sample counts.
std::string report_json(const HypothesisReport& report, const SessionLog& log);

/// Single-line JSON rendering of a TaskResult, as used in log records.
std::string task_result_json(const TaskResult& result);

}  // namespace ivis::harness
