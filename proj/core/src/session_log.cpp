// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#include "ivis/session_log.hpp"
#include "ivis/error.hpp"

#include "json_codec.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace ivis::harness {

using codec::json;
namespace fs = std::filesystem;

namespace {

json header_record()
{
    return json{{"record", "header"}, {"format", kSessionLogFormat}, {"version", kSessionLogVersion}};
}

std::string task_key(const TaskResult& t)
{
    return "task\x1f" + t.participant_id + "\x1f" + std::string(to_string(t.model)) + "\x1f" + t.task_id;
}

std::string survey_key(const SurveyResponse& s)
{
    return "survey\x1f" + s.participant_id + "\x1f" + std::string(to_string(s.model));
}

std::string participant_key(const ParticipantInfo& p)
{
    return "participant\x1f" + p.participant_id;
}

// Parses the file into `log`, and records every key seen into `keys`.
void read_log(const fs::path& path, SessionLog& log, std::set<std::string>* keys)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::io, "cannot read session log " + path.string());
    }
    std::string line;
    int number = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            const auto j = json::parse(line);
            if (!j.is_object() || !j.contains("record") || !j["record"].is_string()) {
                throw Error(Errc::parse, "record without a 'record' type");
            }
            const auto kind = j["record"].get<std::string>();
            if (!have_header) {
                if (kind != "header" || j.value("format", "") != kSessionLogFormat) {
                    throw Error(Errc::parse, "first record must be the ivis-session-log header");
                }
                if (j.value("version", 0) != kSessionLogVersion) {
                    throw Error(Errc::parse, "unsupported session log version");
                }
                have_header = true;
                continue;
            }
            if (kind == "task") {
                auto t = codec::task_from_json(j);
                if (keys) keys->insert(task_key(t));
                log.tasks.push_back(std::move(t));
            } else if (kind == "survey") {
                auto s = codec::survey_from_json(j);
                if (keys) keys->insert(survey_key(s));
                log.surveys.push_back(std::move(s));
            } else if (kind == "participant") {
                auto p = codec::participant_from_json(j);
                if (keys) keys->insert(participant_key(p));
                log.participants.push_back(std::move(p));
            } else {
                throw Error(Errc::parse, "unknown record type '" + kind + "'");
            }
        } catch (const json::parse_error& e) {
            throw Error(Errc::parse, std::string("invalid JSON: ") + e.what(), number);
        } catch (const Error& e) {
            if (e.line()) throw;
            throw Error(e.code() == Errc::validation ? Errc::parse : e.code(), e.message(), number);
        }
    }
    if (!have_header && number > 0) {
        throw Error(Errc::parse, "session log has no header", 1);
    }
}

}  // namespace

std::string task_result_json(const TaskResult& result)
{
    return codec::to_json(result).dump();
}

ExportStats export_results(const fs::path& path, const SessionLog& log)
{
    std::set<std::string> keys;
    SessionLog existing;
    const bool exists = fs::exists(path) && fs::file_size(path) > 0;
    if (exists) {
        read_log(path, existing, &keys);
    }
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }

    std::vector<std::string> lines;
    ExportStats stats;
    const auto add = [&](std::string key, json record, const char* kind) {
        if (!keys.insert(std::move(key)).second) {
            ++stats.skipped;
            return;
        }
        json out{{"record", kind}};
        out.update(record);
        lines.push_back(out.dump());
        ++stats.written;
    };
    for (const auto& p : log.participants) add(participant_key(p), codec::to_json(p), "participant");
    for (const auto& t : log.tasks) add(task_key(t), codec::to_json(t), "task");
    for (const auto& s : log.surveys) add(survey_key(s), codec::to_json(s), "survey");

    std::ofstream out(path, std::ios::app);
    if (!out) {
        throw Error(Errc::io, "cannot write session log " + path.string());
    }
    if (!exists) {
        out << header_record().dump() << '\n';
    }
    for (const auto& l : lines) {
        out << l << '\n';
    }
    out.flush();
    if (!out) {
        throw Error(Errc::io, "write failed for " + path.string());
    }
    return stats;
}

SessionLog import_results(const fs::path& path)
{
    SessionLog log;
    read_log(path, log, nullptr);
    return log;
}

SessionLog import_directory(const fs::path& dir)
{
    if (!fs::is_directory(dir)) {
        throw Error(Errc::io, "log directory " + dir.string() + " does not exist");
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".ndjson") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    SessionLog merged;
    for (const auto& f : files) {
        auto part = import_results(f);
        merged.tasks.insert(merged.tasks.end(), part.tasks.begin(), part.tasks.end());
        merged.surveys.insert(merged.surveys.end(), part.surveys.begin(), part.surveys.end());
        merged.participants.insert(merged.participants.end(), part.participants.begin(),
                                   part.participants.end());
    }
    return merged;
}

HypothesisReport evaluate_log(const SessionLog& log, const HypothesisOptions& options)
{
    ModelGroup conv;
    ModelGroup ii;
    for (const auto& t : log.tasks) {
        (t.model == InteractionModel::Conventional ? conv : ii).tasks.push_back(t);
    }
    for (const auto& s : log.surveys) {
        (s.model == InteractionModel::Conventional ? conv : ii).surveys.push_back(s);
    }
    return evaluate_hypotheses(conv, ii, options);
}

std::string report_json(const HypothesisReport& report, const SessionLog& log)
{
    auto j = codec::to_json(report);
    const auto count = [&](InteractionModel m) {
        return json{
            {"tasks", std::count_if(log.tasks.begin(), log.tasks.end(),
                                    [m](const TaskResult& t) { return t.model == m; })},
            {"completed", std::count_if(log.tasks.begin(), log.tasks.end(),
                                        [m](const TaskResult& t) { return t.model == m && t.completed; })},
            {"surveys", std::count_if(log.surveys.begin(), log.surveys.end(),
                                      [m](const SurveyResponse& s) { return s.model == m; })},
        };
    };
    j["samples"] = {{"conventional", count(InteractionModel::Conventional)},
                    {"iinteraction", count(InteractionModel::IInteraction)}};
    return j.dump(2);
}

}  // namespace ivis::harness
