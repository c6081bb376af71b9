// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#include "ivis/wire.hpp"
#include "ivis/error.hpp"
#include "ivis/session_log.hpp"

#include "json_codec.hpp"

#include <algorithm>
#include <cmath>

namespace ivis::service {

using codec::json;
namespace fs = std::filesystem;

std::string encode_input(const interaction::EventKind& event, Millis client_time)
{
    auto j = codec::event_to_json(event);
    j["type"] = kMsgInput;
    j["client_ts_ms"] = client_time.count();
    return j.dump();
}

std::string encode_survey_submit(const std::vector<harness::SurveyItem>& items)
{
    json list = json::array();
    for (const auto& i : items) {
        list.push_back(json{{"question_id", i.question_id}, {"rating", i.rating}});
    }
    return json{{"type", kMsgSurveySubmit}, {"items", std::move(list)}}.dump();
}

std::string encode_state_request()
{
    return json{{"type", kMsgState}}.dump();
}

std::string encode_display(const ecm::LcdContent& lcd, Millis time)
{
    return json{{"type", kMsgDisplay}, {"time_ms", time.count()}, {"lines", lcd.lines}, {"blink", lcd.blink}}
        .dump();
}

std::string encode_task_completed(const harness::TaskResult& result)
{
    return json{{"type", kMsgTaskCompleted}, {"result", codec::to_json(result)}}.dump();
}

std::string encode_deviation(const interaction::DeviationFlag& flag)
{
    auto j = codec::to_json(flag);
    j["type"] = kMsgErrorFlag;
    j["source"] = "deviation";
    return j.dump();
}

std::string encode_protocol_error(std::string_view kind, std::string_view detail)
{
    return json{{"type", kMsgErrorFlag}, {"source", "protocol"}, {"kind", kind}, {"detail", detail}}.dump();
}

namespace {

std::optional<json> parse_object(std::string_view frame)
{
    auto j = json::parse(frame, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        return std::nullopt;
    }
    return j;
}

json expect_frame(std::string_view frame, std::string_view type)
{
    auto j = parse_object(frame);
    if (!j || !(*j)["type"].is_string() || (*j)["type"].get<std::string>() != type) {
        throw Error(Errc::parse, "expected a " + std::string(type) + " frame");
    }
    return *j;
}

}  // namespace

std::optional<std::string> frame_type(std::string_view frame)
{
    const auto j = parse_object(frame);
    if (!j || !j->contains("type") || !(*j)["type"].is_string()) {
        return std::nullopt;
    }
    return (*j)["type"].get<std::string>();
}

harness::TaskResult decode_task_completed(std::string_view frame)
{
    const auto j = expect_frame(frame, kMsgTaskCompleted);
    if (!j.contains("result")) {
        throw Error(Errc::parse, "task_completed without result");
    }
    return codec::task_from_json(j["result"]);
}

ecm::LcdContent decode_display(std::string_view frame)
{
    const auto j = expect_frame(frame, kMsgDisplay);
    try {
        return ecm::LcdContent{j.at("lines").get<std::vector<std::string>>(), j.at("blink").get<bool>()};
    } catch (const json::exception& e) {
        throw Error(Errc::parse, std::string("bad display frame: ") + e.what());
    }
}

std::string_view to_string(Phase p) noexcept
{
    switch (p) {
    case Phase::InTask: return "in_task";
    case Phase::Survey: return "survey";
    case Phase::Done: return "done";
    }
    return "unknown";
}

WireSession::WireSession(std::shared_ptr<const LoadedScenario> scenario, SessionConfig config)
    : scenario_(std::move(scenario)),
      config_(std::move(config)),
      session_(scenario_->setup()),
      tracker_(scenario_->scenario.participant_id, scenario_->scenario.model, scenario_->scenario.task_id,
               scenario_->target, scenario_->initial.clock)
{
    if (config_.clock == ClockMode::Wall && !config_.wall_elapsed) {
        throw Error(Errc::config, "wall-clock session needs a time source");
    }
    const auto& target = scenario_->initial.items.at(scenario_->target);
    if (target.status != ecm::ItemStatus::Due) {
        throw Error(Errc::config, "task target '" + scenario_->target + "' is not DUE at start");
    }
    if (!scenario_->source.empty()) {
        trace_.scenario = scenario_->source;
    }
    trace_.captured = config_.clock;
}

std::vector<std::string> WireSession::open()
{
    last_display_ = session_.display();
    const auto& s = scenario_->scenario;
    std::vector<std::string> out;
    out.push_back(json{{"type", kMsgTaskStarted},
                       {"participant_id", s.participant_id},
                       {"model", harness::to_string(s.model)},
                       {"task_id", s.task_id},
                       {"target", scenario_->target},
                       {"time_ms", session_.last_time().count()}}
                      .dump());
    out.push_back(encode_display(last_display_, session_.last_time()));
    out.push_back(state_frame());
    return out;
}

std::string WireSession::state_frame() const
{
    const auto& s = scenario_->scenario;
    json j{{"type", kMsgState},
           {"phase", to_string(phase_)},
           {"participant_id", s.participant_id},
           {"model", harness::to_string(s.model)},
           {"task_id", s.task_id},
           {"target", scenario_->target},
           {"clock", to_string(config_.clock)},
           {"time_ms", session_.last_time().count()},
           {"vehicle", codec::to_json(session_.vehicle())}};
    if (phase_ == Phase::Survey) {
        json questions = json::array();
        for (const auto& q : harness::default_questionnaire()) {
            questions.push_back(json{{"question_id", q.question_id}, {"text", q.text}});
        }
        j["questions"] = std::move(questions);
    }
    return j.dump();
}

Millis WireSession::stamp(Millis client_time) const
{
    const auto base = scenario_->initial.clock;
    const auto t = config_.clock == ClockMode::Wall ? base + config_.wall_elapsed() : base + client_time;
    return std::max(t, session_.last_time());
}

std::vector<std::string> WireSession::handle(std::string_view frame)
{
    if (frame.size() > kMaxFrameBytes) {
        return {encode_protocol_error("malformed", "frame exceeds " + std::to_string(kMaxFrameBytes) + " bytes")};
    }
    const auto j = parse_object(frame);
    if (!j) {
        return {encode_protocol_error("malformed", "frame is not a JSON object")};
    }
    if (!j->contains("type") || !(*j)["type"].is_string()) {
        return {encode_protocol_error("malformed", "frame has no string 'type'")};
    }
    const auto type = (*j)["type"].get<std::string>();

    if (type == kMsgInput) {
        if (!j->contains("client_ts_ms") || !(*j)["client_ts_ms"].is_number()) {
            return {encode_protocol_error("malformed", "input needs a numeric client_ts_ms")};
        }
        const double ts = (*j)["client_ts_ms"].get<double>();
        if (!std::isfinite(ts) || ts < 0) {
            return {encode_protocol_error("malformed", "client_ts_ms must be a non-negative number")};
        }
        interaction::EventKind kind;
        try {
            kind = codec::event_from_json(*j);
        } catch (const Error& e) {
            return {encode_protocol_error("malformed", e.message())};
        }
        return on_input(kind, Millis{static_cast<long long>(std::llround(ts))});
    }
    if (type == kMsgSurveySubmit) {
        std::vector<harness::SurveyItem> items;
        try {
            for (const auto& i : j->at("items")) {
                items.push_back({i.at("question_id").get<std::string>(), i.at("rating").get<int>()});
            }
        } catch (const json::exception&) {
            return {encode_protocol_error("malformed", "survey_submit needs items[{question_id, rating}]")};
        }
        return on_survey(std::move(items));
    }
    if (type == kMsgState) {
        return {state_frame()};
    }
    return {encode_protocol_error("unknown_type", "unsupported message type '" + type + "'")};
}

std::vector<std::string> WireSession::on_input(const interaction::EventKind& kind, Millis client_time)
{
    if (phase_ != Phase::InTask) {
        return {encode_protocol_error("unexpected", "no task in progress")};
    }
    const interaction::InputEvent event{stamp(client_time), kind, client_time};
    harness::FeedOutcome outcome;
    try {
        outcome = session_.feed(event);
    } catch (const Error& e) {
        return {encode_protocol_error("rejected", e.message())};
    }
    trace_.events.push_back(event);
    tracker_.observe(event, outcome);
    actions_.insert(actions_.end(), outcome.actions.begin(), outcome.actions.end());

    std::vector<std::string> out;
    for (const auto& f : outcome.flags) {
        out.push_back(encode_deviation(f));
    }
    if (auto view = session_.display(); view != last_display_) {
        last_display_ = std::move(view);
        out.push_back(encode_display(last_display_, event.time));
    }
    if (tracker_.completed()) {
        phase_ = Phase::Survey;
        out.push_back(encode_task_completed(tracker_.result()));
        out.push_back(state_frame());
    }
    return out;
}

std::vector<std::string> WireSession::on_survey(std::vector<harness::SurveyItem> items)
{
    if (phase_ != Phase::Survey) {
        return {json{{"type", kMsgSurveyAck}, {"ok", false}, {"error", "no survey pending"}}.dump()};
    }
    const auto& s = scenario_->scenario;
    try {
        survey_ = harness::score_survey(s.participant_id, s.model, std::move(items));
    } catch (const Error& e) {
        return {json{{"type", kMsgSurveyAck}, {"ok", false}, {"error", e.message()}}.dump()};
    }
    phase_ = Phase::Done;
    return {json{{"type", kMsgSurveyAck}, {"ok", true}, {"satisfaction", survey_->satisfaction}}.dump(),
            state_frame()};
}

fs::path WireSession::trace_path() const
{
    const auto& s = scenario_->scenario;
    return config_.record_dir / (s.participant_id + "-" + std::string(harness::to_string(s.model)) + "-" +
                                 s.task_id + "-s" + std::to_string(config_.session_number) + ".trace");
}

void WireSession::close()
{
    if (closed_) {
        return;
    }
    closed_ = true;
    if (config_.record_dir.empty()) {
        return;
    }
    fs::create_directories(config_.record_dir);
    save_trace(trace_path(), trace_);
    harness::SessionLog log;
    if (tracker_.started()) {
        log.tasks.push_back(tracker_.result());
    }
    if (survey_) {
        log.surveys.push_back(*survey_);
    }
    if (!log.tasks.empty() || !log.surveys.empty()) {
        harness::export_results(config_.record_dir / harness::kSessionLogFileName, log);
    }
}

}  // namespace ivis::service
