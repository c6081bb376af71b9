// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#include "json_codec.hpp"

#include "ivis/error.hpp"

namespace ivis::codec {

using namespace ivis::interaction;

namespace {

template <typename T>
T field(const json& j, const char* name)
{
    if (!j.is_object() || !j.contains(name)) {
        throw Error(Errc::parse, std::string("missing field '") + name + "'");
    }
    try {
        return j.at(name).get<T>();
    } catch (const json::exception&) {
        throw Error(Errc::parse, std::string("field '") + name + "' has the wrong type");
    }
}

harness::InteractionModel model_field(const json& j)
{
    const auto name = field<std::string>(j, "model");
    const auto m = harness::parse_model(name);
    if (!m) {
        throw Error(Errc::parse, "unknown model '" + name + "'");
    }
    return *m;
}

}  // namespace

json to_json(const DeviationFlag& flag)
{
    return json{{"kind", to_string(flag.kind)}, {"time_ms", flag.time.count()}, {"detail", flag.detail}};
}

DeviationFlag flag_from_json(const json& j)
{
    const auto kind_name = field<std::string>(j, "kind");
    const auto kind = parse_deviation_kind(kind_name);
    if (!kind) {
        throw Error(Errc::parse, "unknown deviation kind '" + kind_name + "'");
    }
    return DeviationFlag{*kind, Millis{field<long long>(j, "time_ms")},
                         j.contains("detail") ? field<std::string>(j, "detail") : std::string{}};
}

json to_json(const harness::TaskResult& r)
{
    json errors = json::array();
    for (const auto& f : r.errors) {
        errors.push_back(to_json(f));
    }
    return json{
        {"participant_id", r.participant_id},
        {"model", harness::to_string(r.model)},
        {"task_id", r.task_id},
        {"started_ms", r.started.count()},
        {"ended_ms", r.ended.count()},
        {"time_to_complete_ms", r.time_to_complete.count()},
        {"completed", r.completed},
        {"error_count", r.errors.size()},
        {"errors", std::move(errors)},
    };
}

harness::TaskResult task_from_json(const json& j)
{
    harness::TaskResult r;
    r.participant_id = field<std::string>(j, "participant_id");
    r.model = model_field(j);
    r.task_id = field<std::string>(j, "task_id");
    r.started = Millis{field<long long>(j, "started_ms")};
    r.ended = Millis{field<long long>(j, "ended_ms")};
    r.time_to_complete = Millis{field<long long>(j, "time_to_complete_ms")};
    r.completed = field<bool>(j, "completed");
    for (const auto& f : field<json>(j, "errors")) {
        r.errors.push_back(flag_from_json(f));
    }
    if (r.time_to_complete != r.ended - r.started || r.time_to_complete < Millis{0}) {
        throw Error(Errc::parse, "time_to_complete_ms disagrees with started/ended");
    }
    return r;
}

json to_json(const harness::SurveyResponse& s)
{
    json items = json::array();
    for (const auto& i : s.items) {
        items.push_back(json{{"question_id", i.question_id}, {"rating", i.rating}});
    }
    return json{
        {"participant_id", s.participant_id},
        {"model", harness::to_string(s.model)},
        {"items", std::move(items)},
        {"satisfaction", s.satisfaction},
    };
}

harness::SurveyResponse survey_from_json(const json& j)
{
    std::vector<harness::SurveyItem> items;
    for (const auto& i : field<json>(j, "items")) {
        items.push_back({field<std::string>(i, "question_id"), field<int>(i, "rating")});
    }
    // Recomputed rather than trusted.
    return harness::score_survey(field<std::string>(j, "participant_id"), model_field(j), std::move(items));
}

json to_json(const harness::ParticipantInfo& p)
{
    return json{
        {"participant_id", p.participant_id},
        {"has_drivers_license", p.has_drivers_license},
        {"has_vehicle_access", p.has_vehicle_access},
    };
}

harness::ParticipantInfo participant_from_json(const json& j)
{
    return {field<std::string>(j, "participant_id"), field<bool>(j, "has_drivers_license"),
            field<bool>(j, "has_vehicle_access")};
}

json to_json(const harness::HypothesisReport& report)
{
    const auto outcome = [](const harness::HypothesisOutcome& o) {
        return json{{"mean_conventional", o.mean_conventional},
                    {"mean_iinteraction", o.mean_iinteraction},
                    {"accepted", o.accepted}};
    };
    return json{
        {"h1_efficiency", outcome(report.h1_efficiency)},
        {"h2_satisfaction", outcome(report.h2_satisfaction)},
        {"h3_errors", outcome(report.h3_errors)},
        {"main_accepted", report.main_accepted},
    };
}

json to_json(const ecm::LcdContent& lcd)
{
    return json{{"lines", lcd.lines}, {"blink", lcd.blink}};
}

json to_json(const ecm::VehicleState& s)
{
    json items = json::object();
    for (const auto& [id, item] : s.items) {
        items[id] = json{
            {"display_name", item.spec.display_name},
            {"distance_interval", item.spec.distance_interval ? json(*item.spec.distance_interval) : json(nullptr)},
            {"time_interval_ms", item.spec.time_interval ? json(item.spec.time_interval->count()) : json(nullptr)},
            {"last_reset_odometer", item.last_reset_odometer},
            {"last_reset_time_ms", item.last_reset_time.count()},
            {"status", ecm::to_string(item.status)},
        };
    }
    json dtcs = json::array();
    for (const auto& d : s.dtcs) {
        dtcs.push_back(d.str());
    }
    return json{
        {"ignition", ecm::to_string(s.ignition)},
        {"odometer", s.odometer},
        {"clock_ms", s.clock.count()},
        {"settings",
         {{"language", ecm::to_string(s.settings.language)},
          {"time_zone", ecm::to_string(s.settings.time_zone)},
          {"dst", s.settings.dst}}},
        {"items", std::move(items)},
        {"dtcs", std::move(dtcs)},
        {"mil", ecm::mil_on(s)},
        {"oil_life", s.oil_life},
        {"lcd", to_json(s.lcd)},
    };
}

json event_to_json(const EventKind& kind)
{
    return std::visit(
        [](const auto& k) -> json {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, ButtonDown>) {
                return {{"kind", "down"}, {"button", to_string(k.button)}};
            } else if constexpr (std::is_same_v<T, ButtonUp>) {
                return {{"kind", "up"}, {"button", to_string(k.button)}};
            } else if constexpr (std::is_same_v<T, KnobTurn>) {
                return {{"kind", "turn"}, {"knob", to_string(k.knob)}, {"direction", to_string(k.direction)}};
            } else {
                return {{"kind", "ignition"}, {"position", ecm::to_string(k.position)}};
            }
        },
        kind);
}

EventKind event_from_json(const json& j)
{
    const auto kind = field<std::string>(j, "kind");
    if (kind == "down" || kind == "up") {
        const auto name = field<std::string>(j, "button");
        const auto b = parse_button(name);
        if (!b) {
            throw Error(Errc::parse, "unknown button '" + name + "'");
        }
        if (kind == "down") {
            return ButtonDown{*b};
        }
        return ButtonUp{*b};
    }
    if (kind == "turn") {
        const auto knob = parse_knob(field<std::string>(j, "knob"));
        const auto dir = parse_direction(field<std::string>(j, "direction"));
        if (!knob || !dir) {
            throw Error(Errc::parse, "bad knob turn");
        }
        return KnobTurn{*knob, *dir};
    }
    if (kind == "ignition") {
        const auto pos = ecm::parse_ignition(field<std::string>(j, "position"));
        if (!pos) {
            throw Error(Errc::parse, "bad ignition position");
        }
        return IgnitionSet{*pos};
    }
    throw Error(Errc::parse, "unknown event kind '" + kind + "'");
}

}  // namespace ivis::codec
