// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

// nlohmann::json mappings shared by the session log, the wire protocol and
// state snapshots. Internal to ivis_core; field names are documented in
// docs/session_log.md and docs/wire_protocol.md.

#pragma once

#include "ivis/ecm.hpp"
#include "ivis/engine.hpp"
#include "ivis/evaluation.hpp"
#include "ivis/session.hpp"

#include <json.hpp>

namespace ivis::codec {

using nlohmann::json;

json to_json(const interaction::DeviationFlag& flag);
interaction::DeviationFlag flag_from_json(const json& j);

json to_json(const harness::TaskResult& result);
harness::TaskResult task_from_json(const json& j);

json to_json(const harness::SurveyResponse& response);
harness::SurveyResponse survey_from_json(const json& j);

json to_json(const harness::ParticipantInfo& info);
harness::ParticipantInfo participant_from_json(const json& j);

json to_json(const harness::HypothesisReport& report);

json to_json(const ecm::LcdContent& lcd);
json to_json(const ecm::VehicleState& state);

json event_to_json(const interaction::EventKind& kind);
interaction::EventKind event_from_json(const json& j);

}  // namespace ivis::codec
