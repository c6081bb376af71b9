// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ivis/code_table.hpp"
#include "ivis/ecm.hpp"
#include "ivis/engine.hpp"
#include "ivis/input.hpp"
#include "ivis/procedure.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ivis::harness {

enum class InteractionModel { Conventional, IInteraction };

std::string_view to_string(InteractionModel m) noexcept;
std::optional<InteractionModel> parse_model(std::string_view name);

/// Everything needed to run one participant task under one model.
struct TaskSetup {
    InteractionModel model = InteractionModel::IInteraction;
    ecm::VehicleState initial;
    std::shared_ptr<const codes::ReferenceTable> table;            // required for IInteraction
    std::shared_ptr<const interaction::ProcedureSpec> procedure;  // required for Conventional
    std::string target_item{ecm::kDefaultOilItem};
    std::string participant_id = "P01";
    std::string task_id = "oil_reset";
};

struct FeedOutcome {
    std::vector<ecm::Action> actions;
    std::vector<interaction::DeviationFlag> flags;
};

/// Single coordinator for one participant: owns the vehicle and the engine
/// state and funnels every InputEvent through them in order.
class Session {
public:
    explicit Session(TaskSetup setup);

    /// Applies one event. Throws Error(invalid_argument) for an out-of-order
    /// timestamp or an unmatched press/release; the session is then unchanged.
    FeedOutcome feed(const interaction::InputEvent& event);

    const TaskSetup& setup() const noexcept { return setup_; }
    const ecm::VehicleState& vehicle() const noexcept { return vehicle_; }
    const interaction::EngineState& engine() const noexcept { return engine_; }
    Millis last_time() const noexcept { return last_time_; }

    /// What the instrument LCD shows right now (engine overlay + ECM render).
    ecm::LcdContent display() const;

private:
    TaskSetup setup_;
    ecm::VehicleState vehicle_;
    interaction::EngineState engine_;
    std::set<interaction::Button> held_;
    Millis last_time_;
};

struct TaskResult {
    std::string participant_id;
    InteractionModel model = InteractionModel::IInteraction;
    std::string task_id;
    Millis started{0};
    Millis ended{0};
    Millis time_to_complete{0};
    std::vector<interaction::DeviationFlag> errors;
    bool completed = false;

    bool operator==(const TaskResult&) const = default;
};

/// Turns a stream of (event, outcome) pairs into a TaskResult. The timer starts
/// at the first input and stops at the event whose actions reset the target.
class TaskTracker {
public:
    TaskTracker(std::string participant_id, InteractionModel model, std::string task_id,
                std::string target_item, Millis scenario_clock);

    /// Ignored once the task has completed.
    void observe(const interaction::InputEvent& event, const FeedOutcome& outcome);

    bool started() const noexcept { return started_; }
    bool completed() const noexcept { return result_.completed; }
    const TaskResult& result() const noexcept { return result_; }

private:
    std::string target_;
    bool started_ = false;
    TaskResult result_;
};

using EventSource = std::function<std::optional<interaction::InputEvent>()>;

EventSource from_events(std::vector<interaction::InputEvent> events);

struct TaskRun {
    TaskResult result;
    ecm::VehicleState final_state;
    std::vector<ecm::Action> actions;
    std::vector<ecm::LcdContent> display_stream;  // one entry per change, starting with the initial view
};

/// Pipes events through the configured engine until the target reset is
/// observed or the source runs dry. Requires the target item to start DUE.
TaskRun execute_task(const TaskSetup& setup, const EventSource& source);
TaskResult run_task(const TaskSetup& setup, const EventSource& source);

}  // namespace ivis::harness
