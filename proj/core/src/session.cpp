// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#include "ivis/session.hpp"
#include "ivis/error.hpp"

#include "text.hpp"

namespace ivis::harness {

using interaction::InputEvent;

std::string_view to_string(InteractionModel m) noexcept
{
    return m == InteractionModel::Conventional ? "conventional" : "iinteraction";
}

std::optional<InteractionModel> parse_model(std::string_view name)
{
    const auto n = text::lower(name);
    if (n == "conventional") return InteractionModel::Conventional;
    if (n == "iinteraction" || n == "i-interaction") return InteractionModel::IInteraction;
    return std::nullopt;
}

namespace {

bool is_keypad(interaction::Button b)
{
    return b == interaction::Button::Mode || interaction::digit_value(b).has_value();
}

std::optional<interaction::Button> keypad_button(const InputEvent& event)
{
    if (const auto* d = std::get_if<interaction::ButtonDown>(&event.kind); d && is_keypad(d->button)) {
        return d->button;
    }
    if (const auto* u = std::get_if<interaction::ButtonUp>(&event.kind); u && is_keypad(u->button)) {
        return u->button;
    }
    return std::nullopt;
}

}  // namespace

Session::Session(TaskSetup setup) : setup_(std::move(setup)), vehicle_(setup_.initial), last_time_(vehicle_.clock)
{
    if (setup_.model == InteractionModel::IInteraction) {
        if (!setup_.table) {
            throw Error(Errc::config, "i-Interaction session needs a reference table");
        }
        engine_ = interaction::make_icode_engine(*setup_.table, last_time_);
    } else {
        if (!setup_.procedure) {
            throw Error(Errc::config, "conventional session needs a procedure");
        }
        engine_ = interaction::make_conventional_engine(*setup_.procedure, last_time_);
    }
}

FeedOutcome Session::feed(const InputEvent& event)
{
    if (event.time < last_time_) {
        throw Error(Errc::invalid_argument, "event at " + format_seconds(event.time) + " is before " +
                                                format_seconds(last_time_));
    }
    auto held = held_;
    if (const auto* d = std::get_if<interaction::ButtonDown>(&event.kind)) {
        if (!held.insert(d->button).second) {
            throw Error(Errc::invalid_argument,
                        std::string(interaction::to_string(d->button)) + " pressed while already down");
        }
    } else if (const auto* u = std::get_if<interaction::ButtonUp>(&event.kind)) {
        if (held.erase(u->button) == 0) {
            throw Error(Errc::invalid_argument,
                        std::string(interaction::to_string(u->button)) + " released without a press");
        }
    }

    auto vehicle = ecm::advance(vehicle_, event.time - vehicle_.clock, 0.0);
    if (const auto* ign = std::get_if<interaction::IgnitionSet>(&event.kind)) {
        vehicle = ecm::set_ignition(std::move(vehicle), ign->position);
    }

    interaction::StepResult step;
    if (setup_.model == InteractionModel::Conventional) {
        step = interaction::conventional_step(engine_, *setup_.procedure, event, vehicle);
    } else if (keypad_button(event) && vehicle.ignition == ecm::IgnitionPosition::Off) {
        // The radio keypad is unpowered with the ignition off.
        step.engine = engine_;
    } else {
        step = interaction::icode_step(engine_, *setup_.table, event);
    }

    for (const auto& action : step.actions) {
        vehicle = ecm::apply_action(std::move(vehicle), action);
    }

    vehicle_ = std::move(vehicle);
    engine_ = std::move(step.engine);
    held_ = std::move(held);
    last_time_ = event.time;
    return FeedOutcome{std::move(step.actions), std::move(step.flags)};
}

ecm::LcdContent Session::display() const
{
    return interaction::compose_display(interaction::engine_display(engine_, vehicle_), vehicle_.lcd);
}

TaskTracker::TaskTracker(std::string participant_id, InteractionModel model, std::string task_id,
                         std::string target_item, Millis scenario_clock)
    : target_(std::move(target_item))
{
    result_.participant_id = std::move(participant_id);
    result_.model = model;
    result_.task_id = std::move(task_id);
    result_.started = scenario_clock;
    result_.ended = scenario_clock;
}

void TaskTracker::observe(const InputEvent& event, const FeedOutcome& outcome)
{
    if (result_.completed) {
        return;
    }
    if (!started_) {
        started_ = true;
        result_.started = event.time;
    }
    result_.ended = event.time;
    result_.errors.insert(result_.errors.end(), outcome.flags.begin(), outcome.flags.end());
    for (const auto& action : outcome.actions) {
        if (const auto* r = std::get_if<ecm::ResetItem>(&action); r && r->item_id == target_) {
            result_.completed = true;
        }
    }
    result_.time_to_complete = result_.ended - result_.started;
}

EventSource from_events(std::vector<InputEvent> events)
{
    auto shared = std::make_shared<std::vector<InputEvent>>(std::move(events));
    auto index = std::make_shared<std::size_t>(0);
    return [shared, index]() -> std::optional<InputEvent> {
        if (*index >= shared->size()) {
            return std::nullopt;
        }
        return (*shared)[(*index)++];
    };
}

TaskRun execute_task(const TaskSetup& setup, const EventSource& source)
{
    const auto target = setup.initial.items.find(setup.target_item);
    if (target == setup.initial.items.end()) {
        throw Error(Errc::unknown_item, "task target '" + setup.target_item + "' is not a vehicle item");
    }
    if (target->second.status != ecm::ItemStatus::Due) {
        throw Error(Errc::invalid_argument, "task target '" + setup.target_item + "' is not DUE at start");
    }

    Session session{setup};
    TaskTracker tracker{setup.participant_id, setup.model, setup.task_id, setup.target_item,
                        setup.initial.clock};
    TaskRun run;
    run.display_stream.push_back(session.display());

    while (!tracker.completed()) {
        auto event = source();
        if (!event) {
            break;
        }
        auto outcome = session.feed(*event);
        tracker.observe(*event, outcome);
        run.actions.insert(run.actions.end(), outcome.actions.begin(), outcome.actions.end());
        if (auto view = session.display(); view != run.display_stream.back()) {
            run.display_stream.push_back(std::move(view));
        }
    }
    run.result = tracker.result();
    run.final_state = session.vehicle();
    return run;
}

TaskResult run_task(const TaskSetup& setup, const EventSource& source)
{
    return execute_task(setup, source).result;
}

}  // namespace ivis::harness
