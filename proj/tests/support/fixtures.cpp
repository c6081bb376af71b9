// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#include "fixtures.hpp"

#include <atomic>
#include <fstream>
#include <unistd.h>

namespace ivis::testing {

using namespace ivis::interaction;
namespace fs = std::filesystem;

fs::path data_path(const std::string& name)
{
    return fs::path(IVIS_DATA_DIR) / name;
}

const ecm::VehicleProfile& canonical_profile()
{
    static const auto profile = ecm::load_profile(data_path("canonical.profile").string());
    return profile;
}

std::shared_ptr<const codes::ReferenceTable> canonical_table()
{
    static const auto table =
        std::make_shared<const codes::ReferenceTable>(codes::load_table(data_path("reference_codes.table").string()));
    return table;
}

std::shared_ptr<const ProcedureSpec> procedure_a()
{
    static const auto spec = std::make_shared<const ProcedureSpec>(load_procedure(data_path("procedure_a.proc").string()));
    return spec;
}

std::shared_ptr<const ProcedureSpec> procedure_b()
{
    static const auto spec = std::make_shared<const ProcedureSpec>(load_procedure(data_path("procedure_b.proc").string()));
    return spec;
}

ecm::VehicleState oil_due_state(ecm::IgnitionPosition ignition)
{
    auto s = ecm::initial_state(canonical_profile(), 42137.0, Millis{0}, ignition);
    return ecm::force_due(std::move(s), "oil_change");
}

harness::TaskSetup iinteraction_setup()
{
    harness::TaskSetup setup;
    setup.model = harness::InteractionModel::IInteraction;
    setup.initial = oil_due_state();
    setup.table = canonical_table();
    return setup;
}

harness::TaskSetup procedure_setup(std::shared_ptr<const ProcedureSpec> spec)
{
    harness::TaskSetup setup;
    setup.model = harness::InteractionModel::Conventional;
    setup.initial = oil_due_state();
    setup.procedure = std::move(spec);
    return setup;
}

fs::path temp_dir(const std::string& name)
{
    static std::atomic<int> counter{0};
    auto dir = fs::temp_directory_path() /
               ("ivis-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + "-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_temp(const std::string& name, const std::string& body)
{
    const auto path = temp_dir("file") / name;
    std::ofstream(path, std::ios::binary) << body;
    return path;
}

InputEvent down(long long ms, Button b) { return {Millis{ms}, ButtonDown{b}, std::nullopt}; }
InputEvent up(long long ms, Button b) { return {Millis{ms}, ButtonUp{b}, std::nullopt}; }
InputEvent turn(long long ms, Knob k, Direction d) { return {Millis{ms}, KnobTurn{k, d}, std::nullopt}; }
InputEvent ignition(long long ms, ecm::IgnitionPosition p) { return {Millis{ms}, IgnitionSet{p}, std::nullopt}; }

std::vector<InputEvent> code_events(const std::string& code, long long start_ms, long long step_ms)
{
    std::vector<InputEvent> out;
    long long t = start_ms;
    const auto tap = [&](Button b) {
        out.push_back(down(t, b));
        out.push_back(up(t + step_ms, b));
        t += step_ms;
    };
    tap(Button::Mode);
    for (char c : code) {
        tap(digit_button(c - '0'));
    }
    return out;
}

std::vector<InputEvent> canonical_trace_a()
{
    return {
        down(0, Button::SelectReset),     up(1000, Button::SelectReset),
        down(2000, Button::SelectReset),  up(3000, Button::SelectReset),
        down(4000, Button::SelectReset),  up(5000, Button::SelectReset),
        down(6000, Button::SelectReset),  up(11000, Button::SelectReset),
        down(12000, Button::SelectReset), up(17000, Button::SelectReset),
    };
}

std::vector<InputEvent> canonical_trace_b()
{
    return {
        ignition(0, ecm::IgnitionPosition::Off),
        down(1000, Button::TripReset),
        ignition(2000, ecm::IgnitionPosition::On),
        up(3000, Button::TripReset),
        turn(4000, Knob::AClockAdjuster, Direction::Ccw),
        turn(5000, Knob::AClockAdjuster, Direction::Ccw),
        turn(6000, Knob::AClockAdjuster, Direction::Ccw),
    };
}

}  // namespace ivis::testing
