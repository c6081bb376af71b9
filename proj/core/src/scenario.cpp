// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#include "ivis/scenario.hpp"
#include "ivis/error.hpp"

#include "text.hpp"

#include <cstdlib>

namespace ivis::service {

namespace fs = std::filesystem;

std::string_view to_string(ClockMode m) noexcept
{
    return m == ClockMode::Virtual ? "virtual" : "wall";
}

std::optional<ClockMode> parse_clock_mode(std::string_view name)
{
    const auto n = text::lower(name);
    if (n == "virtual") return ClockMode::Virtual;
    if (n == "wall") return ClockMode::Wall;
    return std::nullopt;
}

namespace {

fs::path resolve(const fs::path& base, const std::string& value)
{
    fs::path p{value};
    if (p.is_relative() && !base.empty()) {
        p = base / p;
    }
    return p.lexically_normal();
}

const std::string& single_value(const text::Line& line)
{
    if (line.tokens.size() != 2) {
        throw Error(Errc::parse, "'" + line.tokens[0].value + "' takes exactly one value", line.number);
    }
    return line.tokens[1].value;
}

void apply_env(Scenario& s)
{
    if (const char* v = std::getenv(kEnvProfile); v && *v) s.profile = v;
    if (const char* v = std::getenv(kEnvCodeTable); v && *v) s.code_table = v;
    if (const char* v = std::getenv(kEnvProcedure); v && *v) s.procedure = v;
}

void check_required(const Scenario& s)
{
    if (s.profile.empty()) {
        throw Error(Errc::config, "scenario names no profile");
    }
    if (s.model == harness::InteractionModel::IInteraction && s.code_table.empty()) {
        throw Error(Errc::config, "i-Interaction scenario names no code_table");
    }
    if (s.model == harness::InteractionModel::Conventional && s.procedure.empty()) {
        throw Error(Errc::config, "conventional scenario names no procedure");
    }
}

}  // namespace

Scenario parse_scenario(std::string_view body, const fs::path& base_dir)
{
    Scenario s;
    for (const auto& line : text::tokenize(body)) {
        const auto key = text::lower(line.tokens[0].value);
        if (key == "profile") {
            s.profile = resolve(base_dir, single_value(line));
        } else if (key == "code_table") {
            s.code_table = resolve(base_dir, single_value(line));
        } else if (key == "procedure") {
            s.procedure = resolve(base_dir, single_value(line));
        } else if (key == "model") {
            const auto m = harness::parse_model(single_value(line));
            if (!m) {
                throw Error(Errc::parse, "unknown model '" + line.tokens[1].value + "'", line.number);
            }
            s.model = *m;
        } else if (key == "target") {
            s.target = single_value(line);
        } else if (key == "odometer") {
            const auto v = text::parse_number(single_value(line));
            if (!v) {
                throw Error(Errc::parse, "odometer must be a non-negative number", line.number);
            }
            s.odometer = *v;
        } else if (key == "clock") {
            try {
                s.clock = parse_seconds(single_value(line));
            } catch (const Error& e) {
                throw Error(Errc::parse, e.message(), line.number);
            }
        } else if (key == "ignition") {
            const auto p = ecm::parse_ignition(single_value(line));
            if (!p) {
                throw Error(Errc::parse, "unknown ignition position '" + line.tokens[1].value + "'", line.number);
            }
            s.ignition = *p;
        } else if (key == "due") {
            if (line.tokens.size() < 2) {
                throw Error(Errc::parse, "'due' needs at least one item id", line.number);
            }
            for (std::size_t i = 1; i < line.tokens.size(); ++i) {
                s.due.push_back(line.tokens[i].value);
            }
        } else if (key == "clock_mode") {
            const auto m = parse_clock_mode(single_value(line));
            if (!m) {
                throw Error(Errc::parse, "clock_mode must be virtual or wall", line.number);
            }
            s.clock_mode = *m;
        } else if (key == "param") {
            const auto& kv = single_value(line);
            const auto eq = kv.find('=');
            if (eq == std::string::npos || eq == 0 || eq + 1 == kv.size()) {
                throw Error(Errc::parse, "param must look like NAME=value", line.number);
            }
            auto value = kv.substr(eq + 1);
            if (value.back() == 's') {
                value.pop_back();
            }
            const auto number = text::parse_number(value);
            if (!number) {
                throw Error(Errc::parse, "param value must be a non-negative number", line.number);
            }
            s.params[kv.substr(0, eq)] = *number;
        } else if (key == "participant") {
            s.participant_id = single_value(line);
        } else if (key == "task") {
            s.task_id = single_value(line);
        } else {
            throw Error(Errc::parse, "unknown scenario key '" + line.tokens[0].value + "'", line.number);
        }
    }
    return s;
}

Scenario load_scenario(const fs::path& path)
{
    auto s = parse_scenario(text::read_file(path), path.parent_path());
    apply_env(s);
    return s;
}

harness::TaskSetup LoadedScenario::setup() const
{
    harness::TaskSetup out;
    out.model = scenario.model;
    out.initial = initial;
    out.table = table;
    out.procedure = procedure;
    out.target_item = target;
    out.participant_id = scenario.participant_id;
    out.task_id = scenario.task_id;
    return out;
}

LoadedScenario load(const Scenario& scenario)
{
    check_required(scenario);
    LoadedScenario out;
    out.scenario = scenario;
    out.profile = std::make_shared<const ecm::VehicleProfile>(ecm::load_profile(scenario.profile.string()));
    if (!scenario.code_table.empty()) {
        auto table = codes::load_table(scenario.code_table.string());
        codes::validate_against(table, *out.profile);
        out.table = std::make_shared<const codes::ReferenceTable>(std::move(table));
    }
    if (!scenario.procedure.empty()) {
        auto proc = interaction::load_procedure(scenario.procedure.string(), scenario.params);
        if (!out.profile->find(proc.target_item)) {
            throw Error(Errc::schema, "procedure targets unknown item '" + proc.target_item + "'");
        }
        out.procedure = std::make_shared<const interaction::ProcedureSpec>(std::move(proc));
    }
    auto state = ecm::initial_state(*out.profile, scenario.odometer, scenario.clock, scenario.ignition);
    for (const auto& id : scenario.due) {
        state = ecm::force_due(std::move(state), id);
    }
    out.initial = std::move(state);

    if (scenario.target) {
        out.target = *scenario.target;
    } else if (out.procedure && scenario.model == harness::InteractionModel::Conventional) {
        out.target = out.procedure->target_item;
    } else {
        out.target = out.profile->oil_item;
    }
    if (!out.profile->find(out.target)) {
        throw Error(Errc::config, "scenario target '" + out.target + "' is not a profile item");
    }
    if (out.procedure && scenario.model == harness::InteractionModel::Conventional &&
        out.procedure->target_item != out.target) {
        throw Error(Errc::config, "procedure resets '" + out.procedure->target_item + "' but the task target is '" +
                                      out.target + "'");
    }
    return out;
}

LoadedScenario load(const fs::path& scenario_path)
{
    auto out = load(load_scenario(scenario_path));
    out.source = fs::absolute(scenario_path).lexically_normal();
    return out;
}

}  // namespace ivis::service
