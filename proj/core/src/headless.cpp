// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#include "ivis/headless.hpp"
#include "ivis/error.hpp"

#include "json_codec.hpp"
#include "text.hpp"

#include <fstream>

namespace ivis::service {

namespace fs = std::filesystem;

Trace parse_trace(std::string_view body, const fs::path& base_dir)
{
    Trace trace;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos < body.size()) {
        auto end = body.find('\n', pos);
        if (end == std::string_view::npos) {
            end = body.size();
        }
        auto line = body.substr(pos, end - pos);
        pos = end + 1;
        ++number;

        const auto hash = line.find('#');
        if (hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos) {
            continue;
        }
        line = line.substr(first);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) {
            line.remove_suffix(1);
        }

        if (line.rfind("scenario ", 0) == 0) {
            if (!trace.events.empty()) {
                throw Error(Errc::parse, "'scenario' must precede the events", number);
            }
            fs::path p{std::string(line.substr(9))};
            if (p.is_relative() && !base_dir.empty()) {
                p = base_dir / p;
            }
            trace.scenario = p.lexically_normal();
        } else if (line.rfind("captured ", 0) == 0) {
            const auto mode = parse_clock_mode(line.substr(9));
            if (!mode) {
                throw Error(Errc::parse, "captured must be virtual or wall", number);
            }
            trace.captured = *mode;
        } else {
            auto event = interaction::parse_event(line, number);
            if (!trace.events.empty() && event.time < trace.events.back().time) {
                throw Error(Errc::parse, "event time goes backwards", number);
            }
            trace.events.push_back(std::move(event));
        }
    }
    return trace;
}

Trace load_trace(const fs::path& path)
{
    return parse_trace(text::read_file(path), path.parent_path());
}

std::string serialize(const Trace& trace, const fs::path& base_dir)
{
    std::string out;
    if (trace.scenario) {
        auto p = *trace.scenario;
        if (!base_dir.empty()) {
            std::error_code ec;
            const auto rel = fs::relative(p, base_dir, ec);
            if (!ec && !rel.empty()) {
                p = rel;
            }
        }
        out += "scenario " + p.string() + "\n";
    }
    out += "captured " + std::string(to_string(trace.captured)) + "\n";
    for (const auto& e : trace.events) {
        out += interaction::format_event(e);
        out += '\n';
    }
    return out;
}

void save_trace(const fs::path& path, const Trace& trace)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(Errc::io, "cannot write trace " + path.string());
    }
    out << serialize(trace, path.parent_path());
    if (!out.flush()) {
        throw Error(Errc::io, "write failed for " + path.string());
    }
}

harness::TaskRun run_headless(const LoadedScenario& scenario, const std::vector<interaction::InputEvent>& events)
{
    return harness::execute_task(scenario.setup(), harness::from_events(events));
}

harness::TaskRun replay(const LoadedScenario& scenario, const Trace& trace, ClockMode clock)
{
    if (clock == ClockMode::Wall) {
        throw Error(Errc::replay_refused, "replay needs the virtual clock; wall-clock replay is not deterministic");
    }
    return run_headless(scenario, trace.events);
}

std::string state_snapshot(const ecm::VehicleState& state)
{
    return codec::to_json(state).dump();
}

}  // namespace ivis::service
