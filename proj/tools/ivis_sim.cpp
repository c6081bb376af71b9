// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

// ivis-sim: headless runs, replays, the wire server and log reports.

#include "ivis/error.hpp"
#include "ivis/headless.hpp"
#include "ivis/scenario.hpp"
#include "ivis/server.hpp"
#include "ivis/session_log.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <csignal>
#include <fstream>
#include <iostream>

namespace {

using nlohmann::json;
using namespace ivis;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitIncomplete = 2;
constexpr int kExitConfig = 3;

service::Server* g_server = nullptr;

void on_signal(int)
{
    if (g_server) {
        g_server->stop();
    }
}

int exit_code_for(Errc code)
{
    switch (code) {
    case Errc::config:
    case Errc::parse:
    case Errc::schema:
    case Errc::duplicate_code:
    case Errc::io:
    case Errc::unknown_item:
    case Errc::invalid_setting:
    case Errc::dtc_format:
    case Errc::replay_refused:
    case Errc::insufficient_data:
        return kExitConfig;
    default:
        return kExitFailure;
    }
}

int print_run(const harness::TaskRun& run, const std::string& snapshot_path)
{
    const auto snapshot = service::state_snapshot(run.final_state);
    json actions = json::array();
    for (const auto& a : run.actions) {
        actions.push_back(ecm::describe(a));
    }
    json out{
        {"result", json::parse(harness::task_result_json(run.result))},
        {"actions", std::move(actions)},
        {"final_state", json::parse(snapshot)},
    };
    std::cout << out.dump(2) << "\n";
    if (!snapshot_path.empty()) {
        std::ofstream f(snapshot_path, std::ios::binary | std::ios::trunc);
        f << snapshot << "\n";
        if (!f) {
            throw Error(Errc::io, "cannot write snapshot " + snapshot_path);
        }
    }
    return run.result.completed ? kExitOk : kExitIncomplete;
}

std::optional<service::ClockMode> clock_option(const std::string& name)
{
    if (name.empty()) {
        return std::nullopt;
    }
    const auto mode = service::parse_clock_mode(name);
    if (!mode) {
        throw Error(Errc::config, "--clock must be virtual or wall");
    }
    return mode;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Vehicle service reminder simulator"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string trace_path;
    std::string snapshot_path;
    std::string listen = "127.0.0.1:7878";
    std::string record_dir;
    std::string logs_dir;
    std::string clock_name;
    std::size_t max_sessions = 0;

    auto* run = app.add_subcommand("run", "Run a trace against a scenario on the virtual clock");
    run->add_option("--scenario", scenario_path, "Scenario file")->required()->envname("IVIS_SCENARIO");
    run->add_option("--trace", trace_path, "Input trace file")->required()->envname("IVIS_TRACE");
    run->add_option("--snapshot", snapshot_path, "Write the final state snapshot here");

    auto* serve = app.add_subcommand("serve", "Serve one participant at a time over the wire protocol");
    serve->add_option("--scenario", scenario_path, "Scenario file")->required()->envname("IVIS_SCENARIO");
    serve->add_option("--listen", listen, "host:port to listen on")->envname("IVIS_LISTEN")->capture_default_str();
    serve->add_option("--record", record_dir, "Directory for traces and the session log")->envname("IVIS_RECORD_DIR");
    serve->add_option("--clock", clock_name, "virtual or wall; defaults to the scenario's clock_mode");
    serve->add_option("--max-sessions", max_sessions, "Exit after this many sessions (0 = run until signalled)");

    auto* replay = app.add_subcommand("replay", "Replay a recorded trace headlessly");
    replay->add_option("--trace", trace_path, "Trace file")->required()->envname("IVIS_TRACE");
    replay->add_option("--scenario", scenario_path, "Scenario file; defaults to the one named in the trace");
    replay->add_option("--clock", clock_name, "Replay clock; only virtual is accepted")->default_str("virtual");
    replay->add_option("--snapshot", snapshot_path, "Write the final state snapshot here");

    auto* report = app.add_subcommand("report", "Evaluate the hypotheses over session logs");
    report->add_option("--logs", logs_dir, "Directory of *.ndjson session logs")->required()->envname("IVIS_LOG_DIR");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        // Bad or missing arguments are configuration errors.
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*run) {
            const auto scenario = service::load(std::filesystem::path(scenario_path));
            const auto trace = service::load_trace(trace_path);
            return print_run(service::run_headless(scenario, trace.events), snapshot_path);
        }
        if (*replay) {
            const auto trace = service::load_trace(trace_path);
            std::filesystem::path source = scenario_path;
            if (source.empty()) {
                if (!trace.scenario) {
                    throw Error(Errc::config, "trace names no scenario; pass --scenario");
                }
                source = *trace.scenario;
            }
            const auto mode = clock_option(clock_name).value_or(service::ClockMode::Virtual);
            const auto scenario = service::load(source);
            return print_run(service::replay(scenario, trace, mode), snapshot_path);
        }
        if (*serve) {
            auto scenario = std::make_shared<const service::LoadedScenario>(
                service::load(std::filesystem::path(scenario_path)));
            service::ServerOptions options;
            options.endpoint = service::parse_endpoint(listen);
            options.record_dir = record_dir;
            options.clock = clock_option(clock_name).value_or(scenario->scenario.clock_mode);
            options.max_sessions = max_sessions;
            service::Server server{scenario, options};
            const auto port = server.listen();
            std::cout << "listening on " << options.endpoint.host << ":" << port << " ("
                      << service::to_string(options.clock) << " clock)" << std::endl;
            g_server = &server;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            server.run();
            g_server = nullptr;
            for (const auto& s : server.sessions()) {
                std::cout << "session " << s.session_number << ": " << harness::task_result_json(s.result) << "\n";
            }
            return kExitOk;
        }
        if (*report) {
            const auto log = harness::import_directory(logs_dir);
            std::cout << harness::report_json(harness::evaluate_log(log), log) << "\n";
            return kExitOk;
        }
    } catch (const Error& e) {
        std::cerr << "ivis-sim: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "ivis-sim: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}
