// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#include "ivis/error.hpp"
#include "ivis/headless.hpp"
#include "ivis/scenario.hpp"
#include "ivis/session_log.hpp"
#include "ivis/wire.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>

namespace ivis::service {
namespace {

using namespace ivis::testing;
using interaction::Button;
using nlohmann::json;
namespace fs = std::filesystem;

std::shared_ptr<const LoadedScenario> scenario(const char* name)
{
    return std::make_shared<const LoadedScenario>(load(data_path(name)));
}

std::optional<Errc> code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

// ---- scenarios -------------------------------------------------------------

TEST(ScenarioTest, ShippedScenariosLoad)
{
    for (const char* name : {"oil_iinteraction.scenario", "oil_procedure_a.scenario", "oil_procedure_b.scenario"}) {
        const auto s = load(data_path(name));
        EXPECT_EQ(s.target, "oil_change") << name;
        EXPECT_EQ(s.initial.items.at("oil_change").status, ecm::ItemStatus::Due) << name;
        EXPECT_DOUBLE_EQ(s.initial.odometer, 42137.0);
        EXPECT_TRUE(s.source.is_absolute());
    }
}

TEST(ScenarioTest, ParsesEveryKey)
{
    const auto s = parse_scenario(
        "# comment\n"
        "profile p.profile\n"
        "procedure a.proc\n"
        "model conventional\n"
        "target oil_change\n"
        "odometer 1234.5\n"
        "clock 172800\n"
        "ignition OFF\n"
        "due oil_change oil_filter\n"
        "clock_mode wall\n"
        "param X1=7\n"
        "param X2=2.5s\n"
        "participant P09\n"
        "task custom\n",
        "/base");
    EXPECT_EQ(s.profile, fs::path("/base/p.profile"));
    EXPECT_EQ(s.procedure, fs::path("/base/a.proc"));
    EXPECT_EQ(s.model, harness::InteractionModel::Conventional);
    EXPECT_EQ(s.target, "oil_change");
    EXPECT_DOUBLE_EQ(s.odometer, 1234.5);
    EXPECT_EQ(s.clock, days(2));
    EXPECT_EQ(s.ignition, ecm::IgnitionPosition::Off);
    EXPECT_EQ(s.due, (std::vector<std::string>{"oil_change", "oil_filter"}));
    EXPECT_EQ(s.clock_mode, ClockMode::Wall);
    EXPECT_DOUBLE_EQ(s.params.at("X1"), 7.0);
    EXPECT_DOUBLE_EQ(s.params.at("X2"), 2.5);
    EXPECT_EQ(s.participant_id, "P09");
    EXPECT_EQ(s.task_id, "custom");
}

TEST(ScenarioTest, ParseErrorsCarryLineNumbers)
{
    const std::vector<std::pair<std::string, std::size_t>> cases = {
        {"profile p\nflavour vanilla\n", 2},
        {"model hovercraft\n", 1},
        {"profile p\n\nodometer -3\n", 3},
        {"ignition SIDEWAYS\n", 1},
        {"due\n", 1},
        {"clock_mode sundial\n", 1},
        {"param X1\n", 1},
        {"param X1=abc\n", 1},
        {"profile a b\n", 1},
    };
    for (const auto& [text, line] : cases) {
        try {
            parse_scenario(text);
            ADD_FAILURE() << text;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::parse) << text;
            EXPECT_EQ(e.line(), line) << text;
        }
    }
}

TEST(ScenarioTest, MissingRequiredFilesAreConfigErrors)
{
    EXPECT_EQ(code_of([] { load(parse_scenario("model iinteraction\n")); }), Errc::config);
    const auto profile = data_path("canonical.profile").string();
    EXPECT_EQ(code_of([&] { load(parse_scenario("profile " + profile + "\nmodel iinteraction\n")); }), Errc::config);
    EXPECT_EQ(code_of([&] { load(parse_scenario("profile " + profile + "\nmodel conventional\n")); }), Errc::config);
}

TEST(ScenarioTest, ReferencedFileErrorsPropagate)
{
    const auto dir = data_path("");
    EXPECT_EQ(code_of([&] {
                  load(parse_scenario("profile missing.profile\ncode_table reference_codes.table\n", dir));
              }),
              Errc::io);
    const auto bad_table = write_temp("bad.table", "3014 reset oil_change\n3014 reset oil_change\n");
    EXPECT_EQ(code_of([&] {
                  load(parse_scenario("profile canonical.profile\ncode_table " + bad_table.string() + "\n", dir));
              }),
              Errc::duplicate_code);
}

TEST(ScenarioTest, BadTargetsAndDueEntries)
{
    const auto dir = data_path("");
    const std::string base = "profile canonical.profile\ncode_table reference_codes.table\n";
    EXPECT_EQ(code_of([&] { load(parse_scenario(base + "target wipers\n", dir)); }), Errc::config);
    EXPECT_EQ(code_of([&] { load(parse_scenario(base + "due wipers\n", dir)); }), Errc::unknown_item);
}

TEST(ScenarioTest, ParamsReachTheProcedure)
{
    const auto s = load(parse_scenario("profile canonical.profile\nprocedure procedure_a.proc\nmodel conventional\n"
                                       "due oil_change\nparam X1=7\n",
                                       data_path("")));
    EXPECT_EQ(std::get<interaction::HoldFor>(s.procedure->steps[2]).min_hold, seconds(7));
}

TEST(ScenarioTest, EnvironmentOverridesPaths)
{
    const auto table = write_temp("one.table", "3014 reset oil_change\n");
    ::setenv(kEnvCodeTable, table.c_str(), 1);
    const auto s = load_scenario(data_path("oil_iinteraction.scenario"));
    ::unsetenv(kEnvCodeTable);
    EXPECT_EQ(s.code_table, table);
    EXPECT_EQ(load(s).table->entries().size(), 1u);
}

// ---- traces and replay ------------------------------------------------------

TEST(TraceTest, ParsesHeaderAndEvents)
{
    const auto t = parse_trace("# c\nscenario s.scenario\ncaptured wall\n1.000 down mode\n2.500 up mode client=2.480\n",
                               "/x");
    EXPECT_EQ(t.scenario, fs::path("/x/s.scenario"));
    EXPECT_EQ(t.captured, ClockMode::Wall);
    ASSERT_EQ(t.events.size(), 2u);
    EXPECT_EQ(t.events[1].time, Millis{2500});
    EXPECT_EQ(t.events[1].client_time, Millis{2480});
}

TEST(TraceTest, ErrorsCarryLineNumbers)
{
    const std::vector<std::pair<std::string, std::size_t>> cases = {
        {"1.000 down mode\n0.500 up mode\n", 2},
        {"1.000 down mode\nscenario s\n", 2},
        {"captured sundial\n", 1},
        {"\n\n1.000 press mode\n", 3},
    };
    for (const auto& [text, line] : cases) {
        try {
            parse_trace(text);
            ADD_FAILURE() << text;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::parse) << text;
            EXPECT_EQ(e.line(), line) << text;
        }
    }
}

TEST(TraceTest, SaveLoadRoundTrip)
{
    const auto dir = temp_dir("trace");
    Trace t;
    t.scenario = dir / "sub" / "x.scenario";
    t.captured = ClockMode::Wall;
    t.events = code_events("3014");
    t.events[3].client_time = Millis{1987};
    save_trace(dir / "t.trace", t);
    EXPECT_EQ(load_trace(dir / "t.trace"), t);
    EXPECT_NE(serialize(t, dir).find("scenario sub/x.scenario"), std::string::npos);
}

TEST(ReplayTest, ShippedTracesComplete)
{
    for (const char* name : {"oil_iinteraction.trace", "oil_procedure_a.trace", "oil_procedure_b.trace"}) {
        const auto trace = load_trace(data_path(name));
        ASSERT_TRUE(trace.scenario);
        const auto run = replay(load(*trace.scenario), trace);
        EXPECT_TRUE(run.result.completed) << name;
        EXPECT_TRUE(run.result.errors.empty()) << name;
        EXPECT_DOUBLE_EQ(run.final_state.oil_life, 100.0);
    }
}

TEST(ReplayTest, WallClockReplayIsRefused)
{
    const auto trace = load_trace(data_path("oil_iinteraction.trace"));
    EXPECT_EQ(code_of([&] { replay(load(*trace.scenario), trace, ClockMode::Wall); }), Errc::replay_refused);
}

TEST(ReplayTest, SnapshotsAreByteStable)
{
    const auto s = load(data_path("oil_iinteraction.scenario"));
    const auto a = run_headless(s, code_events("3014"));
    const auto b = run_headless(s, code_events("3014"));
    EXPECT_EQ(state_snapshot(a.final_state), state_snapshot(b.final_state));
    EXPECT_NE(state_snapshot(a.final_state), state_snapshot(s.initial));
}

// ---- wire session -----------------------------------------------------------

std::vector<std::string> of_type(const std::vector<std::string>& frames, std::string_view type)
{
    std::vector<std::string> out;
    for (const auto& f : frames) {
        if (frame_type(f) == type) out.push_back(f);
    }
    return out;
}

std::vector<std::string> feed(WireSession& ws, const std::vector<interaction::InputEvent>& events)
{
    std::vector<std::string> out;
    for (const auto& e : events) {
        auto r = ws.handle(encode_input(e.kind, e.time));
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

TEST(WireSessionTest, OpenAnnouncesTaskDisplayAndState)
{
    WireSession ws{scenario("oil_iinteraction.scenario"), {}};
    const auto frames = ws.open();
    ASSERT_EQ(frames.size(), 3u);
    const auto started = json::parse(frames[0]);
    EXPECT_EQ(started["type"], "task_started");
    EXPECT_EQ(started["participant_id"], "P01");
    EXPECT_EQ(started["model"], "iinteraction");
    EXPECT_EQ(started["target"], "oil_change");
    EXPECT_EQ(decode_display(frames[1]).lines, std::vector<std::string>{"SERVICE OIL CHANGE"});
    const auto state = json::parse(frames[2]);
    EXPECT_EQ(state["phase"], "in_task");
    EXPECT_EQ(state["vehicle"]["items"]["oil_change"]["status"], "DUE");
}

TEST(WireSessionTest, CodeEntryCompletesAndMatchesHeadless)
{
    const auto sc = scenario("oil_iinteraction.scenario");
    WireSession ws{sc, {}};
    ws.open();
    const auto frames = feed(ws, code_events("3014"));
    const auto completed = of_type(frames, kMsgTaskCompleted);
    ASSERT_EQ(completed.size(), 1u);
    const auto result = decode_task_completed(completed[0]);
    EXPECT_EQ(result.time_to_complete, seconds(5));
    EXPECT_EQ(result, run_headless(*sc, code_events("3014")).result);
    EXPECT_EQ(ws.phase(), Phase::Survey);
    EXPECT_EQ(json::parse(frames.back())["phase"], "survey");
    EXPECT_EQ(json::parse(frames.back())["questions"].size(), 5u);
    bool saw_prompt = false;
    for (const auto& f : of_type(frames, kMsgDisplay)) {
        const auto lines = decode_display(f).lines;
        saw_prompt |= !lines.empty() && lines[0] == "CODE: 30_ _";
    }
    EXPECT_TRUE(saw_prompt);
}

TEST(WireSessionTest, DeviationsAreFlagged)
{
    WireSession ws{scenario("oil_iinteraction.scenario"), {}};
    ws.open();
    const auto flags = of_type(feed(ws, code_events("9999")), kMsgErrorFlag);
    ASSERT_EQ(flags.size(), 1u);
    const auto j = json::parse(flags[0]);
    EXPECT_EQ(j["source"], "deviation");
    EXPECT_EQ(j["kind"], "invalid-code");
    EXPECT_EQ(j["time_ms"], 5000);
}

TEST(WireSessionTest, ProtocolErrors)
{
    WireSession ws{scenario("oil_iinteraction.scenario"), {}};
    ws.open();
    const auto kind = [&](std::string_view frame) {
        const auto r = ws.handle(frame);
        EXPECT_EQ(r.size(), 1u) << frame;
        const auto j = json::parse(r.at(0));
        EXPECT_EQ(j["source"], "protocol");
        return j["kind"].get<std::string>();
    };
    EXPECT_EQ(kind("not json"), "malformed");
    EXPECT_EQ(kind("[1,2]"), "malformed");
    EXPECT_EQ(kind(R"({"kind":"down"})"), "malformed");
    EXPECT_EQ(kind(R"({"type":"teleport"})"), "unknown_type");
    EXPECT_EQ(kind(R"({"type":"input","kind":"down","button":"mode"})"), "malformed");
    EXPECT_EQ(kind(R"({"type":"input","client_ts_ms":-1,"kind":"down","button":"mode"})"), "malformed");
    EXPECT_EQ(kind(R"({"type":"input","client_ts_ms":0,"kind":"down","button":"horn"})"), "malformed");
    EXPECT_EQ(kind(R"({"type":"input","client_ts_ms":0,"kind":"up","button":"mode"})"), "rejected");
    EXPECT_EQ(kind(std::string(kMaxFrameBytes + 1, ' ')), "malformed");
    EXPECT_TRUE(ws.trace().events.empty());
}

TEST(WireSessionTest, VirtualStampsNeverGoBackwards)
{
    WireSession ws{scenario("oil_iinteraction.scenario"), {}};
    ws.open();
    ws.handle(encode_input(interaction::ButtonDown{Button::Mode}, Millis{3000}));
    ws.handle(encode_input(interaction::ButtonUp{Button::Mode}, Millis{2000}));
    ASSERT_EQ(ws.trace().events.size(), 2u);
    EXPECT_EQ(ws.trace().events[1].time, Millis{3000});
    EXPECT_EQ(ws.trace().events[1].client_time, Millis{2000});
}

TEST(WireSessionTest, WallClockStampsFromTheTimeSource)
{
    auto now = Millis{0};
    SessionConfig config;
    config.clock = ClockMode::Wall;
    config.wall_elapsed = [&now] { return now; };
    WireSession ws{scenario("oil_iinteraction.scenario"), config};
    ws.open();
    now = Millis{1234};
    ws.handle(encode_input(interaction::ButtonDown{Button::Mode}, Millis{99999}));
    EXPECT_EQ(ws.trace().events[0].time, Millis{1234});
    EXPECT_EQ(ws.trace().captured, ClockMode::Wall);
    EXPECT_THROW((WireSession{scenario("oil_iinteraction.scenario"), {{}, 1, ClockMode::Wall, {}}}), Error);
}

TEST(WireSessionTest, SurveyFlow)
{
    WireSession ws{scenario("oil_iinteraction.scenario"), {}};
    ws.open();
    // Before completion the survey is refused.
    auto r = ws.handle(encode_survey_submit({{"q1_easy", 5}}));
    EXPECT_EQ(json::parse(r.at(0))["ok"], false);
    feed(ws, code_events("3014"));
    EXPECT_EQ(json::parse(ws.handle(encode_input(interaction::ButtonDown{Button::Mode}, seconds(9))).at(0))["kind"],
              "unexpected");
    r = ws.handle(encode_survey_submit({{"q1_easy", 7}}));
    EXPECT_EQ(json::parse(r.at(0))["ok"], false);
    r = ws.handle(encode_survey_submit({{"q1_easy", 5}, {"q2_fast", 4}}));
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(json::parse(r[0])["ok"], true);
    EXPECT_DOUBLE_EQ(json::parse(r[0])["satisfaction"].get<double>(), 4.5);
    EXPECT_EQ(json::parse(r[1])["phase"], "done");
    EXPECT_EQ(ws.phase(), Phase::Done);
    EXPECT_EQ(json::parse(ws.handle(encode_state_request()).at(0))["phase"], "done");
}

TEST(WireSessionTest, CloseRecordsTraceAndLog)
{
    const auto dir = temp_dir("record");
    const auto sc = scenario("oil_iinteraction.scenario");
    {
        WireSession ws{sc, {dir, 4, ClockMode::Virtual, {}}};
        ws.open();
        feed(ws, code_events("3014"));
        ws.handle(encode_survey_submit({{"q1_easy", 4}}));
        ws.close();
        ws.close();
        EXPECT_EQ(ws.trace_path(), dir / "P01-iinteraction-oil_reset-s4.trace");
    }
    const auto trace = load_trace(dir / "P01-iinteraction-oil_reset-s4.trace");
    const auto log = harness::import_results(dir / harness::kSessionLogFileName);
    ASSERT_EQ(log.tasks.size(), 1u);
    ASSERT_EQ(log.surveys.size(), 1u);
    EXPECT_EQ(replay(load(*trace.scenario), trace).result, log.tasks[0]);
}

TEST(WireSessionTest, UntouchedSessionLogsNothing)
{
    const auto dir = temp_dir("record");
    WireSession ws{scenario("oil_iinteraction.scenario"), {dir, 1, ClockMode::Virtual, {}}};
    ws.open();
    ws.close();
    EXPECT_FALSE(fs::exists(dir / harness::kSessionLogFileName));
    EXPECT_TRUE(fs::exists(ws.trace_path()));
}

TEST(WireSessionTest, TargetMustBeDue)
{
    auto s = std::make_shared<LoadedScenario>(load(data_path("oil_iinteraction.scenario")));
    s->initial = ecm::apply_reset(s->initial, "oil_change");
    EXPECT_EQ(code_of([&] { WireSession ws(s, {}); }), Errc::config);
}

}  // namespace
}  // namespace ivis::service
