// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#include "ivis/engine.hpp"
#include "ivis/error.hpp"
#include "ivis/session.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

namespace ivis::interaction {
namespace {

using namespace ivis::testing;
using ecm::IgnitionPosition;

struct Fed {
    std::vector<ecm::Action> actions;
    std::vector<DeviationFlag> flags;
};

Fed feed_all(harness::Session& session, const std::vector<InputEvent>& events)
{
    Fed out;
    for (const auto& e : events) {
        auto r = session.feed(e);
        out.actions.insert(out.actions.end(), r.actions.begin(), r.actions.end());
        out.flags.insert(out.flags.end(), r.flags.begin(), r.flags.end());
    }
    return out;
}

std::vector<DeviationKind> kinds(const std::vector<DeviationFlag>& flags)
{
    std::vector<DeviationKind> out;
    for (const auto& f : flags) out.push_back(f.kind);
    return out;
}

const std::vector<ecm::Action> kOilReset{ecm::ResetItem{"oil_change"}};

// ---- reference-code engine -------------------------------------------------

TEST(ICodeEngineTest, PromptFormat)
{
    EXPECT_EQ(code_prompt("", 4), "CODE: _ _ _ _");
    EXPECT_EQ(code_prompt("30", 4), "CODE: 30_ _");
    EXPECT_EQ(code_prompt("301", 4), "CODE: 301_");
}

TEST(ICodeEngineTest, PartialCodeShowsPrompt)
{
    harness::Session s{iinteraction_setup()};
    auto events = code_events("30");
    feed_all(s, events);
    EXPECT_EQ(s.display().lines.at(0), "CODE: 30_ _");
    EXPECT_EQ(s.display().lines.at(1), "SERVICE OIL CHANGE");
}

TEST(ICodeEngineTest, Code3014ResetsOil)
{
    harness::Session s{iinteraction_setup()};
    const auto fed = feed_all(s, code_events("3014"));
    EXPECT_EQ(fed.actions, kOilReset);
    EXPECT_TRUE(fed.flags.empty());
    EXPECT_EQ(s.vehicle().items.at("oil_change").status, ecm::ItemStatus::Ok);
    EXPECT_DOUBLE_EQ(s.vehicle().oil_life, 100.0);
    EXPECT_TRUE(std::holds_alternative<Idle>(s.engine().mode));
    EXPECT_TRUE(s.display().lines.empty());
}

TEST(ICodeEngineTest, Code3015ResetsFilterAndOil)
{
    auto setup = iinteraction_setup();
    setup.initial = ecm::force_due(setup.initial, "oil_filter");
    harness::Session s{setup};
    const auto fed = feed_all(s, code_events("3015"));
    EXPECT_EQ(fed.actions, (std::vector<ecm::Action>{ecm::ResetItem{"oil_filter"}, ecm::ResetItem{"oil_change"}}));
    EXPECT_EQ(s.vehicle().items.at("oil_filter").status, ecm::ItemStatus::Ok);
    EXPECT_EQ(s.vehicle().items.at("oil_change").status, ecm::ItemStatus::Ok);
}

TEST(ICodeEngineTest, SettingCodeChangesLanguage)
{
    harness::Session s{iinteraction_setup()};
    const auto fed = feed_all(s, code_events("1002"));
    EXPECT_EQ(s.vehicle().settings.language, ecm::Language::Spanish);
    EXPECT_EQ(s.display().lines.at(0), "LANGUAGE SPANISH");
    EXPECT_EQ(fed.actions.size(), 1u);
}

TEST(ICodeEngineTest, InvalidCodeFlagsAndStaysInEntry)
{
    harness::Session s{iinteraction_setup()};
    auto fed = feed_all(s, code_events("9999"));
    EXPECT_TRUE(fed.actions.empty());
    EXPECT_EQ(kinds(fed.flags), std::vector<DeviationKind>{DeviationKind::InvalidCode});
    EXPECT_EQ(s.display().lines.at(0), "INVALID CODE");
    EXPECT_EQ(s.display().lines.at(1), "CODE: _ _ _ _");
    // Digits typed next go straight into a fresh buffer.
    std::vector<InputEvent> retry;
    long long t = 6000;
    for (char c : std::string("3014")) {
        retry.push_back(down(t, digit_button(c - '0')));
        retry.push_back(up(t + 500, digit_button(c - '0')));
        t += 1000;
    }
    fed = feed_all(s, retry);
    EXPECT_EQ(fed.actions, kOilReset);
}

TEST(ICodeEngineTest, TimeoutAfterTenSilentSeconds)
{
    const auto table = canonical_table();
    auto e = make_icode_engine(*table);
    e = icode_step(e, *table, up(1000, Button::Mode)).engine;
    e = icode_step(e, *table, up(2000, Button::Digit3)).engine;
    // Exactly ten seconds is still in time.
    auto r = icode_step(e, *table, up(12000, Button::Digit0));
    EXPECT_TRUE(r.flags.empty());
    EXPECT_EQ(std::get<CodeEntry>(r.engine.mode).buffer, "30");
    r = icode_step(r.engine, *table, up(22001, Button::Digit1));
    EXPECT_EQ(kinds(r.flags), std::vector<DeviationKind>{DeviationKind::Timeout});
    EXPECT_EQ(std::get<CodeEntry>(r.engine.mode).buffer, "1");
    EXPECT_EQ(r.engine.notice, "CODE TIMEOUT");
}

TEST(ICodeEngineTest, DigitOutsideCodeEntryIsWrongButton)
{
    const auto table = canonical_table();
    const auto r = icode_step(make_icode_engine(*table), *table, up(0, Button::Digit3));
    EXPECT_EQ(kinds(r.flags), std::vector<DeviationKind>{DeviationKind::WrongButton});
    EXPECT_TRUE(r.actions.empty());
}

TEST(ICodeEngineTest, ModeTogglesEntryOff)
{
    const auto table = canonical_table();
    auto e = icode_step(make_icode_engine(*table), *table, up(0, Button::Mode)).engine;
    e = icode_step(e, *table, up(100, Button::Digit3)).engine;
    e = icode_step(e, *table, up(200, Button::Mode)).engine;
    EXPECT_TRUE(std::holds_alternative<Idle>(e.mode));
}

TEST(ICodeEngineTest, RejectsTimeGoingBackwards)
{
    const auto table = canonical_table();
    auto e = icode_step(make_icode_engine(*table), *table, up(5000, Button::Mode)).engine;
    EXPECT_THROW(icode_step(e, *table, up(4999, Button::Digit1)), Error);
}

TEST(ICodeEngineTest, KeypadIsDeadWithIgnitionOff)
{
    auto setup = iinteraction_setup();
    setup.initial = ecm::set_ignition(setup.initial, IgnitionPosition::Off);
    harness::Session s{setup};
    const auto fed = feed_all(s, code_events("3014"));
    EXPECT_TRUE(fed.actions.empty());
    EXPECT_TRUE(fed.flags.empty());
    EXPECT_EQ(s.vehicle().items.at("oil_change").status, ecm::ItemStatus::Due);
}

TEST(ICodeEngineTest, ExhaustiveCodeSpaceOnlyTableCodesAct)
{
    const auto table = canonical_table();
    int acting = 0;
    for (int n = 0; n < 10000; ++n) {
        char code[5];
        std::snprintf(code, sizeof code, "%04d", n);
        auto e = make_icode_engine(*table);
        auto r = icode_step(e, *table, up(0, Button::Mode));
        std::vector<ecm::Action> actions;
        for (int i = 0; i < 4; ++i) {
            r = icode_step(r.engine, *table, up(100 * (i + 1), digit_button(code[i] - '0')));
            actions.insert(actions.end(), r.actions.begin(), r.actions.end());
        }
        const auto expected = table->lookup(code);
        if (expected) {
            ++acting;
            EXPECT_EQ(actions, codes::to_ecm_actions(*expected)) << code;
        } else {
            ASSERT_TRUE(actions.empty()) << code;
            ASSERT_EQ(kinds(r.flags), std::vector<DeviationKind>{DeviationKind::InvalidCode}) << code;
        }
    }
    EXPECT_EQ(acting, 13);
}

// ---- conventional engine ---------------------------------------------------

TEST(ConventionalEngineTest, CanonicalProcedureACompletes)
{
    harness::Session s{procedure_setup(procedure_a())};
    const auto fed = feed_all(s, canonical_trace_a());
    EXPECT_EQ(fed.actions, kOilReset);
    EXPECT_TRUE(fed.flags.empty());
    EXPECT_DOUBLE_EQ(s.vehicle().oil_life, 100.0);
}

TEST(ConventionalEngineTest, ProcedureAShowsPagesThenResetMode)
{
    harness::Session s{procedure_setup(procedure_a())};
    const auto trace = canonical_trace_a();
    std::vector<std::string> first_lines;
    for (std::size_t i = 0; i < 7; ++i) {
        s.feed(trace[i]);
        const auto d = s.display();
        first_lines.push_back(d.lines.empty() ? "" : d.lines[0]);
    }
    EXPECT_EQ(first_lines[1], "ODO 42137 MI");
    EXPECT_EQ(first_lines[3], "TIME 19:00");
    EXPECT_EQ(first_lines[5], "OIL LIFE 0%");
    // Holding for the first reset step.
    EXPECT_EQ(first_lines[6], "RESET MODE");
    s.feed(trace[7]);
    EXPECT_EQ(s.display().lines.at(0), "RESET MODE");
}

TEST(ConventionalEngineTest, PrematureReleaseIsFlaggedAndRecoverable)
{
    harness::Session s{procedure_setup(procedure_a())};
    auto trace = canonical_trace_a();
    std::vector<InputEvent> events(trace.begin(), trace.begin() + 6);
    events.push_back(down(6000, Button::SelectReset));
    events.push_back(up(8000, Button::SelectReset));
    auto fed = feed_all(s, events);
    EXPECT_EQ(kinds(fed.flags), std::vector<DeviationKind>{DeviationKind::PrematureRelease});
    fed = feed_all(s, {down(9000, Button::SelectReset), up(14000, Button::SelectReset),
                       down(15000, Button::SelectReset), up(20000, Button::SelectReset)});
    EXPECT_EQ(fed.actions, kOilReset);
    EXPECT_TRUE(fed.flags.empty());
}

TEST(ConventionalEngineTest, StrayButtonsAreClassified)
{
    harness::Session s{procedure_setup(procedure_a())};
    auto fed = feed_all(s, {down(0, Button::TripReset), up(500, Button::TripReset)});
    EXPECT_EQ(kinds(fed.flags), std::vector<DeviationKind>{DeviationKind::WrongButton});

    harness::Session b{procedure_setup(procedure_b())};
    fed = feed_all(b, {turn(0, Knob::AClockAdjuster, Direction::Cw)});
    EXPECT_EQ(kinds(fed.flags), (std::vector<DeviationKind>{DeviationKind::OutOfOrder}));
}

TEST(ConventionalEngineTest, CanonicalProcedureBCompletes)
{
    harness::Session s{procedure_setup(procedure_b())};
    const auto fed = feed_all(s, canonical_trace_b());
    EXPECT_EQ(fed.actions, kOilReset);
    EXPECT_TRUE(fed.flags.empty());
}

TEST(ConventionalEngineTest, ProcedureBReleaseBeforeIgnitionIsPremature)
{
    harness::Session s{procedure_setup(procedure_b())};
    const auto fed = feed_all(s, {ignition(0, IgnitionPosition::Off), down(1000, Button::TripReset),
                                  up(2000, Button::TripReset)});
    EXPECT_EQ(kinds(fed.flags), std::vector<DeviationKind>{DeviationKind::PrematureRelease});
}

TEST(ConventionalEngineTest, ProcedureBWrongIgnitionIsFlagged)
{
    harness::Session s{procedure_setup(procedure_b())};
    const auto fed = feed_all(s, {ignition(0, IgnitionPosition::Acc)});
    EXPECT_EQ(kinds(fed.flags), std::vector<DeviationKind>{DeviationKind::WrongIgnition});
}

TEST(ConventionalEngineTest, DirectionIsEnforcedWhenGiven)
{
    auto spec = std::make_shared<const ProcedureSpec>(compile_procedure("target oil_change\nturn A x2 cw\n"));
    harness::Session s{procedure_setup(spec)};
    auto fed = feed_all(s, {turn(0, Knob::AClockAdjuster, Direction::Ccw)});
    EXPECT_EQ(kinds(fed.flags), std::vector<DeviationKind>{DeviationKind::WrongButton});
    fed = feed_all(s, {turn(1000, Knob::AClockAdjuster, Direction::Cw), turn(2000, Knob::AClockAdjuster, Direction::Cw)});
    EXPECT_EQ(fed.actions, kOilReset);
}

TEST(ConventionalEngineTest, StepIsPure)
{
    const auto spec = procedure_a();
    const auto vehicle = oil_due_state();
    const auto e = make_conventional_engine(*spec);
    const auto copy = e;
    const auto a = conventional_step(e, *spec, down(0, Button::SelectReset), vehicle);
    const auto b = conventional_step(e, *spec, down(0, Button::SelectReset), vehicle);
    EXPECT_EQ(e, copy);
    EXPECT_EQ(a, b);
}

// ---- session coordinator ---------------------------------------------------

TEST(SessionTest, RejectsMalformedStreamsAndStaysUnchanged)
{
    harness::Session s{iinteraction_setup()};
    s.feed(down(1000, Button::Mode));
    const auto vehicle = s.vehicle();
    const auto engine = s.engine();
    EXPECT_THROW(s.feed(up(999, Button::Mode)), Error);
    EXPECT_THROW(s.feed(down(1000, Button::Mode)), Error);
    EXPECT_THROW(s.feed(up(1000, Button::Digit3)), Error);
    EXPECT_EQ(s.vehicle(), vehicle);
    EXPECT_EQ(s.engine(), engine);
    EXPECT_EQ(s.last_time(), Millis{1000});
}

TEST(SessionTest, ClockFollowsEvents)
{
    harness::Session s{iinteraction_setup()};
    s.feed(down(days(1).count(), Button::Mode));
    EXPECT_EQ(s.vehicle().clock, days(1));
}

}  // namespace
}  // namespace ivis::interaction
