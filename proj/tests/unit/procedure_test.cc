// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#include "ivis/error.hpp"
#include "ivis/procedure.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

namespace ivis::interaction {
namespace {

TEST(ProcedureDslTest, ProcedureACompilesToFourSteps)
{
    const auto& a = *testing::procedure_a();
    EXPECT_EQ(a.procedure_id, "procedure_a");
    EXPECT_EQ(a.target_item, "oil_change");
    ASSERT_EQ(a.steps.size(), 4u);
    EXPECT_EQ(a.steps[0], ProcedureStep{SetIgnition{ecm::IgnitionPosition::On}});
    EXPECT_EQ(a.steps[1], ProcedureStep{(PressRelease{Button::SelectReset, 3, "OIL LIFE"})});
    EXPECT_EQ(a.steps[2], ProcedureStep{(HoldFor{Button::SelectReset, seconds(5)})});
    EXPECT_EQ(a.steps[3], ProcedureStep{(HoldFor{Button::SelectReset, seconds(5)})});
    EXPECT_EQ(a.info_pages, 3);
}

TEST(ProcedureDslTest, ProcedureBCompiles)
{
    const auto& b = *testing::procedure_b();
    ASSERT_EQ(b.steps.size(), 4u);
    EXPECT_EQ(b.steps[0], ProcedureStep{SetIgnition{ecm::IgnitionPosition::Off}});
    EXPECT_EQ(b.steps[1], ProcedureStep{(HoldThrough{Button::TripReset, ecm::IgnitionPosition::On})});
    EXPECT_EQ(b.steps[2], ProcedureStep{WaitDisplay{"SERVICE"}});
    EXPECT_EQ(b.steps[3], ProcedureStep{(TurnKnob{Knob::AClockAdjuster, 3, std::nullopt})});
}

TEST(ProcedureDslTest, OverridesReplaceDeclaredParameters)
{
    const auto a = load_procedure(testing::data_path("procedure_a.proc").string(), {{"X1", 2.5}, {"PAGES", 5}});
    EXPECT_EQ(std::get<HoldFor>(a.steps[2]).min_hold, Millis{2500});
    EXPECT_EQ(std::get<PressRelease>(a.steps[1]).count, 5);
    EXPECT_EQ(a.info_pages, 5);
    const auto b = load_procedure(testing::data_path("procedure_b.proc").string(), {{"N", 2}});
    EXPECT_EQ(std::get<TurnKnob>(b.steps[3]).count, 2);
}

TEST(ProcedureDslTest, LiteralForms)
{
    const auto p = compile_procedure(
        "target oil_change\n"
        "hold select_reset 1.5s\n"
        "turn B_trip_reset x2 cw\n"
        "press trip_reset x1\n");
    EXPECT_EQ(std::get<HoldFor>(p.steps[0]).min_hold, Millis{1500});
    EXPECT_EQ(std::get<TurnKnob>(p.steps[1]).direction, Direction::Cw);
    EXPECT_TRUE(std::get<PressRelease>(p.steps[2]).until.empty());
}

TEST(ProcedureDslTest, ErrorsCarryLineNumbers)
{
    const std::vector<std::pair<std::string, std::size_t>> cases = {
        {"target oil_change\nwiggle select_reset\n", 2},
        {"target oil_change\n\npress select_reset x0\n", 3},
        {"target oil_change\nhold select_reset 0s\n", 2},
        {"target oil_change\nhold select_reset X9\n", 2},
        {"target oil_change\npress horn x1\n", 2},
        {"target oil_change\nturn C x1\n", 2},
        {"target oil_change\nignition SIDEWAYS\n", 2},
        {"target oil_change\nturn A x1 up\n", 2},
        {"param X=1\nparam X=2\ntarget oil_change\nhold select_reset Xs\n", 2},
        {"target oil_change\nwait_display\n", 2},
        {"target oil_change\nhold_through trip_reset ON\n", 2},
    };
    for (const auto& [text, line] : cases) {
        try {
            compile_procedure(text);
            ADD_FAILURE() << "accepted: " << text;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::parse) << text;
            EXPECT_EQ(e.line(), line) << text;
        }
    }
}

TEST(ProcedureDslTest, MissingTargetOrSteps)
{
    EXPECT_THROW(compile_procedure("press select_reset x1\n"), Error);
    EXPECT_THROW(compile_procedure("target oil_change\n"), Error);
}

TEST(ProcedureDslTest, SerializeRoundTrips)
{
    for (const auto& spec : {testing::procedure_a(), testing::procedure_b()}) {
        const auto text = serialize(*spec);
        EXPECT_EQ(compile_procedure(text), *spec) << text;
    }
}

}  // namespace
}  // namespace ivis::interaction
