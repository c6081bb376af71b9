// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ivis/session.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ivis::harness {

struct SurveyQuestion {
    std::string question_id;
    std::string text;
};

/// Five-point Likert questionnaire (1 = strongly disagree, 5 = strongly agree).
std::vector<SurveyQuestion> default_questionnaire();

struct SurveyItem {
    std::string question_id;
    int rating = 0;

    bool operator==(const SurveyItem&) const = default;
};

struct SurveyResponse {
    std::string participant_id;
    InteractionModel model = InteractionModel::IInteraction;
    std::vector<SurveyItem> items;
    double satisfaction = 0.0;

    bool operator==(const SurveyResponse&) const = default;
};

/// Recorded, never enforced.
struct ParticipantInfo {
    std::string participant_id;
    bool has_drivers_license = false;
    bool has_vehicle_access = false;

    bool operator==(const ParticipantInfo&) const = default;
};

/// Mean of the item ratings. Throws Error(validation) for an empty item list
/// or a rating outside 1..5.
SurveyResponse score_survey(std::string participant_id, InteractionModel model, std::vector<SurveyItem> items);

struct ModelGroup {
    std::vector<TaskResult> tasks;
    std::vector<SurveyResponse> surveys;
};

struct HypothesisOutcome {
    double mean_conventional = 0.0;
    double mean_iinteraction = 0.0;
    bool accepted = false;

    bool operator==(const HypothesisOutcome&) const = default;
};

struct HypothesisReport {
    HypothesisOutcome h1_efficiency;    // seconds, completed tasks only
    HypothesisOutcome h2_satisfaction;  // mean Likert rating
    HypothesisOutcome h3_errors;        // deviations per task
    bool main_accepted = false;

    bool operator==(const HypothesisReport&) const = default;
};

/// Optional extra gate on a sub-hypothesis: given the per-observation samples
/// of both groups, return whether the difference is significant. Unset by
/// default; acceptance is then a strict comparison of means.
using SignificanceTest =
    std::function<bool(std::span<const double> conventional, std::span<const double> iinteraction)>;

struct HypothesisOptions {
    SignificanceTest significance;
};

/// Throws Error(insufficient_data) when either group has no tasks, no
/// completed tasks or no surveys.
HypothesisReport evaluate_hypotheses(const ModelGroup& conventional, const ModelGroup& iinteraction,
                                     const HypothesisOptions& options = {});

}  // namespace ivis::harness
