// Copyright 2026 ivis-sim contributors
// SPDX-License-Identifier: Apache-2.0

#include "ivis/evaluation.hpp"
#include "ivis/error.hpp"

#include <algorithm>
#include <numeric>

namespace ivis::harness {

std::vector<SurveyQuestion> default_questionnaire()
{
    return {
        {"q1_easy", "Resetting the service reminder was easy."},
        {"q2_fast", "I could complete the reset quickly."},
        {"q3_confident", "I was confident I performed the reset correctly."},
        {"q4_no_manual", "I could do this again without re-reading the instructions."},
        {"q5_preference", "I would like my own vehicle to work this way."},
    };
}

SurveyResponse score_survey(std::string participant_id, InteractionModel model, std::vector<SurveyItem> items)
{
    if (items.empty()) {
        throw Error(Errc::validation, "a survey response needs at least one rated item");
    }
    long long total = 0;
    for (const auto& item : items) {
        if (item.rating < 1 || item.rating > 5) {
            throw Error(Errc::validation, "rating " + std::to_string(item.rating) + " for '" + item.question_id +
                                              "' is outside 1..5");
        }
        total += item.rating;
    }
    SurveyResponse out;
    out.participant_id = std::move(participant_id);
    out.model = model;
    out.satisfaction = static_cast<double>(total) / static_cast<double>(items.size());
    out.items = std::move(items);
    return out;
}

namespace {

// Sorting first makes the floating-point sum independent of input order.
double mean(std::vector<double> values)
{
    std::sort(values.begin(), values.end());
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

struct Samples {
    std::vector<double> seconds;
    std::vector<double> satisfaction;
    std::vector<double> errors;
};

Samples collect(const ModelGroup& group, std::string_view name)
{
    if (group.tasks.empty()) {
        throw Error(Errc::insufficient_data, std::string(name) + " group has no task results");
    }
    if (group.surveys.empty()) {
        throw Error(Errc::insufficient_data, std::string(name) + " group has no survey responses");
    }
    Samples s;
    for (const auto& t : group.tasks) {
        if (t.completed) {
            s.seconds.push_back(static_cast<double>(t.time_to_complete.count()) / 1000.0);
        }
        s.errors.push_back(static_cast<double>(t.errors.size()));
    }
    if (s.seconds.empty()) {
        throw Error(Errc::insufficient_data, std::string(name) + " group has no completed tasks");
    }
    for (const auto& r : group.surveys) {
        s.satisfaction.push_back(r.satisfaction);
    }
    return s;
}

template <typename Better>
HypothesisOutcome judge(const std::vector<double>& conv, const std::vector<double>& ii, Better better,
                        const HypothesisOptions& options)
{
    HypothesisOutcome out;
    out.mean_conventional = mean(conv);
    out.mean_iinteraction = mean(ii);
    out.accepted = better(out.mean_iinteraction, out.mean_conventional);
    if (out.accepted && options.significance) {
        out.accepted = options.significance(conv, ii);
    }
    return out;
}

}  // namespace

HypothesisReport evaluate_hypotheses(const ModelGroup& conventional, const ModelGroup& iinteraction,
                                     const HypothesisOptions& options)
{
    const auto conv = collect(conventional, "conventional");
    const auto ii = collect(iinteraction, "i-Interaction");

    HypothesisReport report;
    report.h1_efficiency = judge(conv.seconds, ii.seconds, std::less<>{}, options);
    report.h2_satisfaction = judge(conv.satisfaction, ii.satisfaction, std::greater<>{}, options);
    report.h3_errors = judge(conv.errors, ii.errors, std::less<>{}, options);
    report.main_accepted =
        report.h1_efficiency.accepted && report.h2_satisfaction.accepted && report.h3_errors.accepted;
    return report;
}

}  // namespace ivis::harness
