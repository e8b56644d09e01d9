#pragma once

#include <optional>
#include <string>
#include <vector>

#include "envlab/analytic.hpp"
#include "envlab/ladder.hpp"
#include "envlab/scenario.hpp"

namespace envlab {

// One row of the calculations-and-decisions table. The displays carry the
// symbolic forms (X, A, B, <a> for quantities unknown or generic); ev_a and
// ev_b carry the engine's exact values for the row's reference parameters
// when such a value exists.
struct SummaryRow {
    std::string id;
    std::string group;
    std::string title;
    Scenario reference;  // the concrete scenario the row was evaluated with
    std::string ev_a_display;
    std::string ev_b_display;
    std::optional<ExpectedReturn> ev_a;
    std::optional<ExpectedReturn> ev_b;
    Decision decision_a = Decision::Indifferent;
    Decision decision_b = Decision::Indifferent;
    std::string formulas;
};

// Reference parameters: 100 euros for every opened envelope (200 for the
// partner in both-opened variations) and the 50..1600 six-level ladder.
inline std::vector<SummaryRow> summary_rows()
{
    std::vector<SummaryRow> rows;

    auto evaluated = [](std::string id, std::string group, std::string title,
                        Scenario scenario, std::string display_a,
                        std::string display_b, std::string formulas) {
        SummaryRow row;
        row.id = std::move(id);
        row.group = std::move(group);
        row.title = std::move(title);
        row.reference = scenario;
        row.ev_a_display = std::move(display_a);
        row.ev_b_display = std::move(display_b);
        AnalysisResult a = analyze_scenario(scenario, Player::A);
        AnalysisResult b = analyze_scenario(scenario, Player::B);
        row.ev_a = a.ev;
        row.ev_b = b.ev;
        row.decision_a = a.decision;
        row.decision_b = b.decision;
        row.formulas = std::move(formulas);
        return row;
    };

    const std::string two_fixed = "Two fixed amounts";
    const std::string one_fixed = "One fixed amount";

    rows.push_back(evaluated("1.1", two_fixed, "Two closed envelopes",
                             TwoFixedClosed{}, "0", "0", "1.1.1"));
    rows.push_back(evaluated("1.2", two_fixed,
                             "Two closed envelopes selected from N envelopes",
                             TwoFixedNClosed{6, Rational(50), MarginalInfo::NoInfo},
                             "0", "0", "1.2.1"));
    rows.push_back(evaluated("1.3", two_fixed, "One opened envelope",
                             TwoFixedOpened{Player::A, Rational(100)}, "0", "0",
                             "1.3.1 - 1.3.2"));
    rows.push_back(evaluated("1.4", two_fixed, "Two opened envelopes",
                             TwoFixedBothOpened{Rational(100), Rational(200)}, "0",
                             "0", "1.3.1 - 1.4.1"));

    rows.push_back(evaluated("2.1", one_fixed, "Two closed envelopes",
                             OneFixedClosed{}, "+X/4", "-X/4", "2.1.1 - 2.1.2"));

    // Row 2.2 is symbolic: the players know no concrete amounts, only that
    // the expected return is a quarter of the (unknown) mean of them all.
    {
        SummaryRow row;
        row.id = "2.2";
        row.group = one_fixed;
        row.title = "Two closed envelopes selected from N envelopes";
        row.reference = OneFixedNClosed{
            {Rational(50), Rational(100), Rational(200), Rational(400),
             Rational(800), Rational(1600)},
            MarginalInfo::NoInfo};
        row.ev_a_display = "+<a>/4";
        row.ev_b_display = "-<a>/4";
        row.ev_a = ExpectedReturn{Rational(1, 4),
                                  Units::fraction_of(AmountRef::MeanOfAllAmounts)};
        row.ev_b = ExpectedReturn{Rational(-1, 4),
                                  Units::fraction_of(AmountRef::MeanOfAllAmounts)};
        row.decision_a = decide(*row.ev_a);
        row.decision_b = decide(*row.ev_b);
        row.formulas = "2.2.1 - 2.2.2";
        rows.push_back(row);
    }

    rows.push_back(evaluated("2.3", one_fixed, "One opened envelope, known A",
                             OneFixedOpenedA{Rational(100)}, "+A/4", "-A/4",
                             "2.3.1 - 2.3.2"));
    rows.push_back(evaluated("2.4", one_fixed, "One opened envelope, known B",
                             OneFixedOpenedB{Rational(100)}, "+X/4", "-X/4",
                             "2.4.1 - 2.4.2"));
    rows.push_back(evaluated("2.5", one_fixed, "Two opened envelopes",
                             OneFixedBothOpened{Rational(100), Rational(200)},
                             "+A/4", "-X/4", "2.3.1 - 2.1.2"));

    // Row 3: solved by iterated dominance, not by an expectation formula.
    // A known non-top amount is kept: requesting could only be accepted from
    // below, at the cost of half the amount. Both displays are per-holder.
    {
        LadderSpec spec{Rational(50), 6};
        LadderSolution solution = solve_ladder(spec);
        SummaryRow row;
        row.id = "3";
        row.group = "One or two fixed amounts";
        row.title = "Two opened envelopes, known boundary amounts";
        row.reference = BoundedLadder{
            spec.min, spec.levels, std::pair{Player::B, Rational(100)}};
        row.ev_a_display = "-A/2";
        row.ev_b_display = "-B/2";
        // Representative intermediate holder: declines under the policy.
        bool intermediate_requests = solution.policy.request_at[1];
        row.decision_a = intermediate_requests ? Decision::Trade : Decision::Keep;
        row.decision_b = ladder_decision(spec, Rational(100));
        row.formulas = "-";
        rows.push_back(row);
    }

    return rows;
}

}  // namespace envlab
