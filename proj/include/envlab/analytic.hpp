#pragma once

#include <string>
#include <vector>

#include "envlab/scenario.hpp"
#include "envlab/tables.hpp"
#include "envlab/types.hpp"

namespace envlab {

// One evaluated formula: the exact expected return it yields for one player
// in one scenario, the decision that follows from its sign, and whether the
// formula is one of the documented fallacies. Fallacy results are produced
// only by the explicit fallacy evaluators, never by analyze_scenario.
struct AnalysisResult {
    Scenario scenario;
    Player player = Player::A;
    ExpectedReturn ev;
    Decision decision = Decision::Indifferent;
    std::string formula_id;
    bool is_fallacy = false;
    std::string explanation;
};

namespace detail {

inline AnalysisResult make_result(Scenario scenario, Player player, ExpectedReturn ev,
                                  std::string formula_id, bool is_fallacy = false,
                                  std::string explanation = {})
{
    AnalysisResult r;
    r.scenario = std::move(scenario);
    r.player = player;
    r.ev = std::move(ev);
    r.decision = decide(r.ev);
    r.formula_id = std::move(formula_id);
    r.is_fallacy = is_fallacy;
    r.explanation = std::move(explanation);
    return r;
}

}  // namespace detail

// Two prearranged amounts, nothing revealed: the gain and loss events are
// the same amount, so the exchange is exactly neutral for both players.
inline AnalysisResult ev_two_fixed_closed(Player player)
{
    Rational half(1, 2);
    Rational ev = half * Rational(1) + half * Rational(-1);  // in units of the smaller amount
    return detail::make_result(TwoFixedClosed{}, player,
                               {ev, Units::fraction_of(AmountRef::PlayerAFixedAmount)},
                               "1.1.1");
}

// The classic miscalculation: +X/4 of the player's own amount, obtained by
// letting the same variable stand for the smaller amount in one term and
// for the larger amount in the other.
inline AnalysisResult fallacy_naive_quarter(Player player)
{
    Rational half(1, 2);
    Rational ev = half * Rational(1) + half * Rational(-1, 2);
    return detail::make_result(
        TwoFixedClosed{}, player, {ev, Units::fraction_of(AmountRef::OwnAmount)},
        "1.1.2", true,
        "the same variable stands for the smaller amount in one term and for "
        "the larger amount in the other");
}

// Two fixed amounts, one envelope opened. The two candidate games share
// different totals, so each event's return is weighted by that event's
// average fixed amount; the result is a dimensionless success factor, and
// it is exactly zero for both players.
inline AnalysisResult ev_two_fixed_opened(const Rational& revealed, Player revealed_holder,
                                          Player for_player)
{
    if (revealed.sign() <= 0)
        throw invalid_scenario_error("revealed amount must be positive");

    Rational two(2);
    Rational half(1, 2);
    // Candidate game 1: the revealed amount is the smaller one.
    Rational up_gain = revealed * two - revealed;
    Rational up_avg = (revealed + revealed * two) / two;
    // Candidate game 2: the revealed amount is the larger one.
    Rational down_loss = revealed / two - revealed;
    Rational down_avg = (revealed / two + revealed) / two;

    Rational holder_ev = half * (up_gain / up_avg) + half * (down_loss / down_avg);
    Rational ev = for_player == revealed_holder ? holder_ev : -holder_ev;

    std::string formula = for_player == revealed_holder ? "1.3.1" : "1.3.2";
    return detail::make_result(TwoFixedOpened{revealed_holder, revealed}, for_player,
                               {ev, Units::success_factor()}, std::move(formula));
}

// The holder's unweighted calculation from the revealed amount: +revealed/4
// euros, as if the revealed amount were the only fixed amount in the game.
inline AnalysisResult fallacy_opened_unweighted(const Rational& revealed,
                                                Player holder = Player::A)
{
    if (revealed.sign() <= 0)
        throw invalid_scenario_error("revealed amount must be positive");
    Rational half(1, 2);
    Rational ev = half * revealed + half * (-(revealed / Rational(2)));
    return detail::make_result(
        TwoFixedOpened{holder, revealed}, holder, {ev, Units::euros()}, "1.3.3", true,
        "treats the revealed amount as the only fixed amount in the game; the "
        "two candidate games are not weighted by their average fixed amount");
}

// One fixed amount, both envelopes closed. The 1/2 factors are genuine coin
// probabilities and the fixed amount is the same in both terms, so the
// quarter formula is valid here: +X/4 for player A, -X/4 for player B.
inline AnalysisResult ev_one_fixed_closed(Player player)
{
    Rational half(1, 2);
    Rational for_a = half * Rational(1) + half * Rational(-1, 2);
    Rational ev = player == Player::A ? for_a : -for_a;
    std::string formula = player == Player::A ? "2.1.1" : "2.1.2";
    return detail::make_result(OneFixedClosed{}, player,
                               {ev, Units::fraction_of(AmountRef::PlayerAFixedAmount)},
                               std::move(formula));
}

// One fixed amount, A's envelope opened: the fixed amount is identical in
// both coin events, so no weighting applies and the result is in euros.
inline AnalysisResult ev_one_fixed_opened_a(const Rational& amount_a, Player for_player)
{
    if (amount_a.sign() <= 0)
        throw invalid_scenario_error("amount of player A must be positive");
    Rational half(1, 2);
    Rational for_a = half * amount_a + half * (-(amount_a / Rational(2)));
    Rational ev = for_player == Player::A ? for_a : -for_a;
    std::string formula = for_player == Player::A ? "2.3.1" : "2.3.2";
    return detail::make_result(OneFixedOpenedA{amount_a}, for_player,
                               {ev, Units::euros()}, std::move(formula));
}

// One fixed amount, B's envelope opened. The fixed amount differs between
// the two coin events, so each return is weighted by that event's fixed
// amount; euros are deliberately unavailable here (see euro_value).
inline AnalysisResult ev_one_fixed_opened_b(const Rational& amount_b, Player for_player)
{
    if (amount_b.sign() <= 0)
        throw invalid_scenario_error("amount of player B must be positive");
    Rational two(2);
    Rational half(1, 2);
    // Tails: A's fixed amount is 2*b, the exchange loses b for player A.
    Rational tails_fixed = amount_b * two;
    Rational tails_term = (amount_b - tails_fixed) / tails_fixed;  // -b / 2b
    // Heads: A's fixed amount is b/2, the exchange gains b/2 for player A.
    Rational heads_fixed = amount_b / two;
    Rational heads_term = (amount_b - heads_fixed) / heads_fixed;  // (b/2) / (b/2)

    Rational for_a = half * tails_term + half * heads_term;
    Rational ev = for_player == Player::A ? for_a : -for_a;
    std::string formula = for_player == Player::A ? "2.4.1" : "2.4.2";
    return detail::make_result(OneFixedOpenedB{amount_b}, for_player,
                               {ev, Units::fraction_of(AmountRef::PlayerAFixedAmount)},
                               std::move(formula));
}

// The unweighted euro calculation from B's revealed amount: -b/4 for A and
// +b/4 for B, the exact opposite of the correct decisions.
inline AnalysisResult fallacy_opened_b_unweighted(const Rational& amount_b,
                                                  Player for_player)
{
    if (amount_b.sign() <= 0)
        throw invalid_scenario_error("amount of player B must be positive");
    Rational half(1, 2);
    Rational for_a = half * (-amount_b) + half * (amount_b / Rational(2));
    Rational ev = for_player == Player::A ? for_a : -for_a;
    std::string formula = for_player == Player::A ? "2.4.3" : "2.4.4";
    return detail::make_result(
        OneFixedOpenedB{amount_b}, for_player, {ev, Units::euros()}, std::move(formula),
        true,
        "returns are not weighted by the fixed amount in player A's envelope, "
        "which differs between the two events");
}

// Player A's mixed quarter calculation: 25% of each candidate own amount,
// +5b/16 euros in total. It counts deals in which player B's envelope would
// hold amounts other than the one actually revealed.
inline AnalysisResult fallacy_opened_b_quarter_mix(const Rational& amount_b)
{
    if (amount_b.sign() <= 0)
        throw invalid_scenario_error("amount of player B must be positive");
    Rational two(2);
    Rational half(1, 2);
    Rational quarter(1, 4);
    Rational ev = half * (amount_b * two * quarter) + half * (amount_b / two * quarter);
    return detail::make_result(
        OneFixedOpenedB{amount_b}, Player::A, {ev, Units::euros()}, "2.4.5", true,
        "counts events in which player B's envelope would contain amounts "
        "other than the revealed one");
}

// Euro value of a result, available only when the computation itself was
// euro-valued. Fractional results multiply an unknown amount, so converting
// them would require information the scenario withholds.
inline Rational euro_value(const AnalysisResult& result)
{
    if (result.ev.units.kind != UnitKind::Euros)
        throw unit_unavailable_error(
            "expected return in euros is not computable for " +
            scenario_name(result.scenario) +
            ": the reference amount is hidden from the players");
    return result.ev.value;
}

// Routes a scenario to the correct (never fallacious) formula.
inline AnalysisResult analyze_scenario(const Scenario& scenario, Player player)
{
    validate(scenario);
    struct Visitor {
        Player player;

        AnalysisResult operator()(const TwoFixedClosed&) const
        {
            return ev_two_fixed_closed(player);
        }

        AnalysisResult operator()(const TwoFixedNClosed& s) const
        {
            EventTable table =
                filter_marginal(build_two_fixed_table(s.n, s.base), s.marginal);
            ExpectedReturn ev = table_ev(table, player);
            std::string formula;
            switch (s.marginal) {
            case MarginalInfo::NoInfo:
            case MarginalInfo::BothNonMarginal:
                formula = "1.2.1";
                break;
            case MarginalInfo::ANonMarginal:
                formula = player == Player::A ? "1.2.2" : "1.2.3";
                break;
            case MarginalInfo::BNonMarginal:
                formula = player == Player::B ? "1.2.2" : "1.2.3";
                break;
            }
            return detail::make_result(s, player, std::move(ev), std::move(formula));
        }

        AnalysisResult operator()(const TwoFixedOpened& s) const
        {
            return ev_two_fixed_opened(s.revealed, s.revealed_holder, player);
        }

        AnalysisResult operator()(const TwoFixedBothOpened& s) const
        {
            // Each player reasons from his own amount exactly as in the
            // one-opened variation.
            const Rational& own = player == Player::A ? s.amount_a : s.amount_b;
            AnalysisResult inner = ev_two_fixed_opened(own, player, player);
            std::string formula = player == Player::A ? "1.3.1" : "1.4.1";
            return detail::make_result(s, player, inner.ev, std::move(formula));
        }

        AnalysisResult operator()(const OneFixedClosed&) const
        {
            return ev_one_fixed_closed(player);
        }

        AnalysisResult operator()(const OneFixedNClosed& s) const
        {
            EventTable table =
                filter_marginal(build_one_fixed_table(s.amounts), s.marginal);
            ExpectedReturn ev = table_ev(table, player);
            std::string formula;
            switch (s.marginal) {
            case MarginalInfo::NoInfo:
            case MarginalInfo::ANonMarginal:
                // With A known to be non-marginal the game is simply replayed
                // over the inner envelopes under the main rules.
                formula = player == Player::A ? "2.2.1" : "2.2.2";
                break;
            case MarginalInfo::BNonMarginal:
                formula = player == Player::B ? "2.2.3" : "2.2.4";
                break;
            case MarginalInfo::BothNonMarginal:
                formula = "1.2.1";  // the zero of the full table comes back
                break;
            }
            return detail::make_result(s, player, std::move(ev), std::move(formula));
        }

        AnalysisResult operator()(const OneFixedOpenedA& s) const
        {
            return ev_one_fixed_opened_a(s.amount_a, player);
        }

        AnalysisResult operator()(const OneFixedOpenedB& s) const
        {
            return ev_one_fixed_opened_b(s.amount_b, player);
        }

        AnalysisResult operator()(const OneFixedBothOpened& s) const
        {
            if (player == Player::A) {
                AnalysisResult inner = ev_one_fixed_opened_a(s.amount_a, Player::A);
                return detail::make_result(s, player, inner.ev, "2.3.1");
            }
            // B must ignore his own (coin-derived) amount and fall back to
            // the closed-envelopes formula.
            AnalysisResult inner = ev_one_fixed_closed(Player::B);
            return detail::make_result(s, player, inner.ev, "2.1.2");
        }

        AnalysisResult operator()(const BoundedLadder&) const
        {
            throw invalid_scenario_error(
                "bounded-ladder scenarios are solved by the ladder module, "
                "not by expectation formulas");
        }
    };
    return std::visit(Visitor{player}, scenario);
}

// The documented fallacies that apply to a scenario, stamped with that
// scenario, for opt-in display next to the correct analysis.
inline std::vector<AnalysisResult> fallacies_for(const Scenario& scenario, Player player)
{
    validate(scenario);
    if (std::holds_alternative<TwoFixedClosed>(scenario) ||
        std::holds_alternative<TwoFixedNClosed>(scenario)) {
        auto row = fallacy_naive_quarter(player);
        row.scenario = scenario;
        return {row};
    }
    if (const auto* s = std::get_if<TwoFixedOpened>(&scenario))
        return {fallacy_opened_unweighted(s->revealed, s->revealed_holder)};
    if (const auto* s = std::get_if<TwoFixedBothOpened>(&scenario)) {
        const Rational& own = player == Player::A ? s->amount_a : s->amount_b;
        auto row = fallacy_opened_unweighted(own, player);
        row.scenario = scenario;
        return {row};
    }
    if (const auto* s = std::get_if<OneFixedOpenedB>(&scenario))
        return {fallacy_opened_b_unweighted(s->amount_b, player),
                fallacy_opened_b_quarter_mix(s->amount_b)};
    return {};
}

}  // namespace envlab
