#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "envlab/types.hpp"

namespace envlab {

// One equally likely deal: the two envelope contents and the return player A
// realizes when the envelopes are exchanged.
struct DealEvent {
    Rational amount_a;
    Rational amount_b;
    Rational return_for_a;  // amount_b - amount_a

    bool operator==(const DealEvent&) const = default;
};

enum class TableFamily { TwoFixedGeometric, OneFixedArbitrary };

// The complete sample space of a deal process, in canonical order:
// ascending amount_a, half-partner event before double-partner event.
struct EventTable {
    std::vector<DealEvent> events;
    TableFamily family = TableFamily::TwoFixedGeometric;
    Rational probability_per_event;
    std::vector<Rational> amounts;  // underlying envelope amounts, ascending
};

namespace detail {

inline DealEvent make_event(const Rational& a, const Rational& b)
{
    return {a, b, b - a};
}

inline bool is_ratio_two_ladder(const std::vector<Rational>& sorted)
{
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] != sorted[i - 1] * Rational(2))
            return false;
    return true;
}

}  // namespace detail

// The 2n-2 equally likely deals of a two-consecutive-envelopes draw from the
// ladder base, 2*base, ..., base*2^(n-1). Each adjacent pair appears once per
// assignment direction; the marginal amounts appear on the A side only once.
inline EventTable build_two_fixed_table(int n, const Rational& base)
{
    if (n < 3)
        throw invalid_parameter_error("two-fixed table requires n >= 3");
    if (base.sign() <= 0)
        throw invalid_parameter_error("two-fixed table requires base > 0");

    std::vector<Rational> amounts;
    amounts.reserve(n);
    Rational a = base;
    for (int i = 0; i < n; ++i) {
        amounts.push_back(a);
        a = a * Rational(2);
    }

    EventTable table;
    table.family = TableFamily::TwoFixedGeometric;
    table.amounts = amounts;
    for (int i = 0; i < n; ++i) {
        if (i > 0)
            table.events.push_back(detail::make_event(amounts[i], amounts[i - 1]));
        if (i + 1 < n)
            table.events.push_back(detail::make_event(amounts[i], amounts[i + 1]));
    }
    table.probability_per_event =
        Rational(1, static_cast<std::int64_t>(table.events.size()));
    return table;
}

// The 2n equally likely deals when A's envelope is drawn from `amounts` and
// B's content is set by a fair coin: for each a_k the events (a_k, a_k/2)
// and (a_k, 2*a_k).
inline EventTable build_one_fixed_table(std::vector<Rational> amounts)
{
    if (amounts.empty())
        throw invalid_parameter_error("one-fixed table requires amounts");
    for (const auto& a : amounts)
        if (a.sign() <= 0)
            throw invalid_parameter_error("one-fixed table amounts must be positive");
    std::sort(amounts.begin(), amounts.end());
    if (std::adjacent_find(amounts.begin(), amounts.end()) != amounts.end())
        throw invalid_parameter_error("one-fixed table amounts must be distinct");

    EventTable table;
    table.family = TableFamily::OneFixedArbitrary;
    table.amounts = amounts;
    for (const auto& a : amounts) {
        table.events.push_back(detail::make_event(a, a / Rational(2)));
        table.events.push_back(detail::make_event(a, a * Rational(2)));
    }
    table.probability_per_event =
        Rational(1, static_cast<std::int64_t>(table.events.size()));
    return table;
}

namespace detail {

// True when `amount` is one of the inner (non-marginal) envelope amounts.
// An amount that is not in the envelope set at all (a halved minimum or a
// doubled maximum in one-fixed tables) is not an acceptable content either:
// the organizer repeats the draw in those deals.
inline bool is_inner_amount(const std::vector<Rational>& amounts, const Rational& amount)
{
    for (std::size_t i = 1; i + 1 < amounts.size(); ++i)
        if (amounts[i] == amount)
            return true;
    return false;
}

}  // namespace detail

// Deletes the events excluded by the announced marginal information and
// renormalizes to the surviving events. Filtering is equivalent to the
// organizer's repeat-the-draw rule: both condition the uniform law on the
// same surviving set.
inline EventTable filter_marginal(const EventTable& table, MarginalInfo info)
{
    if (info == MarginalInfo::NoInfo)
        return table;
    if (table.amounts.size() < 2)
        throw invalid_parameter_error("marginal filter needs at least two amounts");
    if (table.family == TableFamily::OneFixedArbitrary &&
        (info == MarginalInfo::BNonMarginal || info == MarginalInfo::BothNonMarginal) &&
        !detail::is_ratio_two_ladder(table.amounts))
        throw invalid_parameter_error(
            "b-non-marginal filtering requires amounts in a ratio-2 ladder");

    bool need_a = info == MarginalInfo::ANonMarginal || info == MarginalInfo::BothNonMarginal;
    bool need_b = info == MarginalInfo::BNonMarginal || info == MarginalInfo::BothNonMarginal;

    EventTable filtered;
    filtered.family = table.family;
    filtered.amounts = table.amounts;
    for (const auto& event : table.events) {
        if (need_a && !detail::is_inner_amount(table.amounts, event.amount_a))
            continue;
        if (need_b && !detail::is_inner_amount(table.amounts, event.amount_b))
            continue;
        filtered.events.push_back(event);
    }
    if (filtered.events.empty())
        throw degenerate_scenario_error(
            "marginal information excludes every deal event");
    filtered.probability_per_event =
        Rational(1, static_cast<std::int64_t>(filtered.events.size()));
    return filtered;
}

// Exact euro-valued expected exchange return: the uniform average of the
// per-event returns, sign-flipped for player B.
inline ExpectedReturn table_ev(const EventTable& table, Player player)
{
    if (table.events.empty())
        throw invalid_parameter_error("expected return of an empty table");
    Rational sum;
    for (const auto& event : table.events)
        sum += event.return_for_a;
    Rational ev = sum * table.probability_per_event;
    if (player == Player::B)
        ev = -ev;
    return {ev, Units::euros()};
}

inline Rational mean_of(const std::vector<Rational>& amounts)
{
    if (amounts.empty())
        throw invalid_parameter_error("mean of an empty amount list");
    Rational sum;
    for (const auto& a : amounts)
        sum += a;
    return sum / Rational(static_cast<std::int64_t>(amounts.size()));
}

inline Rational mean_of_inner(const std::vector<Rational>& amounts)
{
    if (amounts.size() < 3)
        throw invalid_parameter_error("no inner amounts to average");
    std::vector<Rational> inner(amounts.begin() + 1, amounts.end() - 1);
    return mean_of(inner);
}

inline std::string to_csv(const EventTable& table)
{
    std::string out = "amount_a,amount_b,return_for_a,probability\n";
    for (const auto& event : table.events) {
        out += event.amount_a.to_string() + "," + event.amount_b.to_string() + "," +
               event.return_for_a.to_string() + "," +
               table.probability_per_event.to_string() + "\n";
    }
    return out;
}

// Per-player euro expected returns for one deal process variant.
struct EvPair {
    Rational for_a;
    Rational for_b;

    bool operator==(const EvPair&) const = default;
};

// The six expected-return results of the marginal-information subcases over
// a ratio-2 ladder of n amounts, all exact.
struct SubcaseReport {
    int n = 0;
    Rational base;
    Rational mean_all;    // mean of every ladder amount
    Rational mean_inner;  // mean of the non-marginal amounts

    EvPair two_fixed_main;               // zero for both players
    EvPair two_fixed_a_non_marginal;     // (+mean_inner/4, -mean_inner/4)
    EvPair two_fixed_both_non_marginal;  // zero again
    EvPair one_fixed_main;               // (+mean_all/4, -mean_all/4)
    EvPair one_fixed_b_non_marginal;     // (-mean_inner/4, +mean_inner/4)
    EvPair one_fixed_a_non_marginal;     // inner game, (+mean_inner/4, ...)
};

inline SubcaseReport summarize_subcases(int n, const Rational& base)
{
    if (n < 4)
        throw invalid_parameter_error("subcase summary requires n >= 4");

    auto pair_of = [](const EventTable& t) {
        return EvPair{table_ev(t, Player::A).value, table_ev(t, Player::B).value};
    };

    EventTable two_fixed = build_two_fixed_table(n, base);
    EventTable one_fixed = build_one_fixed_table(two_fixed.amounts);

    SubcaseReport report;
    report.n = n;
    report.base = base;
    report.mean_all = mean_of(two_fixed.amounts);
    report.mean_inner = mean_of_inner(two_fixed.amounts);
    report.two_fixed_main = pair_of(two_fixed);
    report.two_fixed_a_non_marginal =
        pair_of(filter_marginal(two_fixed, MarginalInfo::ANonMarginal));
    report.two_fixed_both_non_marginal =
        pair_of(filter_marginal(two_fixed, MarginalInfo::BothNonMarginal));
    report.one_fixed_main = pair_of(one_fixed);
    report.one_fixed_b_non_marginal =
        pair_of(filter_marginal(one_fixed, MarginalInfo::BNonMarginal));
    report.one_fixed_a_non_marginal =
        pair_of(filter_marginal(one_fixed, MarginalInfo::ANonMarginal));
    return report;
}

}  // namespace envlab
