#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "envlab/types.hpp"

namespace envlab {

// Both amounts prearranged, nothing revealed.
struct TwoFixedClosed {};

// Two consecutive envelopes drawn from a ratio-2 ladder of n amounts.
struct TwoFixedNClosed {
    int n = 3;
    Rational base = 10;
    MarginalInfo marginal = MarginalInfo::NoInfo;
};

// Two prearranged amounts, one envelope opened for everyone to see.
struct TwoFixedOpened {
    Player revealed_holder = Player::A;
    Rational revealed = 100;
};

// Two prearranged amounts, each player privately sees his own.
struct TwoFixedBothOpened {
    Rational amount_a = 100;
    Rational amount_b = 200;
};

// Player A's amount prearranged, player B's set by a fair coin.
struct OneFixedClosed {};

// A's envelope drawn from n prearranged amounts, then the coin for B.
struct OneFixedNClosed {
    std::vector<Rational> amounts;
    MarginalInfo marginal = MarginalInfo::NoInfo;
};

// One fixed amount, A's envelope opened.
struct OneFixedOpenedA {
    Rational amount_a = 100;
};

// One fixed amount, B's (coin-derived) envelope opened.
struct OneFixedOpenedB {
    Rational amount_b = 100;
};

// One fixed amount, each player privately sees his own envelope.
struct OneFixedBothOpened {
    Rational amount_a = 100;
    Rational amount_b = 200;
};

// Publicly known doubling ladder of possible amounts; each player privately
// sees his own check. Solved by iterated dominance, not by expectation.
struct BoundedLadder {
    Rational min = 50;
    int levels = 6;
    std::optional<std::pair<Player, Rational>> observed;
};

using Scenario = std::variant<TwoFixedClosed, TwoFixedNClosed, TwoFixedOpened,
                              TwoFixedBothOpened, OneFixedClosed, OneFixedNClosed,
                              OneFixedOpenedA, OneFixedOpenedB, OneFixedBothOpened,
                              BoundedLadder>;

namespace detail {

inline void require_positive(const Rational& amount, const char* what)
{
    if (amount.sign() <= 0)
        throw invalid_scenario_error(std::string(what) + " must be positive");
}

inline bool is_double_of(const Rational& big, const Rational& small)
{
    return big == small * Rational(2);
}

}  // namespace detail

inline void validate(const Scenario& scenario)
{
    struct Visitor {
        void operator()(const TwoFixedClosed&) const {}

        void operator()(const TwoFixedNClosed& s) const
        {
            if (s.n < 3)
                throw invalid_scenario_error("two-fixed-n-closed requires n >= 3");
            detail::require_positive(s.base, "base amount");
        }

        void operator()(const TwoFixedOpened& s) const
        {
            detail::require_positive(s.revealed, "revealed amount");
        }

        void operator()(const TwoFixedBothOpened& s) const
        {
            detail::require_positive(s.amount_a, "amount of player A");
            detail::require_positive(s.amount_b, "amount of player B");
            if (!detail::is_double_of(s.amount_b, s.amount_a) &&
                !detail::is_double_of(s.amount_a, s.amount_b))
                throw invalid_scenario_error(
                    "opened amounts must be in a 2:1 relationship");
        }

        void operator()(const OneFixedClosed&) const {}

        void operator()(const OneFixedNClosed& s) const
        {
            if (s.amounts.empty())
                throw invalid_scenario_error("one-fixed-n-closed requires amounts");
            for (const auto& a : s.amounts)
                detail::require_positive(a, "envelope amount");
            auto sorted = s.amounts;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw invalid_scenario_error("envelope amounts must be distinct");
        }

        void operator()(const OneFixedOpenedA& s) const
        {
            detail::require_positive(s.amount_a, "amount of player A");
        }

        void operator()(const OneFixedOpenedB& s) const
        {
            detail::require_positive(s.amount_b, "amount of player B");
        }

        void operator()(const OneFixedBothOpened& s) const
        {
            detail::require_positive(s.amount_a, "amount of player A");
            detail::require_positive(s.amount_b, "amount of player B");
            if (!detail::is_double_of(s.amount_b, s.amount_a) &&
                !detail::is_double_of(s.amount_a, s.amount_b))
                throw invalid_scenario_error(
                    "opened amounts must be in a 2:1 relationship");
        }

        void operator()(const BoundedLadder& s) const
        {
            if (s.levels < 2)
                throw invalid_scenario_error("ladder requires at least 2 levels");
            detail::require_positive(s.min, "ladder minimum");
            if (s.observed) {
                Rational amount = s.min;
                bool on_ladder = false;
                for (int k = 0; k < s.levels; ++k) {
                    if (amount == s.observed->second) {
                        on_ladder = true;
                        break;
                    }
                    amount = amount * Rational(2);
                }
                if (!on_ladder)
                    throw invalid_scenario_error(
                        "observed amount is not on the ladder");
            }
        }
    };
    std::visit(Visitor{}, scenario);
}

inline std::string scenario_name(const Scenario& scenario)
{
    struct Visitor {
        std::string operator()(const TwoFixedClosed&) const
        {
            return "two-fixed-closed";
        }
        std::string operator()(const TwoFixedNClosed& s) const
        {
            return "two-fixed-n-closed(n=" + std::to_string(s.n) +
                   ", base=" + s.base.to_string() +
                   ", marginal=" + tag(s.marginal) + ")";
        }
        std::string operator()(const TwoFixedOpened& s) const
        {
            return "two-fixed-opened(holder=" + name(s.revealed_holder) +
                   ", revealed=" + s.revealed.to_string() + ")";
        }
        std::string operator()(const TwoFixedBothOpened& s) const
        {
            return "two-fixed-both-opened(a=" + s.amount_a.to_string() +
                   ", b=" + s.amount_b.to_string() + ")";
        }
        std::string operator()(const OneFixedClosed&) const
        {
            return "one-fixed-closed";
        }
        std::string operator()(const OneFixedNClosed& s) const
        {
            std::string joined;
            for (const auto& a : s.amounts) {
                if (!joined.empty()) joined += ",";
                joined += a.to_string();
            }
            return "one-fixed-n-closed(amounts=[" + joined +
                   "], marginal=" + tag(s.marginal) + ")";
        }
        std::string operator()(const OneFixedOpenedA& s) const
        {
            return "one-fixed-opened-a(a=" + s.amount_a.to_string() + ")";
        }
        std::string operator()(const OneFixedOpenedB& s) const
        {
            return "one-fixed-opened-b(b=" + s.amount_b.to_string() + ")";
        }
        std::string operator()(const OneFixedBothOpened& s) const
        {
            return "one-fixed-both-opened(a=" + s.amount_a.to_string() +
                   ", b=" + s.amount_b.to_string() + ")";
        }
        std::string operator()(const BoundedLadder& s) const
        {
            return "bounded-ladder(min=" + s.min.to_string() +
                   ", levels=" + std::to_string(s.levels) + ")";
        }
    };
    return std::visit(Visitor{}, scenario);
}

}  // namespace envlab
