#include <catch2/catch_amalgamated.hpp>

#include "envlab/ladder.hpp"
#include "envlab/tables.hpp"

using namespace envlab;

TEST_CASE("the 50..1600 ladder requests only at the bottom")
{
    LadderSpec spec{Rational(50), 6};
    LadderSolution solution = solve_ladder(spec);
    REQUIRE(solution.policy.request_at.size() == 6);
    CHECK(solution.policy.request_at[0]);
    for (int k = 1; k < 6; ++k)
        CHECK_FALSE(solution.policy.request_at[k]);

    REQUIRE(solution.trace.size() == 6);
    CHECK(solution.trace.front().level == 5);  // reasoning starts at the top
    CHECK(solution.trace.back().level == 0);
    for (const auto& step : solution.trace) {
        CHECK(step.requests == solution.policy.request_at[step.level]);
        CHECK_FALSE(step.justification.empty());
    }

    CHECK(ladder_decision(spec, Rational(100)) == Decision::Keep);
    CHECK(ladder_decision(spec, Rational(50)) == Decision::Trade);
    CHECK_THROWS_AS(ladder_decision(spec, Rational(75)), invalid_parameter_error);
}

TEST_CASE("two-level base case")
{
    LadderSolution solution = solve_ladder({Rational(1), 2});
    CHECK(solution.policy.request_at == std::vector<bool>{true, false});
    CHECK_THROWS_AS(solve_ladder({Rational(1), 1}), invalid_parameter_error);
}

TEST_CASE("policy shape holds for every height and any minimum")
{
    for (int levels = 2; levels <= 12; ++levels) {
        for (const Rational& min : {Rational(50), Rational(7), Rational(1, 2)}) {
            LadderSolution solution = solve_ladder({min, levels});
            for (int k = 0; k < levels; ++k)
                CHECK(solution.policy.request_at[k] == (k == 0));
        }
    }
}

TEST_CASE("deal outcomes follow the joint request rule")
{
    LadderSpec spec{Rational(50), 6};
    LadderPolicy equilibrium = solve_ladder(spec).policy;

    LadderOutcome blocked = ladder_outcome(spec, equilibrium, 0, 1);
    CHECK_FALSE(blocked.exchanged);
    CHECK(blocked.return_a == Rational(0));
    CHECK(blocked.return_b == Rational(0));

    LadderPolicy eager{std::vector<bool>(6, true)};
    LadderOutcome made = ladder_outcome(spec, eager, 0, 1);
    CHECK(made.exchanged);
    CHECK(made.return_a == Rational(50));   // the bottom holder gains min
    CHECK(made.return_b == Rational(-50));

    CHECK_FALSE(ladder_outcome(spec, equilibrium, 2, 3).exchanged);
    CHECK_THROWS_AS(ladder_outcome(spec, equilibrium, 0, 2), invalid_parameter_error);
    CHECK_THROWS_AS(ladder_outcome(spec, equilibrium, 5, 6), invalid_parameter_error);
}

TEST_CASE("no realized exchange under the equilibrium policy, ever")
{
    for (int levels = 2; levels <= 10; ++levels) {
        LadderSpec spec{Rational(50), levels};
        LadderPolicy policy = solve_ladder(spec).policy;
        for (int k = 0; k + 1 < levels; ++k) {
            CHECK_FALSE(ladder_outcome(spec, policy, k, k + 1).exchanged);
            CHECK_FALSE(ladder_outcome(spec, policy, k + 1, k).exchanged);
        }
    }
}

TEST_CASE("conditional exchange value matches the summary convention")
{
    LadderSpec spec{Rational(50), 6};

    auto mid = conditional_exchange_ev(spec, Rational(100), Player::B);
    REQUIRE(mid.has_value());
    CHECK(mid->value == Rational(-50));
    CHECK(mid->units == Units::euros());

    auto top = conditional_exchange_ev(spec, Rational(1600), Player::A);
    CHECK_FALSE(top.has_value());  // no rational partner ever accepts

    auto bottom = conditional_exchange_ev(spec, Rational(50), Player::A);
    REQUIRE(bottom.has_value());
    CHECK(bottom->value == Rational(50));  // only an upward exchange exists

    auto deep = conditional_exchange_ev(spec, Rational(400), Player::A);
    REQUIRE(deep.has_value());
    CHECK(deep->value == Rational(-200));

    CHECK_THROWS_AS(conditional_exchange_ev(spec, Rational(30), Player::A),
                    invalid_parameter_error);
}

TEST_CASE("marginal-information reasoning and dominance reasoning disagree")
{
    // Player B holds 100 on the 50..1600 ladder: a non-marginal amount. The
    // conditional-table argument says trade; the bounded ladder says keep.
    LadderSpec spec{Rational(50), 6};
    EventTable naive = filter_marginal(build_one_fixed_table(ladder_amounts(spec)),
                                       MarginalInfo::BNonMarginal);
    ExpectedReturn naive_ev = table_ev(naive, Player::B);
    CHECK(decide(naive_ev) == Decision::Trade);
    CHECK(ladder_decision(spec, Rational(100)) == Decision::Keep);
    CHECK(decide(naive_ev) != ladder_decision(spec, Rational(100)));
}
