#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <vector>

#include "envlab/tables.hpp"

using namespace envlab;

namespace {

// Independent oracle: enumerate deals straight from the draw description
// (adjacent index pair + assignment direction, or envelope index + coin)
// and average the surviving returns. Never touches EventTable.
struct OracleDeal {
    Rational a;
    Rational b;
};

std::vector<Rational> ladder(int n, const Rational& base)
{
    std::vector<Rational> amounts;
    Rational x = base;
    for (int i = 0; i < n; ++i) {
        amounts.push_back(x);
        x = x * Rational(2);
    }
    return amounts;
}

std::vector<OracleDeal> oracle_two_fixed_deals(int n, const Rational& base)
{
    auto amounts = ladder(n, base);
    std::vector<OracleDeal> deals;
    for (int i = 0; i + 1 < n; ++i) {
        deals.push_back({amounts[i], amounts[i + 1]});
        deals.push_back({amounts[i + 1], amounts[i]});
    }
    return deals;
}

std::vector<OracleDeal> oracle_one_fixed_deals(const std::vector<Rational>& amounts)
{
    std::vector<OracleDeal> deals;
    for (const auto& a : amounts) {
        deals.push_back({a, a * Rational(2)});   // heads
        deals.push_back({a, a / Rational(2)});   // tails
    }
    return deals;
}

template <typename Keep>
Rational oracle_ev_for_a(const std::vector<OracleDeal>& deals, Keep keep)
{
    Rational sum;
    std::int64_t kept = 0;
    for (const auto& deal : deals) {
        if (!keep(deal))
            continue;
        sum += deal.b - deal.a;
        ++kept;
    }
    REQUIRE(kept > 0);
    return sum / Rational(kept);
}

bool oracle_inner(const std::vector<Rational>& amounts, const Rational& x)
{
    return std::find(amounts.begin() + 1, amounts.end() - 1, x) !=
           amounts.end() - 1;
}

}  // namespace

TEST_CASE("two-fixed table for n=3, base=10 enumerates the four deals")
{
    EventTable t = build_two_fixed_table(3, Rational(10));
    REQUIRE(t.events.size() == 4);
    CHECK(t.events[0] == DealEvent{Rational(10), Rational(20), Rational(10)});
    CHECK(t.events[1] == DealEvent{Rational(20), Rational(10), Rational(-10)});
    CHECK(t.events[2] == DealEvent{Rational(20), Rational(40), Rational(20)});
    CHECK(t.events[3] == DealEvent{Rational(40), Rational(20), Rational(-20)});
    CHECK(t.probability_per_event == Rational(1, 4));
}

TEST_CASE("two-fixed table sizes and amounts")
{
    for (int n = 3; n <= 8; ++n) {
        EventTable t = build_two_fixed_table(n, Rational(10));
        CHECK(t.events.size() == static_cast<std::size_t>(2 * n - 2));
        CHECK(t.probability_per_event == Rational(1, 2 * n - 2));
        // Marginal amounts sit on the A side exactly once; inner ones twice.
        auto a_count = [&](const Rational& x) {
            return std::count_if(t.events.begin(), t.events.end(),
                                 [&](const DealEvent& e) { return e.amount_a == x; });
        };
        CHECK(a_count(t.amounts.front()) == 1);
        CHECK(a_count(t.amounts.back()) == 1);
        for (std::size_t i = 1; i + 1 < t.amounts.size(); ++i)
            CHECK(a_count(t.amounts[i]) == 2);
    }
    EventTable t = build_two_fixed_table(6, Rational(50));
    CHECK(t.amounts.back() == Rational(1600));
    CHECK_THROWS_AS(build_two_fixed_table(2, Rational(10)), invalid_parameter_error);
    CHECK_THROWS_AS(build_two_fixed_table(3, Rational(0)), invalid_parameter_error);
}

TEST_CASE("one-fixed table enumerates coin deals per amount")
{
    EventTable t = build_one_fixed_table({Rational(10), Rational(30)});
    REQUIRE(t.events.size() == 4);
    CHECK(t.events[0] == DealEvent{Rational(10), Rational(5), Rational(-5)});
    CHECK(t.events[1] == DealEvent{Rational(10), Rational(20), Rational(10)});
    CHECK(t.events[2] == DealEvent{Rational(30), Rational(15), Rational(-15)});
    CHECK(t.events[3] == DealEvent{Rational(30), Rational(60), Rational(30)});
    CHECK(t.probability_per_event == Rational(1, 4));

    EventTable single = build_one_fixed_table({Rational(100)});
    REQUIRE(single.events.size() == 2);
    CHECK(single.events[0] == DealEvent{Rational(100), Rational(50), Rational(-50)});
    CHECK(single.events[1] == DealEvent{Rational(100), Rational(200), Rational(100)});

    CHECK_THROWS_AS(build_one_fixed_table({}), invalid_parameter_error);
    CHECK_THROWS_AS(build_one_fixed_table({Rational(10), Rational(10)}),
                    invalid_parameter_error);
    CHECK_THROWS_AS(build_one_fixed_table({Rational(-1)}), invalid_parameter_error);
}

TEST_CASE("marginal filtering on the two-fixed table")
{
    EventTable t = build_two_fixed_table(3, Rational(10));

    EventTable a = filter_marginal(t, MarginalInfo::ANonMarginal);
    REQUIRE(a.events.size() == 2);
    CHECK(a.events[0] == DealEvent{Rational(20), Rational(10), Rational(-10)});
    CHECK(a.events[1] == DealEvent{Rational(20), Rational(40), Rational(20)});
    CHECK(a.probability_per_event == Rational(1, 2));

    CHECK_THROWS_AS(filter_marginal(t, MarginalInfo::BothNonMarginal),
                    degenerate_scenario_error);

    EventTable both4 = filter_marginal(build_two_fixed_table(4, Rational(10)),
                                       MarginalInfo::BothNonMarginal);
    Rational sum;
    for (const auto& event : both4.events)
        sum += event.return_for_a;
    CHECK(sum == Rational(0));
}

TEST_CASE("one-fixed b-non-marginal keeps only inner ladder contents for B")
{
    EventTable t = build_one_fixed_table(ladder(4, Rational(10)));
    EventTable f = filter_marginal(t, MarginalInfo::BNonMarginal);
    REQUIRE(f.events.size() == 4);
    CHECK(f.events[0] == DealEvent{Rational(10), Rational(20), Rational(10)});
    CHECK(f.events[1] == DealEvent{Rational(20), Rational(40), Rational(20)});
    CHECK(f.events[2] == DealEvent{Rational(40), Rational(20), Rational(-20)});
    CHECK(f.events[3] == DealEvent{Rational(80), Rational(40), Rational(-40)});

    // E*(A) = -<a*>/4 with <a*> = 30.
    CHECK(table_ev(f, Player::A).value == Rational(-15, 2));
    CHECK(table_ev(f, Player::B).value == Rational(15, 2));

    CHECK_THROWS_AS(
        filter_marginal(build_one_fixed_table({Rational(10), Rational(30)}),
                        MarginalInfo::BNonMarginal),
        invalid_parameter_error);
}

TEST_CASE("expected returns of the documented examples")
{
    CHECK(table_ev(build_two_fixed_table(5, Rational(10)), Player::A).value ==
          Rational(0));

    EventTable one = build_one_fixed_table({Rational(10), Rational(30)});
    CHECK(table_ev(one, Player::A).value == Rational(5));  // <a>/4 with <a> = 20
    CHECK(table_ev(one, Player::A).units == Units::euros());

    EventTable sub1 = filter_marginal(build_two_fixed_table(3, Rational(10)),
                                      MarginalInfo::ANonMarginal);
    CHECK(table_ev(sub1, Player::A).value == Rational(5));  // <a*>/4 with <a*> = 20
}

TEST_CASE("table expected returns agree with the brute-force oracle")
{
    std::mt19937 gen(99);
    std::uniform_int_distribution<int> pick_n(3, 9);
    std::uniform_int_distribution<int> pick_base(1, 60);
    for (int i = 0; i < 60; ++i) {
        int n = pick_n(gen);
        Rational base(pick_base(gen), 1 + i % 3);
        auto deals = oracle_two_fixed_deals(n, base);
        auto amounts = ladder(n, base);

        EventTable t = build_two_fixed_table(n, base);
        CHECK(table_ev(t, Player::A).value ==
              oracle_ev_for_a(deals, [](const OracleDeal&) { return true; }));

        EventTable fa = filter_marginal(t, MarginalInfo::ANonMarginal);
        CHECK(table_ev(fa, Player::A).value ==
              oracle_ev_for_a(deals, [&](const OracleDeal& d) {
                  return oracle_inner(amounts, d.a);
              }));

        if (n >= 4) {
            EventTable fb = filter_marginal(t, MarginalInfo::BothNonMarginal);
            CHECK(table_ev(fb, Player::A).value ==
                  oracle_ev_for_a(deals, [&](const OracleDeal& d) {
                      return oracle_inner(amounts, d.a) && oracle_inner(amounts, d.b);
                  }));
        }

        // One-fixed game over the same ladder, including the b-non-marginal
        // repeat-the-draw rule.
        auto one_deals = oracle_one_fixed_deals(amounts);
        EventTable one = build_one_fixed_table(amounts);
        CHECK(table_ev(one, Player::A).value ==
              oracle_ev_for_a(one_deals, [](const OracleDeal&) { return true; }));
        if (n >= 4) {
            EventTable fb_one = filter_marginal(one, MarginalInfo::BNonMarginal);
            CHECK(table_ev(fb_one, Player::A).value ==
                  oracle_ev_for_a(one_deals, [&](const OracleDeal& d) {
                      return oracle_inner(amounts, d.b);
                  }));
        }
    }
}

TEST_CASE("returns cancel pairwise and columns mirror each other")
{
    std::mt19937 gen(4242);
    std::uniform_int_distribution<int> pick_n(3, 10);
    std::uniform_int_distribution<int> pick_base(1, 100);
    for (int i = 0; i < 100; ++i) {
        EventTable t = build_two_fixed_table(pick_n(gen), Rational(pick_base(gen)));

        std::vector<Rational> returns;
        for (const auto& event : t.events)
            returns.push_back(event.return_for_a);
        // Every +v is neutralized by a -v.
        for (const auto& r : returns)
            CHECK(std::count(returns.begin(), returns.end(), r) ==
                  std::count(returns.begin(), returns.end(), -r));
        Rational sum;
        for (const auto& r : returns)
            sum += r;
        CHECK(sum == Rational(0));

        std::vector<Rational> col_a, col_b;
        for (const auto& event : t.events) {
            col_a.push_back(event.amount_a);
            col_b.push_back(event.amount_b);
        }
        std::sort(col_a.begin(), col_a.end());
        std::sort(col_b.begin(), col_b.end());
        CHECK(col_a == col_b);
    }
}

TEST_CASE("player B's expected return is the negation of player A's")
{
    std::mt19937 gen(11);
    std::uniform_int_distribution<int> pick_n(3, 9);
    std::uniform_int_distribution<int> pick_base(1, 50);
    for (int i = 0; i < 100; ++i) {
        EventTable t = build_two_fixed_table(pick_n(gen), Rational(pick_base(gen)));
        CHECK(table_ev(t, Player::A).value == -table_ev(t, Player::B).value);
        EventTable f = filter_marginal(t, MarginalInfo::ANonMarginal);
        CHECK(table_ev(f, Player::A).value == -table_ev(f, Player::B).value);
    }
}

TEST_CASE("one-fixed expected return is a quarter of the mean, any amounts")
{
    std::mt19937 gen(345);
    std::uniform_int_distribution<int> count(1, 8);
    std::uniform_int_distribution<int> value(1, 500);
    for (int i = 0; i < 100; ++i) {
        std::vector<Rational> amounts;
        int n = count(gen);
        for (int k = 0; k < n; ++k) {
            Rational candidate(value(gen), 1 + (k % 2));
            if (std::find(amounts.begin(), amounts.end(), candidate) == amounts.end())
                amounts.push_back(candidate);
        }
        EventTable t = build_one_fixed_table(amounts);
        CHECK(table_ev(t, Player::A).value == mean_of(amounts) / Rational(4));
        CHECK(table_ev(t, Player::B).value == -(mean_of(amounts) / Rational(4)));
    }
}

TEST_CASE("filtering equals conditioning the unfiltered table")
{
    for (int n = 4; n <= 8; ++n) {
        EventTable t = build_two_fixed_table(n, Rational(10));
        for (MarginalInfo info : {MarginalInfo::ANonMarginal, MarginalInfo::BNonMarginal,
                                  MarginalInfo::BothNonMarginal}) {
            EventTable f = filter_marginal(t, info);
            // Conditional expectation computed from the unfiltered table,
            // restricted to the surviving events.
            Rational number, mass;
            for (const auto& event : t.events) {
                bool survives = std::find(f.events.begin(), f.events.end(), event) !=
                                f.events.end();
                if (!survives)
                    continue;
                number += t.probability_per_event * event.return_for_a;
                mass += t.probability_per_event;
            }
            CHECK(table_ev(f, Player::A).value == number / mass);
        }
    }
}

TEST_CASE("subcase summary reproduces the documented n=4 values")
{
    SubcaseReport report = summarize_subcases(4, Rational(10));
    CHECK(report.mean_all == Rational(150, 4));  // (10+20+40+80)/4
    CHECK(report.mean_inner == Rational(30));    // (20+40)/2
    CHECK(report.two_fixed_main == EvPair{Rational(0), Rational(0)});
    CHECK(report.two_fixed_a_non_marginal == EvPair{Rational(15, 2), Rational(-15, 2)});
    CHECK(report.two_fixed_both_non_marginal == EvPair{Rational(0), Rational(0)});
    CHECK(report.one_fixed_main ==
          EvPair{report.mean_all / Rational(4), -(report.mean_all / Rational(4))});
    CHECK(report.one_fixed_b_non_marginal ==
          EvPair{Rational(-15, 2), Rational(15, 2)});
    CHECK(report.one_fixed_a_non_marginal ==
          EvPair{Rational(15, 2), Rational(-15, 2)});
    CHECK_THROWS_AS(summarize_subcases(3, Rational(10)), invalid_parameter_error);
}

TEST_CASE("csv export is canonical and exact")
{
    EventTable t = build_two_fixed_table(3, Rational(10));
    CHECK(to_csv(t) ==
          "amount_a,amount_b,return_for_a,probability\n"
          "10/1,20/1,10/1,1/4\n"
          "20/1,10/1,-10/1,1/4\n"
          "20/1,40/1,20/1,1/4\n"
          "40/1,20/1,-20/1,1/4\n");
}
