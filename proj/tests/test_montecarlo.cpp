#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>

#include "envlab/montecarlo.hpp"

using namespace envlab;

namespace {

SimulationConfig config(Scenario scenario, Player player, std::uint64_t trials,
                        std::uint64_t seed)
{
    SimulationConfig cfg;
    cfg.scenario = std::move(scenario);
    cfg.player = player;
    cfg.trials = trials;
    cfg.seed = seed;
    return cfg;
}

bool bit_identical(const SimulationResult& x, const SimulationResult& y)
{
    return std::memcmp(&x.mean, &y.mean, sizeof x.mean) == 0 &&
           std::memcmp(&x.std_error, &y.std_error, sizeof x.std_error) == 0 &&
           x.exchanges == y.exchanges && x.trials == y.trials;
}

}  // namespace

TEST_CASE("identical configurations give bit-identical results")
{
    SimulationConfig cfg = config(OneFixedOpenedA{Rational(100)}, Player::A, 200000, 42);
    SimulationResult first = run_simulation(cfg, Measure::EuroReturn);
    SimulationResult second = run_simulation(cfg, Measure::EuroReturn);
    CHECK(bit_identical(first, second));

    cfg.workers = 1;
    SimulationResult serial = run_simulation(cfg, Measure::EuroReturn);
    cfg.workers = 3;
    SimulationResult parallel = run_simulation(cfg, Measure::EuroReturn);
    CHECK(bit_identical(serial, parallel));

    cfg.seed = 43;
    SimulationResult reseeded = run_simulation(cfg, Measure::EuroReturn);
    CHECK_FALSE(bit_identical(serial, reseeded));
}

TEST_CASE("sampled deals follow the stated distributions")
{
    // One fixed opened A: the two coin deals appear about half the time each.
    SimulationConfig cfg = config(OneFixedOpenedA{Rational(100)}, Player::A, 100000, 7);
    FrequencyCheck freq = check_event_frequencies(cfg);
    REQUIRE(freq.counts.size() == 2);
    CHECK(freq.pass);

    DealEvent deal = sample_deal(OneFixedOpenedA{Rational(100)}, Player::A, 7, 0);
    CHECK(deal.amount_a == Rational(100));
    CHECK((deal.amount_b == Rational(200) || deal.amount_b == Rational(50)));

    // Each of the four n=3 ladder deals appears about a quarter of the time.
    cfg = config(TwoFixedNClosed{3, Rational(10), MarginalInfo::NoInfo}, Player::A,
                 100000, 9);
    freq = check_event_frequencies(cfg);
    REQUIRE(freq.counts.size() == 4);
    CHECK(freq.pass);
}

TEST_CASE("rejection sampling matches the conditioned table")
{
    // Both-non-marginal with n=4 never deals the amounts 10 or 80.
    SimulationConfig cfg = config(
        TwoFixedNClosed{4, Rational(10), MarginalInfo::BothNonMarginal}, Player::A,
        100000, 11);
    FrequencyCheck freq = check_event_frequencies(cfg);
    CHECK(freq.pass);
    CHECK(freq.z_scores.size() == 2);  // only two surviving events

    // The one-fixed repeat-the-draw rule conditions exactly the same way.
    cfg = config(OneFixedNClosed{{Rational(10), Rational(20), Rational(40),
                                  Rational(80)},
                                 MarginalInfo::BNonMarginal},
                 Player::A, 100000, 13);
    freq = check_event_frequencies(cfg);
    CHECK(freq.pass);
    CHECK(freq.z_scores.size() == 4);
}

TEST_CASE("impossible constraints hit the rejection cap")
{
    SimulationConfig cfg = config(
        TwoFixedNClosed{3, Rational(10), MarginalInfo::BothNonMarginal}, Player::A,
        10, 1);
    CHECK_THROWS_AS(run_simulation(cfg, Measure::EuroReturn), rejection_limit_error);
}

TEST_CASE("sampled deals are zero-sum between the players")
{
    std::vector<Scenario> scenarios{
        TwoFixedClosed{},
        TwoFixedNClosed{5, Rational(10), MarginalInfo::NoInfo},
        OneFixedOpenedA{Rational(100)},
        OneFixedOpenedB{Rational(100)},
    };
    int checked = 0;
    for (const auto& scenario : scenarios) {
        for (std::uint64_t t = 0; t < 40; ++t) {
            DealEvent deal = sample_deal(scenario, Player::A, 3, t);
            Rational return_b = deal.amount_a - deal.amount_b;
            CHECK(deal.return_for_a + return_b == Rational(0));
            ++checked;
        }
    }
    CHECK(checked == 160);
}

TEST_CASE("verification agrees with the analytic values at modest sizes")
{
    CHECK(verify(config(OneFixedOpenedA{Rational(100)}, Player::A, 200000, 42)).pass);
    CHECK(verify(config(OneFixedOpenedA{Rational(100)}, Player::B, 200000, 42)).pass);

    VerificationCheck sf =
        verify(config(TwoFixedOpened{Player::A, Rational(100)}, Player::A, 200000, 5));
    CHECK(sf.pass);
    CHECK(sf.measure == Measure::SuccessFactor);
    CHECK(sf.target == Rational(0));

    VerificationCheck frac =
        verify(config(OneFixedOpenedB{Rational(100)}, Player::A, 200000, 5));
    CHECK(frac.pass);
    CHECK(frac.measure == Measure::FractionOfAFixed);
    CHECK(frac.target == Rational(1, 4));

    VerificationCheck closed = verify(config(TwoFixedClosed{}, Player::A, 200000, 6));
    CHECK(closed.pass);
    CHECK(closed.measure == Measure::EuroReturn);
}

TEST_CASE("equilibrium ladder policies never realize an exchange")
{
    SimulationConfig cfg =
        config(BoundedLadder{Rational(50), 6, std::nullopt}, Player::A, 100000, 21);
    VerificationCheck check = verify(cfg);
    CHECK(check.pass);
    CHECK(check.sim.exchanges == 0);
    CHECK(check.sim.mean == 0.0);

    cfg.policy_a = Policy::always_trade();
    cfg.policy_b = Policy::always_trade();
    SimulationResult eager = run_simulation(cfg, Measure::EuroReturn);
    CHECK(eager.exchanges == cfg.trials);
}

TEST_CASE("policies gate the exchange")
{
    SimulationConfig cfg = config(OneFixedOpenedA{Rational(100)}, Player::A, 50000, 2);
    cfg.policy_b = Policy::always_keep();
    SimulationResult result = run_simulation(cfg, Measure::EuroReturn);
    CHECK(result.exchanges == 0);
    CHECK(result.mean == 0.0);

    // A custom map reproduces the equilibrium ladder policy.
    SimulationConfig ladder_cfg =
        config(BoundedLadder{Rational(50), 3, std::nullopt}, Player::A, 50000, 3);
    std::map<Rational, Decision> req{{Rational(50), Decision::Trade},
                                     {Rational(100), Decision::Keep},
                                     {Rational(200), Decision::Keep}};
    ladder_cfg.policy_a = Policy::custom_map(req);
    ladder_cfg.policy_b = Policy::custom_map(req);
    CHECK(run_simulation(ladder_cfg, Measure::EuroReturn).exchanges == 0);
}

TEST_CASE("incompatible measures are rejected")
{
    CHECK_THROWS_AS(run_simulation(config(OneFixedClosed{}, Player::A, 10, 1),
                                   Measure::SuccessFactor),
                    invalid_parameter_error);
    // Rejected even when the policies would block every exchange.
    SimulationConfig blocked = config(OneFixedClosed{}, Player::A, 10, 1);
    blocked.policy_a = Policy::always_keep();
    CHECK_THROWS_AS(run_simulation(blocked, Measure::SuccessFactor),
                    invalid_parameter_error);
    CHECK_THROWS_AS(
        run_simulation(config(TwoFixedNClosed{3, Rational(10), {}}, Player::A, 10, 1),
                       Measure::FractionOfAFixed),
        invalid_parameter_error);
    CHECK_THROWS_AS(run_simulation(config(TwoFixedClosed{}, Player::A, 0, 1),
                                   Measure::EuroReturn),
                    invalid_parameter_error);
}

TEST_CASE("euro-measured truth contradicts the unweighted opened-B claim")
{
    // Player B sees 100. In both worlds consistent with that observation the
    // fixed amount is 50 or 200, and B's true euro expectation of trading is
    // -X/4 < 0, far from the claimed +25.
    Rational claim = fallacy_opened_b_unweighted(Rational(100), Player::B).ev.value;
    for (const Rational& fixed : {Rational(50), Rational(200)}) {
        SimulationConfig cfg = config(OneFixedOpenedA{fixed}, Player::B, 200000, 77);
        SimulationResult sim = run_simulation(cfg, Measure::EuroReturn);
        double z = (sim.mean - claim.to_double()) / sim.std_error;
        CHECK(std::abs(z) > 4.0);
        CHECK(sim.mean < 0.0);  // opposite sign of the claim
    }
}
