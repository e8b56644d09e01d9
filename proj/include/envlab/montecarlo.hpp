#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "envlab/analytic.hpp"
#include "envlab/ladder.hpp"
#include "envlab/scenario.hpp"
#include "envlab/tables.hpp"
#include "envlab/types.hpp"

namespace envlab {

// Counter-based per-trial random stream: the state is derived from
// (seed, trial index) alone, so results do not depend on how trials are
// partitioned across workers. splitmix64 throughout.
struct TrialRng {
    std::uint64_t state;

    TrialRng(std::uint64_t seed, std::uint64_t trial)
    {
        state = mix(seed ^ 0x9E3779B97F4A7C15ULL);
        state = mix(state + trial * 0xBF58476D1CE4E5B9ULL);
    }

    static std::uint64_t mix(std::uint64_t z)
    {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t next()
    {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint32_t next_below(std::uint32_t n)
    {
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }
};

enum class Measure { EuroReturn, SuccessFactor, FractionOfAFixed };

inline std::string tag(Measure m)
{
    switch (m) {
    case Measure::EuroReturn: return "euro-return";
    case Measure::SuccessFactor: return "success-factor";
    default: return "fraction-of-a-fixed";
    }
}

enum class PolicyKind { AlwaysTrade, AlwaysKeep, EquilibriumLadder, Custom };

struct Policy {
    PolicyKind kind = PolicyKind::AlwaysTrade;
    std::map<Rational, Decision> custom;  // own amount -> decision

    static Policy always_trade() { return {PolicyKind::AlwaysTrade, {}}; }
    static Policy always_keep() { return {PolicyKind::AlwaysKeep, {}}; }
    static Policy equilibrium_ladder() { return {PolicyKind::EquilibriumLadder, {}}; }
    static Policy custom_map(std::map<Rational, Decision> m)
    {
        return {PolicyKind::Custom, std::move(m)};
    }
};

struct SimulationConfig {
    Scenario scenario;
    Player player = Player::A;  // whose exchange return is measured
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 0;
    Policy policy_a = Policy::always_trade();
    Policy policy_b = Policy::always_trade();
    int workers = 0;  // 0 = pick from hardware concurrency
};

struct SimulationResult {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t exchanges = 0;
    Units units;
    std::optional<Rational> analytic_target;
    std::optional<double> z_score;
};

namespace mc_detail {

constexpr int kRejectionCap = 1000;
constexpr std::uint64_t kChunk = 1 << 16;

// One row of the flattened sample space. Exact amounts are kept for policy
// lookups and tests; the measured quantities are precomputed doubles.
struct SampleEvent {
    Rational amount_a;
    Rational amount_b;
    double return_a = 0.0;
    double avg_fixed = 0.0;  // (a + b) / 2, the event's game average
    double a_fixed = 0.0;    // the prearranged amount in one-fixed games
    int level_a = -1;
    int level_b = -1;
    bool accept = true;
};

struct SampleSpace {
    std::vector<SampleEvent> events;  // sampled uniformly by index
    bool rejection = false;
    bool two_fixed = false;
    bool one_fixed = false;
    bool ladder = false;
};

inline SampleEvent pair_event(const Rational& a, const Rational& b)
{
    SampleEvent e;
    e.amount_a = a;
    e.amount_b = b;
    e.return_a = (b - a).to_double();
    e.avg_fixed = ((a + b) / Rational(2)).to_double();
    e.a_fixed = a.to_double();
    return e;
}

inline void mark_marginal_rejections(SampleSpace& space,
                                     const std::vector<Rational>& amounts,
                                     MarginalInfo info)
{
    if (info == MarginalInfo::NoInfo)
        return;
    bool need_a =
        info == MarginalInfo::ANonMarginal || info == MarginalInfo::BothNonMarginal;
    bool need_b =
        info == MarginalInfo::BNonMarginal || info == MarginalInfo::BothNonMarginal;
    space.rejection = true;
    for (auto& event : space.events) {
        bool ok = true;
        if (need_a && !detail::is_inner_amount(amounts, event.amount_a))
            ok = false;
        if (need_b && !detail::is_inner_amount(amounts, event.amount_b))
            ok = false;
        event.accept = ok;
    }
}

inline SampleSpace from_table(const EventTable& table, MarginalInfo info)
{
    SampleSpace space;
    space.two_fixed = table.family == TableFamily::TwoFixedGeometric;
    space.one_fixed = table.family == TableFamily::OneFixedArbitrary;
    for (const auto& event : table.events)
        space.events.push_back(pair_event(event.amount_a, event.amount_b));
    if (info != MarginalInfo::NoInfo &&
        table.family == TableFamily::OneFixedArbitrary &&
        info != MarginalInfo::ANonMarginal &&
        !detail::is_ratio_two_ladder(table.amounts))
        throw invalid_parameter_error(
            "b-non-marginal rejection requires amounts in a ratio-2 ladder");
    mark_marginal_rejections(space, table.amounts, info);
    return space;
}

// The epistemic sample space of an opened two-fixed game: the two candidate
// games consistent with the revealed amount, equally likely.
inline SampleSpace opened_two_fixed(const Rational& revealed, Player holder)
{
    Rational two(2);
    SampleSpace space;
    space.two_fixed = true;
    if (holder == Player::A) {
        space.events.push_back(pair_event(revealed, revealed * two));
        space.events.push_back(pair_event(revealed, revealed / two));
    } else {
        space.events.push_back(pair_event(revealed * two, revealed));
        space.events.push_back(pair_event(revealed / two, revealed));
    }
    return space;
}

inline SampleSpace build_sample_space(const Scenario& scenario, Player measured)
{
    validate(scenario);
    struct Visitor {
        Player measured;

        SampleSpace operator()(const TwoFixedClosed&) const
        {
            // The variation is scale-free; any concrete pair represents it.
            Rational x(100);
            SampleSpace space;
            space.two_fixed = true;
            space.events.push_back(pair_event(x, x * Rational(2)));
            space.events.push_back(pair_event(x * Rational(2), x));
            return space;
        }
        SampleSpace operator()(const TwoFixedNClosed& s) const
        {
            return from_table(build_two_fixed_table(s.n, s.base), s.marginal);
        }
        SampleSpace operator()(const TwoFixedOpened& s) const
        {
            return opened_two_fixed(s.revealed, s.revealed_holder);
        }
        SampleSpace operator()(const TwoFixedBothOpened& s) const
        {
            // Each player's uncertainty is over his own candidate games.
            return measured == Player::A ? opened_two_fixed(s.amount_a, Player::A)
                                         : opened_two_fixed(s.amount_b, Player::B);
        }
        SampleSpace operator()(const OneFixedClosed&) const
        {
            Rational x(100);  // fraction-of-A measurements do not depend on it
            SampleSpace space;
            space.one_fixed = true;
            space.events.push_back(pair_event(x, x * Rational(2)));
            space.events.push_back(pair_event(x, x / Rational(2)));
            return space;
        }
        SampleSpace operator()(const OneFixedNClosed& s) const
        {
            return from_table(build_one_fixed_table(s.amounts), s.marginal);
        }
        SampleSpace operator()(const OneFixedOpenedA& s) const
        {
            SampleSpace space;
            space.one_fixed = true;
            space.events.push_back(pair_event(s.amount_a, s.amount_a * Rational(2)));
            space.events.push_back(pair_event(s.amount_a, s.amount_a / Rational(2)));
            return space;
        }
        SampleSpace operator()(const OneFixedOpenedB& s) const
        {
            // The fixed amount consistent with the revealed b: b/2 if the
            // coin doubled it, 2b if it halved it.
            SampleSpace space;
            space.one_fixed = true;
            space.events.push_back(pair_event(s.amount_b / Rational(2), s.amount_b));
            space.events.push_back(pair_event(s.amount_b * Rational(2), s.amount_b));
            return space;
        }
        SampleSpace operator()(const OneFixedBothOpened& s) const
        {
            SampleSpace space;
            space.one_fixed = true;
            if (measured == Player::A) {
                space.events.push_back(pair_event(s.amount_a, s.amount_a * Rational(2)));
                space.events.push_back(pair_event(s.amount_a, s.amount_a / Rational(2)));
            } else {
                space.events.push_back(pair_event(s.amount_b / Rational(2), s.amount_b));
                space.events.push_back(pair_event(s.amount_b * Rational(2), s.amount_b));
            }
            return space;
        }
        SampleSpace operator()(const BoundedLadder& s) const
        {
            LadderSpec spec{s.min, s.levels};
            auto amounts = ladder_amounts(spec);
            SampleSpace space;
            space.two_fixed = true;
            space.ladder = true;
            for (int k = 0; k + 1 < s.levels; ++k) {
                SampleEvent up = pair_event(amounts[k], amounts[k + 1]);
                up.level_a = k;
                up.level_b = k + 1;
                SampleEvent down = pair_event(amounts[k + 1], amounts[k]);
                down.level_a = k + 1;
                down.level_b = k;
                space.events.push_back(up);
                space.events.push_back(down);
            }
            return space;
        }
    };
    return std::visit(Visitor{measured}, scenario);
}

inline bool policy_requests(const Policy& policy, const SampleSpace& space,
                            const SampleEvent& event, bool side_a)
{
    switch (policy.kind) {
    case PolicyKind::AlwaysTrade:
        return true;
    case PolicyKind::AlwaysKeep:
        return false;
    case PolicyKind::EquilibriumLadder: {
        if (!space.ladder)
            throw invalid_parameter_error(
                "equilibrium-ladder policy applies only to bounded-ladder scenarios");
        int level = side_a ? event.level_a : event.level_b;
        return level == 0;
    }
    case PolicyKind::Custom: {
        const Rational& own = side_a ? event.amount_a : event.amount_b;
        auto it = policy.custom.find(own);
        return it != policy.custom.end() && it->second == Decision::Trade;
    }
    }
    return false;
}

inline double measured_value(const SampleSpace& space, const SampleEvent& event,
                             Player player, Measure measure)
{
    double ret = player == Player::A ? event.return_a : -event.return_a;
    switch (measure) {
    case Measure::EuroReturn:
        return ret;
    case Measure::SuccessFactor:
        if (!space.two_fixed)
            throw invalid_parameter_error(
                "success-factor measure applies to two-fixed games");
        return ret / event.avg_fixed;
    case Measure::FractionOfAFixed:
        if (!space.one_fixed)
            throw invalid_parameter_error(
                "fraction-of-a-fixed measure applies to one-fixed games");
        return ret / event.a_fixed;
    }
    return ret;
}

struct ChunkPartial {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::uint64_t exchanges = 0;
};

// Draws the accepted event index for one trial, honouring the rejection cap.
inline std::uint32_t draw_event(TrialRng& rng, const std::vector<char>& accept,
                                std::uint32_t count, bool rejection)
{
    std::uint32_t idx = rng.next_below(count);
    if (!rejection)
        return idx;
    for (int attempt = 0; attempt < kRejectionCap; ++attempt) {
        if (accept[idx])
            return idx;
        idx = rng.next_below(count);
    }
    throw rejection_limit_error(
        "rejection sampling found no acceptable deal within " +
        std::to_string(kRejectionCap) + " attempts");
}

}  // namespace mc_detail

inline int resolve_workers(int requested)
{
    if (requested > 0)
        return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(hw == 0 ? 1 : hw > 8 ? 8 : hw);
}

// Mean exchange return per trial under the configured policies, measured in
// the requested units. Deterministic for a fixed (seed, trials, scenario,
// policies): trials are split into fixed-size chunks, each chunk is summed
// sequentially, and chunk sums are combined in index order no matter which
// worker produced them.
inline SimulationResult run_simulation(const SimulationConfig& cfg, Measure measure)
{
    using namespace mc_detail;
    if (cfg.trials == 0)
        throw invalid_parameter_error("simulation requires at least one trial");

    SampleSpace space = build_sample_space(cfg.scenario, cfg.player);
    const auto count = static_cast<std::uint32_t>(space.events.size());

    // Measure compatibility does not depend on the policies in force.
    if (measure == Measure::SuccessFactor && !space.two_fixed)
        throw invalid_parameter_error(
            "success-factor measure applies to two-fixed games");
    if (measure == Measure::FractionOfAFixed && !space.one_fixed)
        throw invalid_parameter_error(
            "fraction-of-a-fixed measure applies to one-fixed games");

    // Everything about an event is fixed, so the per-trial value folds into
    // one lookup table.
    std::vector<double> value(count);
    std::vector<char> exchanged(count);
    std::vector<char> accept(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        const auto& event = space.events[i];
        bool req_a = policy_requests(cfg.policy_a, space, event, true);
        bool req_b = policy_requests(cfg.policy_b, space, event, false);
        bool exch = req_a && req_b;
        exchanged[i] = exch ? 1 : 0;
        value[i] = exch ? measured_value(space, event, cfg.player, measure) : 0.0;
        accept[i] = event.accept ? 1 : 0;
    }

    const std::uint64_t chunk_count = (cfg.trials + kChunk - 1) / kChunk;
    std::vector<ChunkPartial> partials(chunk_count);
    std::vector<std::exception_ptr> errors(chunk_count);

    auto run_chunk = [&](std::uint64_t c) {
        ChunkPartial part;
        const std::uint64_t begin = c * kChunk;
        const std::uint64_t end = std::min(cfg.trials, begin + kChunk);
        try {
            for (std::uint64_t t = begin; t < end; ++t) {
                TrialRng rng(cfg.seed, t);
                std::uint32_t idx = draw_event(rng, accept, count, space.rejection);
                double v = value[idx];
                part.sum += v;
                part.sum_sq += v * v;
                part.exchanges += exchanged[idx];
            }
            partials[c] = part;
        } catch (...) {
            errors[c] = std::current_exception();
        }
    };

    int workers = resolve_workers(cfg.workers);
    if (workers <= 1 || chunk_count <= 1) {
        for (std::uint64_t c = 0; c < chunk_count; ++c)
            run_chunk(c);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::uint64_t c = next.fetch_add(1); c < chunk_count;
                     c = next.fetch_add(1))
                    run_chunk(c);
            });
        }
        for (auto& th : pool)
            th.join();
    }
    for (std::uint64_t c = 0; c < chunk_count; ++c)
        if (errors[c])
            std::rethrow_exception(errors[c]);

    double sum = 0.0;
    double sum_sq = 0.0;
    std::uint64_t exchanges = 0;
    for (const auto& part : partials) {
        sum += part.sum;
        sum_sq += part.sum_sq;
        exchanges += part.exchanges;
    }

    SimulationResult result;
    result.trials = cfg.trials;
    result.exchanges = exchanges;
    result.mean = sum / static_cast<double>(cfg.trials);
    if (cfg.trials > 1) {
        double n = static_cast<double>(cfg.trials);
        double variance = (sum_sq - n * result.mean * result.mean) / (n - 1.0);
        if (variance < 0.0)
            variance = 0.0;
        result.std_error = std::sqrt(variance / n);
    }
    switch (measure) {
    case Measure::EuroReturn:
        result.units = Units::euros();
        break;
    case Measure::SuccessFactor:
        result.units = Units::success_factor();
        break;
    case Measure::FractionOfAFixed:
        result.units = Units::fraction_of(AmountRef::PlayerAFixedAmount);
        break;
    }
    return result;
}

// One sampled deal, for tests and spot checks.
inline DealEvent sample_deal(const Scenario& scenario, Player measured,
                             std::uint64_t seed, std::uint64_t trial)
{
    using namespace mc_detail;
    SampleSpace space = build_sample_space(scenario, measured);
    std::vector<char> accept(space.events.size());
    for (std::size_t i = 0; i < space.events.size(); ++i)
        accept[i] = space.events[i].accept ? 1 : 0;
    TrialRng rng(seed, trial);
    std::uint32_t idx = draw_event(rng, accept,
                                   static_cast<std::uint32_t>(space.events.size()),
                                   space.rejection);
    const auto& event = space.events[idx];
    return {event.amount_a, event.amount_b, event.amount_b - event.amount_a};
}

// Empirical count per canonical event index over `trials` accepted draws.
inline std::vector<std::uint64_t> sample_event_counts(const SimulationConfig& cfg)
{
    using namespace mc_detail;
    SampleSpace space = build_sample_space(cfg.scenario, cfg.player);
    std::vector<char> accept(space.events.size());
    for (std::size_t i = 0; i < space.events.size(); ++i)
        accept[i] = space.events[i].accept ? 1 : 0;
    std::vector<std::uint64_t> counts(space.events.size(), 0);
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
        TrialRng rng(cfg.seed, t);
        counts[draw_event(rng, accept,
                          static_cast<std::uint32_t>(space.events.size()),
                          space.rejection)]++;
    }
    return counts;
}

// A simulation paired with the analytic value it must reproduce.
struct VerificationCheck {
    std::string scenario;
    Player player = Player::A;
    Measure measure = Measure::EuroReturn;
    Rational target;
    SimulationResult sim;
    double threshold = 4.0;
    bool pass = false;
};

namespace mc_detail {

inline Measure measure_for(const ExpectedReturn& target, bool one_fixed_family)
{
    switch (target.units.kind) {
    case UnitKind::Euros:
        return Measure::EuroReturn;
    case UnitKind::SuccessFactor:
        return Measure::SuccessFactor;
    case UnitKind::FractionOf:
        if (one_fixed_family)
            return Measure::FractionOfAFixed;
        // Fractional zeros of symmetric games are zero in euros as well.
        if (!target.value.is_zero())
            throw invalid_parameter_error(
                "no measure reproduces this fractional target");
        return Measure::EuroReturn;
    }
    return Measure::EuroReturn;
}

}  // namespace mc_detail

// Runs the simulation against the scenario's analytic expected return in the
// matching units and reports the z-score. The deal policies are forced to
// the canonical ones the analytic values assume: always-trade everywhere
// except the bounded ladder, which is checked under the equilibrium policy
// (no exchange may ever be realized).
inline VerificationCheck verify(const SimulationConfig& cfg, double threshold = 4.0)
{
    VerificationCheck check;
    check.scenario = scenario_name(cfg.scenario);
    check.player = cfg.player;
    check.threshold = threshold;

    SimulationConfig run = cfg;
    if (std::holds_alternative<BoundedLadder>(cfg.scenario)) {
        run.policy_a = Policy::equilibrium_ladder();
        run.policy_b = Policy::equilibrium_ladder();
        check.measure = Measure::EuroReturn;
        check.target = Rational(0);
        check.sim = run_simulation(run, check.measure);
        check.sim.analytic_target = check.target;
        check.pass = check.sim.exchanges == 0 && check.sim.mean == 0.0;
        return check;
    }

    run.policy_a = Policy::always_trade();
    run.policy_b = Policy::always_trade();

    AnalysisResult analytic = analyze_scenario(cfg.scenario, cfg.player);
    bool one_fixed =
        std::holds_alternative<OneFixedClosed>(cfg.scenario) ||
        std::holds_alternative<OneFixedNClosed>(cfg.scenario) ||
        std::holds_alternative<OneFixedOpenedA>(cfg.scenario) ||
        std::holds_alternative<OneFixedOpenedB>(cfg.scenario) ||
        std::holds_alternative<OneFixedBothOpened>(cfg.scenario);
    check.measure = mc_detail::measure_for(analytic.ev, one_fixed);
    check.target = analytic.ev.value;
    check.sim = run_simulation(run, check.measure);
    check.sim.analytic_target = check.target;

    double target = check.target.to_double();
    if (check.sim.std_error > 0.0) {
        double z = (check.sim.mean - target) / check.sim.std_error;
        check.sim.z_score = z;
        check.pass = std::abs(z) <= threshold;
    } else {
        check.pass = check.sim.mean == target;
    }
    return check;
}

// Compares empirical accepted-event frequencies with the conditioned
// (renormalized) probabilities; every excluded event must stay at zero.
struct FrequencyCheck {
    std::vector<std::uint64_t> counts;
    std::vector<double> z_scores;  // one per accepted event
    bool pass = false;
};

inline FrequencyCheck check_event_frequencies(const SimulationConfig& cfg,
                                              double threshold = 4.0)
{
    using namespace mc_detail;
    SampleSpace space = build_sample_space(cfg.scenario, cfg.player);
    FrequencyCheck check;
    check.counts = sample_event_counts(cfg);
    std::size_t accepted = 0;
    for (const auto& event : space.events)
        accepted += event.accept ? 1 : 0;
    if (accepted == 0)
        throw degenerate_scenario_error("no acceptable events to sample");

    double p = 1.0 / static_cast<double>(accepted);
    double n = static_cast<double>(cfg.trials);
    double se = std::sqrt(p * (1.0 - p) / n);
    check.pass = true;
    for (std::size_t i = 0; i < space.events.size(); ++i) {
        if (!space.events[i].accept) {
            if (check.counts[i] != 0)
                check.pass = false;
            continue;
        }
        double observed = static_cast<double>(check.counts[i]) / n;
        double z = se > 0.0 ? (observed - p) / se : 0.0;
        check.z_scores.push_back(z);
        if (std::abs(z) > threshold)
            check.pass = false;
    }
    return check;
}

}  // namespace envlab
