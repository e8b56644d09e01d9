// Command-line surface of the two-envelopes verification engine: exact
// analysis per variation, event-table export, seeded Monte Carlo runs with
// optional verification against the analytic values, the bounded-ladder
// solver, and the consolidated decisions table.

#include <cstdint>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "envlab/envlab.hpp"

namespace {

using namespace envlab;

std::vector<Rational> parse_amount_list(const std::string& text)
{
    std::vector<Rational> amounts;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string item = comma == std::string::npos
                               ? text.substr(start)
                               : text.substr(start, comma - start);
        if (!item.empty())
            amounts.push_back(Rational::parse(item));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    if (amounts.empty())
        throw invalid_parameter_error("expected a comma-separated amount list");
    return amounts;
}

MarginalInfo parse_marginal(const std::string& text)
{
    if (text.empty() || text == "none") return MarginalInfo::NoInfo;
    if (text == "a-non-marginal") return MarginalInfo::ANonMarginal;
    if (text == "b-non-marginal") return MarginalInfo::BNonMarginal;
    if (text == "both-non-marginal") return MarginalInfo::BothNonMarginal;
    throw invalid_parameter_error("unknown marginal-info: " + text);
}

Player parse_player(const std::string& text)
{
    if (text == "A" || text == "a") return Player::A;
    if (text == "B" || text == "b") return Player::B;
    throw invalid_parameter_error("unknown player: " + text);
}

Measure parse_measure(const std::string& text)
{
    if (text == "euro-return" || text == "euros") return Measure::EuroReturn;
    if (text == "success-factor") return Measure::SuccessFactor;
    if (text == "fraction-of-a-fixed") return Measure::FractionOfAFixed;
    throw invalid_parameter_error("unknown measure: " + text);
}

Policy parse_policy(const std::string& text)
{
    if (text == "always-trade") return Policy::always_trade();
    if (text == "always-keep") return Policy::always_keep();
    if (text == "equilibrium") return Policy::equilibrium_ladder();
    throw invalid_parameter_error("unknown policy: " + text);
}

// Raw option values shared by the analyze and simulate subcommands.
struct ScenarioOptions {
    std::string variant;
    std::string revealed;
    std::string amount_a;
    std::string amount_b;
    int n = 0;
    std::string base;
    std::string amounts;
    std::string marginal;
    std::string ladder_min;
    int levels = 0;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--variant", variant, "game variation")->required();
        cmd->add_option("--revealed", revealed, "revealed amount");
        cmd->add_option("--amount-a", amount_a, "amount in player A's envelope");
        cmd->add_option("--amount-b", amount_b, "amount in player B's envelope");
        cmd->add_option("--n", n, "number of envelopes");
        cmd->add_option("--base", base, "smallest ladder amount");
        cmd->add_option("--amounts", amounts, "comma-separated envelope amounts");
        cmd->add_option("--marginal-info", marginal,
                        "none|a-non-marginal|b-non-marginal|both-non-marginal");
        cmd->add_option("--min", ladder_min, "smallest ladder amount (bounded ladder)");
        cmd->add_option("--levels", levels, "ladder height (bounded ladder)");
    }

    Rational required(const std::string& value, const char* flag) const
    {
        if (value.empty())
            throw invalid_parameter_error(std::string("missing ") + flag +
                                          " for variant " + variant);
        return Rational::parse(value);
    }

    Scenario build() const
    {
        if (variant == "two-fixed-closed")
            return TwoFixedClosed{};
        if (variant == "two-fixed-n-closed") {
            if (n == 0)
                throw invalid_parameter_error("missing --n for two-fixed-n-closed");
            return TwoFixedNClosed{n, required(base, "--base"),
                                   parse_marginal(marginal)};
        }
        if (variant == "two-fixed-opened")
            return TwoFixedOpened{Player::A, required(revealed, "--revealed")};
        if (variant == "two-fixed-both-opened")
            return TwoFixedBothOpened{required(amount_a, "--amount-a"),
                                      required(amount_b, "--amount-b")};
        if (variant == "one-fixed-closed")
            return OneFixedClosed{};
        if (variant == "one-fixed-n-closed") {
            if (amounts.empty())
                throw invalid_parameter_error(
                    "missing --amounts for one-fixed-n-closed");
            return OneFixedNClosed{parse_amount_list(amounts),
                                   parse_marginal(marginal)};
        }
        if (variant == "one-fixed-opened-a")
            return OneFixedOpenedA{
                required(!revealed.empty() ? revealed : amount_a, "--revealed")};
        if (variant == "one-fixed-opened-b")
            return OneFixedOpenedB{
                required(!revealed.empty() ? revealed : amount_b, "--revealed")};
        if (variant == "one-fixed-both-opened")
            return OneFixedBothOpened{required(amount_a, "--amount-a"),
                                      required(amount_b, "--amount-b")};
        if (variant == "bounded-ladder") {
            if (levels == 0)
                throw invalid_parameter_error("missing --levels for bounded-ladder");
            return BoundedLadder{required(ladder_min, "--min"), levels, std::nullopt};
        }
        throw invalid_parameter_error("unknown variant: " + variant);
    }
};

int run(int argc, char** argv)
{
    CLI::App app{"two-envelopes analysis and verification engine"};
    app.require_subcommand(1);

    // analyze ---------------------------------------------------------------
    auto* analyze = app.add_subcommand("analyze", "exact expected-return analysis");
    ScenarioOptions analyze_opts;
    analyze_opts.attach(analyze);
    std::string analyze_player = "A";
    bool show_fallacies = false;
    std::string analyze_format = "md";
    analyze->add_option("--player", analyze_player, "player A or B");
    analyze->add_flag("--show-fallacies", show_fallacies,
                      "append the documented fallacy rows for the variant");
    analyze->add_option("--format", analyze_format, "json|csv|md");

    // table -----------------------------------------------------------------
    auto* table = app.add_subcommand("table", "event-table enumeration");
    std::string family;
    int table_n = 0;
    std::string table_base;
    std::string table_amounts;
    std::string table_marginal;
    std::string table_format = "csv";
    table->add_option("--family", family, "two-fixed|one-fixed")->required();
    table->add_option("--n", table_n, "number of envelopes (two-fixed)");
    table->add_option("--base", table_base, "smallest ladder amount (two-fixed)");
    table->add_option("--amounts", table_amounts, "amount list (one-fixed)");
    table->add_option("--marginal-info", table_marginal,
                      "none|a-non-marginal|b-non-marginal|both-non-marginal");
    table->add_option("--format", table_format, "json|csv|md");

    // simulate --------------------------------------------------------------
    auto* simulate = app.add_subcommand("simulate", "seeded Monte Carlo runs");
    ScenarioOptions sim_opts;
    sim_opts.attach(simulate);
    std::string sim_player = "A";
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 0;
    std::string measure_text;
    bool do_verify = false;
    int workers = 0;
    std::string policy_a_text;
    std::string policy_b_text;
    std::string sim_format = "md";
    simulate->add_option("--player", sim_player, "player whose return is measured");
    simulate->add_option("--trials", trials, "number of trials");
    simulate->add_option("--seed", seed, "simulation seed")->envname("ENVLAB_SEED");
    simulate->add_option("--measure", measure_text,
                         "euro-return|success-factor|fraction-of-a-fixed");
    simulate->add_flag("--verify", do_verify, "compare against the analytic value");
    simulate->add_option("--workers", workers, "worker threads (0 = auto)");
    simulate->add_option("--policy-a", policy_a_text,
                         "always-trade|always-keep|equilibrium");
    simulate->add_option("--policy-b", policy_b_text,
                         "always-trade|always-keep|equilibrium");
    simulate->add_option("--format", sim_format, "json|csv|md");

    // ladder ----------------------------------------------------------------
    auto* ladder = app.add_subcommand("ladder", "bounded-ladder dominance solver");
    std::string ladder_min = "50";
    int ladder_levels = 6;
    std::string observed_text;
    std::string ladder_player = "B";
    std::string ladder_format = "md";
    ladder->add_option("--min", ladder_min, "smallest ladder amount");
    ladder->add_option("--levels", ladder_levels, "ladder height");
    ladder->add_option("--observed", observed_text, "amount seen by the player");
    ladder->add_option("--player", ladder_player, "player holding the observed amount");
    ladder->add_option("--format", ladder_format, "json|csv|md");

    // summary ---------------------------------------------------------------
    auto* summary = app.add_subcommand("summary", "calculations-and-decisions table");
    std::string summary_format = "md";
    summary->add_option("--format", summary_format, "json|csv|md");

    CLI11_PARSE(app, argc, argv);

    if (analyze->parsed()) {
        Scenario scenario = analyze_opts.build();
        Player player = parse_player(analyze_player);
        std::vector<AnalysisResult> rows{analyze_scenario(scenario, player)};
        if (show_fallacies)
            for (auto& fallacy : fallacies_for(scenario, player))
                rows.push_back(std::move(fallacy));
        std::cout << render_analysis(rows, parse_format(analyze_format));
        return 0;
    }

    if (table->parsed()) {
        EventTable t;
        if (family == "two-fixed") {
            if (table_n == 0 || table_base.empty())
                throw invalid_parameter_error(
                    "two-fixed tables need --n and --base");
            t = build_two_fixed_table(table_n, Rational::parse(table_base));
        } else if (family == "one-fixed") {
            if (table_amounts.empty())
                throw invalid_parameter_error("one-fixed tables need --amounts");
            t = build_one_fixed_table(parse_amount_list(table_amounts));
        } else {
            throw invalid_parameter_error("unknown family: " + family);
        }
        t = filter_marginal(t, parse_marginal(table_marginal));
        std::cout << render_table(t, parse_format(table_format));
        return 0;
    }

    if (simulate->parsed()) {
        SimulationConfig cfg;
        cfg.scenario = sim_opts.build();
        cfg.player = parse_player(sim_player);
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.workers = workers;
        bool is_ladder = std::holds_alternative<BoundedLadder>(cfg.scenario);
        cfg.policy_a = policy_a_text.empty()
                           ? (is_ladder ? Policy::equilibrium_ladder()
                                        : Policy::always_trade())
                           : parse_policy(policy_a_text);
        cfg.policy_b = policy_b_text.empty()
                           ? (is_ladder ? Policy::equilibrium_ladder()
                                        : Policy::always_trade())
                           : parse_policy(policy_b_text);

        SimulationRow row;
        row.scenario = scenario_name(cfg.scenario);
        row.player = cfg.player;
        row.trials = cfg.trials;
        row.seed = cfg.seed;
        bool ok = true;
        if (do_verify) {
            VerificationCheck check = verify(cfg);
            row.measure = check.measure;
            row.result = check.sim;
            row.pass = check.pass;
            ok = check.pass;
        } else {
            Measure measure;
            if (!measure_text.empty()) {
                measure = parse_measure(measure_text);
            } else if (is_ladder) {
                measure = Measure::EuroReturn;
            } else {
                AnalysisResult analytic = analyze_scenario(cfg.scenario, cfg.player);
                bool one_fixed_family = analytic.ev.units.kind == UnitKind::FractionOf &&
                                        !std::holds_alternative<TwoFixedClosed>(
                                            cfg.scenario);
                measure = analytic.ev.units.kind == UnitKind::Euros
                              ? Measure::EuroReturn
                          : analytic.ev.units.kind == UnitKind::SuccessFactor
                              ? Measure::SuccessFactor
                          : one_fixed_family ? Measure::FractionOfAFixed
                                             : Measure::EuroReturn;
            }
            row.measure = measure;
            row.result = run_simulation(cfg, measure);
        }
        std::cout << render_simulation({row}, parse_format(sim_format));
        return ok ? 0 : 1;
    }

    if (ladder->parsed()) {
        LadderSpec spec{Rational::parse(ladder_min), ladder_levels};
        LadderReport report;
        report.spec = spec;
        report.amounts = ladder_amounts(spec);
        report.solution = solve_ladder(spec);
        if (!observed_text.empty()) {
            ObservedLadderReport obs;
            obs.player = parse_player(ladder_player);
            obs.amount = Rational::parse(observed_text);
            obs.level = level_of(spec, obs.amount);
            obs.decision = ladder_decision(spec, obs.amount);
            obs.conditional_ev = conditional_exchange_ev(spec, obs.amount, obs.player);
            obs.acceptance_possible = obs.conditional_ev.has_value();
            report.observed = obs;
        }
        std::cout << render_ladder(report, parse_format(ladder_format));
        return 0;
    }

    if (summary->parsed()) {
        std::cout << render_summary(summary_rows(), parse_format(summary_format));
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
