#pragma once

#include <optional>
#include <string>
#include <vector>

#include "envlab/types.hpp"

namespace envlab {

// A publicly known doubling ladder: min, 2*min, ..., min*2^(levels-1).
struct LadderSpec {
    Rational min = 50;
    int levels = 6;
};

inline std::vector<Rational> ladder_amounts(const LadderSpec& spec)
{
    if (spec.levels < 2)
        throw invalid_parameter_error("ladder requires at least 2 levels");
    if (spec.min.sign() <= 0)
        throw invalid_parameter_error("ladder minimum must be positive");
    std::vector<Rational> amounts;
    amounts.reserve(spec.levels);
    Rational a = spec.min;
    for (int k = 0; k < spec.levels; ++k) {
        amounts.push_back(a);
        a = a * Rational(2);
    }
    return amounts;
}

inline int level_of(const LadderSpec& spec, const Rational& amount)
{
    auto amounts = ladder_amounts(spec);
    for (int k = 0; k < spec.levels; ++k)
        if (amounts[k] == amount)
            return k;
    throw invalid_parameter_error("amount " + amount.to_string() +
                                  " is not on the ladder");
}

// Whether the holder of each level requests an exchange.
struct LadderPolicy {
    std::vector<bool> request_at;  // indexed by level, bottom = 0
};

struct ReasoningStep {
    int level = 0;
    Rational amount;
    bool requests = false;
    std::string justification;
};

// The elimination argument from the top level downward, one step per level.
using ReasoningTrace = std::vector<ReasoningStep>;

struct LadderSolution {
    LadderPolicy policy;
    ReasoningTrace trace;
};

// Iterated elimination of exchange requests, worked from the top level down.
// The top holder faces a certain loss; every intermediate holder knows that
// all higher holders have already declined, so an accepted exchange could
// only pair him with the lower neighbour; the bottom holder risks nothing.
// The surviving policy requests only at the bottom level, whatever the
// minimum amount or the ladder height.
inline LadderSolution solve_ladder(const LadderSpec& spec)
{
    auto amounts = ladder_amounts(spec);

    LadderSolution solution;
    solution.policy.request_at.assign(spec.levels, false);
    for (int level = spec.levels - 1; level >= 0; --level) {
        ReasoningStep step;
        step.level = level;
        step.amount = amounts[level];
        if (level == spec.levels - 1) {
            step.requests = false;
            step.justification = "the partner can only hold " +
                                 display(amounts[level - 1]) +
                                 "; an accepted exchange is a certain loss";
        } else if (level > 0) {
            step.requests = false;
            step.justification =
                "the holder of " + display(amounts[level + 1]) +
                " has already declined, so an accepted exchange means the "
                "partner holds " + display(amounts[level - 1]) +
                "; nothing to gain";
        } else {
            step.requests = true;
            step.justification =
                "no smaller amount exists, so an accepted exchange can only "
                "bring " + display(amounts[1]) + "; nothing to lose";
        }
        solution.policy.request_at[level] = step.requests;
        solution.trace.push_back(step);
    }
    return solution;
}

struct LadderOutcome {
    bool exchanged = false;
    Rational return_a;
    Rational return_b;
};

// Applies one policy to both holders of an adjacent deal: the exchange takes
// place only when both levels request it.
inline LadderOutcome ladder_outcome(const LadderSpec& spec, const LadderPolicy& policy,
                                    int level_a, int level_b)
{
    if (level_a < 0 || level_a >= spec.levels || level_b < 0 || level_b >= spec.levels)
        throw invalid_parameter_error("deal level outside the ladder");
    int gap = level_a - level_b;
    if (gap != 1 && gap != -1)
        throw invalid_parameter_error("deal levels must be adjacent");
    if (static_cast<int>(policy.request_at.size()) != spec.levels)
        throw invalid_parameter_error("policy does not cover every ladder level");

    auto amounts = ladder_amounts(spec);
    LadderOutcome outcome;
    outcome.exchanged = policy.request_at[level_a] && policy.request_at[level_b];
    if (outcome.exchanged) {
        outcome.return_a = amounts[level_b] - amounts[level_a];
        outcome.return_b = -outcome.return_a;
    }
    return outcome;
}

// Expected return of requesting an exchange, conditional on the request
// being accepted by a rational partner. Acceptance pins the partner to the
// lower neighbour (every higher holder has declined), so an intermediate
// holder loses half his amount. At the bottom the only neighbour is above,
// so an accepted exchange doubles the amount. At the top no rational
// partner ever accepts, which is signalled as an absent value.
inline std::optional<ExpectedReturn> conditional_exchange_ev(const LadderSpec& spec,
                                                             const Rational& observed,
                                                             Player /*for_player*/)
{
    int level = level_of(spec, observed);
    if (level == spec.levels - 1)
        return std::nullopt;
    if (level == 0)
        return ExpectedReturn{observed, Units::euros()};
    return ExpectedReturn{-(observed / Rational(2)), Units::euros()};
}

// The request decision for the holder of an observed amount under the
// solved policy.
inline Decision ladder_decision(const LadderSpec& spec, const Rational& observed)
{
    int level = level_of(spec, observed);
    return solve_ladder(spec).policy.request_at[level] ? Decision::Trade
                                                       : Decision::Keep;
}

}  // namespace envlab
