#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "envlab/rational.hpp"

namespace envlab {

// A scenario was built with parameters that violate its invariants.
struct invalid_scenario_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An operation was called with arguments outside its contract.
struct invalid_parameter_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A marginal-information filter removed every event; the conditional
// expectation over an empty sample space does not exist.
struct degenerate_scenario_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A euro valuation was requested where the game hides the fixed amount.
struct unit_unavailable_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A rejection sampler exhausted its attempt budget without an acceptable deal.
struct rejection_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Player { A, B };

inline Player other(Player p) { return p == Player::A ? Player::B : Player::A; }

inline std::string name(Player p) { return p == Player::A ? "A" : "B"; }

enum class Decision { Trade, Keep, Indifferent };

inline std::string label(Decision d)
{
    switch (d) {
    case Decision::Trade: return "Trade";
    case Decision::Keep: return "Keep";
    default: return "Indifferent";
    }
}

inline std::string tag(Decision d)
{
    switch (d) {
    case Decision::Trade: return "trade";
    case Decision::Keep: return "keep";
    default: return "indifferent";
    }
}

// Information the organizer may announce about N-envelope games.
enum class MarginalInfo { NoInfo, ANonMarginal, BNonMarginal, BothNonMarginal };

inline std::string tag(MarginalInfo m)
{
    switch (m) {
    case MarginalInfo::NoInfo: return "none";
    case MarginalInfo::ANonMarginal: return "a-non-marginal";
    case MarginalInfo::BNonMarginal: return "b-non-marginal";
    default: return "both-non-marginal";
    }
}

// Which unknown quantity a fractional expected return multiplies.
enum class AmountRef {
    PlayerAFixedAmount,
    OwnAmount,  // the computing player's own envelope content (fallacy 1.1.2)
    MeanOfAllAmounts,
    MeanOfNonMarginalAmounts,
};

inline std::string tag(AmountRef r)
{
    switch (r) {
    case AmountRef::PlayerAFixedAmount: return "player_a_fixed_amount";
    case AmountRef::OwnAmount: return "own_amount";
    case AmountRef::MeanOfAllAmounts: return "mean_of_all_amounts";
    default: return "mean_of_non_marginal_amounts";
    }
}

enum class UnitKind { Euros, FractionOf, SuccessFactor };

inline std::string tag(UnitKind k)
{
    switch (k) {
    case UnitKind::Euros: return "euros";
    case UnitKind::FractionOf: return "fraction_of";
    default: return "success_factor";
    }
}

// Units are a closed enumeration so that mixing them is a programming error,
// not a silent unit slip. `ref` is present exactly for FractionOf.
struct Units {
    UnitKind kind = UnitKind::Euros;
    std::optional<AmountRef> ref;

    static Units euros() { return {UnitKind::Euros, std::nullopt}; }
    static Units fraction_of(AmountRef r) { return {UnitKind::FractionOf, r}; }
    static Units success_factor() { return {UnitKind::SuccessFactor, std::nullopt}; }

    bool operator==(const Units&) const = default;
};

// A units-tagged exact expected value. Values carrying different units are
// never added or compared for magnitude; only decisions are comparable.
struct ExpectedReturn {
    Rational value;
    Units units;

    bool operator==(const ExpectedReturn&) const = default;
};

// Sign of the expected return decides the request. Exactly-zero maps to
// Indifferent with no epsilon: the analytic paths are exact.
inline Decision decide(const ExpectedReturn& ev)
{
    int s = ev.value.sign();
    if (s > 0) return Decision::Trade;
    if (s < 0) return Decision::Keep;
    return Decision::Indifferent;
}

}  // namespace envlab
