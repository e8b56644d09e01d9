#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "envlab/analytic.hpp"
#include "envlab/ladder.hpp"
#include "envlab/montecarlo.hpp"
#include "envlab/summary.hpp"
#include "envlab/tables.hpp"

namespace envlab {

enum class Format { Json, Csv, Markdown };

inline Format parse_format(const std::string& text)
{
    if (text == "json") return Format::Json;
    if (text == "csv") return Format::Csv;
    if (text == "md" || text == "markdown") return Format::Markdown;
    throw invalid_parameter_error("unknown format: " + text);
}

namespace out_detail {

inline std::string csv_escape(const std::string& field)
{
    if (field.find_first_of(",\"\n") == std::string::npos)
        return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"')
            quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

inline std::string fixed4(double value)
{
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.4f", value);
    return buffer;
}

inline std::string sci6(double value)
{
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.6g", value);
    return buffer;
}

inline std::string pretty(const Rational& r) { return display(r); }

inline std::string units_label(const Units& units)
{
    switch (units.kind) {
    case UnitKind::Euros:
        return "euros";
    case UnitKind::SuccessFactor:
        return "success factor";
    case UnitKind::FractionOf:
        switch (*units.ref) {
        case AmountRef::PlayerAFixedAmount: return "of player A's fixed amount";
        case AmountRef::OwnAmount: return "of the player's own amount";
        case AmountRef::MeanOfAllAmounts: return "of the mean of all amounts";
        default: return "of the mean of the non-marginal amounts";
        }
    }
    return {};
}

inline std::string ev_text(const ExpectedReturn& ev)
{
    return pretty(ev.value) + " " + units_label(ev.units) + " (" +
           fixed4(ev.value.to_double()) + ")";
}

inline nlohmann::json ev_json(const ExpectedReturn& ev)
{
    nlohmann::json j;
    j["value"] = ev.value.to_string();
    j["units"] = tag(ev.units.kind);
    j["ref"] = ev.units.ref ? nlohmann::json(tag(*ev.units.ref)) : nlohmann::json();
    return j;
}

}  // namespace out_detail

inline std::string render_analysis(const std::vector<AnalysisResult>& rows, Format format)
{
    using namespace out_detail;
    switch (format) {
    case Format::Json: {
        nlohmann::json doc = nlohmann::json::array();
        for (const auto& row : rows) {
            nlohmann::json j;
            j["scenario"] = scenario_name(row.scenario);
            j["player"] = name(row.player);
            j["formula"] = row.formula_id;
            j["ev"] = ev_json(row.ev);
            j["decision"] = tag(row.decision);
            j["fallacy"] = row.is_fallacy;
            doc.push_back(j);
        }
        return doc.dump(2) + "\n";
    }
    case Format::Csv: {
        std::string out = "scenario,player,formula,ev_value,ev_units,ev_ref,decision,fallacy\n";
        for (const auto& row : rows) {
            out += csv_escape(scenario_name(row.scenario)) + "," + name(row.player) +
                   "," + row.formula_id + "," + row.ev.value.to_string() + "," +
                   tag(row.ev.units.kind) + "," +
                   (row.ev.units.ref ? tag(*row.ev.units.ref) : "") + "," +
                   tag(row.decision) + "," + (row.is_fallacy ? "true" : "false") + "\n";
        }
        return out;
    }
    case Format::Markdown: {
        std::string out =
            "| Scenario | Player | Formula | Expected return | Decision | Fallacy |\n"
            "|---|---|---|---|---|---|\n";
        for (const auto& row : rows) {
            out += "| " + scenario_name(row.scenario) + " | " + name(row.player) +
                   " | " + row.formula_id + " | " + ev_text(row.ev) + " | " +
                   label(row.decision) + " | " + (row.is_fallacy ? "yes" : "no") +
                   " |\n";
        }
        for (const auto& row : rows)
            if (row.is_fallacy)
                out += "\nFallacy " + row.formula_id + ": " + row.explanation + ".\n";
        return out;
    }
    }
    return {};
}

inline std::string render_table(const EventTable& table, Format format)
{
    using namespace out_detail;
    switch (format) {
    case Format::Csv:
        return to_csv(table);
    case Format::Json: {
        nlohmann::json doc;
        doc["family"] = table.family == TableFamily::TwoFixedGeometric
                            ? "two-fixed-geometric"
                            : "one-fixed-arbitrary";
        doc["probability_per_event"] = table.probability_per_event.to_string();
        doc["events"] = nlohmann::json::array();
        for (const auto& event : table.events) {
            nlohmann::json j;
            j["amount_a"] = event.amount_a.to_string();
            j["amount_b"] = event.amount_b.to_string();
            j["return_for_a"] = event.return_for_a.to_string();
            doc["events"].push_back(j);
        }
        return doc.dump(2) + "\n";
    }
    case Format::Markdown: {
        std::string out =
            "| Amount A | Amount B | Return of exchange for A | Probability |\n"
            "|---|---|---|---|\n";
        for (const auto& event : table.events) {
            std::string ret = event.return_for_a.sign() > 0
                                  ? "+" + pretty(event.return_for_a)
                                  : pretty(event.return_for_a);
            out += "| " + pretty(event.amount_a) + " | " + pretty(event.amount_b) +
                   " | " + ret + " | " + table.probability_per_event.to_string() +
                   " |\n";
        }
        return out;
    }
    }
    return {};
}

// One simulation invocation as shown on the CLI; `pass` is set when the run
// was a verification against the analytic value.
struct SimulationRow {
    std::string scenario;
    Player player = Player::A;
    Measure measure = Measure::EuroReturn;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    SimulationResult result;
    std::optional<bool> pass;
};

inline std::string render_simulation(const std::vector<SimulationRow>& rows, Format format)
{
    using namespace out_detail;
    switch (format) {
    case Format::Json: {
        nlohmann::json doc = nlohmann::json::array();
        for (const auto& row : rows) {
            nlohmann::json j;
            j["scenario"] = row.scenario;
            j["player"] = name(row.player);
            j["measure"] = tag(row.measure);
            j["trials"] = row.trials;
            j["seed"] = row.seed;
            j["mean"] = row.result.mean;
            j["std_error"] = row.result.std_error;
            j["exchanges"] = row.result.exchanges;
            j["target"] = row.result.analytic_target
                              ? nlohmann::json(row.result.analytic_target->to_string())
                              : nlohmann::json();
            j["z_score"] = row.result.z_score ? nlohmann::json(*row.result.z_score)
                                              : nlohmann::json();
            j["pass"] = row.pass ? nlohmann::json(*row.pass) : nlohmann::json();
            doc.push_back(j);
        }
        return doc.dump(2) + "\n";
    }
    case Format::Csv: {
        std::string out =
            "scenario,player,measure,trials,seed,mean,std_error,exchanges,target,z_score,pass\n";
        for (const auto& row : rows) {
            out += csv_escape(row.scenario) + "," + name(row.player) + "," +
                   tag(row.measure) + "," + std::to_string(row.trials) + "," +
                   std::to_string(row.seed) + "," + sci6(row.result.mean) + "," +
                   sci6(row.result.std_error) + "," +
                   std::to_string(row.result.exchanges) + "," +
                   (row.result.analytic_target ? row.result.analytic_target->to_string()
                                               : "") +
                   "," + (row.result.z_score ? sci6(*row.result.z_score) : "") + "," +
                   (row.pass ? (*row.pass ? "true" : "false") : "") + "\n";
        }
        return out;
    }
    case Format::Markdown: {
        std::string out =
            "| Scenario | Player | Measure | Trials | Mean | Std error | Target | Z | Pass |\n"
            "|---|---|---|---|---|---|---|---|---|\n";
        for (const auto& row : rows) {
            out += "| " + row.scenario + " | " + name(row.player) + " | " +
                   tag(row.measure) + " | " + std::to_string(row.trials) + " | " +
                   sci6(row.result.mean) + " | " + sci6(row.result.std_error) + " | " +
                   (row.result.analytic_target ? pretty(*row.result.analytic_target)
                                               : "-") +
                   " | " + (row.result.z_score ? fixed4(*row.result.z_score) : "-") +
                   " | " + (row.pass ? (*row.pass ? "yes" : "no") : "-") + " |\n";
        }
        return out;
    }
    }
    return {};
}

struct ObservedLadderReport {
    Player player = Player::B;
    Rational amount;
    int level = 0;
    Decision decision = Decision::Keep;
    bool acceptance_possible = true;
    std::optional<ExpectedReturn> conditional_ev;
};

struct LadderReport {
    LadderSpec spec;
    std::vector<Rational> amounts;
    LadderSolution solution;
    std::optional<ObservedLadderReport> observed;
};

inline std::string render_ladder(const LadderReport& report, Format format)
{
    using namespace out_detail;
    switch (format) {
    case Format::Json: {
        nlohmann::json doc;
        doc["min"] = report.spec.min.to_string();
        doc["levels"] = report.spec.levels;
        doc["amounts"] = nlohmann::json::array();
        for (const auto& a : report.amounts)
            doc["amounts"].push_back(a.to_string());
        doc["policy"] = nlohmann::json::array();
        for (int k = 0; k < report.spec.levels; ++k) {
            nlohmann::json j;
            j["level"] = k;
            j["amount"] = report.amounts[k].to_string();
            j["requests"] = static_cast<bool>(report.solution.policy.request_at[k]);
            doc["policy"].push_back(j);
        }
        doc["trace"] = nlohmann::json::array();
        for (const auto& step : report.solution.trace) {
            nlohmann::json j;
            j["level"] = step.level;
            j["amount"] = step.amount.to_string();
            j["requests"] = step.requests;
            j["justification"] = step.justification;
            doc["trace"].push_back(j);
        }
        if (report.observed) {
            nlohmann::json j;
            j["player"] = name(report.observed->player);
            j["amount"] = report.observed->amount.to_string();
            j["level"] = report.observed->level;
            j["decision"] = tag(report.observed->decision);
            j["acceptance_possible"] = report.observed->acceptance_possible;
            j["conditional_ev"] = report.observed->conditional_ev
                                      ? ev_json(*report.observed->conditional_ev)
                                      : nlohmann::json();
            doc["observed"] = j;
        } else {
            doc["observed"] = nullptr;
        }
        return doc.dump(2) + "\n";
    }
    case Format::Csv: {
        std::string out = "level,amount,requests\n";
        for (int k = 0; k < report.spec.levels; ++k)
            out += std::to_string(k) + "," + report.amounts[k].to_string() + "," +
                   (report.solution.policy.request_at[k] ? "true" : "false") + "\n";
        return out;
    }
    case Format::Markdown: {
        std::string out = "Ladder of " + std::to_string(report.spec.levels) +
                          " amounts, " + pretty(report.spec.min) + " to " +
                          pretty(report.amounts.back()) + "\n\nPolicy:\n";
        for (int k = 0; k < report.spec.levels; ++k)
            out += "  " + pretty(report.amounts[k]) + ": " +
                   (report.solution.policy.request_at[k] ? "request exchange"
                                                         : "decline") +
                   "\n";
        out += "\nReasoning, top level down:\n";
        for (const auto& step : report.solution.trace)
            out += "  " + pretty(step.amount) + ": " +
                   (step.requests ? "request" : "decline") + " - " +
                   step.justification + "\n";
        if (report.observed) {
            out += "\nObserved: player " + name(report.observed->player) + " holds " +
                   pretty(report.observed->amount) + " (level " +
                   std::to_string(report.observed->level) + ")\n";
            out += "  decision: " + label(report.observed->decision) + "\n";
            if (report.observed->conditional_ev) {
                out += "  expected return if an exchange were accepted: " +
                       ev_text(*report.observed->conditional_ev) + "\n";
            } else {
                out += "  no rational partner ever accepts an exchange from here\n";
            }
        }
        return out;
    }
    }
    return {};
}

inline std::string render_summary(const std::vector<SummaryRow>& rows, Format format)
{
    using namespace out_detail;
    switch (format) {
    case Format::Json: {
        nlohmann::json doc = nlohmann::json::array();
        for (const auto& row : rows) {
            nlohmann::json j;
            j["id"] = row.id;
            j["group"] = row.group;
            j["title"] = row.title;
            j["scenario"] = scenario_name(row.reference);
            j["ev_a"] = row.ev_a ? ev_json(*row.ev_a) : nlohmann::json();
            j["ev_b"] = row.ev_b ? ev_json(*row.ev_b) : nlohmann::json();
            j["ev_a_display"] = row.ev_a_display;
            j["ev_b_display"] = row.ev_b_display;
            j["decision_a"] = tag(row.decision_a);
            j["decision_b"] = tag(row.decision_b);
            j["formulas"] = row.formulas;
            doc.push_back(j);
        }
        return doc.dump(2) + "\n";
    }
    case Format::Csv: {
        std::string out =
            "id,group,title,ev_a,ev_b,decision_a,decision_b,formulas\n";
        for (const auto& row : rows) {
            out += row.id + "," + csv_escape(row.group) + "," + csv_escape(row.title) +
                   "," + csv_escape(row.ev_a_display) + "," +
                   csv_escape(row.ev_b_display) + "," + tag(row.decision_a) + "," +
                   tag(row.decision_b) + "," + csv_escape(row.formulas) + "\n";
        }
        return out;
    }
    case Format::Markdown: {
        std::string out = "# Summary of calculations and decisions\n";
        std::string group;
        for (const auto& row : rows) {
            if (row.group != group) {
                group = row.group;
                out += "\n## " + group + "\n\n";
                out +=
                    "| # | Variation | E(A) | E(B) | Decision A | Decision B | Formulas |\n"
                    "|---|---|---|---|---|---|---|\n";
            }
            out += "| " + row.id + " | " + row.title + " | " + row.ev_a_display +
                   " | " + row.ev_b_display + " | " + label(row.decision_a) + " | " +
                   label(row.decision_b) + " | " + row.formulas + " |\n";
        }
        return out;
    }
    }
    return {};
}

}  // namespace envlab
