#pragma once

#include <optional>

#include "notrade/announcements.hpp"
#include "notrade/model.hpp"

namespace notrade {

enum class RuleKind { Quadratic, Logarithmic };

// Strictly proper scoring rule. The logarithmic rule carries finite bounds
// that must strictly enclose the security's payoff range.
struct ScoringRule {
    RuleKind kind = RuleKind::Quadratic;
    Rat a;  // logarithmic only
    Rat b;

    static ScoringRule quadratic();
    static ScoringRule logarithmic(const Rat& a, const Rat& b);
};

// -(x - y)^2, exact.
Rat quadratic_score(const Rat& prediction, const Rat& outcome);

// Rule value as a double. The logarithmic rule (x-a)ln(y-a) + (b-x)ln(b-y)
// needs a < prediction < b and throws std::domain_error outside.
double score(const ScoringRule& rule, const Rat& prediction, const Rat& outcome);

// Logarithmic rule with unit margins around the payoff range.
ScoringRule default_log_rule(const Security& security);

// Midpoint of the payoff range: the uninformed maker's opening prediction.
Rat default_initial_prediction(const Security& security);

// The myopic trader's optimal report: the exact expectation of the security
// on cell(agent, state) ∩ public_info. Empty intersection means the protocol
// was violated upstream (std::logic_error).
Rat myopic_prediction(const Model& model, const Security& security, AgentIdx agent,
                      const StateSet& public_info, StateIdx state);

enum class TerminalBehavior { Constant, Cycle };

struct MarketRound {
    int t = 0;
    AgentIdx agent = 0;
    Rat price;                       // the trader's prediction y_t
    double payoff = 0.0;             // s(y_t, x*) - s(y_{t-1}, x*)
    std::optional<Rat> payoff_exact; // present for the quadratic rule
    StateSet public_info;            // after this round
};

struct MarketRun {
    StateIdx true_state = 0;
    ScoringRule rule;
    Rat y0;
    std::vector<AgentIdx> schedule;
    std::vector<MarketRound> rounds;
    int t_star = 0;
    bool aggregated = false;  // terminal prices constantly equal X(true_state)
    TerminalBehavior terminal = TerminalBehavior::Constant;
    int period = 1;  // minimal terminal period; divides the schedule length
};

// Price path of myopic traders under a market scoring rule. Information
// dynamics match run_announcements round for round; payoffs are score
// differences against x* = X(true_state). y0 must lie in the payoff range.
// max_cycles caps the number of schedule cycles (default 2|Ω| + 2 suffices).
MarketRun run_market(const Model& model, const Security& security, StateIdx true_state,
                     const ScoringRule& rule, const Rat& y0,
                     const std::vector<AgentIdx>& schedule, int max_cycles = 0);

// If the security is threshold-verifiable on the terminal public
// information, the terminal price must equal the realized payoff.
CorollaryVerdict check_corollary2(const Model& model, const Security& security, StateIdx state,
                                  const ScoringRule& rule, const std::vector<AgentIdx>& schedule);

// Grid argmax of the expected score under a finite value distribution,
// searched over [min value, max value] in steps of `step`. Lands within one
// step of the exact expectation for these strictly proper rules.
Rat properness_probe(const ScoringRule& rule, const std::vector<std::pair<Rat, Rat>>& atoms,
                     const Rat& step);

}  // namespace notrade
