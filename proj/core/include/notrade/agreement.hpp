#pragma once

#include <optional>
#include <string>

#include "notrade/model.hpp"

namespace notrade {

// A detected common-knowledge trade: every agent's conditional expectation of
// the security is constant on reach(state), and the named pair disagrees.
struct CKTradeReport {
    StateIdx state = 0;
    std::vector<Rat> expectations;  // per agent, in model order
    AgentIdx agent_i = 0;           // first disagreeing pair in canonical order
    AgentIdx agent_j = 0;
};

// The set of values achievable as one agent's constant conditional
// expectation across all their cells inside a reachable set, ranging over
// full-support posteriors. A cell with constant payoff v forces the point
// {v}; any other cell contributes the open interval (min, max).
struct FeasibleSet {
    AgentIdx agent = 0;
    Rat lower;
    Rat upper;
    bool lower_open = false;
    bool upper_open = false;
    bool empty = false;

    static FeasibleSet point(AgentIdx agent, const Rat& v);
    static FeasibleSet open_interval(AgentIdx agent, const Rat& lo, const Rat& hi);

    FeasibleSet intersect(const FeasibleSet& other) const;
    bool contains(const Rat& k) const;
    bool is_point() const { return !empty && lower == upper; }
};

std::string describe(const FeasibleSet& set);

struct TradePossibility {
    bool possible = false;
    std::vector<FeasibleSet> sets;  // per agent
    std::string reason;
};

struct SynthesizedPriors {
    std::vector<Prior> priors;                    // per agent
    std::vector<Rat> targets;                     // k_i
    std::vector<std::vector<Rat>> cell_weights;   // per agent, canonical block order
};

struct SynthesisResult {
    std::optional<SynthesizedPriors> priors;
    std::vector<FeasibleSet> feasible;
    std::string reason;  // set on failure

    bool ok() const { return priors.has_value(); }
};

struct TheoremVerdict {
    StateIdx state = 0;
    bool threshold_verifiable = false;
    bool trade_possible = false;
    bool synthesis_confirmed = true;  // meaningful only when trade_possible
    bool holds = false;               // XOR, plus confirmation when applicable
    std::optional<CKTradeReport> report;
};

std::optional<CKTradeReport> detect_ck_trade(const Model& model, const Security& security,
                                             StateIdx state);

// Priors are never consulted; the result depends only on partitions.
std::vector<FeasibleSet> feasible_expectations(const PartitionProfile& profile,
                                               const Security& security, StateIdx state);

// Exact oracle: some choice of full-support priors yields a common-knowledge
// trade at the state. Needs every feasible set non-empty, a second agent to
// take the other side, and not all agents forced to one common point.
TradePossibility ck_trade_possible(const PartitionProfile& profile, const Security& security,
                                   StateIdx state);

// Builds full-support priors realizing a disagreement at the state. Target
// expectations are chosen deterministically inside the feasible sets; each
// cell's posterior mixes point masses at extreme-payoff states with a
// uniform component so the conditional expectation hits the target exactly.
SynthesisResult synthesize_disagreement_priors(const PartitionProfile& profile,
                                               const Security& security, StateIdx state);

// Same construction with caller-chosen targets, one per agent; fails if any
// target leaves its feasible set.
SynthesisResult synthesize_with_targets(const PartitionProfile& profile,
                                        const Security& security, StateIdx state,
                                        const std::vector<Rat>& targets);

// One agent's full-support prior whose conditional expectation of the
// security equals `target` on every cell inside reach(state), uniform on
// cells outside. The target must lie in the agent's feasible set
// (std::invalid_argument otherwise).
Prior synthesize_agent_prior(const PartitionProfile& profile, const Security& security,
                             StateIdx state, AgentIdx agent, const Rat& target);

// Cross-checks threshold verifiability against the trade oracle at one
// state; when trade is possible, confirms by synthesizing priors and
// re-detecting. Requires an injective security (distinct payoffs), else
// throws std::invalid_argument naming a duplicated payoff.
TheoremVerdict verify_theorem_on(const PartitionProfile& profile, const Security& security,
                                 StateIdx state);

}  // namespace notrade
