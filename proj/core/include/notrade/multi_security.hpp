#pragma once

#include <optional>
#include <string>

#include "notrade/agreement.hpp"
#include "notrade/model.hpp"

namespace notrade {

// One security per agent; a valid bundle pays zero in aggregate at every
// state, so the agents trade purely against each other.
struct SecurityBundle {
    std::vector<Security> securities;  // indexed by agent

    int n_agents() const { return static_cast<int>(securities.size()); }
};

struct TradabilityVerdict {
    bool tradable = false;
    std::optional<StateIdx> sum_violation;  // state where payoffs do not sum to zero
    std::optional<std::pair<AgentIdx, StateIdx>> max_violation;  // agent, cell representative
    std::string reason;
};

struct MultiTradeReport {
    StateIdx state = 0;
    std::vector<Rat> profits;  // per agent, constant on the reachable set, all > 0
};

struct MultiThresholdVerdict {
    bool holds = false;
    bool constant_case = false;  // every agent's security constant on the component
    std::optional<AgentIdx> agent;
    std::optional<std::pair<StateIdx, StateIdx>> cells;  // representatives (low, high)
    std::optional<Rat> threshold;
};

struct PropositionVerdict {
    StateIdx state = 0;
    bool threshold_verifiable = false;
    bool trade_possible = false;
    bool synthesis_confirmed = true;  // meaningful only when trade_possible
    bool holds = false;
    std::optional<MultiTradeReport> report;
};

struct RankedExpectation {
    AgentIdx agent = 0;
    Rat value;
};

struct SplitResult {
    SecurityBundle bundle;
    Rat price;
};

// Payoffs sum to zero everywhere and every agent sees a strictly positive
// maximum of their own security on each of their cells. Agent/state count
// mismatches between bundle and model are input errors.
TradabilityVerdict is_tradable(const SecurityBundle& bundle, const Model& model);

// Fires iff each agent's expectation of their own security is constant on
// reach(state) and strictly positive. Requires a tradable bundle
// (std::invalid_argument otherwise).
std::optional<MultiTradeReport> detect_ck_trade_multi(const Model& model,
                                                      const SecurityBundle& bundle,
                                                      StateIdx state);

// Splits one security into a zero-sum bundle around a price p chosen in the
// middle expectations' gap: agents ranked in the top half hold X - p, the
// bottom half -(X - p). Needs an even number of agents, each exactly once,
// values non-increasing and strictly separated at the split point.
SplitResult split_security(const Security& security,
                           const std::vector<RankedExpectation>& ranked);

// Threshold verifiability where each agent's separation is judged on their
// own security. Prior-free.
MultiThresholdVerdict is_threshold_verifiable_multi(const PartitionProfile& profile,
                                                    const SecurityBundle& bundle, StateIdx state);
MultiThresholdVerdict is_threshold_verifiable_multi(const Model& model,
                                                    const SecurityBundle& bundle, StateIdx state);

// Per-agent feasible constant expectations of the agent's own security,
// intersected with the strict-positivity requirement on profits.
std::vector<FeasibleSet> feasible_profits(const PartitionProfile& profile,
                                          const SecurityBundle& bundle, StateIdx state);

// Exact oracle: some full-support priors give every agent a constant,
// strictly positive expected profit on reach(state).
TradePossibility ck_trade_possible_multi(const PartitionProfile& profile,
                                         const SecurityBundle& bundle, StateIdx state);

// Builds priors realizing constant positive profits for everyone.
SynthesisResult synthesize_positive_profit_priors(const PartitionProfile& profile,
                                                  const SecurityBundle& bundle, StateIdx state);

// Cross-checks bundle threshold verifiability against the positive-profit
// oracle; confirms the existence side by synthesis and re-detection. The
// bundle must sum to zero at every state (std::invalid_argument otherwise);
// the cell-max condition is deliberately not required here, so degenerate
// bundles (all-zero) are judged rather than rejected.
PropositionVerdict verify_proposition_on(const PartitionProfile& profile,
                                         const SecurityBundle& bundle, StateIdx state);

}  // namespace notrade
