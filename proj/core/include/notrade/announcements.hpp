#pragma once

#include "notrade/model.hpp"

namespace notrade {

struct AnnouncementRound {
    int t = 0;            // 1-based round index
    AgentIdx agent = 0;   // speaker, schedule[(t-1) mod len]
    Rat announcement;     // exact conditional expectation on cell ∩ public info
    StateSet public_info; // C^t, after this announcement is absorbed
};

// One full run of the sequential announcement protocol. Rounds include the
// final silent cycle that certifies the fixed point.
struct Transcript {
    StateIdx true_state = 0;
    std::vector<AgentIdx> order;
    std::vector<AnnouncementRound> rounds;
    int t_star = 0;                     // first round of the stationary regime
    std::vector<Rat> final_expectations;  // per agent, in model order
    bool agree = false;                 // all final expectations equal
};

// Result of checking a conditional claim on one run: if the hypothesis holds
// on the terminal public information, the conclusion must too.
struct CorollaryVerdict {
    bool applicable = false;  // hypothesis holds (threshold-verifiable on C^{t*})
    bool conclusion = false;  // agreement (resp. aggregation) observed
    bool holds = true;        // !applicable || conclusion
};

// Round-robin over all agents in model order.
std::vector<AgentIdx> default_order(const Model& model);

// Shared schedule precondition: non-empty, known agents, everyone speaks.
void validate_schedule(const Model& model, const std::vector<AgentIdx>& order);

// Threshold verifiability evaluated on the model restricted to an event
// containing the state (typically the terminal public information of a run).
bool threshold_on_restriction(const Model& model, const Security& security,
                              const StateSet& event, StateIdx state);

// Runs the protocol from C^0 = Ω: the scheduled agent announces the exact
// expectation of the security on cell ∩ C^{t-1}; C^t keeps the states where
// that announcement would have been the same; stops after one full cycle
// without refinement. The schedule must be non-empty, reference only known
// agents, and cover every agent (std::invalid_argument otherwise).
Transcript run_announcements(const Model& model, const Security& security, StateIdx true_state,
                             const std::vector<AgentIdx>& order);

// The agree flag of the transcript: expectations coincide at the fixed point.
bool cannot_disagree_forever(const Model& model, const Security& security, StateIdx state,
                             const std::vector<AgentIdx>& order);

// If the security is threshold-verifiable on the terminal public information
// (model and security restricted to C^{t*}), agreement must follow.
CorollaryVerdict check_corollary1(const Model& model, const Security& security, StateIdx state,
                                  const std::vector<AgentIdx>& order);

}  // namespace notrade
