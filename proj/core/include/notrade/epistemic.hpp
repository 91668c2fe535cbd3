#pragma once

#include "notrade/model.hpp"

namespace notrade {

// Agent's information set at a state: the unique partition block containing it.
const StateSet& cell(const PartitionProfile& profile, AgentIdx agent, StateIdx state);
const StateSet& cell(const Model& model, AgentIdx agent, StateIdx state);

// True iff the agent's cell at the state is contained in the event.
bool knows(const Model& model, AgentIdx agent, const StateSet& event, StateIdx state);

// The set of states reachable from `state`: the connected component of the
// graph whose edges join states sharing any agent's block. Equals the
// smallest self-evident event containing the state.
StateSet reach(const PartitionProfile& profile, StateIdx state);
StateSet reach(const Model& model, StateIdx state);

// All reachable sets at once; they partition the state space (the finest
// common coarsening of the agents' partitions).
std::vector<StateSet> reach_partition(const PartitionProfile& profile);

// The agent's distinct blocks inside a union-of-blocks event (a reachable
// set), canonical block order. Pointers stay valid while the profile lives.
std::vector<const StateSet*> blocks_within(const PartitionProfile& profile, AgentIdx agent,
                                           const StateSet& event);

// Aumann's characterization: an event is common knowledge at a state iff it
// contains the whole reachable set.
bool is_common_knowledge(const Model& model, const StateSet& event, StateIdx state);

// Exact conditional expectation of the security on the agent's cell.
Rat expectation(const Model& model, const Security& security, AgentIdx agent, StateIdx state);

// E[X | event] under one prior. Throws std::logic_error on an empty event.
Rat conditional_expectation(const Prior& prior, const Security& security, const StateSet& event);

// The image of the security on a non-empty event, with extremes.
struct ValueSummary {
    std::vector<Rat> values;  // sorted distinct values
    Rat min;
    Rat max;

    bool constant() const { return values.size() == 1; }
};

ValueSummary values_on(const Security& security, const StateSet& event);

// Whether every agent's cell at every member state stays inside the event.
bool is_self_evident(const PartitionProfile& profile, const StateSet& event);

}  // namespace notrade
