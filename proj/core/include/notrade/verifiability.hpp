#pragma once

#include <optional>

#include "notrade/model.hpp"

namespace notrade {

enum class WitnessKind {
    VerifiablePerState,   // cell(agent, state) lies inside one level set
    MaxMin,               // some cell in the component pins the extreme value
    Threshold,            // two cells of one agent with strictly separated payoff ranges
    Collective,           // joint cell at the state lies inside one level set
    ConstantOnComponent,  // security constant on the whole reachable set
};

enum class ExtremeTag { Max, Min };

// Machine-checkable certificate for a positive verdict. Field presence
// depends on kind; witness_valid re-checks the defining inequality.
struct VerifiabilityWitness {
    WitnessKind kind;
    std::optional<AgentIdx> agent;
    std::vector<StateIdx> states;
    std::optional<Rat> threshold;
    std::optional<ExtremeTag> extreme;
    std::optional<Rat> value;
};

struct StateVerdict {
    bool holds = false;
    std::optional<VerifiabilityWitness> witness;
};

struct GlobalVerdict {
    bool holds = false;
    std::vector<VerifiabilityWitness> witnesses;  // one per certified state, canonical order
    std::vector<StateIdx> failing_states;
};

// Every state has some agent whose cell determines the security's value.
GlobalVerdict is_verifiable(const PartitionProfile& profile, const Security& security);

// Some agent, somewhere in the reachable set of `state`, knows the maximum
// or minimum value the security takes on that set.
StateVerdict is_maxmin_verifiable(const PartitionProfile& profile, const Security& security,
                                  StateIdx state);

// True when the security is constant on the reachable set, or some agent
// owns two cells in it whose payoff ranges are strictly separated. Decided
// through emptiness of the intersection of the agent's closed cell-intervals;
// the witness pair is recovered from the extreme intervals.
StateVerdict is_threshold_verifiable(const PartitionProfile& profile, const Security& security,
                                     StateIdx state);

// Every state's joint cell (intersection of all agents' cells) determines
// the security's value.
GlobalVerdict is_collectively_verifiable(const PartitionProfile& profile,
                                         const Security& security);

// Verdicts depend only on partitions; Model overloads never read priors.
GlobalVerdict is_verifiable(const Model& model, const Security& security);
StateVerdict is_maxmin_verifiable(const Model& model, const Security& security, StateIdx state);
StateVerdict is_threshold_verifiable(const Model& model, const Security& security,
                                     StateIdx state);
GlobalVerdict is_collectively_verifiable(const Model& model, const Security& security);

// Re-checks a witness against the raw definition it certifies. Kinds scoped
// to a reachable set (MaxMin, Threshold, ConstantOnComponent) need the base
// state; passing none for those throws std::invalid_argument.
bool witness_valid(const PartitionProfile& profile, const Security& security,
                   const VerifiabilityWitness& witness,
                   std::optional<StateIdx> base_state = std::nullopt);

}  // namespace notrade
