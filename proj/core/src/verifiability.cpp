#include "notrade/verifiability.hpp"

#include <stdexcept>

#include "notrade/epistemic.hpp"

namespace notrade {

namespace {

std::optional<VerifiabilityWitness> per_state_witness(const PartitionProfile& profile,
                                                      const Security& security, StateIdx state) {
    for (AgentIdx i = 0; i < profile.n_agents(); ++i) {
        ValueSummary summary = values_on(security, cell(profile, i, state));
        if (summary.constant()) {
            VerifiabilityWitness w;
            w.kind = WitnessKind::VerifiablePerState;
            w.agent = i;
            w.states = {state};
            w.value = summary.min;
            return w;
        }
    }
    return std::nullopt;
}

std::optional<VerifiabilityWitness> collective_witness(const PartitionProfile& profile,
                                                       const Security& security, StateIdx state) {
    StateSet joint = cell(profile, 0, state);
    for (AgentIdx i = 1; i < profile.n_agents(); ++i)
        joint = joint.intersect(cell(profile, i, state));
    ValueSummary summary = values_on(security, joint);
    if (!summary.constant()) return std::nullopt;
    VerifiabilityWitness w;
    w.kind = WitnessKind::Collective;
    w.states = {state};
    w.value = summary.min;
    return w;
}

GlobalVerdict scan_states(const PartitionProfile& profile, const Security& security,
                          bool collective) {
    GlobalVerdict verdict;
    verdict.holds = true;
    for (StateIdx s = 0; s < profile.n_states; ++s) {
        auto w = collective ? collective_witness(profile, security, s)
                            : per_state_witness(profile, security, s);
        if (w) {
            verdict.witnesses.push_back(std::move(*w));
        } else {
            verdict.holds = false;
            verdict.failing_states.push_back(s);
        }
    }
    return verdict;
}

}  // namespace

GlobalVerdict is_verifiable(const PartitionProfile& profile, const Security& security) {
    return scan_states(profile, security, /*collective=*/false);
}

StateVerdict is_maxmin_verifiable(const PartitionProfile& profile, const Security& security,
                                  StateIdx state) {
    StateSet component = reach(profile, state);
    ValueSummary range = values_on(security, component);
    for (AgentIdx i = 0; i < profile.n_agents(); ++i) {
        for (const StateSet* block : blocks_within(profile, i, component)) {
            ValueSummary summary = values_on(security, *block);
            if (!summary.constant()) continue;
            std::optional<ExtremeTag> tag;
            if (summary.min == range.max)
                tag = ExtremeTag::Max;
            else if (summary.min == range.min)
                tag = ExtremeTag::Min;
            if (!tag) continue;
            VerifiabilityWitness w;
            w.kind = WitnessKind::MaxMin;
            w.agent = i;
            w.states = {block->first()};
            w.value = summary.min;
            w.extreme = tag;
            return {true, std::move(w)};
        }
    }
    return {false, std::nullopt};
}

StateVerdict is_threshold_verifiable(const PartitionProfile& profile, const Security& security,
                                     StateIdx state) {
    StateSet component = reach(profile, state);
    ValueSummary range = values_on(security, component);
    if (range.constant()) {
        VerifiabilityWitness w;
        w.kind = WitnessKind::ConstantOnComponent;
        w.value = range.min;
        return {true, std::move(w)};
    }
    for (AgentIdx i = 0; i < profile.n_agents(); ++i) {
        auto blocks = blocks_within(profile, i, component);
        // The closed cell-intervals [min, max] have empty intersection iff
        // the smallest upper end lies below the largest lower end, and the
        // two extreme cells are then strictly separated.
        const StateSet* low_block = nullptr;   // attains the smallest max
        const StateSet* high_block = nullptr;  // attains the largest min
        Rat low_max;
        Rat high_min;
        for (const StateSet* block : blocks) {
            ValueSummary summary = values_on(security, *block);
            if (!low_block || summary.max < low_max) {
                low_block = block;
                low_max = summary.max;
            }
            if (!high_block || summary.min > high_min) {
                high_block = block;
                high_min = summary.min;
            }
        }
        if (low_max < high_min) {
            VerifiabilityWitness w;
            w.kind = WitnessKind::Threshold;
            w.agent = i;
            w.states = {low_block->first(), high_block->first()};
            w.threshold = midpoint(low_max, high_min);
            return {true, std::move(w)};
        }
    }
    return {false, std::nullopt};
}

GlobalVerdict is_collectively_verifiable(const PartitionProfile& profile,
                                         const Security& security) {
    return scan_states(profile, security, /*collective=*/true);
}

GlobalVerdict is_verifiable(const Model& model, const Security& security) {
    return is_verifiable(model.profile(), security);
}

StateVerdict is_maxmin_verifiable(const Model& model, const Security& security, StateIdx state) {
    return is_maxmin_verifiable(model.profile(), security, state);
}

StateVerdict is_threshold_verifiable(const Model& model, const Security& security,
                                     StateIdx state) {
    return is_threshold_verifiable(model.profile(), security, state);
}

GlobalVerdict is_collectively_verifiable(const Model& model, const Security& security) {
    return is_collectively_verifiable(model.profile(), security);
}

bool witness_valid(const PartitionProfile& profile, const Security& security,
                   const VerifiabilityWitness& witness, std::optional<StateIdx> base_state) {
    auto component = [&]() -> StateSet {
        if (!base_state) throw std::invalid_argument("witness kind needs a base state");
        return reach(profile, *base_state);
    };
    switch (witness.kind) {
        case WitnessKind::VerifiablePerState: {
            if (!witness.agent || witness.states.size() != 1 || !witness.value) return false;
            ValueSummary s = values_on(security, cell(profile, *witness.agent, witness.states[0]));
            return s.constant() && s.min == *witness.value;
        }
        case WitnessKind::MaxMin: {
            if (!witness.agent || witness.states.size() != 1 || !witness.value || !witness.extreme)
                return false;
            StateSet comp = component();
            if (!comp.contains(witness.states[0])) return false;
            ValueSummary s = values_on(security, cell(profile, *witness.agent, witness.states[0]));
            if (!s.constant() || s.min != *witness.value) return false;
            ValueSummary range = values_on(security, comp);
            return *witness.value ==
                   (*witness.extreme == ExtremeTag::Max ? range.max : range.min);
        }
        case WitnessKind::Threshold: {
            if (!witness.agent || witness.states.size() != 2 || !witness.threshold) return false;
            StateSet comp = component();
            if (!comp.contains(witness.states[0]) || !comp.contains(witness.states[1]))
                return false;
            ValueSummary lo = values_on(security, cell(profile, *witness.agent, witness.states[0]));
            ValueSummary hi = values_on(security, cell(profile, *witness.agent, witness.states[1]));
            return lo.max < *witness.threshold && *witness.threshold < hi.min;
        }
        case WitnessKind::Collective: {
            if (witness.agent || witness.states.size() != 1 || !witness.value) return false;
            StateSet joint = cell(profile, 0, witness.states[0]);
            for (AgentIdx i = 1; i < profile.n_agents(); ++i)
                joint = joint.intersect(cell(profile, i, witness.states[0]));
            ValueSummary s = values_on(security, joint);
            return s.constant() && s.min == *witness.value;
        }
        case WitnessKind::ConstantOnComponent: {
            if (witness.agent || !witness.states.empty() || !witness.value) return false;
            ValueSummary s = values_on(security, component());
            return s.constant() && s.min == *witness.value;
        }
    }
    return false;
}

}  // namespace notrade
